#pragma once

#include "holosim/holography.hpp"
#include "holosim/scenarios.hpp"

#include <filesystem>
#include <string>

namespace holosim {

/// Plot-ready per-sample CSV: header `x_mm,total[,intensity_object,
/// intensity_reference,interference]` (part columns only when the result
/// carries them), 9 significant digits, LF line endings.
void emit_profile_csv(const ScenarioResult& result,
                      const std::filesystem::path& path);

/// Binary 16-bit PGM (P5, maxval 65535, big-endian samples); rows are the
/// signal coordinate x1, columns the idler coordinate x2. The linear
/// value->pixel mapping is recorded in a `<path>.json` sidecar. A constant
/// map encodes as mid-scale with a degenerate flag in the sidecar.
/// component: "total" or "interference".
void emit_map_pgm(const CoincidenceMap& map, const std::filesystem::path& path,
                  const std::string& component);

/// Scenario metrics, warnings and config echo as JSON.
void emit_metrics_json(const ScenarioResult& result,
                       const std::filesystem::path& path);

} // namespace holosim
