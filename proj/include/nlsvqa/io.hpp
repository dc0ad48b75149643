// JSON config files and CSV/JSON result files.
#pragma once

#include "nlsvqa/driver.hpp"

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace nlsvqa {

/// Keys must be RunConfig field names; unknown keys and wrong types throw
/// ConfigurationError. Missing keys keep their defaults.
RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& config);
RunConfig load_config(const std::filesystem::path& path);

nlohmann::json record_to_json(const RunRecord& record);
RunRecord record_from_json(const nlohmann::json& j);
RunRecord load_record(const std::filesystem::path& path);

inline constexpr const char* kCsvHeader = "step,t,rmse_q,rmse_c,rmse_nc,cost,iters";

/// Writes <dir>/<stem>.csv and <dir>/<stem>.json; returns both paths.
std::vector<std::filesystem::path> emit_results(const RunRecord& record,
                                                const std::filesystem::path& dir,
                                                const std::string& stem = "run");

std::filesystem::path emit_step_sweep(const std::vector<StepSweepRow>& rows,
                                      const std::filesystem::path& dir);
std::vector<std::filesystem::path> emit_depth_sweep(const DepthSweep& sweep,
                                                    const std::filesystem::path& dir);

} // namespace nlsvqa
