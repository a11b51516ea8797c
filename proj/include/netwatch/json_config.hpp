#pragma once

#include <string>

#include "netwatch/calibration.hpp"
#include "netwatch/core.hpp"
#include "netwatch/simharness.hpp"

namespace netwatch {

std::string scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const std::string& text);
Scenario load_scenario(const std::string& path);

std::string plan_to_json(const SurveillancePlan& p);
SurveillancePlan plan_from_json(const std::string& text);
SurveillancePlan load_plan(const std::string& path);
void save_plan(const SurveillancePlan& p, const std::string& path);

/// {kind, basis, coefficients, grid, diagnostics, seed}
std::string surrogate_to_json(const SurrogateModel& m, const CalibrationGrid* grid = nullptr,
                              uint64_t seed = 0);
SurrogateModel surrogate_from_json(const std::string& text);
SurrogateModel load_surrogate(const std::string& path);
void save_surrogate(const SurrogateModel& m, const std::string& path,
                    const CalibrationGrid* grid = nullptr, uint64_t seed = 0);

CalibrationGrid grid_from_json(const std::string& text);
CalibrationGrid load_grid(const std::string& path);

std::string ats_report_to_json(const AtsReport& r);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace netwatch
