// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "lqg/config.hpp"

namespace lqg {

/// Runs one subcommand end to end: pipeline stages, CSV outputs, run
/// record. Returns the diagnostic flags raised along the way (empty on
/// a clean run); module errors propagate as exceptions with stage
/// attribution.
std::vector<std::string> cmd_spectrum(const ExperimentConfig& cfg);
std::vector<std::string> cmd_weyl(const ExperimentConfig& cfg);
std::vector<std::string> cmd_heattrace(const ExperimentConfig& cfg);
std::vector<std::string> cmd_spacing(const ExperimentConfig& cfg);
std::vector<std::string> cmd_que(const ExperimentConfig& cfg);
std::vector<std::string> cmd_lbm(const ExperimentConfig& cfg);
std::vector<std::string> cmd_kpz(const ExperimentConfig& cfg);

}  // namespace lqg
