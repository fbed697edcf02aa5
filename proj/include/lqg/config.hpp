// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lqg/domain.hpp"

namespace lqg {

inline constexpr const char* kArtifactVersion = "0.1.0";

struct McConfig {
    int n_paths = 10000;
    int n_bridges = 0;  // 0 disables the bridge-identity stage
    double dt = 1e-4;
    int u_points = 24;
    double u_min = 1e-4;
    double u_max = 2.0;
};

struct ExperimentConfig {
    std::string domain = "disc";  // disc | square
    int series_cutoff = 256;
    int n = 48;
    double gamma = 1.0;
    std::uint64_t base_seed = 1;
    int replicas = 1;
    double window_lo = 0.02;
    double window_hi = 0.20;
    double t_min = 0.0;  // 0 = derived from the spectrum
    double t_max = 0.0;
    int t_points = 60;
    double fit_lo = 0.0;  // boundary-correction fit window, 0 = auto
    double fit_hi = 0.0;
    int que_partition = 4;
    std::vector<int> eigfunc_modes;
    McConfig mc;
    double lbm_lambda = 0.0;  // 0 = median eigenvalue
    double diag_t = 0.0;      // 0 = plateau of the pilot replica
    double kpz_x = 0.5;
    std::string spectrum_file;
    std::string out_dir;
    unsigned threads = 0;
    bool strict = false;

    DomainSpec domain_spec() const;
    void validate() const;
    /// Stable key=value rendering used for the config hash.
    std::string canonical() const;
    /// Output directory resolution: --out, then $LQGLAB_OUT, then ./out.
    std::string resolved_out_dir() const;
};

}  // namespace lqg
