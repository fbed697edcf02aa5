// SPDX-License-Identifier: Apache-2.0
#include "lqg/config.hpp"

#include <cstdlib>
#include <sstream>

namespace lqg {

DomainSpec ExperimentConfig::domain_spec() const {
    DomainSpec spec;
    if (domain == "disc")
        spec.kind = DomainKind::UnitDisc;
    else if (domain == "square")
        spec.kind = DomainKind::UnitSquare;
    else
        throw ConfigError("domain must be 'disc' or 'square', got '" + domain + "'");
    spec.series_cutoff = series_cutoff;
    return spec;
}

void ExperimentConfig::validate() const {
    domain_spec().validate();
    if (n < 8) throw ConfigError("n: grid resolution must be >= 8");
    if (!(gamma >= 0.0 && gamma < 2.0)) {
        std::ostringstream msg;
        msg << "gamma: must lie in [0, 2), got " << gamma;
        throw ConfigError(msg.str());
    }
    if (replicas < 1) throw ConfigError("replicas: must be >= 1");
    if (!(window_lo >= 0.0 && window_lo < window_hi && window_hi <= 1.0))
        throw ConfigError("window: need 0 <= lo < hi <= 1");
    if (t_points < 20) throw ConfigError("t_points: must be >= 20");
    if (que_partition < 2) throw ConfigError("que_partition: must be >= 2");
    if (mc.n_paths < 1) throw ConfigError("mc.n_paths: must be >= 1");
    if (!(mc.dt > 0.0)) throw ConfigError("mc.dt: must be positive");
    if (mc.u_points < 2) throw ConfigError("mc.u_points: must be >= 2");
    if (!(mc.u_min > 0.0 && mc.u_min < mc.u_max))
        throw ConfigError("mc.u range: need 0 < u_min < u_max");
    if (!(kpz_x > 0.0 && kpz_x <= 1.0)) throw ConfigError("kpz_x: must lie in (0, 1]");
}

std::string ExperimentConfig::canonical() const {
    std::ostringstream s;
    s.precision(17);
    s << "domain=" << domain << ";cutoff=" << series_cutoff << ";n=" << n
      << ";gamma=" << gamma << ";seed=" << base_seed << ";replicas=" << replicas
      << ";window=" << window_lo << "," << window_hi << ";t=" << t_min << "," << t_max
      << "," << t_points << ";fit=" << fit_lo << "," << fit_hi
      << ";que_k=" << que_partition << ";paths=" << mc.n_paths
      << ";bridges=" << mc.n_bridges << ";dt=" << mc.dt << ";u=" << mc.u_min << ","
      << mc.u_max << "," << mc.u_points << ";lambda=" << lbm_lambda
      << ";diag_t=" << diag_t << ";kpz_x=" << kpz_x;
    for (int m : eigfunc_modes) s << ";ef=" << m;
    return s.str();
}

std::string ExperimentConfig::resolved_out_dir() const {
    if (!out_dir.empty()) return out_dir;
    if (const char* env = std::getenv("LQGLAB_OUT"); env && *env) return env;
    return "out";
}

}  // namespace lqg
