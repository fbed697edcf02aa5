// SPDX-License-Identifier: Apache-2.0
#include "lqg/pipeline.hpp"

namespace lqg {

Workspace make_workspace(const DomainSpec& spec, int n) {
    Workspace ws;
    ws.grid = build_grid(spec, n);
    ws.cov = build_covariance(ws.grid);
    return ws;
}

Replica sample_replica(const Workspace& ws, const CouplingParams& params,
                       std::uint64_t seed) {
    Replica rep;
    rep.field = sample_gff(ws.cov, seed);
    rep.measure = gmc_weights(ws.grid, rep.field, params);
    return rep;
}

LiouvilleSpectrum replica_spectrum(const Workspace& ws, const Replica& rep) {
    return eigendecompose(assemble_operator(ws.grid, rep.measure));
}

}  // namespace lqg
