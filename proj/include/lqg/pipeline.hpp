// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "lqg/field.hpp"
#include "lqg/spectral.hpp"

namespace lqg {

/// Grid plus factorized covariance, shared read-only by all replicas
/// of an experiment.
struct Workspace {
    DomainGrid grid;
    CovarianceModel cov;
};

Workspace make_workspace(const DomainSpec& spec, int n);

struct Replica {
    FieldSample field;
    GmcMeasure measure;
};

Replica sample_replica(const Workspace& ws, const CouplingParams& params,
                       std::uint64_t seed);

LiouvilleSpectrum replica_spectrum(const Workspace& ws, const Replica& rep);

}  // namespace lqg
