// Adaptive sampling driver: k rounds of residual row sampling where each
// round's projector is the orthogonal complement of everything sampled so
// far. Rounds draw through multi_sample banks with disjoint seed
// lineages; an oversampling schedule draws several rows against the same
// frozen projector before re-orthonormalizing.
#pragma once

#include <cstdint>
#include <vector>

#include "sks/linalg.hpp"
#include "sks/sampler.hpp"
#include "sks/stream.hpp"

namespace sks {

struct SampledSubspace {
    std::vector<RowVec> rows;  // noisy sampled rows, draw order
    std::vector<int> indices;  // claimed row indices, draw order
    OrthoBasis basis;          // orthonormalized span of rows
    bool rank_exhausted = false;
    int requested = 0;  // draws asked for
};

// round_sizes[i] draws are taken against the projector frozen at the
// start of round i. Needs sum(round_sizes) <= bank_count, else throws.
// A batch with zero successful draws stops the procedure; the
// rank_exhausted flag is set when the residual norm estimate at that
// point sits below the 1e-12 floor.
SampledSubspace batch_adaptive_finalize(const StreamData& sd, int p, int bank_count,
                                        const std::vector<int>& round_sizes, double eps,
                                        double delta, uint64_t seed,
                                        const SamplerParams& prm = {},
                                        const OrthoBasis* initial = nullptr);

// k rounds of one draw each
SampledSubspace adaptive_finalize(const StreamData& sd, int p, int k, double eps, double delta,
                                  uint64_t seed, const SamplerParams& prm = {});

// seed handed to bank's multi_sample; with k = 1 the whole procedure is
// exactly multi_sample under adaptive_bank_seed(seed, 0)
uint64_t adaptive_bank_seed(uint64_t seed, int bank);

}  // namespace sks
