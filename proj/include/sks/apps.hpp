// End-to-end one-pass routines built on the samplers: row subset
// selection, subspace approximation (direct and bicriteria), projective
// clustering candidate reduction, and volume maximization, all over
// turnstile streams. Each returns the selected rows plus the objective
// value evaluated against the materialized matrix.
#pragma once

#include <cstdint>
#include <vector>

#include "sks/adaptive.hpp"
#include "sks/linalg.hpp"
#include "sks/sampler.hpp"
#include "sks/stream.hpp"

namespace sks {

enum class Objective { rss, subspace, cluster, volume };

struct SummaryResult {
    Objective objective = Objective::rss;
    int p = 2;
    SampledSubspace sub;
    double cost = 0.0;
    // projective clustering: flats were not enumerated, cost is the
    // single-flat lower bound
    bool cost_is_lower_bound = false;
    std::vector<std::vector<int>> flats;  // indices into sub.rows
};

struct AppOptions {
    double delta = 0.01;  // per-draw failure budget handed to multi_sample
    SamplerParams sampler;
};

// negative fields pick the defaults; rounds = 0 (no oversampling) with
// unions = 1 collapses to plain subspace_approx, same seed lineage
struct BicriteriaSchedule {
    int rounds = -1;  // default ceil(k ln(k+1)) + 1
    int batch = -1;   // default shrink-scaled oversampling formula
    int unions = -1;  // default k independent runs, results unioned
    double shrink = 0.125;
};

// k adaptive residual draws (p=2); cost = sum of squared distances of the
// rows of A to the span of the returned noisy rows
SummaryResult row_subset_select(const StreamData& sd, int k, double eps, uint64_t seed,
                                const AppOptions& opt = {});

// same draws, cost reported as (sum_i d(A_i, Z)^p)^(1/p)
SummaryResult subspace_approx(const StreamData& sd, int k, int p, double eps, uint64_t seed,
                              const AppOptions& opt = {});

SummaryResult subspace_approx_bicriteria(const StreamData& sd, int k, int p, double eps,
                                         BicriteriaSchedule sched, uint64_t seed,
                                         const AppOptions& opt = {});

// candidate set for s clusters of dimension k: a bicriteria subspace at
// dimension k*s plus r_extra residual draws away from it. Exhaustive
// flat extraction only when k*s <= 4 and the candidate set is small;
// otherwise cost falls back to the single-flat lower bound.
SummaryResult projective_cluster_reduce(const StreamData& sd, int k, int s, int p, double eps,
                                        uint64_t seed, int r_extra = 0,
                                        BicriteriaSchedule sched = {}, const AppOptions& opt = {});

// greedy-with-certificates volume maximization: per round take the
// CountSketch row certified against alpha^2/(4nk) * F_hat^2, else fall
// back to a residual sample at eps = 1/4
SummaryResult volume_max_turnstile(const StreamData& sd, int k, double alpha, uint64_t seed,
                                   const AppOptions& opt = {});

int bicriteria_default_rounds(int k);
int bicriteria_default_batch(int k, int p, double eps, double shrink);
int projective_default_extra(int k, int s, int p, double eps, double shrink);

}  // namespace sks
