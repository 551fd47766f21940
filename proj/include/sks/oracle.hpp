// Exact reference computations for small instances: exact sampling laws,
// exhaustive optima, SVD baselines, and total-variation distance against
// empirical tallies. Deliberately built on an independent linear-algebra
// path (Eigen, in the .cpp) rather than the library's own primitives.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sks/linalg.hpp"

namespace sks {

struct ExactDistribution {
    // parallel arrays; outcomes are index tuples (single draws have
    // length 1, adaptive draws length k padded with -1 on early stop)
    std::vector<std::vector<int>> outcomes;
    std::vector<double> probs;

    double prob_of(const std::vector<int>& outcome) const;
};

// law of one residual row sample: P(i) proportional to ||A_i P||_2^p
ExactDistribution exact_lp2_distribution(const DenseMatrix& a, const Projector& p, int pnorm);

// joint law of k exact adaptive residual draws (chain rule over ordered
// tuples; exhausted residuals pad the tuple with -1). Exponential:
// guarded to n <= 10, k <= 3.
ExactDistribution exact_adaptive_distribution(const DenseMatrix& a, int k, int pnorm);

// law over k-subsets with probability proportional to squared spanned
// volume; guarded to C(n,k) <= 1e6
ExactDistribution exact_volume_sampling(const DenseMatrix& a, int k);

// exhaustive max-volume k-subset, lexicographically smallest on ties
std::pair<std::vector<int>, double> exact_volume_max(const DenseMatrix& a, int k);

struct RankKError {
    double value = 0.0;
    bool is_exact = true;  // false for p=1, where the SVD residual is a
                           // reference point, not the optimum
};
RankKError best_rank_k_error(const DenseMatrix& a, int k, int pnorm);

// 0.5 * sum |p_i - q_i| over the union of supports; counts is an
// empirical tally with the given total
double tv_distance(const ExactDistribution& exact,
                   const std::map<std::vector<int>, long long>& counts, long long total);

// distance helpers on the oracle's own path
double dist_to_span(const RowVec& x, const std::vector<RowVec>& span_rows);
double sum_dist_pow(const DenseMatrix& a, const std::vector<RowVec>& span_rows, double pw);

}  // namespace sks
