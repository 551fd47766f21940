// Row-arrival (insertion-only) counterparts: greedy volume maximization,
// a composable merge-reduce core-set tree over it, directional-width
// eps-kernels for dimension <= 4, and a Gaussian embedding front-end for
// higher dimensions. Row streams only; turnstile streams do not apply.
#pragma once

#include <cstdint>
#include <vector>

#include "sks/apps.hpp"
#include "sks/linalg.hpp"
#include "sks/stream.hpp"

namespace sks {

// k passes of farthest-residual selection; ties to the lowest index;
// stops early when the residual drops to zero
std::vector<int> greedy_volume_max(const std::vector<RowVec>& pts, int k);

// merge-reduce tree: leaves hold c*k raw points, `branch` sets per level
// are unioned and reduced back to c*k by greedy selection
class CoresetTree {
public:
    CoresetTree(int d, int k, int branch = 4, int c = 3);

    void push(int idx, const RowVec& pt);
    // union of every pending set, reduced once more; ascending indices
    std::vector<int> finalize_indices();
    const std::vector<RowVec>& points_by_index() const { return pts_; }

    int reduced_size() const { return c_ * k_; }

private:
    struct Entry {
        int idx;
        RowVec pt;
    };
    int d_, k_, branch_, c_;
    std::vector<Entry> leaf_;
    std::vector<std::vector<std::vector<Entry>>> levels_;
    std::vector<RowVec> pts_;  // all pushed points, by push order

    std::vector<Entry> reduce(std::vector<Entry> in) const;
    void promote(size_t level, std::vector<Entry> set);
};

// fixed direction grid with angular step <= eps over S^{d-1}; d <= 4
std::vector<RowVec> direction_grid(int d, double eps);

double directional_width(const std::vector<RowVec>& pts, const RowVec& dir);

// streaming extreme-point tracker along a direction grid
class EpsKernelBuilder {
public:
    EpsKernelBuilder(int d, double eps);

    void push(int idx, const RowVec& pt);
    std::vector<int> kernel_indices() const;  // sorted, deduplicated
    const std::vector<RowVec>& directions() const { return dirs_; }

private:
    int d_;
    double eps_;
    std::vector<RowVec> dirs_;
    std::vector<int> arg_max_, arg_min_;
    std::vector<double> max_v_, min_v_;
};

std::vector<int> eps_kernel(const std::vector<RowVec>& pts, double eps);

struct JlResult {
    DenseMatrix points;  // n x r embedded points
    DenseMatrix g;       // d x r, entries N(0, 1/r)
    int r = 0;
};
JlResult jl_embed(const std::vector<RowVec>& pts, int k, double c, uint64_t seed);
// points right-multiplied by an explicit matrix (identity g = no-op)
DenseMatrix jl_apply(const std::vector<RowVec>& pts, const DenseMatrix& g);

enum class RowArrivalMode { greedy, coreset, exp_d, jl_exp_d };

struct RowArrivalOptions {
    int coreset_branch = 4;
    int coreset_c = 3;
    double kernel_eps = 0.25;
    double jl_c = 2.0;
};

// rows-mode streams only; picks k points, reports original rows/indices
// and the spanned parallelepiped volume
SummaryResult volume_max_row_arrival(const StreamData& sd, int k, RowArrivalMode mode,
                                     uint64_t seed, const RowArrivalOptions& opt = {});

}  // namespace sks
