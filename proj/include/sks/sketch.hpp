// Linear sketches over an implicitly maintained n x d matrix fed by
// turnstile updates (i, j, delta). All three structures are linear in the
// stream, mergeable when built with identical headers, and queryable with
// a right-side projector applied after the fact.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sks/linalg.hpp"
#include "sks/rand.hpp"
#include "sks/stream.hpp"

namespace sks {

enum class SketchKind : uint8_t { ams = 1, countsketch = 2, estimator = 3 };

using OffsetRows = std::vector<std::pair<int, RowVec>>;

// Sign-combined Frobenius estimator: groups x copies accumulators
// v_c = sum_i s_c(i) A_i, mean of ||v_c P - offset_c||^2 within a group,
// median across groups, square root at the end. Layout is 6 groups of
// ceil(8/eps^2) copies.
class AmsM {
public:
    AmsM(int n, int d, double eps, uint64_t seed);

    void reset(uint64_t seed);
    void update(int i, int j, double delta);
    void add_row(int i, const RowVec& row) { add_scaled_row(i, row, 1.0); }
    void add_scaled_row(int i, const RowVec& row, double s);

    // estimate of ||A P||_F, or ||A P - M||_F with sparse offset rows M
    double estimate(const Projector& p) const;
    double estimate(const Projector& p, const OffsetRows& offset) const;

    // post-projection accumulators (total_copies x d, flattened)
    std::vector<double> cells_after(const Projector& p) const;
    std::vector<double> dump_cells() const { return acc_; }
    void load_cells(std::vector<double> cells);

    void merge(const AmsM& other);
    std::string serialize() const;
    static AmsM deserialize(const std::string& blob);

    int n() const { return n_; }
    int d() const { return d_; }
    double eps() const { return eps_; }
    uint64_t seed() const { return seed_; }
    int groups() const { return groups_; }
    int copies_per_group() const { return per_group_; }
    int total_copies() const { return total_; }
    std::string header_bytes() const;

private:
    int n_, d_;
    double eps_;
    uint64_t seed_;
    int groups_, per_group_, total_, blocks_;
    HashFamily signs_;
    std::vector<double> acc_;  // total_ x d

    void accumulate_signed(std::vector<double>& buf, int i, const double* row, int dim,
                           double s) const;
};

// CountSketch table of d-vectors: r independent rows of b buckets each.
// query_row returns the recovered (post-projection) row; the returned
// vector is the candidate whose norm is the median of the r candidate
// norms, lowest table row on ties, so it stays a signed bucket sum, i.e.
// a linear combination of rows of A P.
class CountSketchM {
public:
    CountSketchM(int n, int d, int r, int b, uint64_t seed);

    static constexpr int kDefaultRows = 7;
    static int default_buckets(double eps);  // max(64, ceil(32/eps^2))

    void reset(uint64_t seed);
    void update(int i, int j, double delta);
    void add_row(int i, const RowVec& row) { add_scaled_row(i, row, 1.0); }
    void add_scaled_row(int i, const RowVec& row, double s);

    RowVec query_row(const Projector& p, int i) const;
    double query_row_norm(const Projector& p, int i) const;

    struct TopRow {
        int i;
        double norm;
        RowVec row;
    };
    // m rows with largest recovered norms, descending, lowest index on ties
    std::vector<TopRow> top_rows(const Projector& p, int m) const;

    std::vector<double> cells_after(const Projector& p) const;
    std::vector<double> dump_cells() const;
    void load_cells(const std::vector<double>& cells);

    void merge(const CountSketchM& other);
    std::string serialize() const;
    static CountSketchM deserialize(const std::string& blob);

    int n() const { return n_; }
    int d() const { return d_; }
    int rows() const { return r_; }
    int buckets() const { return b_; }
    uint64_t seed() const { return seed_; }
    std::string header_bytes() const;

private:
    int n_, d_, r_, b_;
    uint64_t seed_;
    HashFamily sgn_, bkt_;
    // lazily zeroed cells: a cell is live only when its epoch matches
    std::vector<double> cells_;    // r*b*d
    mutable std::vector<uint32_t> epoch_;  // r*b
    uint32_t cur_ = 1;

    uint64_t cell_key(int k, int i) const { return ((uint64_t)k << 32) | (uint32_t)i; }
    double* live_cell(int k, int h);
    const double* cell_or_null(int k, int h) const;
    void materialize_all();
};

// One-pass estimator of ||A P||_{1,2} up to a fixed factor xi: nested
// row subsamples (level j keeps rows with u(i) <= 2^-j), a CountSketch
// per level, and dyadic band counting at query time.
class EstimatorM {
public:
    EstimatorM(int n, int d, uint64_t seed, int r0 = 5, int b0 = 256, double xi = 4.0);

    void reset(uint64_t seed);
    void update(int i, int j, double delta);
    void add_row(int i, const RowVec& row) { add_scaled_row(i, row, 1.0); }
    void add_scaled_row(int i, const RowVec& row, double s);

    // F_hat with ||A P||_{1,2} <= F_hat <= xi * ||A P||_{1,2} (whp)
    double estimate(const Projector& p) const;

    std::vector<double> cells_after(const Projector& p) const;
    std::vector<double> dump_cells() const;
    void load_cells(const std::vector<double>& cells);

    void merge(const EstimatorM& other);
    std::string serialize() const;
    static EstimatorM deserialize(const std::string& blob);

    int n() const { return n_; }
    int d() const { return d_; }
    int levels() const { return levels_; }
    double xi() const { return xi_; }
    uint64_t seed() const { return seed_; }
    std::string header_bytes() const;

private:
    int n_, d_, levels_, r0_, b0_;
    double xi_;
    uint64_t seed_;
    HashFamily memb_;
    std::vector<CountSketchM> lv_;

    int max_level(int i) const;
    static constexpr int kBandCap = 16;
};

// blob helpers (kind is byte 8, after the magic)
SketchKind blob_kind(const std::string& blob);
std::string merge_blobs(const std::string& a, const std::string& b);
std::string blob_summary(const std::string& blob);

template <class Sketch>
void ingest(Sketch& sk, const StreamData& sd) {
    if (sd.turnstile) {
        for (const auto& u : sd.updates) sk.update(u.i, u.j, u.delta);
    } else {
        for (int i = 0; i < sd.n; ++i) sk.add_row(i, sd.rows[i]);
    }
}

}  // namespace sks
