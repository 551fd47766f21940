// One-pass row samplers over a turnstile stream: a single instance either
// FAILs or returns one row index with probability proportional to
// ||A_i P||^p (p = 2 or 1), plus the recovered (noisy, post-projection)
// row itself. multi_sample runs enough independent instances that at
// least one succeeds with probability 1 - delta.
#pragma once

#include <cstdint>
#include <optional>

#include "sks/linalg.hpp"
#include "sks/rand.hpp"
#include "sks/sketch.hpp"
#include "sks/stream.hpp"

namespace sks {

struct SamplerParams {
    double c_K = 1.0;     // p=2 acceptance-threshold constant
    double c_tail = 1.0;  // p=1 tail-threshold constant
    double c_row = 0.15;  // p=1 row-threshold constant
    double c_rep = 4.0;   // repetition multiplier in multi_sample
    int cs_rows = 7;
    int buckets_override = 0;  // 0 -> by formula
};

struct SampleOutcome {
    bool ok = false;   // true = SAMPLE, false = FAIL
    int index = -1;
    RowVec noisy_row;  // recovered row, post-projection, rescaled back
    double scale = 0.0;  // the uniform t_i of the returned row
    double f_hat = 0.0;  // residual norm estimate seen by this instance
};

class LpSampler {
public:
    LpSampler(int p, int n, int d, double eps, uint64_t seed, SamplerParams prm = {});

    void reset(uint64_t seed);
    void update(int i, int j, double delta);
    void add_row(int i, const RowVec& row);

    SampleOutcome finalize(const Projector& proj) const;

    // acceptance constant: K = c_K ln(max(n,2)) / eps for p=2,
    // K = c_row ln(max(n,2)) / eps^2 for p=1 (drives repetitions)
    double k_value() const;
    double tail_threshold_factor() const;  // multiplies f_hat
    double row_threshold_factor() const;

    int p() const { return p_; }
    int n() const { return n_; }
    int d() const { return d_; }
    double eps() const { return eps_; }
    uint64_t seed() const { return seed_; }
    int inner_buckets() const;

private:
    int p_, n_, d_;
    double eps_;
    uint64_t seed_;
    SamplerParams prm_;
    HashFamily tfam_;
    std::optional<AmsM> ams_f_;      // p=2 residual norm estimate, on A
    std::optional<EstimatorM> est_f_;  // p=1 counterpart
    AmsM ams_s_;                     // tail estimate, on the rescaled B
    CountSketchM cs_;                // row recovery, on B

    double row_weight(int i) const;  // 1/t^{1/p}
};

int sampler_reps(int p, int n, double eps, double delta, const SamplerParams& prm = {});

// first successful instance among sampler_reps() freshly seeded ones;
// FAIL outcome (with the first instance's f_hat) if every one fails
SampleOutcome multi_sample(const StreamData& sd, const Projector& proj, int p, double eps,
                           double delta, uint64_t seed, const SamplerParams& prm = {});

}  // namespace sks
