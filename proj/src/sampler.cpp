#include "sks/sampler.hpp"

#include <cmath>
#include <stdexcept>

namespace sks {

namespace {

double log_n(int n) { return std::log((double)std::max(n, 2)); }

int inner_buckets_for(int p, int n, double eps, const SamplerParams& prm) {
    if (prm.buckets_override > 0) return prm.buckets_override;
    double b;
    if (p == 2) {
        b = 32.0 / (eps * eps);
    } else {
        double ln = log_n(n);
        b = 32.0 * ln * ln / (eps * eps);
    }
    return std::max(256, (int)std::ceil(b));
}

}  // namespace

LpSampler::LpSampler(int p, int n, int d, double eps, uint64_t seed, SamplerParams prm)
    : p_(p),
      n_(n),
      d_(d),
      eps_(eps),
      seed_(seed),
      prm_(prm),
      tfam_(HashFamily::uniform_family(mix64(seed, tag("lp.scale")))),
      ams_s_(n, d, 1.0 / 3.0, mix64(seed, tag("lp.shat"))),
      cs_(n, d, prm.cs_rows, inner_buckets_for(p, n, eps, prm), mix64(seed, tag("lp.cs"))) {
    if (p != 1 && p != 2) throw std::invalid_argument("LpSampler: p must be 1 or 2");
    if (!(eps > 0.0) || eps >= 1.0) throw std::invalid_argument("LpSampler: eps must be in (0,1)");
    if (p_ == 2)
        ams_f_.emplace(n, d, 1.0 / 3.0, mix64(seed, tag("lp.fhat")));
    else
        est_f_.emplace(n, d, mix64(seed, tag("lp.fhat")));
}

void LpSampler::reset(uint64_t seed) {
    seed_ = seed;
    tfam_ = HashFamily::uniform_family(mix64(seed, tag("lp.scale")));
    ams_s_.reset(mix64(seed, tag("lp.shat")));
    cs_.reset(mix64(seed, tag("lp.cs")));
    if (ams_f_) ams_f_->reset(mix64(seed, tag("lp.fhat")));
    if (est_f_) est_f_->reset(mix64(seed, tag("lp.fhat")));
}

double LpSampler::row_weight(int i) const {
    double t = uniform_scale(tfam_, (uint64_t)i);
    return p_ == 2 ? 1.0 / std::sqrt(t) : 1.0 / t;
}

void LpSampler::update(int i, int j, double delta) {
    if (ams_f_) ams_f_->update(i, j, delta);
    if (est_f_) est_f_->update(i, j, delta);
    double w = row_weight(i);
    ams_s_.update(i, j, delta * w);
    cs_.update(i, j, delta * w);
}

void LpSampler::add_row(int i, const RowVec& row) {
    if (ams_f_) ams_f_->add_row(i, row);
    if (est_f_) est_f_->add_row(i, row);
    double w = row_weight(i);
    ams_s_.add_scaled_row(i, row, w);
    cs_.add_scaled_row(i, row, w);
}

double LpSampler::k_value() const {
    if (p_ == 2) return prm_.c_K * log_n(n_) / eps_;
    return prm_.c_row * log_n(n_) / (eps_ * eps_);
}

double LpSampler::tail_threshold_factor() const {
    if (p_ == 2) return std::sqrt(k_value());
    return prm_.c_tail * log_n(n_) / eps_;
}

double LpSampler::row_threshold_factor() const {
    if (p_ == 2) return std::sqrt(k_value());
    return prm_.c_row * log_n(n_) / (eps_ * eps_);
}

int LpSampler::inner_buckets() const { return cs_.buckets(); }

SampleOutcome LpSampler::finalize(const Projector& proj) const {
    SampleOutcome out;
    double fhat = p_ == 2 ? 1.5 * ams_f_->estimate(proj) : est_f_->estimate(proj);
    out.f_hat = fhat;

    int m0 = std::min(n_, (int)std::ceil(2.0 / (eps_ * eps_)));
    auto tops = cs_.top_rows(proj, m0);

    OffsetRows offset;
    offset.reserve(tops.size());
    for (const auto& t : tops) offset.emplace_back(t.i, t.row);
    double shat = 1.5 * ams_s_.estimate(proj, offset);

    double best = tops.empty() ? 0.0 : tops.front().norm;
    if (shat > tail_threshold_factor() * fhat) return out;
    if (best < row_threshold_factor() * fhat || best <= 0.0) return out;

    const auto& win = tops.front();
    double t = uniform_scale(tfam_, (uint64_t)win.i);
    out.ok = true;
    out.index = win.i;
    out.scale = t;
    out.noisy_row = win.row;
    double back = p_ == 2 ? std::sqrt(t) : t;
    scale(out.noisy_row, back);
    return out;
}

int sampler_reps(int p, int n, double eps, double delta, const SamplerParams& prm) {
    if (!(delta > 0.0) || delta >= 1.0)
        throw std::invalid_argument("sampler_reps: delta must be in (0,1)");
    double k = p == 2 ? prm.c_K * log_n(n) / eps : prm.c_row * log_n(n) / (eps * eps);
    return std::max(1, (int)std::ceil(prm.c_rep * k * std::log(1.0 / delta)));
}

SampleOutcome multi_sample(const StreamData& sd, const Projector& proj, int p, double eps,
                           double delta, uint64_t seed, const SamplerParams& prm) {
    int m = sampler_reps(p, sd.n, eps, delta, prm);
    LpSampler inst(p, sd.n, sd.d, eps, mix64(seed, tag("sampler.inst"), 0), prm);
    SampleOutcome first_fail;
    bool have_first = false;
    for (int t = 0; t < m; ++t) {
        if (t > 0) inst.reset(mix64(seed, tag("sampler.inst"), (uint64_t)t));
        ingest(inst, sd);
        SampleOutcome oc = inst.finalize(proj);
        if (oc.ok) return oc;
        if (!have_first) {
            first_fail = oc;
            have_first = true;
        }
    }
    return first_fail;
}

}  // namespace sks
