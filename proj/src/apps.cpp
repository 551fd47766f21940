#include "sks/apps.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "sks/sketch.hpp"

namespace sks {

namespace {

// sum_i d(A_i, span)^pw using the library's own orthogonalization
double cost_against_basis(const DenseMatrix& a, const OrthoBasis& basis, double pw) {
    double s = 0.0;
    for (int i = 0; i < a.n; ++i) {
        double dn = nrm2(basis.residual(a[i]));
        s += pw == 2.0 ? dn * dn : std::pow(dn, pw);
    }
    return s;
}

SampledSubspace union_subspaces(int d, const std::vector<SampledSubspace>& parts) {
    SampledSubspace u;
    u.basis = OrthoBasis(d);
    for (const auto& p : parts) {
        for (size_t t = 0; t < p.rows.size(); ++t) {
            u.rows.push_back(p.rows[t]);
            u.indices.push_back(p.indices[t]);
            u.basis.extend(p.rows[t]);
        }
        u.requested += p.requested;
        u.rank_exhausted = u.rank_exhausted || p.rank_exhausted;
    }
    return u;
}

}  // namespace

int bicriteria_default_rounds(int k) {
    return (int)std::ceil(k * std::log((double)k + 1.0)) + 1;
}

int bicriteria_default_batch(int k, int p, double eps, double shrink) {
    double dd = eps / std::max(1.0, std::log2((double)std::max(k, 2)));
    double raw = std::pow(2.0 * k / dd, (double)p) * (k / dd) * std::log(k / dd + 1.0);
    return std::max(1, (int)std::ceil(shrink * raw));
}

int projective_default_extra(int k, int s, int p, double eps, double shrink) {
    double raw = std::pow((double)k * k / eps, (double)p) * std::pow((double)k, 4.0) * s /
                 (eps * eps);
    return std::max(1, (int)std::ceil(shrink * raw));
}

SummaryResult row_subset_select(const StreamData& sd, int k, double eps, uint64_t seed,
                                const AppOptions& opt) {
    SummaryResult r;
    r.objective = Objective::rss;
    r.p = 2;
    r.sub = adaptive_finalize(sd, 2, k, eps, opt.delta, mix64(seed, tag("app.select"), 0),
                              opt.sampler);
    DenseMatrix a = sd.to_dense();
    r.cost = cost_against_basis(a, r.sub.basis, 2.0);
    return r;
}

SummaryResult subspace_approx(const StreamData& sd, int k, int p, double eps, uint64_t seed,
                              const AppOptions& opt) {
    SummaryResult r;
    r.objective = Objective::subspace;
    r.p = p;
    r.sub = adaptive_finalize(sd, p, k, eps, opt.delta, mix64(seed, tag("app.select"), 0),
                              opt.sampler);
    DenseMatrix a = sd.to_dense();
    r.cost = std::pow(cost_against_basis(a, r.sub.basis, (double)p), 1.0 / p);
    return r;
}

SummaryResult subspace_approx_bicriteria(const StreamData& sd, int k, int p, double eps,
                                         BicriteriaSchedule sched, uint64_t seed,
                                         const AppOptions& opt) {
    if (k < 1) throw std::invalid_argument("subspace_approx_bicriteria: k must be >= 1");
    int rounds = sched.rounds >= 0 ? sched.rounds : bicriteria_default_rounds(k);
    int batch = sched.batch >= 0 ? sched.batch : bicriteria_default_batch(k, p, eps, sched.shrink);
    int unions = sched.unions > 0 ? sched.unions : k;
    if (rounds > 0 && batch < 1)
        throw std::invalid_argument("subspace_approx_bicriteria: batch must be >= 1");

    std::vector<int> round_sizes((size_t)k, 1);
    round_sizes.insert(round_sizes.end(), (size_t)rounds, batch);
    int banks = k + rounds * batch;

    // union 0 shares the plain subspace_approx lineage, so a schedule with
    // no oversampling rounds and a single union reproduces it exactly
    std::vector<SampledSubspace> runs;
    for (int u = 0; u < unions; ++u)
        runs.push_back(batch_adaptive_finalize(sd, p, banks, round_sizes, eps, opt.delta,
                                               mix64(seed, tag("app.select"), (uint64_t)u),
                                               opt.sampler));
    SummaryResult r;
    r.objective = Objective::subspace;
    r.p = p;
    r.sub = union_subspaces(sd.d, runs);
    DenseMatrix a = sd.to_dense();
    r.cost = std::pow(cost_against_basis(a, r.sub.basis, (double)p), 1.0 / p);
    return r;
}

SummaryResult projective_cluster_reduce(const StreamData& sd, int k, int s, int p, double eps,
                                        uint64_t seed, int r_extra, BicriteriaSchedule sched,
                                        const AppOptions& opt) {
    if (k < 1 || s < 1) throw std::invalid_argument("projective_cluster_reduce: k, s must be >= 1");
    int kd = k * s;
    // reduced default schedule: flat extraction needs a bounded candidate set
    if (sched.rounds < 0) sched.rounds = bicriteria_default_rounds(kd);
    if (sched.batch < 0)
        sched.batch = std::max(1, (int)std::ceil(4.0 * kd / eps / std::max(sched.rounds, 1)));
    if (sched.unions < 1) sched.unions = 1;
    if (r_extra <= 0) r_extra = std::min(projective_default_extra(k, s, p, eps, sched.shrink),
                                         4 * kd + 8);

    SummaryResult v = subspace_approx_bicriteria(sd, kd, p, eps, sched,
                                                 mix64(seed, tag("app.pc.v")), opt);

    std::vector<int> extra((size_t)r_extra, 1);
    SampledSubspace srows =
        batch_adaptive_finalize(sd, p, r_extra, extra, eps, opt.delta,
                                mix64(seed, tag("app.pc.s")), opt.sampler, &v.sub.basis);

    SummaryResult r;
    r.objective = Objective::cluster;
    r.p = p;
    r.sub = union_subspaces(sd.d, {v.sub, srows});

    DenseMatrix a = sd.to_dense();
    int m = (int)r.sub.rows.size();
    bool extract = kd <= 4 && m <= 64 && m >= k;
    if (!extract) {
        r.cost_is_lower_bound = true;
        r.cost = std::pow(cost_against_basis(a, r.sub.basis, (double)p), 1.0 / p);
        return r;
    }

    // exhaustive search over s flats, each the span of k candidate rows
    std::vector<std::vector<int>> flats;
    {
        std::vector<int> idx(k);
        std::function<void(int, int)> gen = [&](int start, int at) {
            if (at == k) {
                flats.push_back(idx);
                return;
            }
            for (int i = start; i < m; ++i) {
                idx[at] = i;
                gen(i + 1, at + 1);
            }
        };
        gen(0, 0);
    }
    if ((int)flats.size() < s) {
        r.cost_is_lower_bound = true;
        r.cost = std::pow(cost_against_basis(a, r.sub.basis, (double)p), 1.0 / p);
        return r;
    }
    std::vector<OrthoBasis> bases;
    bases.reserve(flats.size());
    for (const auto& f : flats) {
        OrthoBasis b(sd.d);
        for (int t : f) b.extend(r.sub.rows[t]);
        bases.push_back(std::move(b));
    }

    double best = -1.0;
    std::vector<int> pick((size_t)s, 0);
    std::vector<int> best_pick;
    std::function<void(int, int)> choose = [&](int start, int at) {
        if (at == s) {
            double tot = 0.0;
            for (int i = 0; i < a.n; ++i) {
                double dmin = -1.0;
                for (int t = 0; t < s; ++t) {
                    double dn = nrm2(bases[pick[t]].residual(a[i]));
                    if (dmin < 0.0 || dn < dmin) dmin = dn;
                }
                tot += p == 2 ? dmin * dmin : std::pow(dmin, (double)p);
            }
            if (best < 0.0 || tot < best) {
                best = tot;
                best_pick.assign(pick.begin(), pick.end());
            }
            return;
        }
        for (int f = start; f < (int)flats.size(); ++f) {
            pick[at] = f;
            choose(f + 1, at + 1);
        }
    };
    choose(0, 0);

    r.cost = std::pow(std::max(best, 0.0), 1.0 / p);
    for (int f : best_pick) r.flats.push_back(flats[f]);
    return r;
}

SummaryResult volume_max_turnstile(const StreamData& sd, int k, double alpha, uint64_t seed,
                                   const AppOptions& opt) {
    if (k < 1) throw std::invalid_argument("volume_max_turnstile: k must be >= 1");
    if (!(alpha >= 1.0)) throw std::invalid_argument("volume_max_turnstile: alpha must be >= 1");
    SummaryResult r;
    r.objective = Objective::volume;
    r.p = 2;
    r.sub.basis = OrthoBasis(sd.d);
    r.sub.requested = k;

    long long nk = (long long)sd.n * k;
    int b = (int)std::min<long long>(std::max<long long>(64, (long long)std::ceil(4.0 * nk / (alpha * alpha))),
                                     4096);

    for (int round = 0; round < k; ++round) {
        uint64_t rs = mix64(seed, tag("app.volmax"), (uint64_t)round);
        Projector proj = Projector::complement(r.sub.basis);

        CountSketchM cs(sd.n, sd.d, CountSketchM::kDefaultRows, b, mix64(rs, 1));
        AmsM ams(sd.n, sd.d, 1.0 / 3.0, mix64(rs, 2));
        ingest(cs, sd);
        ingest(ams, sd);

        double fhat = ams.estimate(proj);
        auto tops = cs.top_rows(proj, 1);
        double thr2 = alpha * alpha / (4.0 * nk) * fhat * fhat;

        if (!tops.empty() && fhat > 0.0 && tops[0].norm * tops[0].norm >= thr2) {
            r.sub.indices.push_back(tops[0].i);
            r.sub.rows.push_back(tops[0].row);
            r.sub.basis.extend(tops[0].row);
            continue;
        }
        SampleOutcome oc = multi_sample(sd, proj, 2, 0.25, opt.delta, mix64(rs, 3), opt.sampler);
        if (!oc.ok) {
            r.sub.rank_exhausted = oc.f_hat < 1e-12;
            break;
        }
        r.sub.indices.push_back(oc.index);
        r.sub.rows.push_back(oc.noisy_row);
        r.sub.basis.extend(oc.noisy_row);
    }
    r.cost = r.sub.rows.empty() ? 0.0 : parallelepiped_volume(r.sub.rows);
    return r;
}

}  // namespace sks
