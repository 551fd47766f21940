#include "sks/accept.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include "sks/adaptive.hpp"
#include "sks/apps.hpp"
#include "sks/linalg.hpp"
#include "sks/oracle.hpp"
#include "sks/rand.hpp"
#include "sks/rowarrival.hpp"
#include "sks/sampler.hpp"
#include "sks/sketch.hpp"
#include "sks/stream.hpp"

namespace sks {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

DenseMatrix random_int_matrix(int n, int d, uint64_t seed, int span = 8) {
    DenseMatrix a(n, d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) {
            uint64_t w = mix64(seed, (uint64_t)i * 131071 + j);
            a[i][j] = (double)((long long)(w % (2 * span + 1)) - span);
        }
    return a;
}

DenseMatrix random_gauss_matrix(int n, int d, uint64_t seed) {
    DenseMatrix a(n, d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) a[i][j] = gaussian(seed, (uint64_t)i * 8191 + j);
    return a;
}

StreamData rows_stream(const DenseMatrix& a) {
    StreamData s;
    s.turnstile = false;
    s.n = a.n;
    s.d = a.d;
    s.rows = a;
    return s;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// the five pinned sampling-law instances, all 8x4
DenseMatrix law_instance(int idx) {
    const int n = 8, d = 4;
    if (idx == 0) {
        DenseMatrix a(n, d);
        a[0][0] = 2.0;  // law (0.8, 0.2) under p=2, (2/3, 1/3) under p=1
        a[1][1] = 1.0;
        return a;
    }
    if (idx == 1) {
        DenseMatrix a(n, d);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < d; ++j) a[i][j] = 1.0;
        return a;
    }
    return random_int_matrix(n, d, 0x10C0DE + (uint64_t)idx * 7717);
}

CriterionResult sampling_law_criterion(int id, int p, uint64_t master, long trials) {
    auto t0 = Clock::now();
    CriterionResult r;
    r.id = id;
    r.name = p == 2 ? "sample-law-l22" : "sample-law-l12";
    long target = trials > 0 ? trials : 50000;
    r.budget = 0.1 + 3.0 * std::sqrt(std::log(200.0) / (double)target);

    double eps = 0.1;
    std::ostringstream det;
    double worst = 0.0;
    for (int inst = 0; inst < 5; ++inst) {
        DenseMatrix a = law_instance(inst);
        StreamData sd = rows_stream(a);
        ExactDistribution exact = exact_lp2_distribution(a, Projector::identity(), p);

        LpSampler smp(p, a.n, a.d, eps, 1, {});
        std::map<std::vector<int>, long long> tally;
        long accepted = 0;
        long long tries = 0;
        long long cap = (long long)target * 4000;
        uint64_t lane = mix64(master, tag("accept.law"), (uint64_t)(p * 100 + inst));
        while (accepted < target && tries < cap) {
            smp.reset(mix64(lane, (uint64_t)tries));
            ++tries;
            ingest(smp, sd);
            SampleOutcome oc = smp.finalize(Projector::identity());
            if (!oc.ok) continue;
            ++accepted;
            ++tally[{oc.index}];
        }
        if (accepted < target) {
            r.pass = false;
            r.measured = 1.0;
            r.detail = "instance " + std::to_string(inst) + " starved: " +
                       std::to_string(accepted) + " acceptances in " + std::to_string(tries) +
                       " tries";
            r.seconds = elapsed(t0);
            return r;
        }
        double tv = tv_distance(exact, tally, accepted);
        worst = std::max(worst, tv);
        det << (inst ? " " : "") << "tv" << inst << "=" << fmt(tv);
        det << "(rate=1/" << fmt((double)tries / (double)accepted) << ")";
    }
    r.measured = worst;
    r.pass = worst <= r.budget;
    r.detail = det.str();
    r.seconds = elapsed(t0);
    return r;
}

CriterionResult c1_linearity(uint64_t master, long trials) {
    auto t0 = Clock::now();
    CriterionResult r;
    r.id = 1;
    r.name = "linearity-merge";
    r.budget = 1e-9;
    long iters = trials > 0 ? trials : 100;
    const int n = 64, d = 8, len = 512;

    double worst = 0.0;
    for (long it = 0; it < iters; ++it) {
        uint64_t s = mix64(master, tag("accept.linear"), (uint64_t)it);
        StreamData full;
        full.turnstile = true;
        full.n = n;
        full.d = d;
        for (int u = 0; u < len; ++u) {
            uint64_t w = mix64(s, tag("upd"), (uint64_t)u);
            int i = (int)(w % n);
            int j = (int)((w >> 8) % d);
            double delta = (double)((long long)((w >> 16) % 201) - 100);
            full.updates.push_back({i, j, delta});
        }
        size_t cut = mix64(s, tag("cut")) % (len + 1);
        StreamData left = full, right = full;
        left.updates.assign(full.updates.begin(), full.updates.begin() + cut);
        right.updates.assign(full.updates.begin() + cut, full.updates.end());

        uint64_t ks = mix64(s, tag("sketchseed"));
        auto check = [&](auto make) {
            auto whole = make();
            auto a = make();
            auto b = make();
            ingest(whole, full);
            ingest(a, left);
            ingest(b, right);
            a.merge(b);
            auto ca = a.dump_cells();
            auto cw = whole.dump_cells();
            for (size_t t = 0; t < ca.size(); ++t)
                worst = std::max(worst, std::abs(ca[t] - cw[t]));
            // serialized round trip has to reproduce the same bytes
            auto blob = a.serialize();
            if (decltype(a)::deserialize(blob).serialize() != blob)
                worst = std::max(worst, 1.0);
        };
        check([&] { return AmsM(n, d, 1.0 / 3.0, ks); });
        check([&] { return CountSketchM(n, d, 5, 64, ks); });
        check([&] { return EstimatorM(n, d, ks, 5, 64); });
    }
    r.measured = worst;
    r.pass = worst <= r.budget;
    r.detail = "max cell delta across " + std::to_string(iters) + " random splits";
    r.seconds = elapsed(t0);
    return r;
}

CriterionResult c2_projection_commute(uint64_t master, long trials) {
    auto t0 = Clock::now();
    CriterionResult r;
    r.id = 2;
    r.name = "projection-commute";
    r.budget = 1e-9;
    long iters = trials > 0 ? trials : 50;
    const int n = 64, d = 8;

    double worst = 0.0;
    for (long it = 0; it < iters; ++it) {
        uint64_t s = mix64(master, tag("accept.commute"), (uint64_t)it);
        DenseMatrix a = random_int_matrix(n, d, mix64(s, 1));

        OrthoBasis vb(d);
        for (int t = 0; t < 3; ++t) {
            RowVec v(d);
            for (int j = 0; j < d; ++j) v[j] = gaussian(mix64(s, 2), (uint64_t)t * d + j);
            vb.extend(v);
        }
        DenseMatrix pm(d, d);
        for (int x = 0; x < d; ++x) {
            pm[x][x] = 1.0;
            for (const auto& u : vb.vecs)
                for (int y = 0; y < d; ++y) pm[x][y] -= u[x] * u[y];
        }
        Projector pexp = Projector::matrix(pm);

        DenseMatrix ap(n, d);
        for (int i = 0; i < n; ++i) ap.rows[i] = mat_vec_right(a[i], pm);

        uint64_t ks = mix64(s, tag("sketchseed"));
        auto check = [&](auto make) {
            auto lhs = make();
            auto rhs = make();
            for (int i = 0; i < n; ++i) lhs.add_row(i, a[i]);
            for (int i = 0; i < n; ++i) rhs.add_row(i, ap[i]);
            auto cl = lhs.cells_after(pexp);
            auto cr = rhs.cells_after(Projector::identity());
            for (size_t t = 0; t < cl.size(); ++t)
                worst = std::max(worst, std::abs(cl[t] - cr[t]));
        };
        check([&] { return AmsM(n, d, 1.0 / 3.0, ks); });
        check([&] { return CountSketchM(n, d, 5, 64, ks); });
        check([&] { return EstimatorM(n, d, ks, 5, 64); });
    }
    r.measured = worst;
    r.pass = worst <= r.budget;
    r.detail = "max cell delta, sketch-then-project vs project-then-sketch";
    r.seconds = elapsed(t0);
    return r;
}

CriterionResult c5_adaptive_law(uint64_t master, long trials) {
    auto t0 = Clock::now();
    CriterionResult r;
    r.id = 5;
    r.name = "adaptive-joint-law";
    long target = trials > 0 ? trials : 50000;
    int k = 2;
    r.budget = 0.1 + 3.0 * std::sqrt((std::log(200.0) + k * std::log(3.0)) / (double)target);

    std::vector<DenseMatrix> insts;
    {
        DenseMatrix a(3, 2);
        a[0][0] = 10.0;
        a[1][0] = 10.0;
        a[2][1] = 1.0;
        insts.push_back(a);
        DenseMatrix b(3, 3);
        b[0][0] = 2.0;
        b[1][1] = 2.0;
        b[2][2] = 2.0;
        insts.push_back(b);
    }

    std::ostringstream det;
    double worst = 0.0;
    for (size_t inst = 0; inst < insts.size(); ++inst) {
        const DenseMatrix& a = insts[inst];
        StreamData sd = rows_stream(a);
        ExactDistribution exact = exact_adaptive_distribution(a, k, 2);
        std::map<std::vector<int>, long long> tally;
        uint64_t lane = mix64(master, tag("accept.adaptive"), (uint64_t)inst);
        for (long run = 0; run < target; ++run) {
            SampledSubspace sub =
                adaptive_finalize(sd, 2, k, 0.1, 0.01, mix64(lane, (uint64_t)run));
            std::vector<int> tup = sub.indices;
            tup.resize(k, -1);
            ++tally[tup];
        }
        double tv = tv_distance(exact, tally, target);
        worst = std::max(worst, tv);
        det << (inst ? " " : "") << "tv" << inst << "=" << fmt(tv);
    }
    r.measured = worst;
    r.pass = worst <= r.budget;
    r.detail = det.str();
    r.seconds = elapsed(t0);
    return r;
}

CriterionResult c6_distortion(uint64_t master, long trials) {
    auto t0 = Clock::now();
    CriterionResult r;
    r.id = 6;
    r.name = "residual-distortion";
    long runs = trials > 0 ? trials : 100;
    r.budget = std::ceil(0.75 * (double)runs);
    r.budget_is_lower_bound = true;

    DenseMatrix a = random_int_matrix(16, 5, 0xD15702);
    StreamData sd = rows_stream(a);
    long ok = 0;
    for (long run = 0; run < runs; ++run) {
        SampledSubspace sub = adaptive_finalize(
            sd, 2, 2, 0.1, 0.01, mix64(master, tag("accept.distort"), (uint64_t)run));
        std::vector<RowVec> truth;
        for (int idx : sub.indices) truth.push_back(a[idx]);
        double cy = sum_dist_pow(a, sub.rows, 2.0);
        double cz = sum_dist_pow(a, truth, 2.0);
        if (cz <= 0.0) continue;
        double ratio = cy / cz;
        if (std::abs(ratio - 1.0) <= 0.25) ++ok;
    }
    r.measured = (double)ok;
    r.pass = (double)ok >= r.budget;
    r.detail = std::to_string(ok) + "/" + std::to_string(runs) +
               " runs with residual cost ratio within 25%";
    r.seconds = elapsed(t0);
    return r;
}

CriterionResult c7_rss(uint64_t master, long trials) {
    auto t0 = Clock::now();
    CriterionResult r;
    r.id = 7;
    r.name = "row-subset-cost";
    long runs = trials > 0 ? trials : 100;
    r.budget = std::ceil(0.55 * (double)runs);
    r.budget_is_lower_bound = true;

    const int k = 2;
    DenseMatrix a = random_int_matrix(32, 6, 0x5AB5E7);
    StreamData sd = rows_stream(a);
    double svd = best_rank_k_error(a, k, 2).value;
    double bound = 96.0 * svd * svd;  // 16 (k+1)! at k = 2

    long ok = 0;
    double worst = 0.0;
    for (long run = 0; run < runs; ++run) {
        SummaryResult res =
            row_subset_select(sd, k, 0.25, mix64(master, tag("accept.rss"), (uint64_t)run));
        worst = std::max(worst, res.cost);
        if (res.cost <= bound) ++ok;
    }
    r.measured = (double)ok;
    r.pass = (double)ok >= r.budget;
    r.detail = std::to_string(ok) + "/" + std::to_string(runs) + " under 96x optimal (worst cost " +
               fmt(worst) + ", bound " + fmt(bound) + ")";
    r.seconds = elapsed(t0);
    return r;
}

CriterionResult c8_volmax(uint64_t master, long trials) {
    auto t0 = Clock::now();
    CriterionResult r;
    r.id = 8;
    r.name = "volume-max-ratio";
    long runs = trials > 0 ? trials : 100;
    r.budget = std::ceil(0.55 * (double)runs);
    r.budget_is_lower_bound = true;

    const int k = 3;
    const double alpha = 2.0;
    DenseMatrix a = random_int_matrix(16, 5, 0xF01CA8E);
    StreamData sd = rows_stream(a);
    double opt = exact_volume_max(a, k).second;
    double bound = std::pow(alpha, k) * 6.0;  // alpha^k k!

    long ok = 0;
    for (long run = 0; run < runs; ++run) {
        SummaryResult res =
            volume_max_turnstile(sd, k, alpha, mix64(master, tag("accept.volmax"), (uint64_t)run));
        if ((int)res.sub.rows.size() == k && res.cost > 0.0 && opt / res.cost <= bound) ++ok;
    }
    r.measured = (double)ok;
    r.pass = (double)ok >= r.budget;
    r.detail = std::to_string(ok) + "/" + std::to_string(runs) + " within alpha^k k! of optimum " +
               fmt(opt);
    r.seconds = elapsed(t0);
    return r;
}

CriterionResult c9_greedy(uint64_t master, long trials) {
    auto t0 = Clock::now();
    CriterionResult r;
    r.id = 9;
    r.name = "greedy-volume-ratio";
    long runs = trials > 0 ? trials : 200;
    r.budget = (double)runs;
    r.budget_is_lower_bound = true;

    long ok = 0;
    for (long run = 0; run < runs; ++run) {
        uint64_t s = mix64(master, tag("accept.greedy"), (uint64_t)run);
        int n = 8 + (int)(mix64(s, 1) % 5);   // 8..12
        int k = 2 + (int)(mix64(s, 2) % 2);   // 2..3
        DenseMatrix a = random_int_matrix(n, 4, mix64(s, 3));
        auto picked = greedy_volume_max(a.rows, k);
        std::vector<RowVec> rows;
        for (int i : picked) rows.push_back(a[i]);
        double greedy = (int)rows.size() == k ? parallelepiped_volume(rows) : 0.0;
        double opt = exact_volume_max(a, k).second;
        double kfact = 1.0;
        for (int t = 2; t <= k; ++t) kfact *= t;
        if (opt <= 0.0 || greedy * kfact * (1.0 + 1e-9) >= opt) ++ok;
    }
    r.measured = (double)ok;
    r.pass = ok == runs;
    r.detail = std::to_string(ok) + "/" + std::to_string(runs) + " within k! of exhaustive optimum";
    r.seconds = elapsed(t0);
    return r;
}

CriterionResult c10_kernel(uint64_t master, long trials) {
    (void)master;
    auto t0 = Clock::now();
    CriterionResult r;
    r.id = 10;
    r.name = "kernel-width";
    r.budget = 0.75;
    r.budget_is_lower_bound = true;
    long npts = trials > 0 ? trials : 1000;

    std::vector<RowVec> pts;
    for (long i = 0; i < npts; ++i) {
        double u1 = uniform_scale(HashFamily::uniform_family(0xD15C), (uint64_t)i);
        double u2 = uniform_scale(HashFamily::uniform_family(0xD15C + 1), (uint64_t)i);
        double rad = std::sqrt(u1);
        pts.push_back({rad * std::cos(2.0 * M_PI * u2), rad * std::sin(2.0 * M_PI * u2)});
    }
    std::vector<int> kern = eps_kernel(pts, 0.25);
    std::vector<RowVec> kpts;
    for (int i : kern) kpts.push_back(pts[i]);

    double worst = 2.0;
    for (int t = 0; t < 360; ++t) {
        double th = t * M_PI / 180.0;
        RowVec dir{std::cos(th), std::sin(th)};
        double wp = directional_width(pts, dir);
        double wq = directional_width(kpts, dir);
        if (wp > 0.0) worst = std::min(worst, wq / wp);
    }
    bool size_ok = (int)kern.size() <= 64;
    r.measured = worst;
    r.pass = size_ok && worst >= r.budget;
    r.detail = "kernel size " + std::to_string(kern.size()) + " (cap 64), min width ratio " +
               fmt(worst) + " over 360 directions";
    r.seconds = elapsed(t0);
    return r;
}

CriterionResult c11_jl(uint64_t master, long trials) {
    auto t0 = Clock::now();
    CriterionResult r;
    r.id = 11;
    r.name = "embed-volume-range";
    long runs = trials > 0 ? trials : 50;
    r.budget = std::ceil(0.9 * (double)runs);
    r.budget_is_lower_bound = true;

    const int k = 3;
    const double cc = 2.0;
    DenseMatrix a = random_gauss_matrix(14, 10, 0x71AD34);
    double shrink_bound = std::pow(2.0, k);
    double grow_bound = std::pow(std::sqrt(2.0 * cc * k) + 2.0, k);

    long ok = 0;
    for (long run = 0; run < runs; ++run) {
        JlResult jl = jl_embed(a.rows, k, cc, mix64(master, tag("accept.jl"), (uint64_t)run));
        double opt_pre = 0.0, opt_post = 0.0;
        bool grow_ok = true;
        std::vector<int> idx{0, 1, 2};
        for (;;) {
            std::vector<RowVec> pre, post;
            for (int t : idx) {
                pre.push_back(a[t]);
                post.push_back(jl.points[t]);
            }
            double vp = parallelepiped_volume(pre);
            double vq = parallelepiped_volume(post);
            opt_pre = std::max(opt_pre, vp);
            opt_post = std::max(opt_post, vq);
            if (vq > grow_bound * vp * (1.0 + 1e-9)) grow_ok = false;
            int t = k - 1;
            while (t >= 0 && idx[t] == a.n - k + t) --t;
            if (t < 0) break;
            ++idx[t];
            for (int u = t + 1; u < k; ++u) idx[u] = idx[u - 1] + 1;
        }
        bool shrink_ok = opt_post * shrink_bound * (1.0 + 1e-9) >= opt_pre;
        if (grow_ok && shrink_ok) ++ok;
    }
    r.measured = (double)ok;
    r.pass = (double)ok >= r.budget;
    r.detail = std::to_string(ok) + "/" + std::to_string(runs) +
               " embeddings kept every subset volume in range";
    r.seconds = elapsed(t0);
    return r;
}

CriterionResult c12_volume_vs_adaptive(uint64_t master, long trials) {
    auto t0 = Clock::now();
    CriterionResult r;
    r.id = 12;
    r.name = "volume-vs-adaptive";
    long runs = trials > 0 ? trials : 50;
    r.budget = (double)runs;
    r.budget_is_lower_bound = true;

    const int k = 2;
    long ok = 0;
    double worst = 0.0;
    for (long run = 0; run < runs; ++run) {
        DenseMatrix a = random_int_matrix(6, 3, mix64(master, tag("accept.vs"), (uint64_t)run));
        ExactDistribution vs = exact_volume_sampling(a, k);
        ExactDistribution ad = exact_adaptive_distribution(a, k, 2);
        std::map<std::vector<int>, double> q;
        for (size_t t = 0; t < ad.outcomes.size(); ++t) {
            std::vector<int> key = ad.outcomes[t];
            std::sort(key.begin(), key.end());
            q[key] += ad.probs[t];
        }
        bool good = true;
        for (auto& kv : q) {
            if (kv.first.size() != (size_t)k || kv.first[0] < 0) continue;
            double p = vs.prob_of(kv.first);
            worst = std::max(worst, p > 0.0 ? kv.second / p : 1e18);
            if (kv.second > 2.0 * p + 1e-9) good = false;  // k! = 2
        }
        if (good) ++ok;
    }
    r.measured = (double)ok;
    r.pass = ok == runs;
    r.detail = std::to_string(ok) + "/" + std::to_string(runs) +
               " instances with ordered mass within k! of volume sampling (worst ratio " +
               fmt(worst) + ")";
    r.seconds = elapsed(t0);
    return r;
}

}  // namespace

int acceptance_count() { return 12; }

std::string acceptance_name(int id) {
    switch (id) {
        case 1: return "linearity-merge";
        case 2: return "projection-commute";
        case 3: return "sample-law-l22";
        case 4: return "sample-law-l12";
        case 5: return "adaptive-joint-law";
        case 6: return "residual-distortion";
        case 7: return "row-subset-cost";
        case 8: return "volume-max-ratio";
        case 9: return "greedy-volume-ratio";
        case 10: return "kernel-width";
        case 11: return "embed-volume-range";
        case 12: return "volume-vs-adaptive";
    }
    throw std::invalid_argument("unknown acceptance criterion id");
}

CriterionResult run_criterion(int id, uint64_t master_seed, long trials) {
    switch (id) {
        case 1: return c1_linearity(master_seed, trials);
        case 2: return c2_projection_commute(master_seed, trials);
        case 3: return sampling_law_criterion(3, 2, master_seed, trials);
        case 4: return sampling_law_criterion(4, 1, master_seed, trials);
        case 5: return c5_adaptive_law(master_seed, trials);
        case 6: return c6_distortion(master_seed, trials);
        case 7: return c7_rss(master_seed, trials);
        case 8: return c8_volmax(master_seed, trials);
        case 9: return c9_greedy(master_seed, trials);
        case 10: return c10_kernel(master_seed, trials);
        case 11: return c11_jl(master_seed, trials);
        case 12: return c12_volume_vs_adaptive(master_seed, trials);
    }
    throw std::invalid_argument("unknown acceptance criterion id");
}

std::vector<CriterionResult> run_acceptance(uint64_t master_seed, const std::vector<int>& only,
                                            long trials) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= acceptance_count(); ++id) {
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
        out.push_back(run_criterion(id, master_seed, trials));
    }
    return out;
}

std::string format_criterion(const CriterionResult& r) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "C%02d %-22s %s  measured=%-10.4g budget%s%-10.4g (%.1fs)  %s",
                  r.id, r.name.c_str(), r.pass ? "PASS" : "FAIL", r.measured,
                  r.budget_is_lower_bound ? ">=" : "<=", r.budget, r.seconds, r.detail.c_str());
    return buf;
}

}  // namespace sks
