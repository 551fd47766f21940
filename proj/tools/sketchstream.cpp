// Command-line front end: sample rows from stream files, run the
// end-to-end selection apps with optional oracle baselines, drive the
// acceptance suite, and manage sketch blobs on disk.
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "sks/accept.hpp"
#include "sks/adaptive.hpp"
#include "sks/apps.hpp"
#include "sks/oracle.hpp"
#include "sks/rowarrival.hpp"
#include "sks/sampler.hpp"
#include "sks/sketch.hpp"
#include "sks/stream.hpp"

using namespace sks;

namespace {

uint64_t parse_seed(const std::string& s) {
    size_t pos = 0;
    uint64_t v = std::stoull(s, &pos, 0);
    if (pos != s.size()) throw std::invalid_argument("bad seed '" + s + "'");
    return v;
}

int env_threads() {
    const char* v = std::getenv("SKETCHSTREAM_THREADS");
    if (!v) return 1;
    long t = std::strtol(v, nullptr, 10);
    if (t < 1) t = 1;
    if (t > 256) t = 256;
    return (int)t;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fmt_seed(uint64_t s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "0x%llx", (unsigned long long)s);
    return buf;
}

std::string row_str(const RowVec& r) {
    std::string out;
    for (size_t j = 0; j < r.size(); ++j) {
        if (j) out += ' ';
        out += fmt(r[j]);
    }
    return out;
}

void emit(const std::string& text, const std::string& out_path) {
    std::fputs(text.c_str(), stdout);
    if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + out_path);
        f << text;
    }
}

std::string read_blob(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_blob(const std::string& path, const std::string& blob) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f.write(blob.data(), (std::streamsize)blob.size());
}

Projector load_projector(const std::string& path, int d, int* rank_out) {
    StreamData ps = parse_stream_file(path);
    if (ps.d != d)
        throw std::runtime_error("projector file dimension " + std::to_string(ps.d) +
                                 " does not match stream dimension " + std::to_string(d));
    DenseMatrix m = ps.to_dense();
    OrthoBasis basis(d);
    for (const auto& r : m.rows) basis.extend(r);
    if (rank_out) *rank_out = basis.rank();
    return Projector::complement(basis);
}

double binom(int n, int k) {
    double v = 1.0;
    for (int t = 0; t < k; ++t) v = v * (n - t) / (t + 1);
    return v;
}

int cmd_sample(const std::string& stream_path, int p, double eps, const std::string& seed_s,
               const std::string& proj_path, int buckets, int reps,
               const std::string& out_path) {
    StreamData sd = parse_stream_file(stream_path);
    uint64_t seed = parse_seed(seed_s);
    SamplerParams prm;
    prm.buckets_override = buckets;

    int proj_rank = 0;
    Projector proj = proj_path.empty() ? Projector::identity()
                                       : load_projector(proj_path, sd.d, &proj_rank);

    auto run_one = [&](uint64_t s) {
        LpSampler smp(p, sd.n, sd.d, eps, s, prm);
        replay(sd, [&](int i, int j, double delta) { smp.update(i, j, delta); });
        return smp.finalize(proj);
    };

    SampleOutcome out;
    if (reps <= 1) {
        out = run_one(seed);
    } else {
        for (int t = 0; t < reps; ++t) {
            SampleOutcome o = run_one(mix64(seed, tag("sampler.inst"), (uint64_t)t));
            if (t == 0 || o.ok) out = o;
            if (o.ok) break;
        }
    }

    LpSampler probe(p, sd.n, sd.d, eps, seed, prm);
    std::ostringstream rep;
    rep << "sample stream=" << stream_path << " mode=" << (sd.turnstile ? "turnstile" : "rows")
        << " n=" << sd.n << " d=" << sd.d << "\n";
    rep << "config p=" << p << " eps=" << fmt(eps) << " seed=" << fmt_seed(seed)
        << " buckets=" << probe.inner_buckets() << " reps=" << (reps <= 1 ? 1 : reps)
        << " projector=" << (proj_path.empty() ? std::string("none") : proj_path);
    if (!proj_path.empty()) rep << " rank=" << proj_rank;
    rep << "\n";
    if (out.ok) {
        rep << "SAMPLE index=" << out.index << " scale=" << fmt(out.scale)
            << " fhat=" << fmt(out.f_hat) << "\n";
        rep << "row " << row_str(out.noisy_row) << "\n";
    } else {
        rep << "FAIL fhat=" << fmt(out.f_hat) << "\n";
    }
    emit(rep.str(), out_path);
    return out.ok ? 0 : 2;
}

void report_subspace(std::ostringstream& rep, const SummaryResult& r) {
    rep << "cost=" << fmt(r.cost) << "\n";
    rep << "returned=" << r.sub.rows.size() << " requested=" << r.sub.requested
        << " rank=" << r.sub.basis.rank() << " rank_exhausted=" << (r.sub.rank_exhausted ? 1 : 0)
        << "\n";
    rep << "indices=";
    for (size_t t = 0; t < r.sub.indices.size(); ++t)
        rep << (t ? " " : "") << r.sub.indices[t];
    rep << "\n";
}

int cmd_run(const std::string& app_name, const std::string& stream_path, int k, int p,
            double eps, double alpha, const std::string& seed_s, double shrink, int clusters,
            const std::string& mode_s, const std::string& out_path) {
    StreamData sd = parse_stream_file(stream_path);
    uint64_t seed = parse_seed(seed_s);
    AppOptions opt;

    std::ostringstream rep;
    rep << "run app=" << app_name << " stream=" << stream_path << " n=" << sd.n
        << " d=" << sd.d << " k=" << k << " p=" << p << " eps=" << fmt(eps)
        << " seed=" << fmt_seed(seed);
    if (app_name == "volmax") rep << " alpha=" << fmt(alpha);
    if (app_name == "cluster") rep << " clusters=" << clusters;
    if (app_name == "volmax-ra") rep << " mode=" << mode_s;
    rep << "\n";

    SummaryResult r;
    if (app_name == "rss") {
        r = row_subset_select(sd, k, eps, seed, opt);
    } else if (app_name == "subspace") {
        BicriteriaSchedule sched;
        sched.shrink = shrink;
        r = subspace_approx_bicriteria(sd, k, p, eps, sched, seed, opt);
    } else if (app_name == "cluster") {
        BicriteriaSchedule sched;
        sched.shrink = shrink;
        r = projective_cluster_reduce(sd, k, clusters, p, eps, seed, 0, sched, opt);
    } else if (app_name == "volmax") {
        r = volume_max_turnstile(sd, k, alpha, seed, opt);
    } else if (app_name == "volmax-ra") {
        RowArrivalMode m;
        if (mode_s == "greedy") m = RowArrivalMode::greedy;
        else if (mode_s == "coreset") m = RowArrivalMode::coreset;
        else if (mode_s == "exp_d") m = RowArrivalMode::exp_d;
        else if (mode_s == "jl_then_exp_d") m = RowArrivalMode::jl_exp_d;
        else throw std::invalid_argument(
            "unknown mode '" + mode_s + "' (greedy, coreset, exp_d, jl_then_exp_d)");
        try {
            r = volume_max_row_arrival(sd, k, m, seed);
        } catch (const std::invalid_argument& e) {
            if (m == RowArrivalMode::exp_d &&
                std::string(e.what()).find("dimensions 1..4") != std::string::npos)
                throw std::invalid_argument(std::string(e.what()) +
                                            "; retry with --mode jl_then_exp_d");
            throw;
        }
    } else {
        throw std::invalid_argument("unknown app '" + app_name +
                                    "' (rss, subspace, cluster, volmax, volmax-ra)");
    }

    report_subspace(rep, r);
    if (r.cost_is_lower_bound) rep << "cost_is_lower_bound=1\n";
    if (!r.flats.empty()) {
        rep << "flats=";
        for (size_t f = 0; f < r.flats.size(); ++f) {
            if (f) rep << ';';
            for (size_t t = 0; t < r.flats[f].size(); ++t)
                rep << (t ? "," : "") << r.flats[f][t];
        }
        rep << "\n";
    }

    // oracle baseline where the exact computation stays cheap
    DenseMatrix a = sd.to_dense();
    if (app_name == "rss" || app_name == "subspace") {
        if (sd.n <= 256 && sd.d <= 64) {
            RankKError e = best_rank_k_error(a, k, app_name == "rss" ? 2 : p);
            double base = app_name == "rss" ? e.value * e.value : e.value;
            rep << "baseline=" << fmt(base) << " kind="
                << (e.is_exact ? "exact" : "reference") << "\n";
            // a rank-deficient input makes both sides vanish up to roundoff
            double ratio = base > 1e-12 ? r.cost / base : (r.cost > 1e-12 ? 1e300 : 0.0);
            rep << "ratio=" << fmt(ratio) << "\n";
        } else {
            rep << "baseline skipped (size guard: n <= 256 and d <= 64)\n";
        }
    } else if (app_name == "volmax" || app_name == "volmax-ra") {
        if (binom(sd.n, k) <= 200000.0) {
            try {
                auto [oi, ov] = exact_volume_max(a, k);
                rep << "baseline=" << fmt(ov) << " kind=exact\n";
                double ratio = r.cost > 0.0 ? ov / r.cost : (ov > 0.0 ? 1e300 : 0.0);
                rep << "ratio=" << fmt(ratio) << "\n";
            } catch (const std::exception& e) {
                rep << "baseline skipped (" << e.what() << ")\n";
            }
        } else {
            rep << "baseline skipped (size guard: C(n,k) enumeration too large)\n";
        }
    } else {
        rep << "baseline skipped (no exact oracle for this objective)\n";
    }

    emit(rep.str(), out_path);
    return 0;
}

int suite_to_id(const std::string& s) {
    if (s == "all") return 0;
    for (int id = 1; id <= acceptance_count(); ++id)
        if (s == acceptance_name(id) || s == std::to_string(id)) return id;
    static const std::vector<std::pair<const char*, int>> aliases = {
        {"linearity", 1}, {"merge", 1},      {"projection", 2}, {"commute", 2},
        {"tv-l22", 3},    {"l22", 3},        {"tv-l12", 4},     {"l12", 4},
        {"adaptive", 5},  {"distortion", 6}, {"rss", 7},        {"volmax", 8},
        {"greedy", 9},    {"kernel", 10},    {"jl", 11},        {"embed", 11},
        {"volume-sampling", 12},             {"vs", 12}};
    for (const auto& [name, id] : aliases)
        if (s == name) return id;
    return -1;
}

int cmd_accept(const std::string& suite, long trials, const std::string& seed_s, bool list) {
    if (list) {
        for (int id = 1; id <= acceptance_count(); ++id)
            std::printf("%2d  %s\n", id, acceptance_name(id).c_str());
        return 0;
    }
    int only = suite_to_id(suite);
    if (only < 0) {
        std::fprintf(stderr, "error: unknown suite '%s'; available suites:\n", suite.c_str());
        std::fprintf(stderr, "  all\n");
        for (int id = 1; id <= acceptance_count(); ++id)
            std::fprintf(stderr, "  %s\n", acceptance_name(id).c_str());
        return 1;
    }
    uint64_t seed = parse_seed(seed_s);
    std::printf("acceptance seed=%s trials=%s threads=%d\n", fmt_seed(seed).c_str(),
                trials > 0 ? std::to_string(trials).c_str() : "default", env_threads());
    std::vector<int> ids;
    if (only > 0) ids.push_back(only);
    std::vector<CriterionResult> res = run_acceptance(seed, ids, trials);
    int failed = 0;
    for (const auto& r : res) {
        std::printf("C%02d %-22s %s  measured=%s budget%s%s  %s\n", r.id, r.name.c_str(),
                    r.pass ? "PASS" : "FAIL", fmt(r.measured).c_str(),
                    r.budget_is_lower_bound ? ">=" : "<=", fmt(r.budget).c_str(),
                    r.detail.c_str());
        if (!r.pass) ++failed;
    }
    std::printf("%zu/%zu criteria pass\n", res.size() - failed, res.size());
    return failed == 0 ? 0 : 1;
}

int cmd_sketch_build(const std::string& stream_path, const std::string& kind, double eps,
                     int buckets, int reps, const std::string& seed_s,
                     const std::string& out_path) {
    StreamData sd = parse_stream_file(stream_path);
    uint64_t seed = parse_seed(seed_s);
    std::string blob;
    if (kind == "ams") {
        AmsM s(sd.n, sd.d, eps, seed);
        replay(sd, [&](int i, int j, double delta) { s.update(i, j, delta); });
        blob = s.serialize();
    } else if (kind == "countsketch") {
        int r = reps > 0 ? reps : CountSketchM::kDefaultRows;
        int b = buckets > 0 ? buckets : CountSketchM::default_buckets(eps);
        CountSketchM s(sd.n, sd.d, r, b, seed);
        replay(sd, [&](int i, int j, double delta) { s.update(i, j, delta); });
        blob = s.serialize();
    } else if (kind == "estimator") {
        EstimatorM s(sd.n, sd.d, seed);
        replay(sd, [&](int i, int j, double delta) { s.update(i, j, delta); });
        blob = s.serialize();
    } else {
        throw std::invalid_argument("unknown kind '" + kind +
                                    "' (ams, countsketch, estimator)");
    }
    write_blob(out_path, blob);
    std::printf("wrote %s (%zu bytes)\n%s\n", out_path.c_str(), blob.size(),
                blob_summary(blob).c_str());
    return 0;
}

int cmd_sketch_info(const std::string& path) {
    std::string blob = read_blob(path);
    std::printf("%s\n", blob_summary(blob).c_str());
    return 0;
}

int cmd_sketch_merge(const std::string& a_path, const std::string& b_path,
                     const std::string& out_path) {
    std::string merged = merge_blobs(read_blob(a_path), read_blob(b_path));
    write_blob(out_path, merged);
    std::printf("wrote %s (%zu bytes)\n%s\n", out_path.c_str(), merged.size(),
                blob_summary(merged).c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sketchstream: linear sketches, row samplers and selection apps "
                 "over matrix stream files"};
    app.require_subcommand(1);

    std::string stream_path, proj_path, out_path, seed_s = "1", mode_s = "coreset";
    std::string app_name, kind, blob_a, blob_b, suite = "all";
    int p = 2, k = 2, buckets = 0, reps = 0, clusters = 1;
    double eps = 0.25, alpha = 2.0, shrink = 0.125;
    long trials = 0;
    bool list_suites = false;

    CLI::App* sample = app.add_subcommand("sample", "draw one row from a stream file");
    sample->add_option("stream", stream_path, "stream file")->required();
    sample->add_option("--p", p, "norm power, 1 or 2")->check(CLI::IsMember({1, 2}));
    sample->add_option("--eps", eps, "relative accuracy")->check(CLI::Range(1e-6, 0.999999));
    sample->add_option("--seed", seed_s, "seed (decimal or 0x hex)");
    sample->add_option("--projector", proj_path,
                       "rows file; sampling runs on the complement of its row span");
    sample->add_option("--buckets", buckets, "CountSketch bucket override");
    sample->add_option("--reps", reps, "independent instances to try (default 1)");
    sample->add_option("--out", out_path, "also write the report here");

    CLI::App* run = app.add_subcommand("run", "run a selection app over a stream file");
    run->add_option("app", app_name, "rss | subspace | cluster | volmax | volmax-ra")
        ->required();
    run->add_option("stream", stream_path, "stream file")->required();
    run->add_option("--k", k, "selection size / flat dimension");
    run->add_option("--p", p, "objective norm power")->check(CLI::IsMember({1, 2}));
    run->add_option("--eps", eps, "relative accuracy")->check(CLI::Range(1e-6, 0.999999));
    run->add_option("--alpha", alpha, "volmax slack factor (>= 1)");
    run->add_option("--seed", seed_s, "seed (decimal or 0x hex)");
    run->add_option("--shrink", shrink, "bicriteria batch shrink factor");
    run->add_option("--clusters", clusters, "cluster count for the cluster app");
    run->add_option("--mode", mode_s, "volmax-ra mode: greedy | coreset | exp_d | jl_then_exp_d");
    run->add_option("--out", out_path, "also write the report here");

    CLI::App* accept = app.add_subcommand("accept", "run acceptance criteria");
    accept->add_option("--suite", suite, "criterion name, id, or 'all'");
    accept->add_option("--trials", trials, "sample/trial count override (0 = pinned default)");
    accept->add_option("--seed", seed_s, "master seed")->default_str(
        "0x5eedfacedc0ffee");
    accept->add_flag("--list", list_suites, "list criterion names and exit");

    CLI::App* sketch = app.add_subcommand("sketch", "build, inspect and merge sketch blobs");
    sketch->require_subcommand(1);
    CLI::App* sb = sketch->add_subcommand("build", "sketch a stream file into a blob");
    sb->add_option("stream", stream_path, "stream file")->required();
    sb->add_option("--kind", kind, "ams | countsketch | estimator")->required();
    sb->add_option("--eps", eps, "accuracy parameter");
    sb->add_option("--buckets", buckets, "countsketch bucket count override");
    sb->add_option("--reps", reps, "countsketch table row override");
    sb->add_option("--seed", seed_s, "seed (decimal or 0x hex)");
    sb->add_option("--out", out_path, "blob output path")->required();
    CLI::App* si = sketch->add_subcommand("info", "print a blob header summary");
    si->add_option("blob", blob_a, "blob path")->required();
    CLI::App* sm = sketch->add_subcommand("merge", "merge two blobs with equal headers");
    sm->add_option("a", blob_a, "first blob")->required();
    sm->add_option("b", blob_b, "second blob")->required();
    sm->add_option("--out", out_path, "merged blob output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int c = app.exit(e);
        return c == 0 ? 0 : 1;
    }

    if (seed_s.empty()) seed_s = "1";
    if (accept->parsed() && !accept->count("--seed")) seed_s = "0x5eedfacedc0ffee";

    try {
        if (sample->parsed())
            return cmd_sample(stream_path, p, eps, seed_s, proj_path, buckets, reps, out_path);
        if (run->parsed())
            return cmd_run(app_name, stream_path, k, p, eps, alpha, seed_s, shrink, clusters,
                           mode_s, out_path);
        if (accept->parsed()) return cmd_accept(suite, trials, seed_s, list_suites);
        if (sketch->parsed()) {
            if (sb->parsed())
                return cmd_sketch_build(stream_path, kind, eps, buckets, reps, seed_s, out_path);
            if (si->parsed()) return cmd_sketch_info(blob_a);
            if (sm->parsed()) return cmd_sketch_merge(blob_a, blob_b, out_path);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
