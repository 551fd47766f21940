#include "sks/rowarrival.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "sks/rand.hpp"

namespace sks {

std::vector<int> greedy_volume_max(const std::vector<RowVec>& pts, int k) {
    if (pts.empty() || k < 1) return {};
    int d = (int)pts[0].size();
    double top = 0.0;
    for (const auto& p : pts) top = std::max(top, nrm2(p));
    if (top == 0.0) return {};

    OrthoBasis basis(d);
    std::vector<int> out;
    for (int round = 0; round < k && basis.rank() < d; ++round) {
        int best = -1;
        double best_norm = 0.0;
        for (int i = 0; i < (int)pts.size(); ++i) {
            double rn = nrm2(basis.residual(pts[i]));
            if (rn > best_norm) {
                best_norm = rn;
                best = i;
            }
        }
        if (best < 0 || best_norm <= 1e-12 * top) break;
        out.push_back(best);
        basis.extend(pts[best]);
    }
    return out;
}

CoresetTree::CoresetTree(int d, int k, int branch, int c)
    : d_(d), k_(k), branch_(branch), c_(c) {
    if (d < 1 || k < 1) throw std::invalid_argument("CoresetTree: d and k must be >= 1");
    if (branch < 2) throw std::invalid_argument("CoresetTree: branch must be >= 2");
    if (c < 1) throw std::invalid_argument("CoresetTree: c must be >= 1");
}

std::vector<CoresetTree::Entry> CoresetTree::reduce(std::vector<Entry> in) const {
    if ((int)in.size() <= reduced_size()) return in;
    std::vector<RowVec> raw;
    raw.reserve(in.size());
    for (const auto& e : in) raw.push_back(e.pt);
    std::vector<int> keep = greedy_volume_max(raw, reduced_size());
    std::vector<Entry> out;
    out.reserve(keep.size());
    for (int t : keep) out.push_back(in[t]);
    return out;
}

void CoresetTree::promote(size_t level, std::vector<Entry> set) {
    if (levels_.size() <= level) levels_.resize(level + 1);
    levels_[level].push_back(std::move(set));
    if ((int)levels_[level].size() < branch_) return;
    std::vector<Entry> merged;
    for (auto& s : levels_[level])
        merged.insert(merged.end(), s.begin(), s.end());
    levels_[level].clear();
    promote(level + 1, reduce(std::move(merged)));
}

void CoresetTree::push(int idx, const RowVec& pt) {
    if ((int)pt.size() != d_) throw std::invalid_argument("CoresetTree::push: wrong dimension");
    if (idx >= (int)pts_.size()) pts_.resize(idx + 1);
    pts_[idx] = pt;
    leaf_.push_back({idx, pt});
    if ((int)leaf_.size() >= reduced_size()) {
        promote(0, std::move(leaf_));
        leaf_.clear();
    }
}

std::vector<int> CoresetTree::finalize_indices() {
    std::vector<Entry> merged = leaf_;
    for (const auto& level : levels_)
        for (const auto& s : level) merged.insert(merged.end(), s.begin(), s.end());
    auto red = reduce(std::move(merged));
    std::vector<int> out;
    out.reserve(red.size());
    for (const auto& e : red) out.push_back(e.idx);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<RowVec> direction_grid(int d, double eps) {
    if (d < 1 || d > 4)
        throw std::invalid_argument("direction_grid: only dimensions 1..4 are supported; embed "
                                    "higher-dimensional inputs first");
    if (!(eps > 0.0) || eps > 1.0)
        throw std::invalid_argument("direction_grid: eps must be in (0,1]");
    std::vector<RowVec> dirs;
    if (d == 1) {
        dirs.push_back({1.0});
        return dirs;
    }
    int m = (int)std::ceil(M_PI / eps);
    if (d == 2) {
        for (int t = 0; t < m; ++t) {
            double th = t * M_PI / m;
            dirs.push_back({std::cos(th), std::sin(th)});
        }
        return dirs;
    }
    if (d == 3) {
        for (int t = 0; t <= m; ++t) {
            double th = t * M_PI / m;
            for (int u = 0; u < 2 * m; ++u) {
                double ph = u * M_PI / m;
                dirs.push_back({std::cos(th), std::sin(th) * std::cos(ph),
                                std::sin(th) * std::sin(ph)});
                if (t == 0 || t == m) break;  // poles
            }
        }
        return dirs;
    }
    for (int t1 = 0; t1 <= m; ++t1) {
        double a = t1 * M_PI / m;
        for (int t2 = 0; t2 <= m; ++t2) {
            double b = t2 * M_PI / m;
            for (int u = 0; u < 2 * m; ++u) {
                double c = u * M_PI / m;
                dirs.push_back({std::cos(a), std::sin(a) * std::cos(b),
                                std::sin(a) * std::sin(b) * std::cos(c),
                                std::sin(a) * std::sin(b) * std::sin(c)});
                if (t2 == 0 || t2 == m) break;
            }
            if (t1 == 0 || t1 == m) break;
        }
    }
    return dirs;
}

double directional_width(const std::vector<RowVec>& pts, const RowVec& dir) {
    if (pts.empty()) return 0.0;
    double lo = dot(pts[0], dir), hi = lo;
    for (const auto& p : pts) {
        double v = dot(p, dir);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return hi - lo;
}

EpsKernelBuilder::EpsKernelBuilder(int d, double eps) : d_(d), eps_(eps) {
    dirs_ = direction_grid(d, eps);
    arg_max_.assign(dirs_.size(), -1);
    arg_min_.assign(dirs_.size(), -1);
    max_v_.assign(dirs_.size(), 0.0);
    min_v_.assign(dirs_.size(), 0.0);
}

void EpsKernelBuilder::push(int idx, const RowVec& pt) {
    if ((int)pt.size() != d_)
        throw std::invalid_argument("EpsKernelBuilder::push: wrong dimension");
    for (size_t t = 0; t < dirs_.size(); ++t) {
        double v = dot(pt, dirs_[t]);
        if (arg_max_[t] < 0 || v > max_v_[t]) {
            max_v_[t] = v;
            arg_max_[t] = idx;
        }
        if (arg_min_[t] < 0 || v < min_v_[t]) {
            min_v_[t] = v;
            arg_min_[t] = idx;
        }
    }
}

std::vector<int> EpsKernelBuilder::kernel_indices() const {
    std::set<int> s;
    for (size_t t = 0; t < dirs_.size(); ++t) {
        if (arg_max_[t] >= 0) s.insert(arg_max_[t]);
        if (arg_min_[t] >= 0) s.insert(arg_min_[t]);
    }
    return std::vector<int>(s.begin(), s.end());
}

std::vector<int> eps_kernel(const std::vector<RowVec>& pts, double eps) {
    if (pts.empty()) return {};
    EpsKernelBuilder b((int)pts[0].size(), eps);
    for (int i = 0; i < (int)pts.size(); ++i) b.push(i, pts[i]);
    return b.kernel_indices();
}

DenseMatrix jl_apply(const std::vector<RowVec>& pts, const DenseMatrix& g) {
    DenseMatrix out((int)pts.size(), g.d);
    for (int i = 0; i < out.n; ++i) out.rows[i] = mat_vec_right(pts[i], g);
    return out;
}

JlResult jl_embed(const std::vector<RowVec>& pts, int k, double c, uint64_t seed) {
    if (pts.empty()) throw std::invalid_argument("jl_embed: empty point set");
    if (k < 1) throw std::invalid_argument("jl_embed: k must be >= 1");
    if (!(c > 0.0)) throw std::invalid_argument("jl_embed: c must be positive");
    int n = (int)pts.size();
    int d = (int)pts[0].size();
    JlResult out;
    out.r = std::max(k + 1, (int)std::ceil(std::log((double)std::max(n, 2)) / c));
    uint64_t gs = mix64(seed, tag("jl.gauss"));
    out.g = DenseMatrix(d, out.r);
    double inv = 1.0 / std::sqrt((double)out.r);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < out.r; ++j)
            out.g[i][j] = gaussian(gs, (uint64_t)i * out.r + j) * inv;
    out.points = jl_apply(pts, out.g);
    return out;
}

SummaryResult volume_max_row_arrival(const StreamData& sd, int k, RowArrivalMode mode,
                                     uint64_t seed, const RowArrivalOptions& opt) {
    if (sd.turnstile)
        throw std::invalid_argument("volume_max_row_arrival: needs a rows-mode stream");
    const std::vector<RowVec>& pts = sd.rows.rows;

    std::vector<int> picked;
    switch (mode) {
        case RowArrivalMode::greedy:
            picked = greedy_volume_max(pts, k);
            break;
        case RowArrivalMode::coreset: {
            CoresetTree tree(sd.d, k, opt.coreset_branch, opt.coreset_c);
            for (int i = 0; i < (int)pts.size(); ++i) tree.push(i, pts[i]);
            std::vector<int> core = tree.finalize_indices();
            std::vector<RowVec> cpts;
            cpts.reserve(core.size());
            for (int i : core) cpts.push_back(pts[i]);
            for (int t : greedy_volume_max(cpts, k)) picked.push_back(core[t]);
            break;
        }
        case RowArrivalMode::exp_d: {
            EpsKernelBuilder kb(sd.d, opt.kernel_eps);
            for (int i = 0; i < (int)pts.size(); ++i) kb.push(i, pts[i]);
            std::vector<int> kern = kb.kernel_indices();
            std::vector<RowVec> kpts;
            kpts.reserve(kern.size());
            for (int i : kern) kpts.push_back(pts[i]);
            for (int t : greedy_volume_max(kpts, k)) picked.push_back(kern[t]);
            break;
        }
        case RowArrivalMode::jl_exp_d: {
            JlResult jl = jl_embed(pts, k, opt.jl_c, mix64(seed, tag("rowarrival.jl")));
            if (jl.r > 4)
                throw std::invalid_argument(
                    "volume_max_row_arrival: embedded dimension r=" + std::to_string(jl.r) +
                    " exceeds the 4-dimensional kernel limit; lower k or raise the embedding "
                    "constant");
            EpsKernelBuilder kb(jl.r, opt.kernel_eps);
            for (int i = 0; i < jl.points.n; ++i) kb.push(i, jl.points[i]);
            std::vector<int> kern = kb.kernel_indices();
            std::vector<RowVec> kpts;
            kpts.reserve(kern.size());
            for (int i : kern) kpts.push_back(jl.points[i]);
            for (int t : greedy_volume_max(kpts, k)) picked.push_back(kern[t]);
            break;
        }
    }

    SummaryResult r;
    r.objective = Objective::volume;
    r.p = 2;
    r.sub.basis = OrthoBasis(sd.d);
    r.sub.requested = k;
    for (int i : picked) {
        r.sub.indices.push_back(i);
        r.sub.rows.push_back(pts[i]);
        r.sub.basis.extend(pts[i]);
    }
    r.cost = r.sub.rows.empty() ? 0.0 : parallelepiped_volume(r.sub.rows);
    return r;
}

}  // namespace sks
