#include "sks/sketch.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <sstream>
#include <stdexcept>

namespace sks {

namespace {

constexpr char kMagic[8] = {'S', 'K', 'S', 'T', 'C', 'H', '0', '1'};

void put_u8(std::string& o, uint8_t v) { o.push_back((char)v); }

void put_u32(std::string& o, uint32_t v) {
    for (int k = 0; k < 4; ++k) o.push_back((char)((v >> (8 * k)) & 0xff));
}

void put_u64(std::string& o, uint64_t v) {
    for (int k = 0; k < 8; ++k) o.push_back((char)((v >> (8 * k)) & 0xff));
}

void put_f64(std::string& o, double v) { put_u64(o, std::bit_cast<uint64_t>(v)); }

struct Reader {
    const std::string& s;
    size_t off = 0;

    void need(size_t k) const {
        if (off + k > s.size()) throw std::runtime_error("sketch blob truncated");
    }
    uint8_t u8() {
        need(1);
        return (uint8_t)s[off++];
    }
    uint32_t u32() {
        need(4);
        uint32_t v = 0;
        for (int k = 0; k < 4; ++k) v |= (uint32_t)(uint8_t)s[off + k] << (8 * k);
        off += 4;
        return v;
    }
    uint64_t u64() {
        need(8);
        uint64_t v = 0;
        for (int k = 0; k < 8; ++k) v |= (uint64_t)(uint8_t)s[off + k] << (8 * k);
        off += 8;
        return v;
    }
    double f64() { return std::bit_cast<double>(u64()); }
    void magic() {
        need(8);
        if (std::memcmp(s.data() + off, kMagic, 8) != 0)
            throw std::runtime_error("not a sketch blob (bad magic)");
        off += 8;
    }
};

void check_headers_match(const std::string& a, const std::string& b, const char* who) {
    if (a != b)
        throw std::invalid_argument(std::string(who) + ": sketch headers differ, refusing to merge");
}

int ceil_log2(int n) {
    int l = 0;
    while ((1LL << l) < n) ++l;
    return l;
}

}  // namespace

// ---------------------------------------------------------------- AmsM

AmsM::AmsM(int n, int d, double eps, uint64_t seed) : n_(n), d_(d), eps_(eps), seed_(seed) {
    if (n < 1 || d < 1) throw std::invalid_argument("AmsM: n and d must be >= 1");
    if (!(eps > 0.0) || eps > 1.0) throw std::invalid_argument("AmsM: eps must be in (0, 1]");
    groups_ = 6;
    per_group_ = (int)std::ceil(8.0 / (eps * eps));
    total_ = groups_ * per_group_;
    blocks_ = (total_ + 63) / 64;
    signs_ = HashFamily::sign_family(mix64(seed, tag("ams.signs")));
    acc_.assign((size_t)total_ * d_, 0.0);
}

void AmsM::reset(uint64_t seed) {
    seed_ = seed;
    signs_ = HashFamily::sign_family(mix64(seed, tag("ams.signs")));
    std::fill(acc_.begin(), acc_.end(), 0.0);
}

void AmsM::update(int i, int j, double delta) {
    if (i < 0 || i >= n_ || j < 0 || j >= d_)
        throw std::out_of_range("AmsM::update: index out of range");
    for (int blk = 0; blk < blocks_; ++blk) {
        uint64_t w = sign_block(signs_, (uint64_t)i, (uint64_t)blk);
        int base = blk * 64;
        int lim = std::min(64, total_ - base);
        double* a = acc_.data() + (size_t)base * d_ + j;
        for (int c = 0; c < lim; ++c, a += d_) *a += ((w >> c) & 1) ? delta : -delta;
    }
}

void AmsM::accumulate_signed(std::vector<double>& buf, int i, const double* row, int dim,
                             double s) const {
    for (int blk = 0; blk < blocks_; ++blk) {
        uint64_t w = sign_block(signs_, (uint64_t)i, (uint64_t)blk);
        int base = blk * 64;
        int lim = std::min(64, total_ - base);
        for (int c = 0; c < lim; ++c) {
            double sg = ((w >> c) & 1) ? s : -s;
            double* a = buf.data() + (size_t)(base + c) * dim;
            for (int t = 0; t < dim; ++t) a[t] += sg * row[t];
        }
    }
}

void AmsM::add_scaled_row(int i, const RowVec& row, double s) {
    if (i < 0 || i >= n_) throw std::out_of_range("AmsM::add_row: index out of range");
    if ((int)row.size() != d_) throw std::invalid_argument("AmsM::add_row: wrong row size");
    accumulate_signed(acc_, i, row.data(), d_, s);
}

double AmsM::estimate(const Projector& p) const { return estimate(p, OffsetRows{}); }

double AmsM::estimate(const Projector& p, const OffsetRows& offset) const {
    std::vector<double> off;
    if (!offset.empty()) {
        off.assign(acc_.size(), 0.0);
        for (const auto& pr : offset) {
            if ((int)pr.second.size() != d_)
                throw std::invalid_argument("AmsM::estimate: offset row has wrong size");
            accumulate_signed(off, pr.first, pr.second.data(), d_, 1.0);
        }
    }
    std::vector<double> gmean(groups_, 0.0);
    RowVec v(d_);
    for (int c = 0; c < total_; ++c) {
        const double* a = acc_.data() + (size_t)c * d_;
        std::copy(a, a + d_, v.begin());
        p.apply_inplace(v);
        const double* o = off.empty() ? nullptr : off.data() + (size_t)c * d_;
        double q = 0.0;
        for (int t = 0; t < d_; ++t) {
            double x = o ? v[t] - o[t] : v[t];
            q += x * x;
        }
        gmean[c / per_group_] += q;
    }
    for (double& g : gmean) g /= per_group_;
    std::sort(gmean.begin(), gmean.end());
    double med = 0.5 * (gmean[(groups_ - 1) / 2] + gmean[groups_ / 2]);
    return std::sqrt(std::max(0.0, med));
}

std::vector<double> AmsM::cells_after(const Projector& p) const {
    std::vector<double> out;
    out.reserve(acc_.size());
    RowVec v(d_);
    for (int c = 0; c < total_; ++c) {
        const double* a = acc_.data() + (size_t)c * d_;
        std::copy(a, a + d_, v.begin());
        p.apply_inplace(v);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

void AmsM::load_cells(std::vector<double> cells) {
    if (cells.size() != acc_.size()) throw std::invalid_argument("AmsM::load_cells: wrong size");
    acc_ = std::move(cells);
}

void AmsM::merge(const AmsM& other) {
    check_headers_match(header_bytes(), other.header_bytes(), "AmsM::merge");
    for (size_t k = 0; k < acc_.size(); ++k) acc_[k] += other.acc_[k];
}

std::string AmsM::header_bytes() const {
    std::string h;
    h.append(kMagic, 8);
    put_u8(h, (uint8_t)SketchKind::ams);
    put_u32(h, (uint32_t)n_);
    put_u32(h, (uint32_t)d_);
    put_u64(h, seed_);
    put_f64(h, eps_);
    put_u32(h, (uint32_t)groups_);
    put_u32(h, (uint32_t)per_group_);
    return h;
}

std::string AmsM::serialize() const {
    std::string o = header_bytes();
    o.reserve(o.size() + acc_.size() * 8);
    for (double v : acc_) put_f64(o, v);
    return o;
}

AmsM AmsM::deserialize(const std::string& blob) {
    Reader r{blob};
    r.magic();
    if (r.u8() != (uint8_t)SketchKind::ams) throw std::runtime_error("blob is not an ams sketch");
    int n = (int)r.u32();
    int d = (int)r.u32();
    uint64_t seed = r.u64();
    double eps = r.f64();
    uint32_t groups = r.u32();
    uint32_t per_group = r.u32();
    AmsM s(n, d, eps, seed);
    if ((uint32_t)s.groups_ != groups || (uint32_t)s.per_group_ != per_group)
        throw std::runtime_error("ams blob header inconsistent with its parameters");
    std::vector<double> cells(s.acc_.size());
    for (double& v : cells) v = r.f64();
    if (r.off != blob.size()) throw std::runtime_error("trailing bytes after ams payload");
    s.acc_ = std::move(cells);
    return s;
}

// -------------------------------------------------------- CountSketchM

CountSketchM::CountSketchM(int n, int d, int r, int b, uint64_t seed)
    : n_(n), d_(d), r_(r), b_(b), seed_(seed) {
    if (n < 1 || d < 1) throw std::invalid_argument("CountSketchM: n and d must be >= 1");
    if (r < 1 || b < 1) throw std::invalid_argument("CountSketchM: r and b must be >= 1");
    sgn_ = HashFamily::sign_family(mix64(seed, tag("cs.sign")));
    bkt_ = HashFamily::bucket_family(mix64(seed, tag("cs.bucket")), (uint32_t)b);
    cells_.assign((size_t)r * b * d, 0.0);
    epoch_.assign((size_t)r * b, 0);
}

int CountSketchM::default_buckets(double eps) {
    return std::max(64, (int)std::ceil(32.0 / (eps * eps)));
}

void CountSketchM::reset(uint64_t seed) {
    seed_ = seed;
    sgn_ = HashFamily::sign_family(mix64(seed, tag("cs.sign")));
    bkt_ = HashFamily::bucket_family(mix64(seed, tag("cs.bucket")), (uint32_t)b_);
    ++cur_;
    if (cur_ == 0) {  // epoch wrap, pay for a real clear
        std::fill(cells_.begin(), cells_.end(), 0.0);
        std::fill(epoch_.begin(), epoch_.end(), 0u);
        cur_ = 1;
    }
}

double* CountSketchM::live_cell(int k, int h) {
    size_t idx = (size_t)k * b_ + h;
    double* c = cells_.data() + idx * d_;
    if (epoch_[idx] != cur_) {
        std::fill(c, c + d_, 0.0);
        epoch_[idx] = cur_;
    }
    return c;
}

const double* CountSketchM::cell_or_null(int k, int h) const {
    size_t idx = (size_t)k * b_ + h;
    if (epoch_[idx] != cur_) return nullptr;
    return cells_.data() + idx * d_;
}

void CountSketchM::update(int i, int j, double delta) {
    if (i < 0 || i >= n_ || j < 0 || j >= d_)
        throw std::out_of_range("CountSketchM::update: index out of range");
    for (int k = 0; k < r_; ++k) {
        uint64_t key = cell_key(k, i);
        int h = (int)bucket(bkt_, key);
        double* c = live_cell(k, h);
        c[j] += sign(sgn_, key) * delta;
    }
}

void CountSketchM::add_scaled_row(int i, const RowVec& row, double s) {
    if (i < 0 || i >= n_)
        throw std::out_of_range("CountSketchM::add_row: index out of range");
    if ((int)row.size() != d_)
        throw std::invalid_argument("CountSketchM::add_row: wrong row size");
    for (int k = 0; k < r_; ++k) {
        uint64_t key = cell_key(k, i);
        int h = (int)bucket(bkt_, key);
        double* c = live_cell(k, h);
        double sg = sign(sgn_, key) * s;
        for (int t = 0; t < d_; ++t) c[t] += sg * row[t];
    }
}

RowVec CountSketchM::query_row(const Projector& p, int i) const {
    struct Cand {
        double norm;
        int k;
        RowVec v;
    };
    std::vector<Cand> cands;
    cands.reserve(r_);
    for (int k = 0; k < r_; ++k) {
        uint64_t key = cell_key(k, i);
        int h = (int)bucket(bkt_, key);
        const double* c = cell_or_null(k, h);
        RowVec v(d_, 0.0);
        if (c) {
            double sg = sign(sgn_, key);
            for (int t = 0; t < d_; ++t) v[t] = sg * c[t];
            p.apply_inplace(v);
        }
        cands.push_back({nrm2(v), k, std::move(v)});
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        return a.norm != b.norm ? a.norm < b.norm : a.k < b.k;
    });
    double med = cands[(r_ - 1) / 2].norm;
    for (auto& c : cands)
        if (c.norm == med) return std::move(c.v);
    return std::move(cands[(r_ - 1) / 2].v);  // unreachable
}

double CountSketchM::query_row_norm(const Projector& p, int i) const {
    std::vector<double> norms;
    norms.reserve(r_);
    RowVec v(d_);
    for (int k = 0; k < r_; ++k) {
        uint64_t key = cell_key(k, i);
        int h = (int)bucket(bkt_, key);
        const double* c = cell_or_null(k, h);
        if (!c) {
            norms.push_back(0.0);
            continue;
        }
        std::copy(c, c + d_, v.begin());
        p.apply_inplace(v);
        norms.push_back(nrm2(v));
    }
    std::nth_element(norms.begin(), norms.begin() + (r_ - 1) / 2, norms.end());
    return norms[(r_ - 1) / 2];
}

std::vector<CountSketchM::TopRow> CountSketchM::top_rows(const Projector& p, int m) const {
    std::vector<TopRow> all;
    all.reserve(n_);
    for (int i = 0; i < n_; ++i) {
        RowVec v = query_row(p, i);
        all.push_back({i, nrm2(v), std::move(v)});
    }
    std::sort(all.begin(), all.end(), [](const TopRow& a, const TopRow& b) {
        return a.norm != b.norm ? a.norm > b.norm : a.i < b.i;
    });
    if ((int)all.size() > m) all.resize(std::max(m, 0));
    return all;
}

std::vector<double> CountSketchM::cells_after(const Projector& p) const {
    std::vector<double> out;
    out.reserve(cells_.size());
    RowVec v(d_);
    for (size_t idx = 0; idx < epoch_.size(); ++idx) {
        if (epoch_[idx] != cur_) {
            v.assign(d_, 0.0);
        } else {
            const double* c = cells_.data() + idx * d_;
            std::copy(c, c + d_, v.begin());
            p.apply_inplace(v);
        }
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

std::vector<double> CountSketchM::dump_cells() const {
    std::vector<double> out(cells_.size(), 0.0);
    for (size_t idx = 0; idx < epoch_.size(); ++idx)
        if (epoch_[idx] == cur_)
            std::copy(cells_.data() + idx * d_, cells_.data() + (idx + 1) * d_,
                      out.begin() + idx * d_);
    return out;
}

void CountSketchM::materialize_all() {
    for (size_t idx = 0; idx < epoch_.size(); ++idx) {
        if (epoch_[idx] != cur_) {
            double* c = cells_.data() + idx * d_;
            std::fill(c, c + d_, 0.0);
            epoch_[idx] = cur_;
        }
    }
}

void CountSketchM::load_cells(const std::vector<double>& cells) {
    if (cells.size() != cells_.size())
        throw std::invalid_argument("CountSketchM::load_cells: wrong size");
    cells_ = cells;
    std::fill(epoch_.begin(), epoch_.end(), cur_);
}

void CountSketchM::merge(const CountSketchM& other) {
    check_headers_match(header_bytes(), other.header_bytes(), "CountSketchM::merge");
    materialize_all();
    for (size_t idx = 0; idx < other.epoch_.size(); ++idx) {
        if (other.epoch_[idx] != other.cur_) continue;
        double* dst = cells_.data() + idx * d_;
        const double* src = other.cells_.data() + idx * d_;
        for (int t = 0; t < d_; ++t) dst[t] += src[t];
    }
}

std::string CountSketchM::header_bytes() const {
    std::string h;
    h.append(kMagic, 8);
    put_u8(h, (uint8_t)SketchKind::countsketch);
    put_u32(h, (uint32_t)n_);
    put_u32(h, (uint32_t)d_);
    put_u64(h, seed_);
    put_u32(h, (uint32_t)r_);
    put_u32(h, (uint32_t)b_);
    return h;
}

std::string CountSketchM::serialize() const {
    std::string o = header_bytes();
    o.reserve(o.size() + cells_.size() * 8);
    RowVec zero(d_, 0.0);
    for (size_t idx = 0; idx < epoch_.size(); ++idx) {
        const double* c = epoch_[idx] == cur_ ? cells_.data() + idx * d_ : zero.data();
        for (int t = 0; t < d_; ++t) put_f64(o, c[t]);
    }
    return o;
}

CountSketchM CountSketchM::deserialize(const std::string& blob) {
    Reader r{blob};
    r.magic();
    if (r.u8() != (uint8_t)SketchKind::countsketch)
        throw std::runtime_error("blob is not a countsketch");
    int n = (int)r.u32();
    int d = (int)r.u32();
    uint64_t seed = r.u64();
    int rr = (int)r.u32();
    int b = (int)r.u32();
    CountSketchM s(n, d, rr, b, seed);
    std::vector<double> cells(s.cells_.size());
    for (double& v : cells) v = r.f64();
    if (r.off != blob.size()) throw std::runtime_error("trailing bytes after countsketch payload");
    s.load_cells(cells);
    return s;
}

// ---------------------------------------------------------- EstimatorM

EstimatorM::EstimatorM(int n, int d, uint64_t seed, int r0, int b0, double xi)
    : n_(n), d_(d), r0_(r0), b0_(b0), xi_(xi), seed_(seed) {
    if (n < 1 || d < 1) throw std::invalid_argument("EstimatorM: n and d must be >= 1");
    if (r0 < 1 || b0 < 1) throw std::invalid_argument("EstimatorM: r0 and b0 must be >= 1");
    if (!(xi > 1.0)) throw std::invalid_argument("EstimatorM: xi must exceed 1");
    levels_ = ceil_log2(std::max(n_, 2)) + 1;
    memb_ = HashFamily::uniform_family(mix64(seed, tag("est.memb")));
    lv_.reserve(levels_);
    for (int j = 0; j < levels_; ++j)
        lv_.emplace_back(n_, d_, r0_, b0_, mix64(seed, tag("est.level"), (uint64_t)j));
}

void EstimatorM::reset(uint64_t seed) {
    seed_ = seed;
    memb_ = HashFamily::uniform_family(mix64(seed, tag("est.memb")));
    for (int j = 0; j < levels_; ++j) lv_[j].reset(mix64(seed, tag("est.level"), (uint64_t)j));
}

int EstimatorM::max_level(int i) const {
    // membership grid has 30 bits; level j keeps rows with u <= 2^-j
    auto m = (uint64_t)std::llround(uniform_scale(memb_, (uint64_t)i) * 0x1p30);
    int ml = 0;
    while (ml < levels_ - 1 && ml < 30 && m <= (1ull << (30 - (ml + 1)))) ++ml;
    return ml;
}

void EstimatorM::update(int i, int j, double delta) {
    if (i < 0 || i >= n_ || j < 0 || j >= d_)
        throw std::out_of_range("EstimatorM::update: index out of range");
    int ml = max_level(i);
    for (int l = 0; l <= ml; ++l) lv_[l].update(i, j, delta);
}

void EstimatorM::add_scaled_row(int i, const RowVec& row, double s) {
    if (i < 0 || i >= n_)
        throw std::out_of_range("EstimatorM::add_row: index out of range");
    int ml = max_level(i);
    for (int l = 0; l <= ml; ++l) lv_[l].add_scaled_row(i, row, s);
}

double EstimatorM::estimate(const Projector& p) const {
    std::vector<int> ml(n_);
    for (int i = 0; i < n_; ++i) ml[i] = max_level(i);

    // recovered norm per (level, surviving row)
    std::vector<std::vector<double>> nr(levels_, std::vector<double>(n_, -1.0));
    for (int j = 0; j < levels_; ++j)
        for (int i = 0; i < n_; ++i)
            if (ml[i] >= j) nr[j][i] = lv_[j].query_row_norm(p, i);

    double w = 0.0;
    for (int i = 0; i < n_; ++i) w = std::max(w, nr[0][i]);
    if (w <= 0.0) return 0.0;

    int cmax = ceil_log2(std::max(n_, 2)) + 2;
    double f = 0.0;
    for (int c = 0; c <= cmax; ++c) {
        double hi = std::ldexp(w, -c);
        double lo = 0.5 * hi;
        for (int j = 0; j < levels_; ++j) {
            int cnt = 0;
            for (int i = 0; i < n_; ++i)
                if (nr[j][i] > lo && nr[j][i] <= hi) ++cnt;
            if (cnt <= kBandCap || j == levels_ - 1) {
                f += std::ldexp((double)cnt, j) * 0.75 * hi;
                break;
            }
        }
    }
    return f;
}

std::vector<double> EstimatorM::cells_after(const Projector& p) const {
    std::vector<double> out;
    for (const auto& lv : lv_) {
        auto c = lv.cells_after(p);
        out.insert(out.end(), c.begin(), c.end());
    }
    return out;
}

std::vector<double> EstimatorM::dump_cells() const {
    std::vector<double> out;
    for (const auto& lv : lv_) {
        auto c = lv.dump_cells();
        out.insert(out.end(), c.begin(), c.end());
    }
    return out;
}

void EstimatorM::load_cells(const std::vector<double>& cells) {
    size_t per = (size_t)r0_ * b0_ * d_;
    if (cells.size() != per * levels_)
        throw std::invalid_argument("EstimatorM::load_cells: wrong size");
    std::vector<double> chunk(per);
    for (int j = 0; j < levels_; ++j) {
        std::copy(cells.begin() + j * per, cells.begin() + (j + 1) * per, chunk.begin());
        lv_[j].load_cells(chunk);
    }
}

void EstimatorM::merge(const EstimatorM& other) {
    check_headers_match(header_bytes(), other.header_bytes(), "EstimatorM::merge");
    for (int j = 0; j < levels_; ++j) lv_[j].merge(other.lv_[j]);
}

std::string EstimatorM::header_bytes() const {
    std::string h;
    h.append(kMagic, 8);
    put_u8(h, (uint8_t)SketchKind::estimator);
    put_u32(h, (uint32_t)n_);
    put_u32(h, (uint32_t)d_);
    put_u64(h, seed_);
    put_u32(h, (uint32_t)levels_);
    put_u32(h, (uint32_t)r0_);
    put_u32(h, (uint32_t)b0_);
    put_f64(h, xi_);
    return h;
}

std::string EstimatorM::serialize() const {
    std::string o = header_bytes();
    auto cells = dump_cells();
    o.reserve(o.size() + cells.size() * 8);
    for (double v : cells) put_f64(o, v);
    return o;
}

EstimatorM EstimatorM::deserialize(const std::string& blob) {
    Reader r{blob};
    r.magic();
    if (r.u8() != (uint8_t)SketchKind::estimator)
        throw std::runtime_error("blob is not an estimator sketch");
    int n = (int)r.u32();
    int d = (int)r.u32();
    uint64_t seed = r.u64();
    uint32_t levels = r.u32();
    int r0 = (int)r.u32();
    int b0 = (int)r.u32();
    double xi = r.f64();
    EstimatorM s(n, d, seed, r0, b0, xi);
    if ((uint32_t)s.levels_ != levels)
        throw std::runtime_error("estimator blob header inconsistent with its parameters");
    std::vector<double> cells((size_t)levels * r0 * b0 * d);
    for (double& v : cells) v = r.f64();
    if (r.off != blob.size()) throw std::runtime_error("trailing bytes after estimator payload");
    s.load_cells(cells);
    return s;
}

// -------------------------------------------------------- blob helpers

SketchKind blob_kind(const std::string& blob) {
    Reader r{blob};
    r.magic();
    uint8_t k = r.u8();
    if (k < 1 || k > 3) throw std::runtime_error("unknown sketch kind in blob");
    return (SketchKind)k;
}

std::string merge_blobs(const std::string& a, const std::string& b) {
    SketchKind ka = blob_kind(a);
    SketchKind kb = blob_kind(b);
    if (ka != kb) throw std::invalid_argument("merge: sketch kinds differ");
    switch (ka) {
        case SketchKind::ams: {
            AmsM sa = AmsM::deserialize(a);
            sa.merge(AmsM::deserialize(b));
            return sa.serialize();
        }
        case SketchKind::countsketch: {
            CountSketchM sa = CountSketchM::deserialize(a);
            sa.merge(CountSketchM::deserialize(b));
            return sa.serialize();
        }
        case SketchKind::estimator: {
            EstimatorM sa = EstimatorM::deserialize(a);
            sa.merge(EstimatorM::deserialize(b));
            return sa.serialize();
        }
    }
    throw std::logic_error("unreachable");
}

std::string blob_summary(const std::string& blob) {
    std::ostringstream os;
    switch (blob_kind(blob)) {
        case SketchKind::ams: {
            AmsM s = AmsM::deserialize(blob);
            os << "ams n=" << s.n() << " d=" << s.d() << " eps=" << s.eps()
               << " copies=" << s.total_copies() << " seed=" << s.seed();
            break;
        }
        case SketchKind::countsketch: {
            CountSketchM s = CountSketchM::deserialize(blob);
            os << "countsketch n=" << s.n() << " d=" << s.d() << " r=" << s.rows()
               << " b=" << s.buckets() << " seed=" << s.seed();
            break;
        }
        case SketchKind::estimator: {
            EstimatorM s = EstimatorM::deserialize(blob);
            os << "estimator n=" << s.n() << " d=" << s.d() << " levels=" << s.levels()
               << " xi=" << s.xi() << " seed=" << s.seed();
            break;
        }
    }
    return os.str();
}

}  // namespace sks
