#include "sks/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace sks {

double dot(const RowVec& a, const RowVec& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double nrm2(const RowVec& a) {
    return std::sqrt(dot(a, a));
}

void axpy(double alpha, const RowVec& x, RowVec& y) {
    for (size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void scale(RowVec& x, double alpha) {
    for (double& v : x) v *= alpha;
}

double lpq_norm(const DenseMatrix& a, double p) {
    if (p <= 0.0) throw std::invalid_argument("lpq_norm: p must be positive");
    double acc = 0.0;
    for (const auto& r : a.rows) acc += std::pow(nrm2(r), p);
    return std::pow(acc, 1.0 / p);
}

RowVec mat_vec_right(const RowVec& row, const DenseMatrix& m) {
    if ((int)row.size() != m.n)
        throw std::invalid_argument("mat_vec_right: size mismatch");
    RowVec out(m.d, 0.0);
    for (int i = 0; i < m.n; ++i) {
        double ri = row[i];
        if (ri == 0.0) continue;
        axpy(ri, m.rows[i], out);
    }
    return out;
}

RowVec OrthoBasis::residual(const RowVec& v) const {
    RowVec r = v;
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& u : vecs) axpy(-dot(r, u), u, r);
    return r;
}

bool OrthoBasis::extend(const RowVec& v) {
    if ((int)v.size() != d)
        throw std::invalid_argument("OrthoBasis::extend: dimension mismatch");
    if (rank() >= d) return false;
    double vn = nrm2(v);
    if (vn == 0.0) return false;
    RowVec r = residual(v);
    double rn = nrm2(r);
    if (rn <= rank_tol * vn) return false;
    scale(r, 1.0 / rn);
    vecs.push_back(std::move(r));
    return true;
}

OrthoBasis orthonormal_extend(const OrthoBasis& basis, const RowVec& v) {
    OrthoBasis out = basis;
    out.extend(v);
    return out;
}

double parallelepiped_volume(const std::vector<RowVec>& rows) {
    if (rows.empty()) return 1.0;
    size_t d = rows[0].size();
    if (rows.size() > d)
        throw std::invalid_argument("parallelepiped_volume: more vectors than dimensions");
    OrthoBasis b((int)d);
    double vol = 1.0;
    for (const auto& row : rows) {
        RowVec r = b.residual(row);
        double rn = nrm2(r);
        vol *= rn;
        if (rn > 0.0) {
            scale(r, 1.0 / rn);
            b.vecs.push_back(std::move(r));
        }
    }
    return vol;
}

Projector Projector::identity() {
    return Projector{};
}

Projector Projector::matrix(DenseMatrix m) {
    if (m.n != m.d) throw std::invalid_argument("Projector::matrix: must be square");
    Projector p;
    p.kind_ = Kind::matrix;
    p.m_ = std::move(m);
    return p;
}

Projector Projector::complement(const OrthoBasis& basis) {
    Projector p;
    p.kind_ = Kind::complement;
    p.basis_ = basis;
    return p;
}

RowVec Projector::apply(const RowVec& v) const {
    RowVec out = v;
    apply_inplace(out);
    return out;
}

void Projector::apply_inplace(RowVec& v) const {
    switch (kind_) {
        case Kind::identity:
            return;
        case Kind::matrix: {
            v = mat_vec_right(v, m_);
            return;
        }
        case Kind::complement: {
            for (const auto& u : basis_.vecs) axpy(-dot(v, u), u, v);
            return;
        }
    }
}

}  // namespace sks
