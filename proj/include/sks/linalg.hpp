// Small dense row-vector / matrix helpers used across the library.
// Everything is double precision, rows are plain std::vector<double>.
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sks {

using RowVec = std::vector<double>;

double dot(const RowVec& a, const RowVec& b);
double nrm2(const RowVec& a);
// y += alpha * x
void axpy(double alpha, const RowVec& x, RowVec& y);
void scale(RowVec& x, double alpha);

struct DenseMatrix {
    int n = 0;  // rows
    int d = 0;  // cols
    std::vector<RowVec> rows;

    DenseMatrix() = default;
    DenseMatrix(int n_, int d_) : n(n_), d(d_), rows(n_, RowVec(d_, 0.0)) {}
    RowVec& operator[](int i) { return rows[i]; }
    const RowVec& operator[](int i) const { return rows[i]; }
};

// entrywise p-norm of the vector of row q-norms, q fixed to 2
double lpq_norm(const DenseMatrix& a, double p);

// row * m, m given as d x d' list of rows
RowVec mat_vec_right(const RowVec& row, const DenseMatrix& m);

// Incrementally maintained orthonormal set. extend() runs modified
// Gram-Schmidt with a second re-orthogonalization pass; vectors whose
// residual drops below rank_tol * ||v|| are treated as dependent and
// rejected.
struct OrthoBasis {
    int d = 0;
    double rank_tol = 1e-10;
    std::vector<RowVec> vecs;

    explicit OrthoBasis(int d_ = 0) : d(d_) {}
    int rank() const { return (int)vecs.size(); }

    // component of v orthogonal to the current span
    RowVec residual(const RowVec& v) const;
    // append normalized residual; false if v is dependent
    bool extend(const RowVec& v);
};

// convenience wrapper returning the extended copy
OrthoBasis orthonormal_extend(const OrthoBasis& basis, const RowVec& v);

// Volume of the parallelepiped spanned by the given rows: product of
// successive Gram-Schmidt residual norms. Zero when dependent; more rows
// than dimensions is an error.
double parallelepiped_volume(const std::vector<RowVec>& rows);

// Right-side projection applied to row vectors. Three flavors:
// identity, explicit d x d matrix, or projection onto the orthogonal
// complement of a basis (v -> v - sum <v,u> u).
class Projector {
public:
    enum class Kind { identity, matrix, complement };

    static Projector identity();
    static Projector matrix(DenseMatrix m);
    static Projector complement(const OrthoBasis& basis);

    Kind kind() const { return kind_; }
    const OrthoBasis& basis() const { return basis_; }

    RowVec apply(const RowVec& v) const;
    // in-place variant, scratch-free for the identity / complement kinds
    void apply_inplace(RowVec& v) const;

private:
    Kind kind_ = Kind::identity;
    DenseMatrix m_;
    OrthoBasis basis_;
};

}  // namespace sks
