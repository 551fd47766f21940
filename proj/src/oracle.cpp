#include "sks/oracle.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace sks {

namespace {

Eigen::MatrixXd to_eigen(const DenseMatrix& a) {
    Eigen::MatrixXd m(a.n, a.d);
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.d; ++j) m(i, j) = a[i][j];
    return m;
}

Eigen::MatrixXd rows_to_eigen(const std::vector<RowVec>& rows) {
    if (rows.empty()) return Eigen::MatrixXd(0, 0);
    Eigen::MatrixXd m((int)rows.size(), (int)rows[0].size());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    return m;
}

// orthonormal basis (columns) of the row span, via thin SVD
Eigen::MatrixXd span_basis(const Eigen::MatrixXd& rows) {
    if (rows.rows() == 0) return Eigen::MatrixXd(rows.cols(), 0);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeThinV);
    double tol = 1e-12 * std::max(1.0, svd.singularValues().size() ? svd.singularValues()(0) : 0.0);
    int r = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > tol) ++r;
    return svd.matrixV().leftCols(r);
}

double residual_norm(const Eigen::VectorXd& x, const Eigen::MatrixXd& v) {
    if (v.cols() == 0) return x.norm();
    Eigen::VectorXd proj = v * (v.transpose() * x);
    return (x - proj).norm();
}

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) {
        r = r * (n - i) / (i + 1);
        if (r > (1LL << 62) / (n + 1)) return 1LL << 62;
    }
    return r;
}

void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    if (k == 0) {
        fn(idx);
        return;
    }
    for (;;) {
        fn(idx);
        int t = k - 1;
        while (t >= 0 && idx[t] == n - k + t) --t;
        if (t < 0) break;
        ++idx[t];
        for (int u = t + 1; u < k; ++u) idx[u] = idx[u - 1] + 1;
    }
}

double gram_volume(const Eigen::MatrixXd& rows) {
    Eigen::MatrixXd g = rows * rows.transpose();
    double det = g.determinant();
    return det > 0.0 ? std::sqrt(det) : 0.0;
}

}  // namespace

double ExactDistribution::prob_of(const std::vector<int>& outcome) const {
    for (size_t i = 0; i < outcomes.size(); ++i)
        if (outcomes[i] == outcome) return probs[i];
    return 0.0;
}

ExactDistribution exact_lp2_distribution(const DenseMatrix& a, const Projector& p, int pnorm) {
    if (pnorm != 1 && pnorm != 2)
        throw std::invalid_argument("exact_lp2_distribution: p must be 1 or 2");
    ExactDistribution out;
    std::vector<double> w(a.n, 0.0);
    double total = 0.0;
    for (int i = 0; i < a.n; ++i) {
        RowVec r = p.apply(a[i]);
        double nn = 0.0;
        for (double v : r) nn += v * v;
        w[i] = pnorm == 2 ? nn : std::sqrt(nn);
        total += w[i];
    }
    if (total <= 0.0)
        throw std::invalid_argument("exact_lp2_distribution: projected matrix is zero");
    for (int i = 0; i < a.n; ++i) {
        if (w[i] <= 0.0) continue;
        out.outcomes.push_back({i});
        out.probs.push_back(w[i] / total);
    }
    return out;
}

ExactDistribution exact_adaptive_distribution(const DenseMatrix& a, int k, int pnorm) {
    if (pnorm != 1 && pnorm != 2)
        throw std::invalid_argument("exact_adaptive_distribution: p must be 1 or 2");
    if (a.n > 10 || k > 3)
        throw std::invalid_argument(
            "exact_adaptive_distribution: exhaustive enumeration is limited to n <= 10, k <= 3");
    Eigen::MatrixXd m = to_eigen(a);
    ExactDistribution out;
    std::vector<int> prefix;
    std::vector<RowVec> chosen;

    std::function<void(double)> rec = [&](double mass) {
        if ((int)prefix.size() == k) {
            out.outcomes.push_back(prefix);
            out.probs.push_back(mass);
            return;
        }
        Eigen::MatrixXd v = span_basis(rows_to_eigen(chosen));
        std::vector<double> w(a.n, 0.0);
        double total = 0.0;
        double scale0 = 0.0;
        for (int i = 0; i < a.n; ++i) scale0 = std::max(scale0, m.row(i).norm());
        for (int i = 0; i < a.n; ++i) {
            double dn = residual_norm(m.row(i).transpose(), v);
            if (dn <= 1e-9 * std::max(scale0, 1.0)) dn = 0.0;
            w[i] = pnorm == 2 ? dn * dn : dn;
            total += w[i];
        }
        if (total <= 0.0) {
            // residual exhausted: pad the tuple
            std::vector<int> padded = prefix;
            padded.resize(k, -1);
            out.outcomes.push_back(padded);
            out.probs.push_back(mass);
            return;
        }
        for (int i = 0; i < a.n; ++i) {
            if (w[i] <= 0.0) continue;
            prefix.push_back(i);
            chosen.push_back(a[i]);
            rec(mass * w[i] / total);
            chosen.pop_back();
            prefix.pop_back();
        }
    };
    rec(1.0);

    // collapse duplicate padded outcomes
    std::map<std::vector<int>, double> agg;
    for (size_t i = 0; i < out.outcomes.size(); ++i) agg[out.outcomes[i]] += out.probs[i];
    ExactDistribution dedup;
    for (auto& kv : agg) {
        dedup.outcomes.push_back(kv.first);
        dedup.probs.push_back(kv.second);
    }
    return dedup;
}

ExactDistribution exact_volume_sampling(const DenseMatrix& a, int k) {
    if (k < 1 || k > a.n) throw std::invalid_argument("exact_volume_sampling: bad k");
    if (binomial(a.n, k) > 1000000)
        throw std::invalid_argument("exact_volume_sampling: C(n,k) too large");
    Eigen::MatrixXd m = to_eigen(a);
    ExactDistribution out;
    double total = 0.0;
    for_each_subset(a.n, k, [&](const std::vector<int>& idx) {
        Eigen::MatrixXd rows(k, a.d);
        for (int t = 0; t < k; ++t) rows.row(t) = m.row(idx[t]);
        double vol = gram_volume(rows);
        double w = vol * vol;
        if (w <= 0.0) return;
        out.outcomes.push_back(idx);
        out.probs.push_back(w);
        total += w;
    });
    if (total <= 0.0)
        throw std::invalid_argument("exact_volume_sampling: all k-subsets are degenerate");
    for (double& p : out.probs) p /= total;
    return out;
}

std::pair<std::vector<int>, double> exact_volume_max(const DenseMatrix& a, int k) {
    if (k < 1 || k > a.n) throw std::invalid_argument("exact_volume_max: bad k");
    if (binomial(a.n, k) > 1000000)
        throw std::invalid_argument("exact_volume_max: C(n,k) too large");
    Eigen::MatrixXd m = to_eigen(a);
    std::vector<int> best;
    double best_vol = -1.0;
    for_each_subset(a.n, k, [&](const std::vector<int>& idx) {
        Eigen::MatrixXd rows(k, a.d);
        for (int t = 0; t < k; ++t) rows.row(t) = m.row(idx[t]);
        double vol = gram_volume(rows);
        if (vol > best_vol) {  // strict: first (lexicographic) subset wins ties
            best_vol = vol;
            best = idx;
        }
    });
    return {best, std::max(best_vol, 0.0)};
}

RankKError best_rank_k_error(const DenseMatrix& a, int k, int pnorm) {
    if (pnorm != 1 && pnorm != 2)
        throw std::invalid_argument("best_rank_k_error: p must be 1 or 2");
    if (k < 0) throw std::invalid_argument("best_rank_k_error: k must be >= 0");
    Eigen::MatrixXd m = to_eigen(a);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    RankKError out;
    if (pnorm == 2) {
        double s = 0.0;
        for (int i = k; i < svd.singularValues().size(); ++i) {
            double sv = svd.singularValues()(i);
            s += sv * sv;
        }
        out.value = std::sqrt(s);
        out.is_exact = true;
    } else {
        // L_{1,2} cost of the best Frobenius rank-k subspace; a reference
        // value only, the true p=1 optimum can be smaller elsewhere
        int r = std::min<int>(k, svd.singularValues().size());
        Eigen::MatrixXd v = svd.matrixV().leftCols(r);
        double s = 0.0;
        for (int i = 0; i < a.n; ++i) s += residual_norm(m.row(i).transpose(), v);
        out.value = s;
        out.is_exact = false;
    }
    return out;
}

double tv_distance(const ExactDistribution& exact,
                   const std::map<std::vector<int>, long long>& counts, long long total) {
    if (total <= 0) throw std::invalid_argument("tv_distance: total must be positive");
    double acc = 0.0;
    std::map<std::vector<int>, double> emp;
    for (const auto& kv : counts) emp[kv.first] = (double)kv.second / (double)total;
    for (size_t i = 0; i < exact.outcomes.size(); ++i) {
        auto it = emp.find(exact.outcomes[i]);
        double q = it == emp.end() ? 0.0 : it->second;
        acc += std::abs(exact.probs[i] - q);
        if (it != emp.end()) emp.erase(it);
    }
    for (const auto& kv : emp) acc += kv.second;  // mass outside the exact support
    return 0.5 * acc;
}

double dist_to_span(const RowVec& x, const std::vector<RowVec>& span_rows) {
    Eigen::VectorXd v(x.size());
    for (size_t i = 0; i < x.size(); ++i) v((int)i) = x[i];
    return residual_norm(v, span_basis(rows_to_eigen(span_rows)));
}

double sum_dist_pow(const DenseMatrix& a, const std::vector<RowVec>& span_rows, double pw) {
    Eigen::MatrixXd m = to_eigen(a);
    Eigen::MatrixXd v = span_basis(rows_to_eigen(span_rows));
    double s = 0.0;
    for (int i = 0; i < a.n; ++i) s += std::pow(residual_norm(m.row(i).transpose(), v), pw);
    return s;
}

}  // namespace sks
