// shared helpers for the unit suites
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sks/linalg.hpp"
#include "sks/rand.hpp"
#include "sks/stream.hpp"

namespace testutil {

inline sks::DenseMatrix make_matrix(std::initializer_list<std::initializer_list<double>> rows) {
    sks::DenseMatrix m;
    m.n = (int)rows.size();
    m.d = rows.size() ? (int)rows.begin()->size() : 0;
    for (const auto& r : rows) m.rows.emplace_back(r);
    return m;
}

// small signed integer matrix, entries in [-span, span]
inline sks::DenseMatrix random_int_matrix(int n, int d, uint64_t seed, int span = 8) {
    sks::DenseMatrix m;
    m.n = n;
    m.d = d;
    m.rows.assign(n, sks::RowVec(d, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) {
            uint64_t w = sks::mix64(seed, (uint64_t)(i * 131071 + j));
            m.rows[i][j] = (double)(int64_t)(w % (uint64_t)(2 * span + 1)) - span;
        }
    return m;
}

inline sks::StreamData rows_stream(const sks::DenseMatrix& m) {
    sks::StreamData sd;
    sd.turnstile = false;
    sd.n = m.n;
    sd.d = m.d;
    sd.rows = m;
    return sd;
}

inline sks::StreamData turnstile_stream(const sks::DenseMatrix& m) {
    sks::StreamData sd;
    sd.turnstile = true;
    sd.n = m.n;
    sd.d = m.d;
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.d; ++j)
            if (m.rows[i][j] != 0.0) sd.updates.push_back({i, j, m.rows[i][j]});
    return sd;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    size_t n = std::min(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) worst = std::max(worst, std::fabs(a[i] - b[i]));
    if (a.size() != b.size()) worst = 1e300;
    return worst;
}

// determinant via Bareiss style elimination with partial pivoting, test-side only
inline double det_small(std::vector<std::vector<double>> m) {
    size_t n = m.size();
    double det = 1.0;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        for (size_t r = c + 1; r < n; ++r)
            if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
        if (m[piv][c] == 0.0) return 0.0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (size_t r = c + 1; r < n; ++r) {
            double f = m[r][c] / m[c][c];
            for (size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

inline double gram_volume(const std::vector<sks::RowVec>& rows) {
    size_t k = rows.size();
    std::vector<std::vector<double>> g(k, std::vector<double>(k, 0.0));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) g[i][j] = sks::dot(rows[i], rows[j]);
    double dg = det_small(g);
    return dg > 0.0 ? std::sqrt(dg) : 0.0;
}

} // namespace testutil
