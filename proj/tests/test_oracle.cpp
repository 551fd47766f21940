#include "doctest.h"
#include "helpers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "sks/oracle.hpp"

using namespace sks;
using testutil::make_matrix;
using testutil::random_int_matrix;

namespace {

double prob_sum(const ExactDistribution& d) {
    double s = 0.0;
    for (double p : d.probs) s += p;
    return s;
}

// plain cyclic Jacobi sweep on the symmetric matrix A^T A, kept deliberately
// separate from the production singular value path
std::vector<double> jacobi_sq_singular_values(const DenseMatrix& a) {
    int d = a.d;
    std::vector<std::vector<double>> s(d, std::vector<double>(d, 0.0));
    for (int i = 0; i < a.n; ++i)
        for (int p = 0; p < d; ++p)
            for (int q = 0; q < d; ++q) s[p][q] += a.rows[i][p] * a.rows[i][q];
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < d; ++p)
            for (int q = p + 1; q < d; ++q) off += s[p][q] * s[p][q];
        if (off < 1e-24) break;
        for (int p = 0; p < d; ++p)
            for (int q = p + 1; q < d; ++q) {
                if (std::fabs(s[p][q]) < 1e-18) continue;
                double theta = 0.5 * std::atan2(2.0 * s[p][q], s[q][q] - s[p][p]);
                double c = std::cos(theta), sn = std::sin(theta);
                for (int r = 0; r < d; ++r) {
                    double xp = s[r][p], xq = s[r][q];
                    s[r][p] = c * xp - sn * xq;
                    s[r][q] = sn * xp + c * xq;
                }
                for (int r = 0; r < d; ++r) {
                    double xp = s[p][r], xq = s[q][r];
                    s[p][r] = c * xp - sn * xq;
                    s[q][r] = sn * xp + c * xq;
                }
            }
    }
    std::vector<double> ev(d);
    for (int p = 0; p < d; ++p) ev[p] = std::max(s[p][p], 0.0);
    std::sort(ev.rbegin(), ev.rend());
    return ev;
}

} // namespace

TEST_SUITE("oracle") {

TEST_CASE("row norm law on identical and axis rows") {
    DenseMatrix uni = make_matrix({{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}});
    ExactDistribution d = exact_lp2_distribution(uni, Projector::identity(), 2);
    REQUIRE(d.outcomes.size() == 3);
    for (double p : d.probs) CHECK(p == doctest::Approx(1.0 / 3.0));

    DenseMatrix two = make_matrix({{2.0, 0.0}, {0.0, 1.0}});
    ExactDistribution d2 = exact_lp2_distribution(two, Projector::identity(), 2);
    CHECK(d2.prob_of({0}) == doctest::Approx(0.8));
    CHECK(d2.prob_of({1}) == doctest::Approx(0.2));
    ExactDistribution d1 = exact_lp2_distribution(two, Projector::identity(), 1);
    CHECK(d1.prob_of({0}) == doctest::Approx(2.0 / 3.0));
    CHECK(d1.prob_of({1}) == doctest::Approx(1.0 / 3.0));

    DenseMatrix zero = make_matrix({{0.0, 0.0}, {0.0, 0.0}});
    CHECK_THROWS_AS(exact_lp2_distribution(zero, Projector::identity(), 2),
                    std::invalid_argument);
}

TEST_CASE("row norm law respects the projector") {
    DenseMatrix two = make_matrix({{2.0, 0.0}, {0.0, 1.0}});
    OrthoBasis b(2);
    b.extend({1.0, 0.0});
    ExactDistribution d = exact_lp2_distribution(two, Projector::complement(b), 2);
    CHECK(d.prob_of({1}) == doctest::Approx(1.0));
    CHECK(d.prob_of({0}) == doctest::Approx(0.0));
    CHECK(prob_sum(d) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("adaptive law is uniform over tuples of orthonormal rows") {
    DenseMatrix eye = make_matrix({{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}});
    ExactDistribution d = exact_adaptive_distribution(eye, 2, 2);
    CHECK(d.outcomes.size() == 6);
    for (double p : d.probs) CHECK(p == doctest::Approx(1.0 / 6.0));
    CHECK(prob_sum(d) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("adaptive law with k = 1 collapses to the row norm law") {
    DenseMatrix a = random_int_matrix(6, 3, 0x0AC1E);
    ExactDistribution lp = exact_lp2_distribution(a, Projector::identity(), 2);
    ExactDistribution ad = exact_adaptive_distribution(a, 1, 2);
    REQUIRE(ad.outcomes.size() == lp.outcomes.size());
    for (size_t i = 0; i < lp.outcomes.size(); ++i)
        CHECK(ad.prob_of(lp.outcomes[i]) == doctest::Approx(lp.probs[i]).epsilon(1e-9));
}

TEST_CASE("adaptive law on the near-degenerate pencil instance") {
    DenseMatrix a = make_matrix({{10.0, 0.0}, {10.0, 0.0}, {0.0, 1.0}});
    ExactDistribution d = exact_adaptive_distribution(a, 2, 2);
    CHECK(d.prob_of({0, 2}) == doctest::Approx(100.0 / 201.0).epsilon(1e-12));
    CHECK(d.prob_of({1, 2}) == doctest::Approx(100.0 / 201.0).epsilon(1e-12));
    CHECK(d.prob_of({2, 0}) == doctest::Approx(1.0 / 402.0).epsilon(1e-12));
    CHECK(d.prob_of({2, 1}) == doctest::Approx(1.0 / 402.0).epsilon(1e-12));
    CHECK(prob_sum(d) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("adaptive law pads truncated paths on rank exhaustion") {
    DenseMatrix a = make_matrix({{1.0, 0.0}, {2.0, 0.0}});
    ExactDistribution d = exact_adaptive_distribution(a, 2, 2);
    CHECK(d.prob_of({0, -1}) == doctest::Approx(0.2));
    CHECK(d.prob_of({1, -1}) == doctest::Approx(0.8));
    CHECK(prob_sum(d) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("adaptive law first-pick marginal matches the row norm law") {
    DenseMatrix a = random_int_matrix(5, 3, 0x3A46);
    ExactDistribution lp = exact_lp2_distribution(a, Projector::identity(), 2);
    ExactDistribution ad = exact_adaptive_distribution(a, 2, 2);
    for (size_t i = 0; i < lp.outcomes.size(); ++i) {
        int first = lp.outcomes[i][0];
        double marg = 0.0;
        for (size_t t = 0; t < ad.outcomes.size(); ++t)
            if (!ad.outcomes[t].empty() && ad.outcomes[t][0] == first) marg += ad.probs[t];
        CHECK(marg == doctest::Approx(lp.probs[i]).epsilon(1e-9));
    }
}

TEST_CASE("adaptive law enforces its size guard") {
    DenseMatrix big = random_int_matrix(11, 3, 1);
    CHECK_THROWS_AS(exact_adaptive_distribution(big, 2, 2), std::invalid_argument);
    DenseMatrix small = random_int_matrix(5, 5, 2);
    CHECK_THROWS_AS(exact_adaptive_distribution(small, 4, 2), std::invalid_argument);
}

TEST_CASE("volume sampling puts all mass on the only independent pair") {
    DenseMatrix a = make_matrix({{1.0, 0.0}, {2.0, 0.0}, {0.0, 1.0}});
    ExactDistribution d = exact_volume_sampling(a, 2);
    double on_indep = d.prob_of({0, 2}) + d.prob_of({1, 2});
    CHECK(on_indep == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(d.prob_of({0, 1}) == doctest::Approx(0.0));
}

TEST_CASE("volume sampling is uniform for orthonormal rows") {
    DenseMatrix eye = make_matrix({{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}});
    ExactDistribution d = exact_volume_sampling(eye, 2);
    REQUIRE(d.outcomes.size() == 3);
    for (double p : d.probs) CHECK(p == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("volume sampling matches a direct Gram determinant path") {
    DenseMatrix a = random_int_matrix(4, 2, 0x9E0);
    ExactDistribution d = exact_volume_sampling(a, 2);
    std::map<std::vector<int>, double> direct;
    double total = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            double v = testutil::gram_volume({a.rows[i], a.rows[j]});
            direct[{i, j}] = v * v;
            total += v * v;
        }
    REQUIRE(total > 0.0);
    for (auto& kv : direct)
        CHECK(d.prob_of(kv.first) == doctest::Approx(kv.second / total).epsilon(1e-9));
}

TEST_CASE("adaptive set mass never exceeds k! times the volume sampling mass") {
    DenseMatrix a = random_int_matrix(5, 3, 0xA5B1);
    ExactDistribution vs = exact_volume_sampling(a, 2);
    ExactDistribution ad = exact_adaptive_distribution(a, 2, 2);
    std::map<std::vector<int>, double> q;
    for (size_t t = 0; t < ad.outcomes.size(); ++t) {
        std::vector<int> key = ad.outcomes[t];
        if (std::find(key.begin(), key.end(), -1) != key.end()) continue;
        std::sort(key.begin(), key.end());
        q[key] += ad.probs[t];
    }
    for (size_t i = 0; i < vs.outcomes.size(); ++i) {
        double qt = q.count(vs.outcomes[i]) ? q[vs.outcomes[i]] : 0.0;
        CHECK(qt <= 2.0 * vs.probs[i] + 1e-9);
    }
}

TEST_CASE("volume max finds planted orthogonal heavies and breaks ties low") {
    DenseMatrix a = make_matrix({{0.1, 0.0, 0.0},
                                 {5.0, 0.0, 0.0},
                                 {0.0, 5.0, 0.0},
                                 {0.2, 0.1, 0.0},
                                 {0.0, 0.0, 5.0}});
    auto [idx, vol] = exact_volume_max(a, 3);
    CHECK(idx == std::vector<int>{1, 2, 4});
    CHECK(vol == doctest::Approx(125.0));

    DenseMatrix sq = make_matrix({{1.0, 1.0}, {1.0, -1.0}, {-1.0, 1.0}, {-1.0, -1.0}});
    auto [sidx, svol] = exact_volume_max(sq, 2);
    CHECK(sidx == std::vector<int>{0, 1});
    CHECK(svol == doctest::Approx(2.0));

    auto [one, onev] = exact_volume_max(a, 1);
    CHECK(one == std::vector<int>{1});
    CHECK(onev == doctest::Approx(5.0));

    CHECK_THROWS_AS(exact_volume_max(a, 9), std::invalid_argument);
}

TEST_CASE("rank k error vanishes on rank k input and matches diag values") {
    DenseMatrix r1 = make_matrix({{1.0, 2.0}, {2.0, 4.0}, {-1.0, -2.0}});
    RankKError e1 = best_rank_k_error(r1, 1, 2);
    CHECK(e1.value == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(e1.is_exact);

    DenseMatrix dg = make_matrix({{3.0, 0.0, 0.0}, {0.0, 2.0, 0.0}, {0.0, 0.0, 1.0}});
    CHECK(best_rank_k_error(dg, 2, 2).value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(best_rank_k_error(dg, 0, 2).value ==
          doctest::Approx(std::sqrt(14.0)).epsilon(1e-9));

    RankKError p1 = best_rank_k_error(dg, 2, 1);
    CHECK_FALSE(p1.is_exact);
    CHECK(p1.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("rank k error agrees with an independent Jacobi path") {
    DenseMatrix a = random_int_matrix(8, 4, 0x77AC0B1);
    std::vector<double> sq = jacobi_sq_singular_values(a);
    for (int k = 0; k <= 4; ++k) {
        double tail = 0.0;
        for (int i = k; i < 4; ++i) tail += sq[i];
        double expect = std::sqrt(tail);
        double got = best_rank_k_error(a, k, 2).value;
        CHECK(got == doctest::Approx(expect).epsilon(1e-7));
    }
}

TEST_CASE("tv distance on matched, disjoint, and worked inputs") {
    ExactDistribution d;
    d.outcomes = {{0}, {1}};
    d.probs = {0.8, 0.2};

    std::map<std::vector<int>, long long> same{{{0}, 80}, {{1}, 20}};
    CHECK(tv_distance(d, same, 100) == doctest::Approx(0.0));

    std::map<std::vector<int>, long long> disjoint{{{7}, 50}};
    CHECK(tv_distance(d, disjoint, 50) == doctest::Approx(1.0));

    std::map<std::vector<int>, long long> worked{{{0}, 70}, {{1}, 30}};
    CHECK(tv_distance(d, worked, 100) == doctest::Approx(0.10));

    CHECK_THROWS_AS(tv_distance(d, same, 0), std::invalid_argument);
}

TEST_CASE("distance helpers agree with hand values") {
    CHECK(dist_to_span({0.0, 3.0}, {{1.0, 0.0}}) == doctest::Approx(3.0));
    CHECK(dist_to_span({2.0, 0.0}, {{1.0, 0.0}}) == doctest::Approx(0.0).epsilon(1e-12));
    DenseMatrix a = make_matrix({{1.0, 1.0}, {0.0, 2.0}});
    double s2 = sum_dist_pow(a, {{1.0, 0.0}}, 2.0);
    CHECK(s2 == doctest::Approx(5.0));
    double s1 = sum_dist_pow(a, {{1.0, 0.0}}, 1.0);
    CHECK(s1 == doctest::Approx(3.0));
}

}
