#include "doctest.h"
#include "helpers.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "sks/sketch.hpp"

using namespace sks;
using testutil::random_int_matrix;

namespace {

// 63 unit rows plus one planted heavy row of norm 100
DenseMatrix planted_heavy(int heavy_index) {
    DenseMatrix a(64, 8);
    for (int i = 0; i < 64; ++i) a[i][i % 8] = 1.0;
    for (int j = 0; j < 8; ++j) a[heavy_index][j] = 0.0;
    a[heavy_index][3] = 100.0;
    return a;
}

double l12(const DenseMatrix& a) { return lpq_norm(a, 1.0); }

template <class Sketch>
void feed_rows(Sketch& sk, const DenseMatrix& a) {
    for (int i = 0; i < a.n; ++i) sk.add_row(i, a.rows[i]);
}

} // namespace

TEST_SUITE("sketch") {

TEST_CASE("ams estimates zero on the empty stream and exact single rows") {
    AmsM z(8, 4, 0.5, 123);
    CHECK(z.estimate(Projector::identity()) == doctest::Approx(0.0));

    for (uint64_t s = 0; s < 20; ++s) {
        AmsM a(8, 4, 0.5, mix64(0xA1, s));
        RowVec row{1.0, -2.0, 2.0, 0.0};
        a.add_row(3, row);
        CHECK(a.estimate(Projector::identity()) == doctest::Approx(3.0).epsilon(1e-12));
    }
}

TEST_CASE("ams concentrates at eps 0.2 on a random 64x8 matrix") {
    DenseMatrix a = random_int_matrix(64, 8, 0xA5F2);
    double truth = lpq_norm(a, 2.0);
    int ok = 0;
    for (uint64_t s = 0; s < 100; ++s) {
        AmsM sk(64, 8, 0.2, mix64(0xC0C0A, s));
        feed_rows(sk, a);
        double est = sk.estimate(Projector::identity());
        if (std::fabs(est / truth - 1.0) <= 0.2) ++ok;
    }
    CHECK(ok >= 90);
}

TEST_CASE("ams offset subtracts selected rows before the norm") {
    DenseMatrix a = random_int_matrix(6, 4, 0x0FF5E7);
    for (uint64_t s = 0; s < 10; ++s) {
        AmsM sk(6, 4, 0.5, mix64(0xDEAD, s));
        feed_rows(sk, a);
        OffsetRows all;
        for (int i = 0; i < a.n; ++i) all.push_back({i, a.rows[i]});
        CHECK(sk.estimate(Projector::identity(), all) == doctest::Approx(0.0).epsilon(1e-9));
    }
    AmsM one(4, 2, 0.5, 99);
    one.add_row(1, {3.0, 4.0});
    OffsetRows off{{1, {3.0, 1.0}}};
    CHECK(one.estimate(Projector::identity(), off) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("opposite updates cancel exactly") {
    AmsM a(4, 3, 0.4, 7);
    CountSketchM c(4, 3, 5, 16, 7);
    EstimatorM e(4, 3, 7);
    for (auto fn : {+1.0, -1.0}) {
        a.update(0, 0, 5.0 * fn);
        c.update(0, 0, 5.0 * fn);
        e.update(0, 0, 5.0 * fn);
    }
    AmsM a0(4, 3, 0.4, 7);
    CountSketchM c0(4, 3, 5, 16, 7);
    EstimatorM e0(4, 3, 7);
    CHECK(a.dump_cells() == a0.dump_cells());
    CHECK(c.dump_cells() == c0.dump_cells());
    CHECK(e.dump_cells() == e0.dump_cells());
}

TEST_CASE("merge of two shards equals the whole stream") {
    DenseMatrix a = random_int_matrix(16, 5, 0x77);
    StreamData sd = testutil::turnstile_stream(a);
    size_t cut = sd.updates.size() / 2;

    auto check_kind = [&](auto make) {
        auto whole = make();
        auto left = make();
        auto right = make();
        for (size_t u = 0; u < sd.updates.size(); ++u) {
            const auto& up = sd.updates[u];
            whole.update(up.i, up.j, up.delta);
            (u < cut ? left : right).update(up.i, up.j, up.delta);
        }
        left.merge(right);
        CHECK(testutil::max_abs_diff(left.dump_cells(), whole.dump_cells()) <= 1e-9);
    };
    check_kind([] { return AmsM(16, 5, 0.3, 42); });
    check_kind([] { return CountSketchM(16, 5, 7, 32, 42); });
    check_kind([] { return EstimatorM(16, 5, 42); });
}

TEST_CASE("update order does not matter") {
    DenseMatrix a = random_int_matrix(8, 4, 0x1234);
    StreamData sd = testutil::turnstile_stream(a);
    CountSketchM fwd(8, 4, 5, 16, 9);
    CountSketchM rev(8, 4, 5, 16, 9);
    for (const auto& u : sd.updates) fwd.update(u.i, u.j, u.delta);
    for (auto it = sd.updates.rbegin(); it != sd.updates.rend(); ++it)
        rev.update(it->i, it->j, it->delta);
    CHECK(testutil::max_abs_diff(fwd.dump_cells(), rev.dump_cells()) <= 1e-9);
}

TEST_CASE("negating every delta negates the state") {
    DenseMatrix a = random_int_matrix(8, 4, 0x4321);
    StreamData sd = testutil::turnstile_stream(a);
    AmsM pos(8, 4, 0.3, 11), neg(8, 4, 0.3, 11);
    for (const auto& u : sd.updates) {
        pos.update(u.i, u.j, u.delta);
        neg.update(u.i, u.j, -u.delta);
    }
    auto cp = pos.dump_cells();
    auto cn = neg.dump_cells();
    REQUIRE(cp.size() == cn.size());
    for (size_t t = 0; t < cp.size(); ++t) CHECK(cp[t] == doctest::Approx(-cn[t]).epsilon(1e-12));
}

TEST_CASE("projecting after the stream equals streaming projected rows") {
    DenseMatrix a = random_int_matrix(8, 4, 0x99A);
    OrthoBasis b(4);
    b.extend({1.0, 1.0, 0.0, 0.0});
    Projector p = Projector::complement(b);

    DenseMatrix ap(a.n, a.d);
    for (int i = 0; i < a.n; ++i) ap[i] = p.apply(a.rows[i]);

    CountSketchM direct(8, 4, 5, 16, 5);
    CountSketchM streamed(8, 4, 5, 16, 5);
    feed_rows(direct, a);
    feed_rows(streamed, ap);
    CHECK(testutil::max_abs_diff(direct.cells_after(p),
                                 streamed.cells_after(Projector::identity())) <= 1e-9);

    AmsM ad(8, 4, 0.3, 5), as(8, 4, 0.3, 5);
    feed_rows(ad, a);
    feed_rows(as, ap);
    CHECK(testutil::max_abs_diff(ad.cells_after(p), as.cells_after(Projector::identity())) <=
          1e-9);
}

TEST_CASE("countsketch recovers a lone row exactly") {
    for (uint64_t s = 0; s < 20; ++s) {
        CountSketchM c(16, 4, 5, 16, mix64(0xB0B, s));
        RowVec row{2.0, 0.0, -1.0, 5.0};
        c.add_row(7, row);
        RowVec got = c.query_row(Projector::identity(), 7);
        CHECK(testutil::max_abs_diff(got, row) <= 1e-12);
    }
}

TEST_CASE("countsketch on the zero matrix returns zero vectors") {
    CountSketchM c(8, 3, 5, 16, 3);
    RowVec got = c.query_row(Projector::identity(), 2);
    CHECK(nrm2(got) == doctest::Approx(0.0));
    auto tops = c.top_rows(Projector::identity(), 3);
    REQUIRE(tops.size() == 3);
    for (const auto& t : tops) CHECK(t.norm == doctest::Approx(0.0));
}

TEST_CASE("countsketch finds the planted heavy row") {
    DenseMatrix a = planted_heavy(17);
    int norm_ok = 0, top_ok = 0;
    for (uint64_t s = 0; s < 100; ++s) {
        CountSketchM c(64, 8, 7, 64, mix64(0x6EAF, s));
        feed_rows(c, a);
        double est = c.query_row_norm(Projector::identity(), 17);
        if (std::fabs(est - 100.0) <= 10.0) ++norm_ok;
        auto tops = c.top_rows(Projector::identity(), 1);
        if (tops.size() == 1 && tops[0].i == 17) ++top_ok;
    }
    CHECK(norm_ok >= 95);
    CHECK(top_ok >= 95);
}

TEST_CASE("top_rows with m = n lists every index") {
    DenseMatrix a = random_int_matrix(12, 4, 0x7072);
    CountSketchM c(12, 4, 5, 32, 8);
    feed_rows(c, a);
    auto tops = c.top_rows(Projector::identity(), 12);
    REQUIRE(tops.size() == 12);
    std::set<int> seen;
    for (const auto& t : tops) seen.insert(t.i);
    CHECK(seen.size() == 12);
    for (size_t t = 1; t < tops.size(); ++t) CHECK(tops[t - 1].norm >= tops[t].norm);
    auto over = c.top_rows(Projector::identity(), 50);
    CHECK(over.size() == 12);
}

TEST_CASE("countsketch error stays within the tail bound") {
    DenseMatrix a = random_int_matrix(64, 8, 0x7A11);
    std::vector<double> norms;
    for (const auto& r : a.rows) norms.push_back(nrm2(r));
    std::vector<double> sorted = norms;
    std::sort(sorted.rbegin(), sorted.rend());
    double tail = 0.0;
    for (size_t i = 8; i < sorted.size(); ++i) tail += sorted[i] * sorted[i];
    tail = std::sqrt(tail);

    int ok = 0;
    for (uint64_t s = 0; s < 100; ++s) {
        CountSketchM c(64, 8, 7, 64, mix64(0x7A1E7, s));
        feed_rows(c, a);
        double worst = 0.0;
        for (int i = 0; i < 64; ++i)
            worst = std::max(worst,
                             std::fabs(c.query_row_norm(Projector::identity(), i) - norms[i]));
        if (worst <= tail) ++ok;
    }
    CHECK(ok >= 95);
}

TEST_CASE("estimator handles the zero matrix and a lone row") {
    EstimatorM z(16, 4, 1);
    CHECK(z.estimate(Projector::identity()) == doctest::Approx(0.0));

    for (uint64_t s = 0; s < 20; ++s) {
        EstimatorM e(16, 4, mix64(0xE57, s));
        e.add_row(5, {0.0, 3.0, 4.0, 0.0});
        double est = e.estimate(Projector::identity());
        CHECK(est >= 2.5);
        CHECK(est <= 10.0);
    }
}

TEST_CASE("estimator stays within its distortion band on random input") {
    DenseMatrix a = random_int_matrix(64, 8, 0xE571);
    double truth = l12(a);
    int ok = 0;
    for (uint64_t s = 0; s < 100; ++s) {
        EstimatorM e(64, 8, mix64(0xE572, s));
        feed_rows(e, a);
        double r = e.estimate(Projector::identity()) / truth;
        if (r >= 0.25 && r <= 4.0) ++ok;
    }
    CHECK(ok >= 90);
}

TEST_CASE("serialization round-trips byte for byte") {
    DenseMatrix a = random_int_matrix(16, 5, 0x5E4);
    AmsM am(16, 5, 0.3, 21);
    CountSketchM cs(16, 5, 7, 32, 21);
    EstimatorM es(16, 5, 21);
    feed_rows(am, a);
    feed_rows(cs, a);
    feed_rows(es, a);

    std::string ab = am.serialize();
    std::string cb = cs.serialize();
    std::string eb = es.serialize();
    CHECK(blob_kind(ab) == SketchKind::ams);
    CHECK(blob_kind(cb) == SketchKind::countsketch);
    CHECK(blob_kind(eb) == SketchKind::estimator);

    CHECK(AmsM::deserialize(ab).serialize() == ab);
    CHECK(CountSketchM::deserialize(cb).serialize() == cb);
    CHECK(EstimatorM::deserialize(eb).serialize() == eb);

    AmsM am2 = AmsM::deserialize(ab);
    CHECK(am2.estimate(Projector::identity()) ==
          doctest::Approx(am.estimate(Projector::identity())).epsilon(1e-12));

    CHECK(blob_summary(cb).find("countsketch") != std::string::npos);
}

TEST_CASE("merge_blobs equals merging the sketches") {
    DenseMatrix a = random_int_matrix(10, 4, 0x41);
    DenseMatrix b = random_int_matrix(10, 4, 0x42);
    CountSketchM s1(10, 4, 5, 16, 77), s2(10, 4, 5, 16, 77);
    feed_rows(s1, a);
    feed_rows(s2, b);
    std::string merged = merge_blobs(s1.serialize(), s2.serialize());
    CountSketchM direct = s1;
    direct.merge(s2);
    CHECK(merged == direct.serialize());
}

TEST_CASE("mismatched or corrupt blobs are rejected") {
    AmsM a1(8, 4, 0.3, 1), a2(8, 4, 0.3, 2);
    CHECK_THROWS_AS(a1.merge(a2), std::invalid_argument);
    AmsM b1(8, 4, 0.3, 1), b2(8, 5, 0.3, 1);
    CHECK_THROWS_AS(b1.merge(b2), std::invalid_argument);

    CountSketchM c(8, 4, 5, 16, 1);
    CHECK_THROWS_AS(merge_blobs(a1.serialize(), c.serialize()), std::invalid_argument);

    CHECK_THROWS_AS(blob_kind("garbage"), std::runtime_error);
    std::string blob = a1.serialize();
    blob[0] ^= 0x5a;
    CHECK_THROWS_AS(AmsM::deserialize(blob), std::runtime_error);
    std::string padded = a1.serialize() + "x";
    CHECK_THROWS_AS(AmsM::deserialize(padded), std::runtime_error);
    CHECK_THROWS_AS(CountSketchM::deserialize(a1.serialize()), std::runtime_error);
}

TEST_CASE("constructor and update argument checks") {
    CHECK_THROWS_AS(AmsM(0, 4, 0.3, 1), std::invalid_argument);
    CHECK_THROWS_AS(AmsM(4, 4, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(CountSketchM(4, 4, 0, 16, 1), std::invalid_argument);
    CHECK_THROWS_AS(EstimatorM(4, 4, 1, 5, 0), std::invalid_argument);
    CHECK_THROWS_AS(EstimatorM(4, 4, 1, 5, 256, 1.0), std::invalid_argument);

    AmsM a(4, 3, 0.4, 9);
    CHECK_THROWS_AS(a.update(4, 0, 1.0), std::out_of_range);
    CHECK_THROWS_AS(a.update(0, 3, 1.0), std::out_of_range);
    CHECK_THROWS_AS(a.add_row(-1, {1.0, 0.0, 0.0}), std::out_of_range);
    CHECK_THROWS_AS(a.add_row(0, {1.0, 0.0}), std::invalid_argument);
    CountSketchM c(4, 3, 5, 8, 9);
    CHECK_THROWS_AS(c.update(-1, 0, 1.0), std::out_of_range);
    EstimatorM e(4, 3, 9);
    CHECK_THROWS_AS(e.update(0, 5, 1.0), std::out_of_range);
}

TEST_CASE("reset returns a sketch to its freshly built state") {
    CountSketchM c(8, 4, 5, 16, 31);
    c.update(1, 2, 9.0);
    c.reset(31);
    CountSketchM fresh(8, 4, 5, 16, 31);
    CHECK(c.serialize() == fresh.serialize());

    c.update(2, 1, 4.0);
    c.reset(77);
    CountSketchM fresh77(8, 4, 5, 16, 77);
    CHECK(c.serialize() == fresh77.serialize());

    AmsM a(8, 4, 0.3, 31);
    a.update(0, 0, 2.0);
    a.reset(31);
    CHECK(a.serialize() == AmsM(8, 4, 0.3, 31).serialize());

    EstimatorM e(8, 4, 31);
    e.update(0, 0, 2.0);
    e.reset(31);
    CHECK(e.serialize() == EstimatorM(8, 4, 31).serialize());
}

TEST_CASE("default bucket rule matches its published formula") {
    CHECK(CountSketchM::default_buckets(1.0) == 64);
    CHECK(CountSketchM::default_buckets(0.1) == 3200);
    CHECK(CountSketchM::kDefaultRows == 7);
}

}
