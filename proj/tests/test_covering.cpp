#include "e2/covering.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <set>

using namespace e2;

namespace {

Rational R(long p, long q = 1) { return Rational(Integer(p), Integer(q)); }

std::set<oracle::ClassKey> keys(const std::vector<CenterClass>& classes) {
    std::set<oracle::ClassKey> out;
    for (const CenterClass& c : classes) out.emplace(c.n, c.a_mod1, c.b_mod1);
    return out;
}

using RegionKey = std::tuple<Rational, Rational, Rational, Rational>;

std::set<RegionKey> region_keys(const std::vector<Region>& pool) {
    std::set<RegionKey> out;
    for (const Region& r : pool) out.emplace(r.center().a(), r.center().b(), r.q2().a(), r.q2().b());
    return out;
}

std::vector<Region> pool_at(const QuadField& F, const Schedule& s, int depth) {
    auto [T, N] = schedule_at(s, depth);
    return expand_translates(F, compute_QN(F, N), T, N, fundamental_box(F));
}

bool same_region(const CertRegion& c, const Region& r) {
    return c.center_a == r.center().a() && c.center_b == r.center().b() && c.q2_a == r.q2().a() &&
           c.q2_b == r.q2().b();
}

Region region_of(const QuadField& F, const CertRegion& c) {
    return Region(F.element(c.center_a, c.center_b), F.element(c.q2_a, c.q2_b));
}

}  // namespace

TEST_CASE("compute_QN examples") {
    QuadField F = make_field(2);
    auto q1 = compute_QN(F, 1);
    REQUIRE(q1.size() == 1);
    CHECK(q1[0].a_mod1 == R(0));
    CHECK(q1[0].b_mod1 == R(0));
    CHECK(q1[0].n == 1);
    CHECK(q1[0].q2 == F.integer(1));

    auto q2 = compute_QN(F, 2);
    REQUIRE(q2.size() == 2);
    CHECK(q2[1].n == 2);
    CHECK(q2[1].a_mod1 == R(0));
    CHECK(q2[1].b_mod1 == R(1, 2));

    for (long m : {3L, 5L, 13L, 94L}) {
        auto c = compute_QN(make_field(m), 1);
        REQUIRE(c.size() == 1);
        CHECK(c[0].a_mod1 == R(0));
        CHECK(c[0].b_mod1 == R(0));
    }
}

TEST_CASE("compute_QN matches the exact orbit oracle") {
    for (long m : {2L, 3L, 5L, 13L}) {
        QuadField F = make_field(m);
        for (long N : {1L, 2L, 5L, 9L, 12L}) {
            CAPTURE(m);
            CAPTURE(N);
            CHECK(keys(compute_QN(F, N)) == oracle::brute_QN(F, N));
        }
    }
}

TEST_CASE("center class witnesses are valid and the output is sorted") {
    for (long m : {2L, 5L, 6L, 13L, 14L, 19L}) {
        QuadField F = make_field(m);
        auto classes = compute_QN(F, 25);
        for (size_t i = 0; i < classes.size(); ++i) {
            const CenterClass& c = classes[i];
            CAPTURE(m);
            CAPTURE(i);
            CHECK(c.q2.is_integral());
            CHECK(c.q2.norm().abs() == Rational(c.n));
            CHECK((F.element(c.a_mod1, c.b_mod1) - c.q2.inverse()).is_integral());
            CHECK(R(0) <= c.a_mod1);
            CHECK(c.a_mod1 < R(1));
            CHECK(R(0) <= c.b_mod1);
            CHECK(c.b_mod1 < R(1));
            CHECK((c.a_mod1 * R(c.n)).is_integer());
            CHECK((c.b_mod1 * R(c.n)).is_integer());
            if (i > 0) {
                const CenterClass& p = classes[i - 1];
                CHECK(std::make_tuple(p.n, p.a_mod1, p.b_mod1) < std::make_tuple(c.n, c.a_mod1, c.b_mod1));
            }
        }
    }
}

TEST_CASE("ClassTable grows without renumbering") {
    QuadField F = make_field(13);
    ClassTable t(F);
    t.extend_to(10);
    std::vector<std::tuple<long, long, long>> first;
    for (size_t i = 0; i < t.size(); ++i) first.emplace_back(t.n(i), t.A(i), t.B(i));
    t.extend_to(30);
    CHECK(t.count_up_to(10) == first.size());
    for (size_t i = 0; i < first.size(); ++i) CHECK(first[i] == std::make_tuple(t.n(i), t.A(i), t.B(i)));
    CHECK(t.size() == compute_QN(F, 30).size());
}

TEST_CASE("strip_half_width") {
    CHECK(strip_half_width(1) == R(1));
    CHECK(strip_half_width(2) == R(23, 32));
    CHECK(strip_half_width(4) == R(1, 2));
    for (long n = 1; n < 400; ++n) {
        Rational u = strip_half_width(n);
        CHECK(u * u * R(n) >= R(1));
        Rational below = u - R(1, 64);
        CHECK(below * below * R(n) < R(1));
    }
}

TEST_CASE("expand_translates examples") {
    QuadField F = make_field(2);
    Box R0 = fundamental_box(F);
    auto unit = compute_QN(F, 1);
    auto pool = expand_translates(F, unit, 1, 1, R0);
    std::set<Rational> centers;
    for (const Region& r : pool) {
        CHECK(r.center().b() == R(0));
        centers.insert(r.center().a());
    }
    for (long d : {-1, 0, 1, 2}) CHECK(centers.count(R(d)) == 1);
    // every kept center has a strip meeting R0
    for (const Rational& a : centers) {
        QuadraticReal x = QuadraticReal::rational(a, 2);
        bool xs = x + R(1) >= R0.x0 && x - R(1) <= R0.x1;
        bool ys = x + R(1) >= R0.y0 && x - R(1) <= R0.y1;
        CHECK((xs || ys));
    }
}

TEST_CASE("expand_translates respects T strictly and is monotone") {
    for (long m : {2L, 5L, 13L}) {
        QuadField F = make_field(m);
        Box R0 = fundamental_box(F);
        auto classes = compute_QN(F, 12);
        for (long T : {1L, 2L, 3L}) {
            for (long N : {1L, 4L, 8L}) {
                auto pool = expand_translates(F, classes, T, N, R0);
                for (size_t i = 0; i < pool.size(); ++i) {
                    CHECK(pool[i].center().b().abs() < R(T));
                    CHECK(pool[i].n() <= N);
                    if (i > 0) CHECK(pool[i - 1].n() <= pool[i].n());
                }
                auto a = region_keys(pool);
                auto bT = region_keys(expand_translates(F, classes, T + 1, N, R0));
                auto bN = region_keys(expand_translates(F, classes, T, N + 4, R0));
                CHECK(std::includes(bT.begin(), bT.end(), a.begin(), a.end()));
                CHECK(std::includes(bN.begin(), bN.end(), a.begin(), a.end()));
                CHECK(a.size() == pool.size());
            }
        }
    }
}

TEST_CASE("schedule_at") {
    Schedule s;
    CHECK(schedule_at(s, 0) == std::make_pair(5L, 40L));
    CHECK(schedule_at(s, 4) == std::make_pair(7L, 200L));
    for (int d = 1; d < 64; ++d) {
        auto a = schedule_at(s, d - 1), b = schedule_at(s, d);
        CHECK(a.first <= b.first);
        CHECK(a.second <= b.second);
    }
    Schedule frozen{.t0 = 3, .n0 = 1, .cn = 0};
    CHECK(schedule_at(frozen, 9) == std::make_pair(7L, 1L));
}

TEST_CASE("schedule_step only moves forward") {
    QuadField F = make_field(2);
    SearchState st(F, Schedule{});
    CHECK(st.T() == 5);
    CHECK(st.N() == 40);
    CHECK(st.schedule_step(4) == std::make_pair(7L, 200L));
    CHECK(st.schedule_step(2) == std::make_pair(7L, 200L));
    CHECK(st.depth() == 4);
}

TEST_CASE("solve on a box inside the unit region") {
    QuadField F = make_field(2);
    SearchState st(F, Schedule{});
    QuadraticReal lo = QuadraticReal::rational(R(1, 4), 2), hi = QuadraticReal::rational(R(1, 2), 2);
    auto leaves = solve(Box(lo, hi, lo, hi), st);
    REQUIRE(leaves.size() == 1);
    CHECK(leaves[0].first.empty());
    const Region& r = st.Z()[leaves[0].second].region;
    CHECK(r.center() == F.integer(0));
    CHECK(r.n() == 1);
    CHECK(st.Z().size() == 1);
}

TEST_CASE("solve splits once when no single region fits") {
    // m = 5: R0 itself lies in no pooled region, each quadrant does
    QuadField F = make_field(5);
    SearchState st(F, Schedule{});
    Box R0 = fundamental_box(F);
    for (const Region& r : pool_at(F, Schedule{}, 0)) CHECK(!region_contains_box(r, R0));
    auto leaves = solve(R0, st);
    REQUIRE(leaves.size() == 4);
    for (int q = 0; q < 4; ++q) CHECK(leaves[q].first == std::string(1, char('0' + q)));
}

TEST_CASE("solve records the first pooled region that contains each leaf") {
    for (long m : {2L, 5L, 13L}) {
        QuadField F = make_field(m);
        Certificate cert = prove(m);
        Box R0 = fundamental_box(F);
        std::map<int, std::vector<Region>> pools;
        for (const CertLeaf& leaf : cert.leaves) {
            int depth = static_cast<int>(leaf.path.size());
            if (!pools.count(depth)) pools.emplace(depth, pool_at(F, Schedule{}, depth));
            Box b = box_at_path(R0, leaf.path);
            const Region* first = nullptr;
            for (const Region& r : pools.at(depth))
                if (region_contains_box(r, b)) {
                    first = &r;
                    break;
                }
            CAPTURE(m);
            CAPTURE(leaf.path);
            REQUIRE(first != nullptr);
            CHECK(same_region(cert.regions.at(leaf.region), *first));
        }
    }
}

TEST_CASE("prove examples") {
    Certificate c2 = prove(2);
    CHECK(verify_certificate(c2).accepted);
    CHECK(smoothness_report(c2).max_denominator_norm == 1);
    Certificate c14 = prove(14);
    CHECK(verify_certificate(c14).accepted);
    CHECK(smoothness_report(c14).max_denominator_norm > 1);
    CHECK_THROWS_AS(prove(10), ClassNumberError);
    CHECK_THROWS_AS(prove(12), std::invalid_argument);
    CHECK_THROWS_AS(prove(1), std::invalid_argument);
}

TEST_CASE("prove output is sound, partitioned and deterministic") {
    for (long m : {3L, 6L, 13L, 17L}) {
        QuadField F = make_field(m);
        Certificate a = prove(m);
        Certificate b = prove(m);
        CAPTURE(m);
        CHECK(serialize(a) == serialize(b));
        CHECK(a.m == m);
        CHECK(a.disc == F.disc);
        Box R0 = fundamental_box(F);
        for (const CertLeaf& leaf : a.leaves)
            CHECK(region_contains_box(region_of(F, a.regions.at(leaf.region)), box_at_path(R0, leaf.path)));
        CHECK(verify_certificate(a).accepted);
        // every region is referenced
        std::set<long> used;
        for (const CertLeaf& leaf : a.leaves) used.insert(leaf.region);
        CHECK(used.size() == a.regions.size());
    }
}

TEST_CASE("frozen N = 1 covers norm-euclidean fields but not m = 14") {
    Schedule unit{.t0 = 100, .n0 = 1, .cn = 0};
    for (long m : {2L, 3L, 5L, 19L}) {
        Certificate c = prove(m, unit);
        CHECK(verify_certificate(c).accepted);
        CHECK(smoothness_report(c).max_denominator_norm == 1);
    }
    CHECK_THROWS_AS(prove(14, unit), InconclusiveError);
}

TEST_CASE("box budget turns into InconclusiveError") {
    Schedule tiny;
    tiny.max_boxes = 3;
    CHECK_THROWS_AS(prove(13, tiny), InconclusiveError);
    Schedule shallow;
    shallow.max_depth = 0;
    CHECK_THROWS_AS(prove(5, shallow), InconclusiveError);
}
