#include <doctest.h>

#include <sstream>

#include "generators.hpp"
#include "samplim/errors.hpp"
#include "samplim/event.hpp"

using namespace samplim;

namespace {

CylinderSpec make_cyl(const ValueSpace& vs, std::map<std::uint64_t, LabelSet> constraints,
                      Side side = Side::theta) {
    return CylinderSpec(side, std::move(constraints), vs);
}

}  // namespace

TEST_CASE("cylinder membership") {
    const auto vs = testgen::bernoulli();
    const auto one = *vs.find_label("1");
    const auto zero = *vs.find_label("0");
    const auto cyl = make_cyl(vs, {{5, LabelSet::single(one)}});

    CHECK(cyl.contains({{5, one}}));
    CHECK_FALSE(cyl.contains({{5, zero}}));
    CHECK(CylinderSpec(Side::theta).contains({{5, zero}}));  // no constraints
    CHECK(cyl.contains({{5, one}, {9, zero}}));              // extra coordinates never reject
    CHECK_THROWS_AS(cyl.contains({{4, one}}), UnderspecifiedPointError);
}

TEST_CASE("cylinder measure") {
    const auto bern = testgen::bernoulli();
    const auto one = LabelSet::single(*bern.find_label("1"));
    const auto pinned = make_cyl(bern, {{1, one}, {2, one}, {3, one}});
    CHECK(pinned.measure(bern) == Rational(1, 8));
    CHECK(CylinderSpec(Side::theta).measure(bern) == Rational(1));

    const auto vs = testgen::mixed();  // weights 1/2, 1/3, 1/6
    const auto ab = vs.parse_label_set("a,b");
    const auto c = vs.parse_label_set("c");
    CHECK(make_cyl(vs, {{1, ab}, {2, c}}).measure(vs) == Rational(5, 36));

    // Constraints referencing labels outside the space are rejected.
    CHECK_THROWS_AS(make_cyl(vs, {{0, LabelSet::from_bits(1u << 5)}}), DomainError);
    CHECK_THROWS_AS(make_cyl(vs, {{0, LabelSet{}}}), DomainError);
}

TEST_CASE("full-set constraints normalize away") {
    const auto vs = testgen::mixed();
    const auto cyl = make_cyl(vs, {{3, vs.full_set()}, {4, vs.parse_label_set("a")}});
    CHECK(cyl.support() == std::set<std::uint64_t>{4});
    CHECK(cyl == make_cyl(vs, {{4, vs.parse_label_set("a")}}));
}

TEST_CASE("partition measure") {
    const auto vs = testgen::mixed();
    const auto whole = make_cyl(vs, {{1, vs.full_set()}});  // the full space
    const auto a = make_cyl(vs, {{1, vs.parse_label_set("a")}});
    const auto bc = make_cyl(vs, {{1, vs.parse_label_set("b,c")}});

    CHECK(partition_measure({a, bc}, vs) == Rational(1));
    CHECK(partition_measure({a, bc}, vs) == whole.measure(vs));

    const auto ab = make_cyl(vs, {{1, vs.parse_label_set("a,b")}});
    CHECK_THROWS_WITH_AS(partition_measure({a, ab}, vs) == Rational(0),
                         doctest::Contains("overlap at {1=a}"), NotAPartitionError);
}

TEST_CASE("two random cylindrical partitions of one cylinder have equal measure") {
    for (const auto& vs : testgen::space_pool()) {
        SplitStream rng(0xca7, vs.size());
        for (int i = 0; i < 50; ++i) {
            const auto cyl = testgen::random_cylinder(rng, vs, Side::theta);
            const auto p1 = testgen::random_refinement(rng, cyl, vs, 3);
            const auto p2 = testgen::random_refinement(rng, cyl, vs, 4);
            const auto m1 = partition_measure(p1, vs);
            const auto m2 = partition_measure(p2, vs);
            REQUIRE(m1 == m2);
            REQUIRE(m1 == cyl.measure(vs));
        }
    }
}

TEST_CASE("refine on the worked examples") {
    const auto vs = testgen::bernoulli();
    const auto one = LabelSet::single(*vs.find_label("1"));
    const auto zero = LabelSet::single(*vs.find_label("0"));

    SUBCASE("independent coordinates") {
        const AlgebraEvent a(Side::theta, {make_cyl(vs, {{1, one}})});
        const AlgebraEvent b(Side::theta, {make_cyl(vs, {{2, one}})});
        const auto r = refine(a, b, vs);
        CHECK(r.a_and_b.measure(vs) == Rational(1, 4));
        CHECK(r.a_minus_b.measure(vs) == Rational(1, 4));
        CHECK(a.measure(vs) == r.a_minus_b.measure(vs) + r.a_and_b.measure(vs));
    }
    SUBCASE("identical events") {
        const AlgebraEvent a(Side::theta, {make_cyl(vs, {{1, one}})});
        const auto r = refine(a, a, vs);
        CHECK(r.a_minus_b.is_empty());
        CHECK(r.a_minus_b.measure(vs) == Rational(0));
    }
    SUBCASE("disjoint constraints") {
        const AlgebraEvent a(Side::theta, {make_cyl(vs, {{1, one}})});
        const AlgebraEvent b(Side::theta, {make_cyl(vs, {{1, zero}})});
        const auto r = refine(a, b, vs);
        CHECK(r.a_and_b.is_empty());
        CHECK(r.a_minus_b.measure(vs) == Rational(1, 2));
    }
    SUBCASE("mismatched spaces") {
        const AlgebraEvent a(Side::theta, {make_cyl(vs, {{1, one}})});
        const AlgebraEvent b(Side::omega, {make_cyl(vs, {{1, one}, {2, one}}, Side::omega)});
        CHECK_THROWS_AS(refine(a, b, vs), DomainError);
    }
}

TEST_CASE("refine measure identities on random events") {
    for (const auto& vs : testgen::space_pool()) {
        SplitStream rng(0x5e71, vs.size());
        for (int i = 0; i < 40; ++i) {
            const auto a = testgen::random_event(rng, vs, Side::theta);
            const auto b = testgen::random_event(rng, vs, Side::theta);
            const auto r = refine(a, b, vs);
            REQUIRE(a.measure(vs) == r.a_minus_b.measure(vs) + r.a_and_b.measure(vs));
            REQUIRE(b.measure(vs) == r.b_minus_a.measure(vs) + r.a_and_b.measure(vs));

            // refine introduces no new coordinates
            auto united = a.support();
            const auto sb = b.support();
            united.insert(sb.begin(), sb.end());
            for (const auto* part : {&r.a_minus_b, &r.a_and_b, &r.b_minus_a}) {
                for (const auto c : part->support()) REQUIRE(united.contains(c));
            }
        }
    }
}

TEST_CASE("independence product rule for cylinders with disjoint supports") {
    for (const auto& vs : testgen::space_pool()) {
        SplitStream rng(0x1d9, vs.size());
        for (int i = 0; i < 60; ++i) {
            // Supports forced apart by coordinate ranges.
            SplitStream rng_a(rng.next(), 0);
            SplitStream rng_b(rng.next(), 1);
            const auto a = testgen::random_cylinder(rng_a, vs, Side::theta, 5);
            auto b_low = testgen::random_cylinder(rng_b, vs, Side::theta, 5);
            std::map<std::uint64_t, LabelSet> shifted;
            for (const auto& [coord, set] : b_low.constraints()) shifted[coord + 5] = set;
            const auto b = make_cyl(vs, std::move(shifted));

            const auto met = a.intersect(b, vs);
            REQUIRE(met.has_value());
            REQUIRE(met->measure(vs) == a.measure(vs) * b.measure(vs));
        }
    }
}

TEST_CASE("complement rule and monotonicity") {
    for (const auto& vs : testgen::space_pool()) {
        SplitStream rng(0xc0, vs.size());
        for (int i = 0; i < 40; ++i) {
            const auto a = testgen::random_event(rng, vs, Side::theta);
            const auto comp = complement(a, vs);
            REQUIRE(comp.measure(vs) == Rational(1) - a.measure(vs));
            REQUIRE(refine(a, comp, vs).a_and_b.is_empty());

            // a is a subset of any event it refines into nothing against.
            const auto b = testgen::random_event(rng, vs, Side::theta);
            if (subset_of(a, b, vs)) REQUIRE(a.measure(vs) <= b.measure(vs));
            const auto cut = refine(a, b, vs).a_and_b;
            REQUIRE(subset_of(cut, a, vs));
            REQUIRE(cut.measure(vs) <= a.measure(vs));
        }
    }
}

TEST_CASE("complement pieces partition the complement pointwise") {
    const auto vs = testgen::mixed();
    SplitStream rng(0xdead, 0);
    for (int i = 0; i < 30; ++i) {
        const auto cyl = testgen::random_cylinder(rng, vs, Side::theta, 6);
        const auto pieces = cyl.complement_pieces(vs);

        // Random full points over the coordinate pool: each lies in the
        // cylinder or in exactly one complement piece.
        for (int p = 0; p < 40; ++p) {
            std::map<std::uint64_t, Label> point;
            for (std::uint64_t c = 0; c < 14; ++c) {
                point[c] = static_cast<Label>(rng.next_below(vs.size()));
            }
            std::size_t hits = cyl.contains(point) ? 1 : 0;
            for (const auto& piece : pieces) {
                if (piece.contains(point)) ++hits;
            }
            REQUIRE(hits == 1);
        }
    }
}

TEST_CASE("refinement agrees with pointwise membership") {
    const auto vs = testgen::quarters();
    SplitStream rng(0xbeef, 0);
    for (int i = 0; i < 25; ++i) {
        const auto a = testgen::random_event(rng, vs, Side::theta, 5);
        const auto b = testgen::random_event(rng, vs, Side::theta, 5);
        const auto r = refine(a, b, vs);

        auto in_event = [&](const AlgebraEvent& e, const std::map<std::uint64_t, Label>& pt) {
            for (const auto& piece : e.pieces()) {
                if (piece.contains(pt)) return true;
            }
            return false;
        };
        for (int p = 0; p < 40; ++p) {
            std::map<std::uint64_t, Label> point;
            for (std::uint64_t c = 0; c < 14; ++c) {
                point[c] = static_cast<Label>(rng.next_below(vs.size()));
            }
            const bool in_a = in_event(a, point);
            const bool in_b = in_event(b, point);
            REQUIRE(in_event(r.a_and_b, point) == (in_a && in_b));
            REQUIRE(in_event(r.a_minus_b, point) == (in_a && !in_b));
            REQUIRE(in_event(r.b_minus_a, point) == (!in_a && in_b));
        }
    }
}

TEST_CASE("semantic equality via mutual refinement") {
    const auto vs = testgen::mixed();
    const auto a = make_cyl(vs, {{1, vs.parse_label_set("a,b")}});
    // The same set written as two pieces.
    const AlgebraEvent split(Side::theta, {make_cyl(vs, {{1, vs.parse_label_set("a")}}),
                                           make_cyl(vs, {{1, vs.parse_label_set("b")}})});
    CHECK(semantically_equal(AlgebraEvent(Side::theta, {a}), split, vs));
    CHECK_FALSE(semantically_equal(AlgebraEvent(Side::theta, {a}),
                                   AlgebraEvent::full(Side::theta), vs));
}

TEST_CASE("event support") {
    const auto vs = testgen::bernoulli();
    const auto one = LabelSet::single(*vs.find_label("1"));
    const AlgebraEvent e(Side::theta, {make_cyl(vs, {{1, one}, {3, one}}),
                                       make_cyl(vs, {{1, LabelSet::single(0)}, {2, one}})});
    CHECK(e.support() == std::set<std::uint64_t>{1, 2, 3});
    CHECK(AlgebraEvent(Side::theta).support().empty());
}

TEST_CASE("event text form round trip") {
    const auto vs = testgen::mixed();
    std::istringstream in(
        "# comment\n"
        "space theta\n"
        "cyl 3=a,b 7=c\n"
        "cyl 3=c\n");
    const auto event = parse_event(in, vs);
    CHECK(event.pieces().size() == 2);
    CHECK(event.measure(vs) == Rational(5, 36) + Rational(1, 6));

    std::ostringstream out;
    print_event(out, event, vs);
    std::istringstream again(out.str());
    const auto event2 = parse_event(again, vs);
    CHECK(event2.pieces().size() == event.pieces().size());
    CHECK(semantically_equal(event, event2, vs));

    std::istringstream bad("space theta\ncyl 3=a\ncyl 3=a,b\n");
    CHECK_THROWS_AS(parse_event(bad, vs), UsageError);
    std::istringstream nospace("cyl 3=a\n");
    CHECK_THROWS_AS(parse_event(nospace, vs), UsageError);
}
