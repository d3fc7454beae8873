#include <doctest.h>

#include <sstream>

#include "generators.hpp"
#include "samplim/errors.hpp"
#include "samplim/forcing.hpp"

using namespace samplim;

TEST_CASE("eval on an empty store") {
    const ForcingStore store;
    CHECK_FALSE(store.eval_raw(0, 0).has_value());
    CHECK_FALSE(store.eval(CoordinateId::omega(3), CoordinateId::theta(7)).has_value());
    CHECK_THROWS_AS(store.eval(CoordinateId::theta(3), CoordinateId::theta(7)), DomainError);
}

TEST_CASE("point features assign the default label once") {
    const auto vs = testgen::mixed();
    const Label star = *vs.find_label("b");
    ForcingStore store(star);

    const auto r = store.force(Feature::point(4, 9), 8);
    CHECK(r.new_assignments == 1);
    CHECK(store.eval_raw(4, 9) == star);

    // Re-forcing a defined point leaves the store unchanged.
    const ForcingStore before = store;
    const auto r2 = store.force(Feature::point(4, 9), 8);
    CHECK(r2.new_assignments == 0);
    CHECK(store == before);
}

TEST_CASE("row features allocate a fresh row and extend on demand") {
    const auto vs = testgen::bernoulli();
    const Label a = 0, b = 1;
    ForcingStore store;

    SUBCASE("constant pattern") {
        const auto r = store.force(Feature::row(ValueSequence::constant(b), {1, 2}), 2);
        REQUIRE(r.allocated.has_value());
        CHECK(r.allocated->side == Side::omega);
        const auto w = r.allocated->index;
        CHECK(store.eval_raw(w, 1) == b);
        CHECK(store.eval_raw(w, 2) == b);
        CHECK(r.new_assignments == 2);
        CHECK(store.forces(Feature::row(ValueSequence::constant(b), {1, 2})));
    }
    SUBCASE("periodic pattern evaluated past the materialization length") {
        const auto f = std::vector<std::uint64_t>{10, 11, 12, 13, 14, 15};
        const auto r = store.force(Feature::row(ValueSequence::periodic({a, b}), f), 2);
        const auto w = r.allocated->index;
        CHECK(r.new_assignments == 2);              // only n < L materialized
        CHECK(store.eval_raw(w, f[5]) == b);        // h(5) from the generator
        CHECK(store.eval_raw(w, f[4]) == a);
        CHECK(store.materialized_count() == 2);     // eval did not mutate
    }
}

TEST_CASE("column features are the dual") {
    ForcingStore store;
    const Label a = 0, b = 1;
    const auto r = store.force(Feature::col(ValueSequence::explicit_list({a, b}), {1, 2}), 2);
    REQUIRE(r.allocated.has_value());
    CHECK(r.allocated->side == Side::theta);
    const auto t = r.allocated->index;
    CHECK(store.eval_raw(1, t) == a);
    CHECK(store.eval_raw(2, t) == b);
}

TEST_CASE("malformed features are rejected") {
    CHECK_THROWS_AS(Feature::row(ValueSequence::constant(0), {3, 3}), MalformedFeatureError);
    CHECK_THROWS_AS(Feature::col(ValueSequence::constant(0), {5, 7, 5}), MalformedFeatureError);
    CHECK_THROWS_AS(Feature::row(ValueSequence::explicit_list({0}), {1, 2}),
                    MalformedFeatureError);

    // A materialization length beyond the index list clamps; the explicit
    // pattern is long enough by the construction invariant.
    ForcingStore store;
    const auto r = store.force(Feature::row(ValueSequence::explicit_list({0, 1}), {1, 2}), 5);
    CHECK(r.new_assignments == 2);
}

TEST_CASE("run_enumeration journals every stage") {
    const auto vs = testgen::bernoulli();
    const std::vector<Feature> feats = {
        Feature::row(ValueSequence::constant(1), {0, 1, 2}),
        Feature::col(ValueSequence::explicit_list({0, 1}), {5, 6}),
        Feature::point(9, 9),
    };
    const auto store = run_enumeration(ForcingStore{}, feats, 3);
    REQUIRE(store.journal().size() == 3);
    for (const auto& s : store.journal()) CHECK(s.forces_ok);
    CHECK(store.journal()[0].new_assignments == 3);
    CHECK(store.journal()[1].new_assignments == 2);
    CHECK(store.journal()[2].new_assignments == 1);

    SUBCASE("empty stream changes nothing") {
        const auto same = run_enumeration(store, {}, 3);
        CHECK(same == store);
    }
    SUBCASE("a point already covered by an earlier row adds nothing") {
        // Stage 0 allocated row 0 over thetas {0,1,2}; the pair (0,1) is
        // semantically defined even though only L=3 were materialized anyway.
        auto next = store;
        const auto r = next.force(Feature::point(0, 1), 3);
        CHECK(r.new_assignments == 0);
    }
    SUBCASE("lazily covered points also count as defined") {
        auto fresh = ForcingStore{};
        fresh.force(Feature::row(ValueSequence::periodic({0, 1}), {0, 1, 2, 3}), 1);
        const auto r = fresh.force(Feature::point(0, 3), 1);
        CHECK(r.new_assignments == 0);
        CHECK(fresh.eval_raw(0, 3) == Label{1});
    }
}

TEST_CASE("determinism: identical runs produce identical stores") {
    const auto vs = testgen::mixed();
    SplitStream gen(0xfeed, 0);
    std::vector<Feature> feats;
    for (int i = 0; i < 200; ++i) feats.push_back(testgen::random_feature(gen, vs, 64));

    const auto s1 = run_enumeration(ForcingStore{}, feats, 6);
    const auto s2 = run_enumeration(ForcingStore{}, feats, 6);
    CHECK(s1 == s2);
    REQUIRE(s1.journal().size() == s2.journal().size());
    for (std::size_t i = 0; i < s1.journal().size(); ++i) {
        CHECK(s1.journal()[i].new_assignments == s2.journal()[i].new_assignments);
        CHECK(s1.journal()[i].feature == s2.journal()[i].feature);
    }

    // Re-running a further stream from the same non-empty store agrees too.
    std::vector<Feature> more;
    for (int i = 0; i < 50; ++i) more.push_back(testgen::random_feature(gen, vs, 80));
    CHECK(run_enumeration(s1, more, 6) == run_enumeration(s2, more, 6));
}

TEST_CASE("stage growth bound and nestedness") {
    const auto vs = testgen::quarters();
    SplitStream gen(0xabc, 1);
    ForcingStore store;
    ForcingStore previous = store;
    const std::size_t length = 5;
    for (int i = 0; i < 150; ++i) {
        const auto feat = testgen::random_feature(gen, vs, 48);
        const auto before = store.materialized_count();
        store.force(feat, length);
        CHECK(store.materialized_count() - before <= std::max<std::size_t>(length, 1));
        CHECK(store_subset_of(previous, store));
        previous = store;
    }
}

TEST_CASE("fresh ids never revisit the existing domain") {
    const auto vs = testgen::bernoulli();
    SplitStream gen(0x111, 2);
    ForcingStore store;
    std::set<std::uint64_t> seen_omegas, seen_thetas;
    for (int i = 0; i < 300; ++i) {
        const auto feat = testgen::random_feature(gen, vs, 32);
        // Shadow-track every id the stream has mentioned.
        if (feat.kind() == Feature::Kind::row) {
            seen_thetas.insert(feat.ids().begin(), feat.ids().end());
        } else if (feat.kind() == Feature::Kind::col) {
            seen_omegas.insert(feat.ids().begin(), feat.ids().end());
        } else {
            seen_omegas.insert(feat.point_omega());
            seen_thetas.insert(feat.point_theta());
        }
        const auto r = store.force(feat, 4);
        if (r.allocated) {
            auto& seen = r.allocated->side == Side::omega ? seen_omegas : seen_thetas;
            CHECK_FALSE(seen.contains(r.allocated->index));
            seen.insert(r.allocated->index);
        }
    }
}

TEST_CASE("level_set_extend produces distinct fresh coordinates") {
    ForcingStore store;
    const Label r = 1;
    const auto first = store.level_set_extend(7, r, 3);
    REQUIRE(first.size() == 3);
    std::set<std::uint64_t> all(first.begin(), first.end());
    CHECK(all.size() == 3);
    for (const auto t : first) CHECK(store.eval_raw(7, t) == r);

    const auto one = store.level_set_extend(7, r, 1);
    const auto two = store.level_set_extend(7, r, 1);
    CHECK(one[0] != two[0]);

    const auto before = store.assignments();
    const auto more = store.level_set_extend(7, r, 5);
    for (const auto t : more) {
        CHECK_FALSE(all.contains(t));
        all.insert(t);
    }
    // Existing assignments untouched.
    for (const auto& [key, value] : before) {
        CHECK(store.assignments().at(key) == value);
    }
}

TEST_CASE("feature scripts parse and run") {
    const auto vs = testgen::mixed();
    std::istringstream script(
        "# rows, columns, points\n"
        "ROW const:a 3 5 9\n"
        "COL list:a,b 0 1\n"
        "ROW periodic:a,b 10 11 12\n"
        "POINT 0 3\n"
        "ROW rand:42 20 21\n");
    const auto feats = parse_feature_script(script, vs);
    REQUIRE(feats.size() == 5);
    CHECK(feats[0] == Feature::row(ValueSequence::constant(0), {3, 5, 9}));
    CHECK(feats[1] == Feature::col(ValueSequence::explicit_list({0, 1}), {0, 1}));
    CHECK(feats[3] == Feature::point(0, 3));
    CHECK(feats[0].describe(vs) == "ROW const:a 3 5 9");
    CHECK(feats[2].describe(vs) == "ROW periodic:a,b 10 11 12");

    const auto store = run_enumeration(ForcingStore{}, feats, 4);
    CHECK(store.journal().size() == 5);

    std::istringstream bad("ROW const:zzz 1 2\n");
    CHECK_THROWS_WITH_AS(parse_feature_script(bad, vs), doctest::Contains("line 1"), UsageError);
    std::istringstream dup("ROW const:a 2 2\n");
    CHECK_THROWS_AS(parse_feature_script(dup, vs), UsageError);
    std::istringstream junk("JUMP 1 2\n");
    CHECK_THROWS_AS(parse_feature_script(junk, vs), UsageError);
}

TEST_CASE("random sequences are deterministic and exact") {
    const auto vs = testgen::mixed();
    const auto s1 = ValueSequence::random(99, vs);
    const auto s2 = ValueSequence::random(99, vs);
    for (std::size_t n = 0; n < 50; ++n) CHECK(s1.at(n) == s2.at(n));
    CHECK(s1 == s2);

    // Frequencies should land near the exact weights for a long prefix.
    std::size_t counts[3] = {0, 0, 0};
    const std::size_t n = 30000;
    for (std::size_t i = 0; i < n; ++i) ++counts[s1.at(i)];
    CHECK(std::abs(static_cast<double>(counts[0]) / n - 0.5) < 0.02);
    CHECK(std::abs(static_cast<double>(counts[1]) / n - 1.0 / 3) < 0.02);
    CHECK(std::abs(static_cast<double>(counts[2]) / n - 1.0 / 6) < 0.02);
}
