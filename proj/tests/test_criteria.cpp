#include <doctest.h>

#include <set>

#include "hurwitz/criteria.hpp"
#include "hurwitz/error.hpp"

using namespace hurwitz;

namespace {

Partition P(std::vector<int> v) { return Partition(std::move(v)); }

Verdict decide_rules_only(const CandidateDatum& d) {
    DecideConfig cfg;
    cfg.use_oracle = false;
    return decide(d, cfg);
}

} // namespace

TEST_CASE("power obstruction fires on the landmark shapes") {
    // A part exceeding k.
    auto o1 = power_obstruction(parse_datum("4:[3,1];[2,2];[2,2]"));
    REQUIRE(o1);
    CHECK(o1->rule == "corollary_max_part");

    // Two preimages but mu1 != [k,k].
    auto o2 = power_obstruction(parse_datum("6:[4,2];[2,2,2];[2,2,2]"));
    REQUIRE(o2);

    // No split of [2,2,2,2,1] into three 3's (single odd part count).
    auto o3 = power_obstruction(parse_datum("9:[2,1,2,2,2];[3,3,3];[3,3,3]"));
    REQUIRE(o3);
    CHECK(o3->rule == "no_split");

    auto o4 = power_obstruction(parse_datum("15:[3,3,3,3,1,1,1];[3,3,3,3,3];[3,3,3,3,3]"));
    REQUIRE(o4);
    CHECK(o4->rule == "no_split");

    // The realizable d=9 example passes every corollary.
    CHECK_FALSE(power_obstruction(parse_datum("9:[3,1,1,2,2];[3,3,3];[3,3,3]")));

    CHECK_THROWS_AS(power_obstruction(CandidateDatum::validate(2, {P({2}), P({2})})), Error);
}

TEST_CASE("corollaries never contradict the split criterion") {
    // If a corollary fires, the split must also fail (they are consequences).
    for (int d = 4; d <= 8; ++d)
        for (const auto& cand : enumerate_candidates(d, 3, 2)) {
            auto obs = power_obstruction(cand);
            if (!obs) continue;
            bool some_shape_unsplittable = false;
            for (const auto& s : detect_power_shapes(cand))
                if (s.mu1.max_part() > s.k || !can_split(s.mu1, s.r, s.k))
                    some_shape_unsplittable = true;
            CHECK(some_shape_unsplittable);
        }
}

TEST_CASE("iff rule: two all-2 partitions") {
    auto v1 = iff_two_two(parse_datum("6:[3,3];[2,2,2];[2,2,2]"));
    REQUIRE(v1);
    CHECK(v1->status == Status::Realizable);
    REQUIRE(v1->certificate);
    CHECK(verify_certificate(*v1->certificate, parse_datum("6:[3,3];[2,2,2];[2,2,2]")));

    auto v2 = iff_two_two(parse_datum("6:[4,2];[2,2,2];[2,2,2]"));
    REQUIRE(v2);
    CHECK(v2->status == Status::Exceptional);

    auto v3 = iff_two_two(parse_datum("4:[2,2];[2,2];[2,2]"));
    REQUIRE(v3);
    CHECK(v3->status == Status::Realizable);

    // [3,1] matches the shape with alpha1 != alpha2.
    auto v4 = iff_two_two(parse_datum("4:[3,1];[2,2];[2,2]"));
    REQUIRE(v4);
    CHECK(v4->status == Status::Exceptional);

    // No all-2 partition: shape mismatch.
    CHECK_FALSE(iff_two_two(parse_datum("4:[4];[3,1];[2,1,1]")));
}

TEST_CASE("iff rule: general x") {
    // x=2: [4,2,2] splits into [4] and [2,2]; k/GCD = 4/2 = 2 >= 2.
    auto v1 = iff_general_x(parse_datum("8:[4,2,2];[2,2,2,2];[2,2,4]"));
    REQUIRE(v1);
    CHECK(v1->status == Status::Realizable);
    REQUIRE(v1->certificate);
    CHECK(verify_certificate(*v1->certificate, parse_datum("8:[4,2,2];[2,2,2,2];[2,2,4]")));

    // x=3: splits exist but GCD = 3, k/GCD = 2 < 3.
    auto v2 = iff_general_x(parse_datum("12:[3,3,3,3];[2,2,2,2,2,2];[2,2,2,6]"));
    REQUIRE(v2);
    CHECK(v2->status == Status::Exceptional);

    // One part equal to k forces realizability: {[k,a2,k-a2],[2^k],[2^(k-2),4]}.
    for (int k = 3; k <= 6; ++k)
        for (int a2 = 1; 2 * a2 <= k; ++a2) {
            std::vector<int> twos(k, 2);
            std::vector<int> last(k - 2, 2);
            last.push_back(4);
            auto d = CandidateDatum::validate(
                2 * k, {P({k, a2, k - a2}), Partition(twos), Partition(last)});
            auto v = iff_general_x(d);
            REQUIRE(v);
            CHECK(v->status == Status::Realizable);
        }

    // x=1 collapses onto the two-part shape.
    auto v3 = iff_general_x(parse_datum("6:[3,3];[2,2,2];[2,2,2]"));
    REQUIRE(v3);
    CHECK(v3->status == Status::Realizable);
}

TEST_CASE("exceptional family generators") {
    auto z1a = generate_family("Z1a", {{"k", 3}, {"k1", 4}, {"k2", 2}});
    CHECK(z1a.datum.to_string() == "6:[4,2];[2,2,2];[2,2,2]");
    CHECK(z1a.expected == Status::Exceptional);

    auto z2 = generate_family("Z2", {{"k", 3}});
    CHECK(z2.datum.to_string() == "9:[3,3,3];[3,3,3];[2,2,2,2,1]");
    CHECK(z2.datum.degree() == 9);

    auto p2 = generate_family("P2", {{"l", 1}});
    CHECK(p2.datum.to_string() == "15:[3,3,3,3,3];[3,3,3,3,3];[3,3,3,3,1,1,1]");
    CHECK(p2.params.at("k") == 5);

    auto z3 = generate_family("Z3", {{"r", 3}, {"k", 2}, {"j1", 3}, {"j2", 1}});
    CHECK(z3.datum.degree() == 6);
    CHECK(z3.datum.to_string() == "6:[3,3];[3,3];[3,1,1,1]");

    CHECK_THROWS_AS(generate_family("Z1a", {{"k", 3}, {"k1", 3}, {"k2", 3}}), Error);
    CHECK_THROWS_AS(generate_family("Z2", {{"k", 4}}), Error);
    CHECK_THROWS_AS(generate_family("P1", {{"k", 3}, {"j1", 1}, {"j2", 1}}), Error);
    CHECK_THROWS_AS(generate_family("Q9", {{"k", 3}}), Error);

    CHECK(family_names().size() == 6);
    // Every generated instance is a valid sphere-source candidate.
    for (const auto& inst : {z1a, z2, p2, z3}) CHECK(inst.datum.source_euler() == 2);
}

TEST_CASE("lift constructions") {
    auto nine = lift_roots_of_unity({P({3}), P({2, 1}), P({2, 1})}, P({1, 1, 1}), P({1, 1, 1}), 3);
    CHECK(nine.to_string() == "9:[3,3,3];[3,3,3];[3,2,2,1,1]");

    auto fifteen = lift_roots_of_unity({P({5}), P({2, 2, 1}), P({2, 2, 1})},
                                       P({1, 1, 1, 1, 1}), P({1, 1, 1, 1, 1}), 3);
    CHECK(fifteen.to_string() == "15:[5,2,2,2,2,1,1];[3,3,3,3,3];[3,3,3,3,3]");

    for (int k = 2; k <= 6; ++k) {
        std::vector<int> ones(k, 1);
        auto sq = lift_roots_of_unity({P({k}), P({k})}, Partition(ones), Partition(ones), 2);
        std::vector<int> twos(k, 2);
        auto expect = CandidateDatum::validate(2 * k, {P({k, k}), Partition(twos), Partition(twos)});
        CHECK(sq == expect);
    }

    auto lifted = lift_power(parse_datum("3:[3];[2,1];[2,1]"), 3);
    CHECK(lifted.to_string() == "9:[6,3];[6,3];[3,1,1,1,1,1,1]");
    CHECK_THROWS_AS(lift_power(CandidateDatum::validate(2, {P({2}), P({2})}), 2), Error);
}

TEST_CASE("decide pipeline landmarks") {
    auto v1 = decide(parse_datum("4:[3,1];[2,2];[2,2]"));
    CHECK(v1.status == Status::Exceptional);
    CHECK(v1.method == "power_obstruction");

    auto v2 = decide(parse_datum("15:[3,3,1,2,2,2,2];[3,3,3,3,3];[3,3,3,3,3]"));
    CHECK(v2.status == Status::Realizable);
    CHECK(v2.method == "roots_of_unity_lift");
    REQUIRE(v2.certificate);
    CHECK(verify_certificate(*v2.certificate,
                             parse_datum("15:[3,3,1,2,2,2,2];[3,3,3,3,3];[3,3,3,3,3]")));
    const auto& trace = std::get<TracePtr>(*v2.certificate);
    REQUIRE(trace->child);
    CHECK(trace->child->datum == parse_datum("5:[3,2];[3,2];[2,2,1]"));

    auto v3 = decide_rules_only(parse_datum("15:[4,2,1,2,2,2,2];[3,3,3,3,3];[3,3,3,3,3]"));
    CHECK(v3.status == Status::Exceptional);
    CHECK(v3.method == "power_obstruction");

    // EKS short-circuit for torus target.
    auto torus = CandidateDatum::validate(2, {P({2}), P({2})}, 0);
    auto v4 = decide(torus);
    CHECK(v4.status == Status::Realizable);
    CHECK(v4.method == "eks");
    CHECK_FALSE(v4.certificate);

    // Budget exhaustion surfaces as unknown; a larger budget settles it.
    DecideConfig tiny;
    tiny.oracle_budget = 1;
    auto v5 = decide(parse_datum("6:[3,3];[3,2,1];[2,2,2]"), tiny);
    CHECK(v5.status == Status::Unknown);
    auto v6 = decide(parse_datum("6:[3,3];[3,2,1];[2,2,2]"));
    CHECK(v6.status == Status::Exceptional);
    CHECK(v6.method == "oracle_exhaustion");
}

TEST_CASE("iff rules agree with the oracle for all matching shapes, d <= 10") {
    for (int d = 4; d <= 10; d += 2)
        for (const auto& cand : enumerate_candidates(d, 3, 2)) {
            std::optional<Verdict> rule = iff_two_two(cand);
            if (!rule) rule = iff_general_x(cand);
            if (!rule) continue;
            CAPTURE(cand.to_string());
            auto oracle = decide_by_search(cand);
            REQUIRE(oracle.status != OracleStatus::Unknown);
            CHECK((rule->status == Status::Realizable) ==
                  (oracle.status == OracleStatus::Realizable));
        }
}

TEST_CASE("trace replay rejects tampering") {
    auto v = decide(parse_datum("4:[2,2];[2,2];[2,2]"));
    REQUIRE(v.certificate);
    auto good = std::get<TracePtr>(*v.certificate);
    CHECK(replay_trace(*good));

    TraceNode bad = *good;
    bad.datum = parse_datum("4:[4];[4];[2,2]"); // claim a different datum
    CHECK_FALSE(replay_trace(bad));

    TraceNode wrong_param = *good;
    wrong_param.param = 3;
    CHECK_FALSE(replay_trace(wrong_param));
}
