#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "hurwitz/datum.hpp"
#include "hurwitz/error.hpp"
#include "hurwitz/oracle.hpp"

using namespace hurwitz;

namespace {

Partition P(std::vector<int> v) { return Partition(std::move(v)); }

// Independent oracle: enumerate tuples over raw S_d via next_permutation,
// no conjugation pinning, no forced slot.
bool brute_realizable(const CandidateDatum& datum) {
    int d = datum.degree();
    std::vector<int> base(d);
    std::iota(base.begin(), base.end(), 0);
    std::vector<Permutation> all;
    {
        std::vector<int> img = base;
        do {
            all.emplace_back(img);
        } while (std::next_permutation(img.begin(), img.end()));
    }
    auto of_type = [&](const Partition& mu) {
        std::vector<Permutation> out;
        for (const auto& p : all)
            if (p.cycle_type() == mu) out.push_back(p);
        return out;
    };
    std::vector<std::vector<Permutation>> pools;
    for (const auto& mu : datum.partitions()) pools.push_back(of_type(mu));
    std::vector<std::size_t> idx(pools.size(), 0);
    while (true) {
        std::vector<Permutation> tuple;
        for (std::size_t i = 0; i < pools.size(); ++i) tuple.push_back(pools[i][idx[i]]);
        Permutation prod = Permutation::identity(d);
        for (const auto& p : tuple) prod = prod.then(p);
        if (prod.is_identity() && transitive(tuple, d)) return true;
        std::size_t pos = 0;
        while (pos < idx.size() && ++idx[pos] == pools[pos].size()) idx[pos++] = 0;
        if (pos == idx.size()) return false;
    }
}

} // namespace

TEST_CASE("permutation basics") {
    Permutation p({1, 0, 3, 2}); // (1 2)(3 4)
    CHECK(p.cycle_string() == "(1 2)(3 4)");
    CHECK(p.cycle_type() == P({2, 2}));
    CHECK(p.then(p).is_identity());
    CHECK(p.inverse() == p);
    CHECK(Permutation::identity(3).cycle_string() == "()");
    CHECK(Permutation::identity(3).cycle_type() == P({1, 1, 1}));

    Permutation a({1, 2, 0}); // (1 2 3)
    Permutation b({1, 0, 2}); // (1 2)
    CHECK(a.then(b)(0) == b(a(0)));
    CHECK(a.then(a.inverse()).is_identity());
    CHECK(Permutation::canonical_of_type(P({2, 2})) == Permutation({1, 0, 3, 2}));
    CHECK_THROWS_AS(Permutation({0, 0, 1}), Error);
}

TEST_CASE("class sizes: closed form vs enumeration") {
    // d! / (prod parts * prod mult!)
    CHECK(conjugacy_class_size(P({2, 1, 1})) == 6);   // transpositions in S4
    CHECK(conjugacy_class_size(P({4})) == 6);         // 4-cycles
    CHECK(conjugacy_class_size(P({2, 2})) == 3);
    CHECK(conjugacy_class_size(P({3, 3, 3})) == 2240); // 9! / (3^3 * 3!)

    for (int d = 1; d <= 6; ++d)
        for (const auto& mu : all_partitions(d, false)) {
            auto cls = enumerate_class(d, mu);
            CHECK(cls.size() == conjugacy_class_size(mu));
            std::set<std::vector<int>> seen;
            for (const auto& p : cls) {
                CHECK(p.cycle_type() == mu);
                CHECK(seen.insert(p.images()).second);
            }
        }
    CHECK_THROWS_AS(enumerate_class(3, P({2, 2})), Error);
}

TEST_CASE("tuple verification") {
    auto datum = CandidateDatum::validate(2, {P({2}), P({2})});
    Permutation swap01({1, 0});
    CHECK(verify_tuple(MonodromyTuple{{swap01, swap01}}, datum));
    CHECK_FALSE(verify_tuple(MonodromyTuple{{swap01, Permutation::identity(2)}}, datum));

    // The Klein four-group tuple: identity product and transitive.
    auto d4 = parse_datum("4:[2,2];[2,2];[2,2]");
    Permutation a({1, 0, 3, 2}), b({2, 3, 0, 1}), c({3, 2, 1, 0});
    CHECK(verify_tuple(MonodromyTuple{{a, b, c}}, d4));
    CHECK_FALSE(verify_tuple(MonodromyTuple{{a, b, a}}, d4)); // product not identity
    CHECK_FALSE(transitive({a}, 4));
    CHECK(transitive({a, b}, 4));
}

TEST_CASE("search on landmark data") {
    auto exceptional = parse_datum("4:[3,1];[2,2];[2,2]");
    auto r1 = decide_by_search(exceptional);
    CHECK(r1.status == OracleStatus::Exceptional);
    CHECK(r1.examined > 0);

    auto realizable = parse_datum("4:[2,2];[2,2];[2,2]");
    auto r2 = decide_by_search(realizable);
    REQUIRE(r2.status == OracleStatus::Realizable);
    REQUIRE(r2.tuple);
    CHECK(verify_tuple(*r2.tuple, realizable));

    auto d3 = parse_datum("3:[3];[2,1];[2,1]");
    auto r3 = decide_by_search(d3);
    REQUIRE(r3.status == OracleStatus::Realizable);
    CHECK(verify_tuple(*r3.tuple, d3));

    // Budget of 1 cannot settle a nontrivial search.
    auto r4 = decide_by_search(parse_datum("6:[3,3];[3,2,1];[2,2,2]"), 1);
    CHECK(r4.status == OracleStatus::Unknown);
    CHECK(r4.examined >= 1);
}

TEST_CASE("search agrees with the independent brute-force oracle for d <= 5") {
    for (int d = 2; d <= 5; ++d)
        for (int n = 2; n <= 3; ++n)
            for (const auto& datum : enumerate_candidates(d, n, 2)) {
                CAPTURE(datum.to_string());
                auto res = decide_by_search(datum);
                REQUIRE(res.status != OracleStatus::Unknown);
                CHECK((res.status == OracleStatus::Realizable) == brute_realizable(datum));
                if (res.tuple) CHECK(verify_tuple(*res.tuple, datum));
            }
}
