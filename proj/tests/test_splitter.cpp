#include <doctest.h>

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "hurwitz/error.hpp"
#include "hurwitz/splitter.hpp"

using namespace hurwitz;

namespace {

Partition P(std::vector<int> v) { return Partition(std::move(v)); }

// Independent existence check: assign each part to one of r buckets of
// capacity k, first-use-group labeling to cut bucket symmetry.
bool brute_can_split(const Partition& mu, int r, int k) {
    const auto& parts = mu.parts();
    std::vector<int> load(r, 0);
    std::function<bool(std::size_t, int)> rec = [&](std::size_t i, int used) -> bool {
        if (i == parts.size()) return true;
        int cap = std::min(used + 1, r); // bucket symmetry: open at most one new
        for (int b = 0; b < cap; ++b) {
            if (load[b] + parts[i] > k) continue;
            load[b] += parts[i];
            if (rec(i + 1, std::max(used, b + 1))) {
                load[b] -= parts[i];
                return true;
            }
            load[b] -= parts[i];
        }
        return false;
    };
    return rec(0, 0);
}

} // namespace

TEST_CASE("find_split basics") {
    auto s = find_split(P({3, 2, 2, 1}), 2, 4);
    REQUIRE(s);
    CHECK(s->groups.size() == 2);
    for (const auto& g : s->groups) CHECK(g.degree() == 4);

    auto s2 = find_split(P({5, 2, 2, 2, 2, 1, 1}), 3, 5);
    REQUIRE(s2);
    std::multiset<std::string> got;
    for (const auto& g : s2->groups) got.insert(g.to_string());
    CHECK(got == std::multiset<std::string>{"[5]", "[2,2,1]", "[2,2,1]"});

    CHECK_FALSE(find_split(P({3, 2, 2, 2, 2, 2, 2}), 3, 5));
    CHECK_FALSE(find_split(P({4, 1, 1}), 2, 3));
}

TEST_CASE("split of rectangles") {
    auto s = find_split(P({3, 3}), 2, 3);
    REQUIRE(s);
    CHECK(s->groups[0] == P({3}));
    CHECK(s->groups[1] == P({3}));
}

TEST_CASE("argument checking") {
    CHECK_THROWS_AS(find_split(P({3, 1}), 2, 3), Error); // 4 != 6
    CHECK_THROWS_AS(find_split(P({4, 2}), 1, 6), Error); // r < 2
}

TEST_CASE("all_splits yields distinct valid solutions") {
    auto sols = all_splits(P({2, 2, 1, 1, 1, 1}), 2, 4);
    std::set<std::vector<std::string>> seen;
    for (const auto& sol : sols) {
        REQUIRE(sol.groups.size() == 2);
        int total = 0;
        std::vector<std::string> key;
        std::vector<int> merged;
        for (const auto& g : sol.groups) {
            CHECK(g.degree() == 4);
            total += g.degree();
            key.push_back(g.to_string());
            for (int p : g.parts()) merged.push_back(p);
        }
        CHECK(total == 8);
        CHECK(Partition(merged) == P({2, 2, 1, 1, 1, 1}));
        CHECK(seen.insert(key).second); // no duplicate solutions
    }
    // {2,2|1111}, {2,1,1|2,1,1}
    CHECK(sols.size() == 2);

    bool truncated = false;
    auto capped = all_splits(P({1, 1, 1, 1, 1, 1, 1, 1}), 2, 4, 1, &truncated);
    CHECK(capped.size() == 1);
    CHECK_FALSE(truncated); // only one solution exists anyway
}

TEST_CASE("can_split matches brute force up to r*k = 12") {
    for (int r = 2; r <= 6; ++r)
        for (int k = 1; r * k <= 12; ++k)
            for (const auto& mu : all_partitions(r * k, false)) {
                CAPTURE(mu.to_string());
                CAPTURE(r);
                CAPTURE(k);
                CHECK(can_split(mu, r, k) == brute_can_split(mu, r, k));
                CHECK(can_split(mu, r, k) == static_cast<bool>(find_split(mu, r, k)));
            }
}
