#include "hurwitz/splitter.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "hurwitz/error.hpp"

namespace hurwitz {

namespace {

void check_args(const Partition& mu, int r, int k) {
    if (r < 2 || k < 1)
        throw Error(Errc::BadParams, "need r >= 2 and k >= 1");
    if (mu.degree() != r * k)
        throw Error(Errc::DegreeMismatch, "partition of " + std::to_string(mu.degree()) +
                                              " cannot split into " + std::to_string(r) +
                                              " partitions of " + std::to_string(k));
}

struct SolutionLess {
    bool operator()(const std::vector<Partition>& a, const std::vector<Partition>& b) const {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                            Partition::canonical_less);
    }
};

// Depth-first assignment of parts (non-increasing order) to groups with
// remaining capacity. Groups whose contents coincide are interchangeable:
// only the first such group is tried, so each multiset of groups is reached
// exactly once. stop_after_first short-circuits for find_split.
class SplitSearch {
public:
    SplitSearch(const Partition& mu, int r, int k, std::size_t limit, bool stop_after_first)
        : parts_(mu.parts()), r_(r), limit_(limit), first_only_(stop_after_first) {
        groups_.resize(r);
        caps_.assign(r, k);
    }

    void run() { rec(0); }

    std::set<std::vector<Partition>, SolutionLess> solutions;
    bool truncated = false;

private:
    void rec(std::size_t i) {
        if (truncated || (first_only_ && !solutions.empty())) return;
        if (i == parts_.size()) {
            std::vector<Partition> gs;
            gs.reserve(groups_.size());
            for (const auto& g : groups_) gs.emplace_back(g);
            std::sort(gs.begin(), gs.end(), Partition::canonical_less);
            if (solutions.size() >= limit_ && !solutions.count(gs)) {
                truncated = true;
                return;
            }
            solutions.insert(std::move(gs));
            return;
        }
        int p = parts_[i];
        for (int g = 0; g < r_; ++g) {
            if (caps_[g] < p) continue;
            bool same_as_earlier = false;
            for (int h = 0; h < g && !same_as_earlier; ++h)
                same_as_earlier = groups_[h] == groups_[g];
            if (same_as_earlier) continue;
            groups_[g].push_back(p);
            caps_[g] -= p;
            rec(i + 1);
            groups_[g].pop_back();
            caps_[g] += p;
            if (truncated) return;
        }
    }

    const std::vector<int>& parts_;
    int r_;
    std::size_t limit_;
    bool first_only_;
    std::vector<std::vector<int>> groups_;
    std::vector<int> caps_;
};

} // namespace

std::optional<SplitSolution> find_split(const Partition& mu, int r, int k) {
    check_args(mu, r, k);
    SplitSearch search(mu, r, k, 1, /*stop_after_first=*/true);
    search.run();
    if (search.solutions.empty()) return std::nullopt;
    return SplitSolution{*search.solutions.begin()};
}

std::vector<SplitSolution> all_splits(const Partition& mu, int r, int k,
                                      std::size_t limit, bool* truncated) {
    check_args(mu, r, k);
    SplitSearch search(mu, r, k, limit, /*stop_after_first=*/false);
    search.run();
    if (truncated) *truncated = search.truncated;
    std::vector<SplitSolution> out;
    out.reserve(search.solutions.size());
    for (const auto& s : search.solutions) out.push_back(SplitSolution{s});
    return out;
}

bool can_split(const Partition& mu, int r, int k) {
    check_args(mu, r, k);
    const auto& parts = mu.parts();
    // Memoized existence check: state is (next part index, remaining
    // capacities as a multiset). Groups with equal remaining capacity are
    // interchangeable for feasibility.
    std::map<std::pair<std::size_t, std::vector<int>>, bool> memo;
    std::vector<int> caps(r, k);
    std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
        if (i == parts.size()) return true;
        std::vector<int> key_caps(caps);
        std::sort(key_caps.begin(), key_caps.end());
        if (parts[i] > key_caps.back()) return false;
        auto key = std::make_pair(i, key_caps);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        bool ok = false;
        std::set<int> tried;
        for (int g = 0; g < r && !ok; ++g) {
            if (caps[g] < parts[i] || !tried.insert(caps[g]).second) continue;
            caps[g] -= parts[i];
            ok = rec(i + 1);
            caps[g] += parts[i];
        }
        memo.emplace(std::move(key), ok);
        return ok;
    };
    return rec(0);
}

} // namespace hurwitz
