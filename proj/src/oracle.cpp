#include "hurwitz/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace hurwitz {

bool transitive(const std::vector<Permutation>& perms, int degree) {
    if (degree <= 1) return true;
    if (perms.empty()) return false;
    std::vector<char> seen(degree, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& p : perms) {
            int w = p(v);
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == degree;
}

bool verify_tuple(const MonodromyTuple& tuple, const CandidateDatum& datum) {
    int d = datum.degree();
    if (tuple.perms.size() != datum.partitions().size()) return false;
    std::vector<Partition> types;
    types.reserve(tuple.perms.size());
    for (const auto& p : tuple.perms) {
        if (p.degree() != d) return false;
        types.push_back(p.cycle_type());
    }
    std::sort(types.begin(), types.end(), Partition::canonical_less);
    if (types != datum.partitions()) return false;
    Permutation product = Permutation::identity(d);
    for (const auto& p : tuple.perms) product = product.then(p);
    if (!product.is_identity()) return false;
    return transitive(tuple.perms, d);
}

namespace {

struct Search {
    int d;
    const std::vector<Partition>& types; // by slot, tuple order
    std::vector<int> enumerated;         // slot indices searched in full
    int fixed_slot = -1;
    int forced_slot = -1;
    unsigned long long budget;
    unsigned long long examined = 0;
    bool out_of_budget = false;
    std::optional<MonodromyTuple> found;
    std::vector<Permutation> slots;

    void rec(std::size_t depth, const Permutation& prefix) {
        if (found || out_of_budget) return;
        if (depth == enumerated.size()) {
            // Product so far times the forced permutation must be identity.
            Permutation forced = prefix.inverse();
            if (!(forced.cycle_type() == types[forced_slot])) return;
            slots[forced_slot] = std::move(forced);
            if (!transitive(slots, d)) return;
            found = MonodromyTuple{slots};
            return;
        }
        int slot = enumerated[depth];
        for_each_in_class(types[slot], [&](const Permutation& cand) {
            if (++examined > budget) {
                out_of_budget = true;
                return false;
            }
            slots[slot] = cand;
            rec(depth + 1, prefix.then(cand));
            return !found && !out_of_budget;
        });
    }
};

} // namespace

OracleResult decide_by_search(const CandidateDatum& datum, unsigned long long budget) {
    OracleResult res;
    res.budget = budget;
    int d = datum.degree();
    const auto& parts = datum.partitions();
    int n = static_cast<int>(parts.size());

    // Permutation parities must multiply to even.
    int parity = 0;
    for (const auto& p : parts) parity = (parity + p.branching()) % 2;
    if (parity != 0 || n == 0) {
        res.status = OracleStatus::Exceptional;
        return res;
    }
    if (n == 1) {
        // A single nontrivial permutation is never the identity.
        res.status = OracleStatus::Exceptional;
        return res;
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto size_of = [&](int i) { return conjugacy_class_size(parts[i]); };
    // Pin the largest class (maximizes what conjugation-fixing saves), force
    // the next largest, enumerate the rest smallest-first.
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return size_of(a) > size_of(b); });

    Search s{d, parts, {}, order[0], n >= 2 ? order[1] : -1, budget};
    s.slots.assign(n, Permutation::identity(d));
    s.slots[s.fixed_slot] = Permutation::canonical_of_type(parts[s.fixed_slot]);
    for (int i = n - 1; i >= 2; --i) s.enumerated.push_back(order[i]);

    // Tuple order is (fixed, enumerated..., forced); cycle types are compared
    // as a multiset, and the product is identity by construction, so the
    // verdict matches the unordered datum.
    Permutation prefix = s.slots[s.fixed_slot];
    s.rec(0, prefix);

    res.examined = s.examined;
    if (s.found) {
        // Reorder the tuple so the product in stored order is the identity:
        // build it as fixed * enumerated... * forced.
        std::vector<Permutation> ordered;
        ordered.push_back(s.slots[s.fixed_slot]);
        for (int slot : s.enumerated) ordered.push_back(s.slots[slot]);
        ordered.push_back(s.slots[s.forced_slot]);
        res.tuple = MonodromyTuple{std::move(ordered)};
        res.status = OracleStatus::Realizable;
        if (!verify_tuple(*res.tuple, datum)) {
            // Certificates are never trusted; a failure here is a bug.
            res.status = OracleStatus::Unknown;
            res.tuple.reset();
        }
        return res;
    }
    res.status = s.out_of_budget ? OracleStatus::Unknown : OracleStatus::Exceptional;
    return res;
}

} // namespace hurwitz
