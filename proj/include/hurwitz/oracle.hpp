#pragma once

#include <optional>
#include <vector>

#include "hurwitz/datum.hpp"
#include "hurwitz/permutation.hpp"

namespace hurwitz {

// Hurwitz's reduction: a datum is realizable iff there are permutations with
// the prescribed cycle types whose left-to-right product is the identity and
// which generate a transitive group.
struct MonodromyTuple {
    std::vector<Permutation> perms;

    bool operator==(const MonodromyTuple&) const = default;
};

bool transitive(const std::vector<Permutation>& perms, int degree);

// Certificate check: cycle types match the datum's partitions as multisets,
// product is the identity, action is transitive.
bool verify_tuple(const MonodromyTuple& tuple, const CandidateDatum& datum);

enum class OracleStatus { Realizable, Exceptional, Unknown };

struct OracleResult {
    OracleStatus status = OracleStatus::Unknown;
    std::optional<MonodromyTuple> tuple; // present iff Realizable
    unsigned long long examined = 0;     // candidate permutations generated
    unsigned long long budget = 0;
};

inline constexpr unsigned long long kDefaultOracleBudget = 100'000'000ULL;

// Exhaustive search with conjugation fixing: the largest class is pinned to
// its canonical representative, one class is forced as the inverse of the
// partial product, the rest are enumerated in full. Exceptional means the
// whole space was exhausted; Unknown means the budget ran out first.
OracleResult decide_by_search(const CandidateDatum& datum,
                              unsigned long long budget = kDefaultOracleBudget);

} // namespace hurwitz
