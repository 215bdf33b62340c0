#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hurwitz/partition.hpp"

namespace hurwitz {

// A decomposition of the parts of a partition of r*k into r groups, each
// summing to k. Groups are kept in canonical partition order.
struct SplitSolution {
    std::vector<Partition> groups;

    bool operator==(const SplitSolution&) const = default;
};

// One canonical solution if any exists; deterministic. Throws DegreeMismatch
// unless mu.degree() == r*k.
std::optional<SplitSolution> find_split(const Partition& mu, int r, int k);

// All solutions up to reordering of groups, in canonical order. Output is
// capped at `limit` solutions; *truncated reports whether the cap was hit.
std::vector<SplitSolution> all_splits(const Partition& mu, int r, int k,
                                      std::size_t limit = 1'000'000,
                                      bool* truncated = nullptr);

bool can_split(const Partition& mu, int r, int k);

} // namespace hurwitz
