#pragma once

#include <compare>
#include <string>
#include <vector>

namespace hurwitz {

// A partition of a positive integer: parts kept sorted non-increasing.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts);

    const std::vector<int>& parts() const { return parts_; }
    int degree() const { return degree_; }
    int size() const { return static_cast<int>(parts_.size()); }
    bool empty() const { return parts_.empty(); }

    // True iff some part is >= 2.
    bool nontrivial() const { return !parts_.empty() && parts_.front() >= 2; }

    // Sum of (part - 1); the contribution to total branching.
    int branching() const { return degree_ - size(); }

    int max_part() const { return parts_.empty() ? 0 : parts_.front(); }
    int count_odd_parts() const;
    int gcd_of_parts() const;

    bool all_divisible_by(int r) const;
    Partition divided_by(int r) const;
    Partition scaled(int r) const;

    // All parts equal to v.
    bool is_rectangle(int v) const;

    bool operator==(const Partition&) const = default;

    // Canonical total order: lexicographically larger part sequence first.
    static bool canonical_less(const Partition& a, const Partition& b) {
        return a.parts_ > b.parts_;
    }

    std::string to_string() const; // e.g. "[3,1]"

private:
    std::vector<int> parts_;
    int degree_ = 0;
};

// All partitions of d in canonical order; nontrivial_only drops [1,...,1].
std::vector<Partition> all_partitions(int d, bool nontrivial_only);

} // namespace hurwitz
