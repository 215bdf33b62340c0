#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hurwitz/partition.hpp"

namespace hurwitz {

// A bijection on {0,...,d-1}. Rendered 1-based in cycle notation.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images); // validates bijection

    static Permutation identity(int d);

    // Cycles (1...a1)(a1+1...a1+a2)... in non-increasing part order; the
    // reproducible class representative.
    static Permutation canonical_of_type(const Partition& mu);

    int degree() const { return static_cast<int>(img_.size()); }
    int operator()(int i) const { return img_[i]; }
    const std::vector<int>& images() const { return img_; }

    bool is_identity() const;
    Permutation inverse() const;

    // Left-to-right composition: (a.then(b))(i) == b(a(i)).
    Permutation then(const Permutation& other) const;

    Partition cycle_type() const; // partition of d, fixed points as 1-parts

    std::string cycle_string() const; // "(1 2)(3 4)"; identity prints "()"

    bool operator==(const Permutation&) const = default;

private:
    std::vector<int> img_;
};

// |S_d| / (prod of parts * prod of multiplicity factorials).
unsigned long long conjugacy_class_size(const Partition& mu);

// Visits each permutation of cycle type mu exactly once; fn returns false to
// stop. Returns false if stopped early.
bool for_each_in_class(const Partition& mu, const std::function<bool(const Permutation&)>& fn);

// Materialized class; throws DegreeMismatch if mu.degree() != d.
std::vector<Permutation> enumerate_class(int d, const Partition& mu);

} // namespace hurwitz
