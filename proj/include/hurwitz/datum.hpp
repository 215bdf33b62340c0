#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hurwitz/partition.hpp"

namespace hurwitz {

// A candidate branching datum: degree d >= 2 plus a multiset of nontrivial
// partitions of d. The target Euler characteristic is 2 (sphere) unless
// constructed otherwise; the source Euler characteristic is derived from the
// Riemann-Hurwitz formula and must be even and <= 2.
class CandidateDatum {
public:
    CandidateDatum() = default; // empty placeholder; real data come from validate()

    // Canonicalizes (sorts partitions) and checks all invariants. Throws
    // Error with code DegreeMismatch, TrivialPartition or EulerObstruction.
    static CandidateDatum validate(int degree, std::vector<Partition> partitions, int target_euler = 2);

    int degree() const { return degree_; }
    int target_euler() const { return target_euler_; }
    const std::vector<Partition>& partitions() const { return partitions_; }
    int num_branch_points() const { return static_cast<int>(partitions_.size()); }

    // nu(D) = sum over all parts of (part - 1).
    int total_branching() const;

    // chi(M) = d * chi(N) - nu(D).
    int source_euler() const { return degree_ * target_euler_ - total_branching(); }

    std::string to_string() const; // e.g. "4:[3,1];[2,2];[2,2]"

    bool operator==(const CandidateDatum&) const = default;

private:
    int degree_ = 0;
    int target_euler_ = 2;
    std::vector<Partition> partitions_;
};

// A factorization pattern of a 3-partition datum {mu1, r*x, r*y}: two of the
// partitions have every part divisible by r, so any realizing map is an r-th
// power of a degree-k map (d = r*k).
struct PowerShape {
    int r = 0;
    int k = 0;
    Partition mu1; // the remaining partition, of degree d
    Partition x;   // mu2 / r, of degree k
    Partition y;   // mu3 / r, of degree k
    int mu1_index = 0, mu2_index = 0, mu3_index = 0; // roles within the canonical datum
};

// Every (r >= 2, role assignment) with k = d/r >= 2 where the two non-mu1
// partitions are all divisible by r, deduplicated up to the x/y swap.
// Throws WrongArity unless the datum has exactly 3 partitions.
std::vector<PowerShape> detect_power_shapes(const CandidateDatum& datum);

// Streams every canonical datum of degree d with exactly n nontrivial
// partitions and the requested source Euler characteristic (sphere target).
// The callback returns false to stop early.
void enumerate_candidates(int d, int n, int source_euler,
                          const std::function<bool(const CandidateDatum&)>& fn);
std::vector<CandidateDatum> enumerate_candidates(int d, int n, int source_euler);

// Parses the datum text format "d: p1;p2;...;pn", brackets optional,
// whitespace ignored, parts auto-sorted. Throws ParseError (with position)
// or a validation error.
CandidateDatum parse_datum(const std::string& text);

} // namespace hurwitz
