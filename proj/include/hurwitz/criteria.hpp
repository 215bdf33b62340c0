#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hurwitz/datum.hpp"
#include "hurwitz/oracle.hpp"
#include "hurwitz/splitter.hpp"

namespace hurwitz {

enum class Status { Realizable, Exceptional, Unknown };

const char* status_name(Status s);

struct Obstruction {
    std::string rule;    // name of the violated criterion
    std::string witness; // the offending part / failed split query
};

// Construction traces: leaves are base certificates, internal nodes are lifts.
struct TraceNode;
using TracePtr = std::shared_ptr<const TraceNode>;

struct TraceNode {
    enum class Kind { Oracle, Axiom, PowerLift, RootsLift };

    Kind kind;
    CandidateDatum datum; // the datum this node certifies

    std::optional<MonodromyTuple> tuple; // Oracle leaf
    std::string axiom;                   // Axiom leaf, e.g. "boccara"

    int param = 0;                 // k for PowerLift, r for RootsLift
    std::vector<Partition> splits; // RootsLift: the partitions of k merged into mu1
    std::optional<Partition> xpart, ypart; // RootsLift: mu2/r and mu3/r
    TracePtr child;
};

using Certificate = std::variant<MonodromyTuple, TracePtr>;

struct Verdict {
    Status status = Status::Unknown;
    std::string method;
    std::optional<Certificate> certificate; // Realizable (absent for "eks")
    std::optional<Obstruction> obstruction; // Exceptional
    std::string reason;                     // Unknown
    unsigned long long oracle_examined = 0;
};

// Replays lift nodes bottom-up and checks leaf certificates; true iff the
// trace reproduces exactly node.datum at every level.
bool replay_trace(const TraceNode& node);
bool verify_certificate(const Certificate& cert, const CandidateDatum& datum);

// The power-map criterion and its corollaries, applied to every power shape
// the datum exhibits. Requires 3 partitions (WrongArity otherwise).
std::optional<Obstruction> power_obstruction(const CandidateDatum& datum);

// {[a1,a2],[2^k],[2^k]} is realizable iff a1 = a2 = k.
std::optional<Verdict> iff_two_two(const CandidateDatum& datum);

// {[a1,...,a_{x+1}],[2^k],[2^{k-x},2x]}, k >= 3: realizable iff mu1 splits
// into two partitions of k and k/GCD(a_1,...,a_{x+1}) >= x.
std::optional<Verdict> iff_general_x(const CandidateDatum& datum);

// Exceptional families. Parameter keys per family:
//   Z1a: k, k1, k2   {[k1,k2],[2^k],[2^k]}, k1 != k2
//   Z1b: k, j1, j2   {[2^k],[2^j1,2k-2j1],[2^j2,2k-2j2]}, k >= 3, j1 != j2
//   Z2:  k           {[k-2,2^(k+1)],[3^k],[3^k]}, k >= 3 odd
//   Z3:  r, k, j1, j2  {[j1,j2,1^((r-2)k)],[r^k],[r^k]}, j1 != j2
//   P1:  k, j1, j2   {[j1,j2,2^k],[3^k],[3^k]}, k >= 3 odd
//   P2:  l           {[3^(k-1),1,1,1],[3^k],[3^k]}, k = 2+3l
struct FamilyInstance {
    std::string family;
    std::map<std::string, int> params;
    CandidateDatum datum;
    Status expected = Status::Exceptional;
};

FamilyInstance generate_family(const std::string& name, const std::map<std::string, int>& params);
std::vector<std::string> family_names();

// f = (phi o g)^k: first partition of the canonical base datum padded with
// (k-1)d explicit 1-parts, the other two scaled by k. Degree k*d.
CandidateDatum lift_power(const CandidateDatum& base, int k);

// f = g^r with g's branch values at r-th roots of unity: mu1 is the union of
// the s split partitions plus (r-s)*k explicit 1-parts, mu2 = r*x, mu3 = r*y.
// Trivial partitions are expunged. Degree r*k.
CandidateDatum lift_roots_of_unity(const std::vector<Partition>& splits, const Partition& x,
                                   const Partition& y, int r);

struct DecideConfig {
    unsigned long long oracle_budget = kDefaultOracleBudget;
    bool use_oracle = true;            // step 5 may be disabled for rule-only verdicts
    std::size_t split_limit = 1'000'000;
};

// Verdict pipeline: EKS short-circuit, shape-matched iff rules, power
// obstruction, recursive power-shape descent, then the oracle within budget.
Verdict decide(const CandidateDatum& datum, const DecideConfig& config = {});

} // namespace hurwitz
