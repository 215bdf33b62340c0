#pragma once

#include <json.hpp>

#include "hurwitz/criteria.hpp"
#include "hurwitz/ratmap.hpp"

namespace hurwitz {

using json = nlohmann::json;

json partition_json(const Partition& p);
json tuple_json(const MonodromyTuple& tuple);
json trace_json(const TraceNode& node);

// {"datum": ..., "status": ..., "method": ..., "evidence": {...}}
json verdict_json(const CandidateDatum& datum, const Verdict& verdict);

json branching_report_json(const BranchingReport& report);

} // namespace hurwitz
