#include "hurwitz/json_io.hpp"

namespace hurwitz {

json partition_json(const Partition& p) {
    return json(p.parts());
}

json tuple_json(const MonodromyTuple& tuple) {
    json arr = json::array();
    for (const auto& perm : tuple.perms) arr.push_back(perm.cycle_string());
    return arr;
}

json trace_json(const TraceNode& node) {
    json j;
    j["datum"] = node.datum.to_string();
    switch (node.kind) {
    case TraceNode::Kind::Oracle:
        j["type"] = "oracle";
        if (node.tuple) j["permutations"] = tuple_json(*node.tuple);
        break;
    case TraceNode::Kind::Axiom:
        j["type"] = "axiom";
        j["axiom"] = node.axiom;
        break;
    case TraceNode::Kind::PowerLift:
        j["type"] = "power_lift";
        j["k"] = node.param;
        if (node.child) j["child"] = trace_json(*node.child);
        break;
    case TraceNode::Kind::RootsLift: {
        j["type"] = "roots_lift";
        j["r"] = node.param;
        json splits = json::array();
        for (const auto& s : node.splits) splits.push_back(s.to_string());
        j["splits"] = std::move(splits);
        if (node.xpart) j["x"] = node.xpart->to_string();
        if (node.ypart) j["y"] = node.ypart->to_string();
        if (node.child) j["child"] = trace_json(*node.child);
        break;
    }
    }
    return j;
}

json verdict_json(const CandidateDatum& datum, const Verdict& verdict) {
    json evidence = json::object();
    switch (verdict.status) {
    case Status::Realizable:
        if (verdict.certificate) {
            if (const auto* tuple = std::get_if<MonodromyTuple>(&*verdict.certificate)) {
                evidence["permutations"] = tuple_json(*tuple);
                evidence["examined"] = verdict.oracle_examined;
            } else {
                const auto& trace = std::get<TracePtr>(*verdict.certificate);
                if (trace) evidence["trace"] = trace_json(*trace);
            }
        }
        break;
    case Status::Exceptional:
        if (verdict.obstruction) {
            evidence["rule"] = verdict.obstruction->rule;
            evidence["witness"] = verdict.obstruction->witness;
        }
        if (verdict.oracle_examined > 0) evidence["examined"] = verdict.oracle_examined;
        break;
    case Status::Unknown:
        evidence["reason"] = verdict.reason;
        if (verdict.oracle_examined > 0) evidence["examined"] = verdict.oracle_examined;
        break;
    }
    json j;
    j["datum"] = datum.to_string();
    j["status"] = status_name(verdict.status);
    j["method"] = verdict.method;
    j["evidence"] = std::move(evidence);
    return j;
}

json branching_report_json(const BranchingReport& report) {
    json entries = json::array();
    for (const auto& e : report.entries) {
        json je;
        je["value"] = sphere_point_string(e.value);
        je["partition"] = partition_json(e.partition);
        je["residual"] = e.residual;
        entries.push_back(std::move(je));
    }
    json j;
    j["degree"] = report.degree;
    j["entries"] = std::move(entries);
    j["total_branching"] = report.total_branching;
    j["rh_consistent"] = report.rh_consistent;
    j["root_cluster_tol"] = report.root_cluster_tol;
    return j;
}

} // namespace hurwitz
