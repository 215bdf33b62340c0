#include "hurwitz/criteria.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "hurwitz/error.hpp"

namespace hurwitz {

const char* status_name(Status s) {
    switch (s) {
        case Status::Realizable: return "realizable";
        case Status::Exceptional: return "exceptional";
        case Status::Unknown: return "unknown";
    }
    return "unknown";
}

namespace {

Partition rectangle(int value, int count) {
    return Partition(std::vector<int>(count, value));
}

Partition ones(int count) { return rectangle(1, count); }

// The degree-k datum induced by a power shape and one split of mu1: the
// nontrivial split groups together with x and y when nontrivial.
CandidateDatum induced_datum(const PowerShape& shape, const SplitSolution& split) {
    std::vector<Partition> parts;
    for (const auto& g : split.groups)
        if (g.nontrivial()) parts.push_back(g);
    if (shape.x.nontrivial()) parts.push_back(shape.x);
    if (shape.y.nontrivial()) parts.push_back(shape.y);
    return CandidateDatum::validate(shape.k, std::move(parts));
}

TracePtr as_trace(const Certificate& cert, const CandidateDatum& datum) {
    if (std::holds_alternative<TracePtr>(cert)) return std::get<TracePtr>(cert);
    auto node = std::make_shared<TraceNode>();
    node->kind = TraceNode::Kind::Oracle;
    node->datum = datum;
    node->tuple = std::get<MonodromyTuple>(cert);
    return node;
}

Verdict realizable(std::string method, Certificate cert) {
    Verdict v;
    v.status = Status::Realizable;
    v.method = std::move(method);
    v.certificate = std::move(cert);
    return v;
}

Verdict exceptional(std::string method, Obstruction o) {
    Verdict v;
    v.status = Status::Exceptional;
    v.method = std::move(method);
    v.obstruction = std::move(o);
    return v;
}

bool sphere_three_point(const CandidateDatum& d) {
    return d.num_branch_points() == 3 && d.target_euler() == 2 && d.source_euler() == 2;
}

} // namespace

bool replay_trace(const TraceNode& node) {
    switch (node.kind) {
        case TraceNode::Kind::Oracle:
            return node.tuple && verify_tuple(*node.tuple, node.datum);
        case TraceNode::Kind::Axiom:
            return !node.axiom.empty();
        case TraceNode::Kind::PowerLift: {
            if (!node.child || !replay_trace(*node.child)) return false;
            return lift_power(node.child->datum, node.param) == node.datum;
        }
        case TraceNode::Kind::RootsLift: {
            if (!node.child || !node.xpart || !node.ypart) return false;
            if (!replay_trace(*node.child)) return false;
            if (!(lift_roots_of_unity(node.splits, *node.xpart, *node.ypart, node.param) == node.datum))
                return false;
            // The child must certify exactly the induced base datum.
            std::vector<Partition> base;
            for (const auto& g : node.splits)
                if (g.nontrivial()) base.push_back(g);
            if (node.xpart->nontrivial()) base.push_back(*node.xpart);
            if (node.ypart->nontrivial()) base.push_back(*node.ypart);
            int k = node.xpart->degree();
            return CandidateDatum::validate(k, std::move(base)) == node.child->datum;
        }
    }
    return false;
}

bool verify_certificate(const Certificate& cert, const CandidateDatum& datum) {
    if (std::holds_alternative<MonodromyTuple>(cert))
        return verify_tuple(std::get<MonodromyTuple>(cert), datum);
    const auto& trace = std::get<TracePtr>(cert);
    return trace && trace->datum == datum && replay_trace(*trace);
}

std::optional<Obstruction> power_obstruction(const CandidateDatum& datum) {
    for (const auto& s : detect_power_shapes(datum)) {
        int A = s.mu1.size();
        std::string ctx = " (r=" + std::to_string(s.r) + ", k=" + std::to_string(s.k) + ")";
        if (s.mu1.max_part() > s.k)
            return Obstruction{"corollary_max_part",
                               "part " + std::to_string(s.mu1.max_part()) + " of " + s.mu1.to_string() +
                                   " exceeds k" + ctx};
        if (A == 2 && !(s.r == 2 && s.mu1.is_rectangle(s.k)))
            return Obstruction{"corollary_two_preimages",
                               s.mu1.to_string() + " has 2 parts but is not [k,k] with r=2" + ctx};
        if (A == s.r && !s.mu1.is_rectangle(s.k))
            return Obstruction{"corollary_r_preimages",
                               s.mu1.to_string() + " has r parts but is not [k,...,k]" + ctx};
        if (!can_split(s.mu1, s.r, s.k))
            return Obstruction{"no_split",
                               s.mu1.to_string() + " cannot be split into " + std::to_string(s.r) +
                                   " partitions of " + std::to_string(s.k)};
    }
    return std::nullopt;
}

std::optional<Verdict> iff_two_two(const CandidateDatum& datum) {
    if (!sphere_three_point(datum) || datum.degree() % 2 != 0) return std::nullopt;
    int k = datum.degree() / 2;
    if (k < 2) return std::nullopt;
    const auto& ps = datum.partitions();
    for (int i = 0; i < 3; ++i) {
        int j = (i == 0) ? 1 : 0, l = (i == 2) ? 1 : 2;
        if (!(ps[j].size() == k && ps[j].is_rectangle(2))) continue;
        if (!(ps[l].size() == k && ps[l].is_rectangle(2))) continue;
        if (ps[i].size() != 2) continue;
        if (ps[i].is_rectangle(k)) {
            // g = (z^k - 1)/(z^k + 1) has datum {[k],[k]}; f = g^2.
            Permutation cycle = Permutation::canonical_of_type(rectangle(k, 1));
            auto leaf = std::make_shared<TraceNode>();
            leaf->kind = TraceNode::Kind::Oracle;
            leaf->datum = CandidateDatum::validate(k, {rectangle(k, 1), rectangle(k, 1)});
            leaf->tuple = MonodromyTuple{{cycle, cycle.inverse()}};
            auto root = std::make_shared<TraceNode>();
            root->kind = TraceNode::Kind::RootsLift;
            root->datum = datum;
            root->param = 2;
            root->splits = {rectangle(k, 1), rectangle(k, 1)};
            root->xpart = ones(k);
            root->ypart = ones(k);
            root->child = leaf;
            return realizable("iff_two_two", Certificate{TracePtr(root)});
        }
        return exceptional("iff_two_two",
                           Obstruction{"two_two_alpha", ps[i].to_string() + " differs from [" +
                                                            std::to_string(k) + "," + std::to_string(k) + "]"});
    }
    return std::nullopt;
}

namespace {

struct GeneralXMatch {
    Partition mu1;
    int x = 0;
    int k = 0;
};

std::vector<GeneralXMatch> match_general_x(const CandidateDatum& datum) {
    std::vector<GeneralXMatch> matches;
    if (datum.degree() % 2 != 0) return matches;
    int k = datum.degree() / 2;
    if (k < 3) return matches;
    const auto& ps = datum.partitions();
    for (int i = 0; i < 3; ++i) {       // mu1
        for (int j = 0; j < 3; ++j) {   // [2^k]
            if (j == i) continue;
            int l = 3 - i - j;          // [2^(k-x), 2x]
            if (!(ps[j].size() == k && ps[j].is_rectangle(2))) continue;
            int x;
            const auto& m3 = ps[l].parts();
            if (ps[l].is_rectangle(2)) {
                if (ps[l].size() != k) continue;
                x = 1;
            } else {
                if (m3.front() % 2 != 0 || m3.front() < 4) continue;
                x = m3.front() / 2;
                if (static_cast<int>(m3.size()) != k - x + 1) continue;
                bool rest_twos = std::all_of(m3.begin() + 1, m3.end(), [](int p) { return p == 2; });
                if (!rest_twos) continue;
            }
            if (ps[i].size() != x + 1) continue;
            bool dup = std::any_of(matches.begin(), matches.end(), [&](const GeneralXMatch& m) {
                return m.mu1 == ps[i] && m.x == x;
            });
            if (!dup) matches.push_back({ps[i], x, k});
        }
    }
    return matches;
}

} // namespace

std::optional<Verdict> iff_general_x(const CandidateDatum& datum) {
    if (!sphere_three_point(datum)) return std::nullopt;
    auto matches = match_general_x(datum);
    if (matches.empty()) return std::nullopt;
    for (const auto& m : matches) {
        bool splittable = can_split(m.mu1, 2, m.k);
        int g = m.mu1.gcd_of_parts();
        bool gcd_ok = m.k >= m.x * g;
        if (!(splittable && gcd_ok)) continue;
        // Boccara gives g with datum {split1, split2, [x,1^(k-x)]}; f = g^2.
        auto split = find_split(m.mu1, 2, m.k);
        std::vector<int> ypart_parts(m.k - m.x, 1);
        ypart_parts.push_back(m.x);
        Partition y(std::move(ypart_parts));
        std::vector<Partition> base;
        for (const auto& grp : split->groups)
            if (grp.nontrivial()) base.push_back(grp);
        if (y.nontrivial()) base.push_back(y);
        auto leaf = std::make_shared<TraceNode>();
        leaf->kind = TraceNode::Kind::Axiom;
        leaf->axiom = "boccara";
        leaf->datum = CandidateDatum::validate(m.k, base);
        auto root = std::make_shared<TraceNode>();
        root->kind = TraceNode::Kind::RootsLift;
        root->datum = datum;
        root->param = 2;
        root->splits = split->groups;
        root->xpart = ones(m.k);
        root->ypart = y;
        root->child = leaf;
        return realizable("iff_general_x", Certificate{TracePtr(root)});
    }
    const auto& m = matches.front();
    if (!can_split(m.mu1, 2, m.k))
        return exceptional("iff_general_x",
                           Obstruction{"no_split", m.mu1.to_string() + " cannot be split into 2 partitions of " +
                                                       std::to_string(m.k)});
    return exceptional("iff_general_x",
                       Obstruction{"gcd_bound", "k/GCD" + m.mu1.to_string() + " = " +
                                                    std::to_string(m.k) + "/" +
                                                    std::to_string(m.mu1.gcd_of_parts()) + " < x = " +
                                                    std::to_string(m.x)});
}

namespace {

int need(const std::map<std::string, int>& params, const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) throw Error(Errc::BadParams, "missing family parameter '" + key + "'");
    return it->second;
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw Error(Errc::BadParams, msg);
}

} // namespace

std::vector<std::string> family_names() { return {"Z1a", "Z1b", "Z2", "Z3", "P1", "P2"}; }

FamilyInstance generate_family(const std::string& name, const std::map<std::string, int>& params) {
    FamilyInstance inst;
    inst.family = name;
    inst.params = params;
    if (name == "Z1a") {
        int k = need(params, "k"), k1 = need(params, "k1"), k2 = need(params, "k2");
        require(k >= 2, "Z1a needs k >= 2");
        require(k1 >= 1 && k2 >= 1 && k1 + k2 == 2 * k, "Z1a needs k1 + k2 = 2k with k1,k2 >= 1");
        require(k1 != k2, "Z1a covers only k1 != k2");
        inst.datum = CandidateDatum::validate(
            2 * k, {Partition({k1, k2}), rectangle(2, k), rectangle(2, k)});
    } else if (name == "Z1b") {
        int k = need(params, "k"), j1 = need(params, "j1"), j2 = need(params, "j2");
        require(k >= 3, "Z1b needs k >= 3");
        require(j1 >= 0 && j2 >= 0 && j1 + j2 == k, "Z1b needs j1 + j2 = k with j1,j2 >= 0");
        require(j1 <= k - 1 && j2 <= k - 1, "Z1b needs 2k-2j > 0");
        require(j1 != j2, "Z1b covers only j1 != j2");
        auto side = [&](int j) {
            std::vector<int> p(j, 2);
            p.push_back(2 * k - 2 * j);
            return Partition(std::move(p));
        };
        inst.datum = CandidateDatum::validate(2 * k, {rectangle(2, k), side(j1), side(j2)});
    } else if (name == "Z2") {
        int k = need(params, "k");
        require(k >= 3, "Z2 needs k >= 3");
        require(k % 2 == 1, "Z2 covers only odd k");
        std::vector<int> mu1(k + 1, 2);
        mu1.push_back(k - 2);
        inst.datum = CandidateDatum::validate(
            3 * k, {Partition(std::move(mu1)), rectangle(3, k), rectangle(3, k)});
    } else if (name == "Z3") {
        int r = need(params, "r"), k = need(params, "k");
        int j1 = need(params, "j1"), j2 = need(params, "j2");
        require(r >= 2 && k >= 2, "Z3 needs r >= 2 and k >= 2");
        require(j1 >= 1 && j2 >= 1 && j1 + j2 == 2 * k, "Z3 needs j1 + j2 = 2k with j1,j2 >= 1");
        require(j1 != j2, "Z3 covers only j1 != j2");
        std::vector<int> mu1{j1, j2};
        mu1.insert(mu1.end(), (r - 2) * k, 1);
        inst.datum = CandidateDatum::validate(
            r * k, {Partition(std::move(mu1)), rectangle(r, k), rectangle(r, k)});
    } else if (name == "P1") {
        int k = need(params, "k"), j1 = need(params, "j1"), j2 = need(params, "j2");
        require(k >= 3 && k % 2 == 1, "P1 needs odd k >= 3");
        require(j1 >= 1 && j2 >= 1 && j1 + j2 == k, "P1 needs j1 + j2 = k with j1,j2 >= 1");
        require((j1 - j2) % 2 != 0, "P1 covers only j1, j2 of different parity");
        std::vector<int> mu1{j1, j2};
        mu1.insert(mu1.end(), k, 2);
        inst.datum = CandidateDatum::validate(
            3 * k, {Partition(std::move(mu1)), rectangle(3, k), rectangle(3, k)});
    } else if (name == "P2") {
        int l = need(params, "l");
        require(l >= 1, "P2 needs l >= 1");
        int k = 2 + 3 * l;
        std::vector<int> mu1(k - 1, 3);
        mu1.insert(mu1.end(), 3, 1);
        inst.datum = CandidateDatum::validate(
            3 * k, {Partition(std::move(mu1)), rectangle(3, k), rectangle(3, k)});
        inst.params["k"] = k;
    } else {
        throw Error(Errc::BadParams, "unknown family '" + name + "'");
    }
    inst.expected = Status::Exceptional;
    return inst;
}

CandidateDatum lift_power(const CandidateDatum& base, int k) {
    if (base.num_branch_points() != 3)
        throw Error(Errc::WrongArity, "power lift needs a 3-partition base datum");
    if (k < 2) throw Error(Errc::BadParams, "power lift needs k >= 2");
    int d = base.degree();
    const auto& ps = base.partitions();
    std::vector<int> mu1 = ps[0].parts();
    mu1.insert(mu1.end(), (k - 1) * d, 1);
    return CandidateDatum::validate(k * d,
                                    {Partition(std::move(mu1)), ps[1].scaled(k), ps[2].scaled(k)});
}

CandidateDatum lift_roots_of_unity(const std::vector<Partition>& splits, const Partition& x,
                                   const Partition& y, int r) {
    int s = static_cast<int>(splits.size());
    if (s < 1) throw Error(Errc::BadParams, "need at least one split partition");
    if (r < 2 || r < s) throw Error(Errc::BadParams, "need r >= 2 and r >= number of splits");
    int k = x.degree();
    if (y.degree() != k)
        throw Error(Errc::DegreeMismatch, "x and y must be partitions of the same k");
    std::vector<int> mu1;
    for (const auto& g : splits) {
        if (g.degree() != k)
            throw Error(Errc::DegreeMismatch, "split " + g.to_string() + " is not a partition of " +
                                                  std::to_string(k));
        mu1.insert(mu1.end(), g.parts().begin(), g.parts().end());
    }
    mu1.insert(mu1.end(), (r - s) * k, 1);
    std::vector<Partition> parts;
    Partition merged(std::move(mu1));
    if (merged.nontrivial()) parts.push_back(std::move(merged));
    parts.push_back(x.scaled(r));
    parts.push_back(y.scaled(r));
    return CandidateDatum::validate(r * k, std::move(parts));
}

namespace {

struct DecideContext {
    const DecideConfig& config;
    std::map<std::string, Verdict> memo; // canonical datum -> settled verdict
};

Verdict decide_impl(const CandidateDatum& datum, DecideContext& ctx) {
    std::string key = std::to_string(datum.target_euler()) + "|" + datum.to_string();
    if (auto it = ctx.memo.find(key); it != ctx.memo.end()) return it->second;

    auto settle = [&](Verdict v) {
        if (v.status == Status::Realizable && v.method != "eks" &&
            !(v.certificate && verify_certificate(*v.certificate, datum)))
            throw std::logic_error("internal: certificate failed verification for " + datum.to_string());
        if (v.status != Status::Unknown) ctx.memo.emplace(key, v);
        return v;
    };

    // (1) Non-positive target Euler characteristic: always realizable.
    if (datum.target_euler() <= 0) {
        Verdict v;
        v.status = Status::Realizable;
        v.method = "eks";
        return settle(std::move(v));
    }

    bool sphere3 = sphere_three_point(datum);
    std::optional<Verdict> deferred_exceptional;

    // (2) Shape-matched iff rules.
    if (sphere3) {
        for (auto* rule : {&iff_two_two, &iff_general_x}) {
            if (auto v = (*rule)(datum)) {
                if (v->status == Status::Realizable) return settle(std::move(*v));
                // Report the power obstruction (step 3) in preference when it
                // covers the same datum; keep the iff verdict as fallback.
                if (!deferred_exceptional) deferred_exceptional = std::move(*v);
            }
        }
    }

    // (3) Power-map obstruction over every shape.
    if (sphere3) {
        if (auto o = power_obstruction(datum))
            return settle(exceptional("power_obstruction", std::move(*o)));
    }
    if (deferred_exceptional) return settle(std::move(*deferred_exceptional));

    // (4) Recursive descent: any realizable induced datum lifts back.
    bool recursion_unknown = false;
    if (sphere3) {
        for (const auto& shape : detect_power_shapes(datum)) {
            bool truncated = false;
            auto splits = all_splits(shape.mu1, shape.r, shape.k, ctx.config.split_limit, &truncated);
            recursion_unknown |= truncated;
            for (const auto& split : splits) {
                Verdict child = decide_impl(induced_datum(shape, split), ctx);
                if (child.status == Status::Unknown) {
                    recursion_unknown = true;
                    continue;
                }
                if (child.status != Status::Realizable) continue;
                auto node = std::make_shared<TraceNode>();
                node->kind = TraceNode::Kind::RootsLift;
                node->datum = datum;
                node->param = shape.r;
                node->splits = split.groups;
                node->xpart = shape.x;
                node->ypart = shape.y;
                node->child = as_trace(*child.certificate, induced_datum(shape, split));
                return settle(realizable("roots_of_unity_lift", Certificate{TracePtr(node)}));
            }
        }
    }

    // (5) Exhaustive oracle within budget.
    if (ctx.config.use_oracle) {
        OracleResult r = decide_by_search(datum, ctx.config.oracle_budget);
        if (r.status == OracleStatus::Realizable) {
            Verdict v = realizable("oracle", Certificate{*r.tuple});
            v.oracle_examined = r.examined;
            return settle(std::move(v));
        }
        if (r.status == OracleStatus::Exceptional) {
            Verdict v = exceptional("oracle_exhaustion",
                                    Obstruction{"oracle_exhaustion",
                                                "search space exhausted after " +
                                                    std::to_string(r.examined) + " candidates"});
            v.oracle_examined = r.examined;
            return settle(std::move(v));
        }
        Verdict v;
        v.status = Status::Unknown;
        v.method = "budget_exhausted";
        v.reason = "oracle budget of " + std::to_string(r.budget) + " candidates exhausted";
        v.oracle_examined = r.examined;
        return v;
    }

    Verdict v;
    v.status = Status::Unknown;
    v.method = "rules_inconclusive";
    v.reason = recursion_unknown ? "recursive descent inconclusive"
                                 : "no rule matched and the oracle is disabled";
    return v;
}

} // namespace

Verdict decide(const CandidateDatum& datum, const DecideConfig& config) {
    DecideContext ctx{config, {}};
    return decide_impl(datum, ctx);
}

} // namespace hurwitz
