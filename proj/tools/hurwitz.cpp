#include <algorithm>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hurwitz/cache.hpp"
#include "hurwitz/criteria.hpp"
#include "hurwitz/datum.hpp"
#include "hurwitz/error.hpp"
#include "hurwitz/json_io.hpp"
#include "hurwitz/ratmap.hpp"

namespace {

using namespace hurwitz;

constexpr int kExitRealizable = 0;
constexpr int kExitExceptional = 10;
constexpr int kExitUnknown = 20;
constexpr int kExitInputError = 2;

struct CommonOpts {
    unsigned long long budget = kDefaultOracleBudget;
    bool no_cache = false;
    std::string cache_path;
    std::string format = "json";
    unsigned long long seed = 0;
    int source_euler = 2;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--budget", opts.budget, "Oracle search budget (candidates examined)");
    cmd->add_flag("--no-cache", opts.no_cache, "Disable the verdict cache");
    cmd->add_option("--cache", opts.cache_path, "Cache file path (env HURWITZ_CACHE)");
    cmd->add_option("--format", opts.format, "Output format: json|table")
        ->check(CLI::IsMember({"json", "table"}));
    cmd->add_option("--seed", opts.seed, "Random seed (accepted for reproducibility)");
}

std::optional<VerdictCache> open_cache(const CommonOpts& opts) {
    if (opts.no_cache) return std::nullopt;
    std::string path = opts.cache_path.empty() ? VerdictCache::default_path() : opts.cache_path;
    return VerdictCache(path);
}

// Cached or fresh verdict as JSON; reconstruction from a cache record is
// byte-identical to a fresh serialization (keys serialize in sorted order).
json decide_cached(const CandidateDatum& datum, const CommonOpts& opts,
                   std::optional<VerdictCache>& cache) {
    std::string key = datum.to_string();
    if (cache) {
        if (auto rec = cache->lookup(key)) {
            bool reusable = rec->status != "unknown" || rec->budget >= opts.budget;
            if (reusable) {
                json j;
                j["datum"] = rec->key;
                j["status"] = rec->status;
                j["method"] = rec->method;
                j["evidence"] = rec->evidence;
                return j;
            }
        }
    }
    DecideConfig config;
    config.oracle_budget = opts.budget;
    Verdict verdict = decide(datum, config);
    json j = verdict_json(datum, verdict);
    if (cache) {
        CacheRecord rec;
        rec.key = key;
        rec.status = j["status"].get<std::string>();
        rec.method = j["method"].get<std::string>();
        rec.evidence = j["evidence"];
        rec.budget = opts.budget;
        cache->store(std::move(rec));
    }
    return j;
}

int status_exit_code(const std::string& status) {
    if (status == "realizable") return kExitRealizable;
    if (status == "exceptional") return kExitExceptional;
    return kExitUnknown;
}

void print_verdict(const json& j, const std::string& format) {
    if (format == "table") {
        std::cout << "datum   " << j["datum"].get<std::string>() << "\n"
                  << "status  " << j["status"].get<std::string>() << "\n"
                  << "method  " << j["method"].get<std::string>() << "\n";
    } else {
        std::cout << j.dump() << "\n";
    }
}

// --- small parsers -------------------------------------------------------

Partition parse_partition_text(const std::string& text) {
    std::vector<int> parts;
    std::string num;
    auto flush = [&] {
        if (num.empty()) return;
        parts.push_back(std::stoi(num));
        num.clear();
    };
    for (char c : text) {
        if (std::isdigit(static_cast<unsigned char>(c)))
            num.push_back(c);
        else if (c == ',' || c == '[' || c == ']' || std::isspace(static_cast<unsigned char>(c)))
            flush();
        else
            throw Error(Errc::ParseError, std::string("unexpected character '") + c + "' in partition");
    }
    flush();
    if (parts.empty()) throw Error(Errc::ParseError, "empty partition '" + text + "'");
    return Partition(std::move(parts));
}

std::vector<Partition> parse_partition_list(const std::string& text) {
    std::vector<Partition> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(';', start);
        std::string piece = text.substr(start, end == std::string::npos ? end : end - start);
        if (piece.find_first_not_of(" \t") != std::string::npos) out.push_back(parse_partition_text(piece));
        if (end == std::string::npos) break;
        start = end + 1;
    }
    if (out.empty()) throw Error(Errc::ParseError, "empty partition list '" + text + "'");
    return out;
}

// "a..b" or "a"
std::pair<int, int> parse_range(const std::string& text) {
    std::size_t dots = text.find("..");
    if (dots == std::string::npos) {
        int v = std::stoi(text);
        return {v, v};
    }
    int lo = std::stoi(text.substr(0, dots));
    int hi = std::stoi(text.substr(dots + 2));
    if (hi < lo) throw Error(Errc::BadParams, "empty range '" + text + "'");
    return {lo, hi};
}

// --- subcommands ---------------------------------------------------------

int run_check(const std::string& datum_text, const CommonOpts& opts) {
    CandidateDatum datum = parse_datum(datum_text);
    if (opts.source_euler != datum.source_euler())
        throw Error(Errc::EulerObstruction,
                    "datum has source Euler characteristic " + std::to_string(datum.source_euler()) +
                        ", expected " + std::to_string(opts.source_euler));
    auto cache = open_cache(opts);
    json j = decide_cached(datum, opts, cache);
    print_verdict(j, opts.format);
    return status_exit_code(j["status"].get<std::string>());
}

int run_enumerate(int d, int n, bool do_decide, const CommonOpts& opts) {
    if (d < 2) throw Error(Errc::BadParams, "degree must be >= 2");
    auto cache = open_cache(opts);
    enumerate_candidates(d, n, opts.source_euler, [&](const CandidateDatum& datum) {
        if (do_decide) {
            json j = decide_cached(datum, opts, cache);
            if (opts.format == "table")
                std::cout << datum.to_string() << "\t" << j["status"].get<std::string>() << "\t"
                          << j["method"].get<std::string>() << "\n";
            else
                std::cout << j.dump() << "\n";
        } else {
            if (opts.format == "table")
                std::cout << datum.to_string() << "\n";
            else
                std::cout << json{{"datum", datum.to_string()}}.dump() << "\n";
        }
        return true;
    });
    return 0;
}

int run_analyze(const std::string& map_text, int power_exp, const CommonOpts& opts) {
    RationalMap f = parse_map(map_text);
    if (power_exp > 1) f = power(f, power_exp);
    BranchingReport report = branching_report(f);
    if (opts.format == "table") {
        for (const auto& e : report.entries)
            std::cout << sphere_point_string(e.value) << "\t" << e.partition.to_string() << "\t"
                      << e.residual << "\n";
        std::cout << "degree " << report.degree << ", total branching " << report.total_branching
                  << (report.rh_consistent ? "" : ", INCONSISTENT") << "\n";
    } else {
        std::cout << branching_report_json(report).dump() << "\n";
    }
    return report.rh_consistent ? 0 : 1;
}

int run_families(const std::string& name, const std::map<std::string, std::string>& given,
                 bool do_decide, const CommonOpts& opts) {
    static const std::map<std::string, std::vector<std::string>> kParams = {
        {"Z1a", {"k", "k1", "k2"}}, {"Z1b", {"k", "j1", "j2"}}, {"Z2", {"k"}},
        {"Z3", {"r", "k", "j1", "j2"}}, {"P1", {"k", "j1", "j2"}}, {"P2", {"l"}},
    };
    auto it = kParams.find(name);
    if (it == kParams.end()) throw Error(Errc::BadParams, "unknown family '" + name + "'");
    const auto& names = it->second;

    // Missing parameters sweep 0..B with B derived from the given ranges;
    // generate_family rejects the invalid combinations.
    int max_given = 3;
    std::vector<std::pair<int, int>> ranges;
    bool any_given = false;
    for (const auto& pname : names) {
        auto g = given.find(pname);
        if (g != given.end()) {
            ranges.push_back(parse_range(g->second));
            max_given = std::max(max_given, ranges.back().second);
            any_given = true;
        } else {
            ranges.emplace_back(0, -1); // filled in below
        }
    }
    if (!any_given) throw Error(Errc::BadParams, "at least one parameter range is required");
    for (auto& r : ranges)
        if (r.second < r.first) r = {0, 2 * max_given + 2};

    auto cache = open_cache(opts);
    std::set<std::string> seen;
    std::string first_error;
    std::vector<int> vals(names.size());
    int emitted = 0;
    std::function<void(std::size_t)> sweep = [&](std::size_t i) {
        if (i == names.size()) {
            std::map<std::string, int> params;
            for (std::size_t p = 0; p < names.size(); ++p) params[names[p]] = vals[p];
            FamilyInstance inst;
            try {
                inst = generate_family(name, params);
            } catch (const Error& e) {
                if (first_error.empty()) first_error = e.what();
                return;
            }
            if (!seen.insert(inst.datum.to_string()).second) return;
            ++emitted;
            json j;
            j["family"] = inst.family;
            j["params"] = inst.params;
            j["datum"] = inst.datum.to_string();
            j["expected"] = status_name(inst.expected);
            if (do_decide) j["verdict"] = decide_cached(inst.datum, opts, cache);
            if (opts.format == "table") {
                std::cout << inst.family << "\t" << inst.datum.to_string() << "\t"
                          << status_name(inst.expected);
                if (do_decide) std::cout << "\t" << j["verdict"]["status"].get<std::string>();
                std::cout << "\n";
            } else {
                std::cout << j.dump() << "\n";
            }
            return;
        }
        for (int v = ranges[i].first; v <= ranges[i].second; ++v) {
            vals[i] = v;
            sweep(i + 1);
        }
    };
    sweep(0);
    if (emitted == 0) {
        std::cerr << (first_error.empty() ? "no instances in range" : first_error) << "\n";
        return kExitInputError;
    }
    return 0;
}

// The power lift is pure formula application; the base partitions need not
// pass candidate validation (the padded datum is not always a candidate).
std::string lenient_power_lift(const std::string& base_text, int k) {
    std::size_t colon = base_text.find(':');
    if (colon == std::string::npos) throw Error(Errc::ParseError, "expected 'd: partitions'");
    int d = std::stoi(base_text.substr(0, colon));
    std::vector<Partition> parts = parse_partition_list(base_text.substr(colon + 1));
    for (const auto& p : parts)
        if (p.degree() != d)
            throw Error(Errc::DegreeMismatch, p.to_string() + " is not a partition of " +
                                                  std::to_string(d));
    std::sort(parts.begin(), parts.end(), Partition::canonical_less);
    std::vector<int> mu1 = parts[0].parts();
    mu1.insert(mu1.end(), (k - 1) * d, 1);
    std::vector<Partition> lifted{Partition(std::move(mu1))};
    for (std::size_t i = 1; i < parts.size(); ++i) lifted.push_back(parts[i].scaled(k));
    std::sort(lifted.begin(), lifted.end(), Partition::canonical_less);
    std::string out = std::to_string(k * d) + ":";
    for (std::size_t i = 0; i < lifted.size(); ++i) {
        if (i) out += ";";
        out += lifted[i].to_string();
    }
    return out;
}

int run_lift(bool roots_mode, bool power_mode, int r, int k, const std::string& splits_text,
             const std::string& x_text, const std::string& y_text, const std::string& base_text,
             const CommonOpts& opts) {
    if (roots_mode == power_mode)
        throw Error(Errc::BadParams, "choose exactly one of --roots-of-unity / --power");
    std::string lifted = [&] {
        if (roots_mode) {
            if (r < 2) throw Error(Errc::BadParams, "--r must be >= 2");
            if (splits_text.empty() || x_text.empty() || y_text.empty())
                throw Error(Errc::BadParams, "--splits, --x and --y are required");
            return lift_roots_of_unity(parse_partition_list(splits_text),
                                       parse_partition_text(x_text), parse_partition_text(y_text), r)
                .to_string();
        }
        if (k < 2) throw Error(Errc::BadParams, "--k must be >= 2");
        if (base_text.empty()) throw Error(Errc::BadParams, "a base datum is required");
        return lenient_power_lift(base_text, k);
    }();
    if (opts.format == "table") {
        std::cout << lifted << "\n";
    } else {
        json j;
        j["datum"] = lifted;
        if (roots_mode) {
            j["lift"] = "roots_of_unity";
            j["r"] = r;
        } else {
            j["lift"] = "power";
            j["k"] = k;
        }
        std::cout << j.dump() << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decision engine for branched covers of the sphere"};
    app.require_subcommand(1);

    CommonOpts check_opts, enum_opts, analyze_opts, fam_opts, lift_opts;

    std::string check_datum;
    auto* check = app.add_subcommand("check", "Decide one candidate branching datum");
    check->add_option("datum", check_datum, "e.g. \"4:[3,1];[2,2];[2,2]\"")->required();
    check->add_option("--source-euler", check_opts.source_euler, "Required source Euler characteristic");
    add_common(check, check_opts);

    int enum_d = 0, enum_n = 3;
    bool enum_decide = false;
    auto* enumerate = app.add_subcommand("enumerate", "List candidate data of a given degree");
    enumerate->add_option("-d,--degree", enum_d, "Degree")->required();
    enumerate->add_option("-n,--branch-points", enum_n, "Number of branch points");
    enumerate->add_option("--source-euler", enum_opts.source_euler, "Source Euler characteristic");
    enumerate->add_flag("--decide", enum_decide, "Run the verdict pipeline per candidate");
    add_common(enumerate, enum_opts);

    std::string analyze_map;
    int analyze_power = 1;
    auto* analyze = app.add_subcommand("analyze", "Branching report of an explicit rational map");
    analyze->add_option("map", analyze_map, "e.g. \"num:[-1,0,0,1]; den:[1,0,0,1]\"")->required();
    analyze->add_option("--power", analyze_power, "Raise the map to this power first");
    add_common(analyze, analyze_opts);

    std::string fam_name;
    std::map<std::string, std::string> fam_given;
    bool fam_decide = false;
    auto* families = app.add_subcommand("families", "Instances of the exceptional families");
    families->add_option("name", fam_name, "Z1a|Z1b|Z2|Z3|P1|P2")->required();
    for (const char* p : {"k", "k1", "k2", "j1", "j2", "r", "l"})
        families->add_option(std::string("--") + p, fam_given[p], "Value or range a..b");
    families->add_flag("--decide", fam_decide, "Run the verdict pipeline per instance");
    add_common(families, fam_opts);

    bool lift_roots = false, lift_pow = false;
    int lift_r = 0, lift_k = 0;
    std::string lift_splits, lift_x, lift_y, lift_base;
    auto* lift = app.add_subcommand("lift", "Lift a base datum or split data to degree r*k");
    lift->add_flag("--roots-of-unity", lift_roots, "f = g^r with branch values at roots of unity");
    lift->add_flag("--power", lift_pow, "f = (phi o g)^k");
    lift->add_option("--r", lift_r, "Exponent for --roots-of-unity");
    lift->add_option("--k", lift_k, "Exponent for --power");
    lift->add_option("--splits", lift_splits, "Partitions of k, e.g. \"[3];[2,1];[2,1]\"");
    lift->add_option("--x", lift_x, "Partition of k");
    lift->add_option("--y", lift_y, "Partition of k");
    lift->add_option("base", lift_base, "Base datum for --power");
    add_common(lift, lift_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitInputError;
    }

    try {
        if (check->parsed()) return run_check(check_datum, check_opts);
        if (enumerate->parsed()) return run_enumerate(enum_d, enum_n, enum_decide, enum_opts);
        if (analyze->parsed()) return run_analyze(analyze_map, analyze_power, analyze_opts);
        if (families->parsed()) {
            std::map<std::string, std::string> given;
            for (const auto& [key, value] : fam_given)
                if (!value.empty()) given[key] = value;
            return run_families(fam_name, given, fam_decide, fam_opts);
        }
        if (lift->parsed())
            return run_lift(lift_roots, lift_pow, lift_r, lift_k, lift_splits, lift_x, lift_y,
                            lift_base, lift_opts);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
