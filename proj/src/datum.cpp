#include "hurwitz/datum.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <tuple>

#include "hurwitz/error.hpp"

namespace hurwitz {

CandidateDatum CandidateDatum::validate(int degree, std::vector<Partition> partitions, int target_euler) {
    if (degree < 2)
        throw Error(Errc::BadParams, "degree must be >= 2, got " + std::to_string(degree));
    for (const auto& p : partitions) {
        if (p.degree() != degree)
            throw Error(Errc::DegreeMismatch,
                        "partition " + p.to_string() + " sums to " + std::to_string(p.degree()) +
                            ", expected " + std::to_string(degree));
        if (!p.nontrivial())
            throw Error(Errc::TrivialPartition, "partition " + p.to_string() + " has no part >= 2");
    }
    std::sort(partitions.begin(), partitions.end(), Partition::canonical_less);
    CandidateDatum d;
    d.degree_ = degree;
    d.target_euler_ = target_euler;
    d.partitions_ = std::move(partitions);
    int chi = d.source_euler();
    if (chi % 2 != 0 || chi > 2)
        throw Error(Errc::EulerObstruction,
                    "source Euler characteristic " + std::to_string(chi) +
                        " is not an even integer <= 2 (nu = " + std::to_string(d.total_branching()) + ")");
    return d;
}

int CandidateDatum::total_branching() const {
    int nu = 0;
    for (const auto& p : partitions_) nu += p.branching();
    return nu;
}

std::string CandidateDatum::to_string() const {
    std::ostringstream os;
    os << degree_ << ':';
    for (std::size_t i = 0; i < partitions_.size(); ++i) {
        if (i) os << ';';
        os << partitions_[i].to_string();
    }
    return os.str();
}

std::vector<PowerShape> detect_power_shapes(const CandidateDatum& datum) {
    const auto& ps = datum.partitions();
    if (ps.size() != 3)
        throw Error(Errc::WrongArity,
                    "power shapes need exactly 3 partitions, got " + std::to_string(ps.size()));
    std::vector<PowerShape> shapes;
    std::set<std::tuple<int, std::vector<int>, std::vector<int>, std::vector<int>>> seen;
    int d = datum.degree();
    for (int r = 2; r * 2 <= d; ++r) {
        if (d % r != 0) continue;
        for (int i = 0; i < 3; ++i) { // ps[i] plays mu1
            int j = (i == 0) ? 1 : 0;
            int l = (i == 2) ? 1 : 2;
            if (!ps[j].all_divisible_by(r) || !ps[l].all_divisible_by(r)) continue;
            PowerShape s;
            s.r = r;
            s.k = d / r;
            s.mu1 = ps[i];
            s.x = ps[j].divided_by(r);
            s.y = ps[l].divided_by(r);
            s.mu1_index = i;
            s.mu2_index = j;
            s.mu3_index = l;
            auto xs = s.x.parts(), ys = s.y.parts();
            if (ys < xs) std::swap(xs, ys); // x/y swap symmetry
            if (seen.emplace(r, s.mu1.parts(), xs, ys).second)
                shapes.push_back(std::move(s));
        }
    }
    return shapes;
}

void enumerate_candidates(int d, int n, int source_euler,
                          const std::function<bool(const CandidateDatum&)>& fn) {
    if (d < 2 || n < 1) return;
    int target_nu = 2 * d - source_euler;
    if (source_euler > 2 || source_euler % 2 != 0) return;
    if (target_nu < n) return; // each nontrivial partition contributes >= 1

    auto parts = all_partitions(d, /*nontrivial_only=*/true);
    // Choose a non-decreasing index sequence into the canonically ordered
    // partition list; the resulting datum is already canonical.
    std::vector<int> chosen;
    bool stop = false;
    std::function<void(int, int, int)> rec = [&](int from, int slots, int nu_left) {
        if (stop) return;
        if (slots == 0) {
            if (nu_left != 0) return;
            std::vector<Partition> sel;
            sel.reserve(chosen.size());
            for (int idx : chosen) sel.push_back(parts[idx]);
            if (!fn(CandidateDatum::validate(d, std::move(sel))))
                stop = true;
            return;
        }
        for (int i = from; i < static_cast<int>(parts.size()); ++i) {
            int nu = parts[i].branching();
            // Remaining slots each contribute between 1 and d-1.
            if (nu > nu_left - (slots - 1)) continue;
            if (nu_left - nu > (slots - 1) * (d - 1)) continue;
            chosen.push_back(i);
            rec(i, slots - 1, nu_left - nu);
            chosen.pop_back();
            if (stop) return;
        }
    };
    rec(0, n, target_nu);
}

std::vector<CandidateDatum> enumerate_candidates(int d, int n, int source_euler) {
    std::vector<CandidateDatum> out;
    enumerate_candidates(d, n, source_euler, [&](const CandidateDatum& c) {
        out.push_back(c);
        return true;
    });
    return out;
}

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(Errc::ParseError, msg + " at position " + std::to_string(i));
    }
    int integer() {
        skip_ws();
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) fail("expected integer");
        return std::stoi(s.substr(start, i - start));
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
};

} // namespace

CandidateDatum parse_datum(const std::string& text) {
    Cursor c{text};
    int d = c.integer();
    if (!c.eat(':')) c.fail("expected ':' after degree");
    std::vector<Partition> parts;
    do {
        bool bracket = c.eat('[');
        std::vector<int> vals;
        vals.push_back(c.integer());
        while (c.eat(',')) vals.push_back(c.integer());
        if (bracket && !c.eat(']')) c.fail("expected ']'");
        parts.emplace_back(std::move(vals));
    } while (c.eat(';'));
    if (!c.done()) c.fail("unexpected trailing input");
    return CandidateDatum::validate(d, std::move(parts));
}

} // namespace hurwitz
