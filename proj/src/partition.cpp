#include "hurwitz/partition.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "hurwitz/error.hpp"

namespace hurwitz {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int p : parts_) {
        if (p < 1)
            throw Error(Errc::BadParams, "partition parts must be positive, got " + std::to_string(p));
    }
    std::sort(parts_.begin(), parts_.end(), std::greater<int>());
    degree_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

int Partition::count_odd_parts() const {
    return static_cast<int>(std::count_if(parts_.begin(), parts_.end(), [](int p) { return p % 2 != 0; }));
}

int Partition::gcd_of_parts() const {
    int g = 0;
    for (int p : parts_) g = std::gcd(g, p);
    return g;
}

bool Partition::all_divisible_by(int r) const {
    return std::all_of(parts_.begin(), parts_.end(), [r](int p) { return p % r == 0; });
}

Partition Partition::divided_by(int r) const {
    std::vector<int> q;
    q.reserve(parts_.size());
    for (int p : parts_) {
        if (p % r != 0)
            throw Error(Errc::BadParams, "part " + std::to_string(p) + " not divisible by " + std::to_string(r));
        q.push_back(p / r);
    }
    return Partition(std::move(q));
}

Partition Partition::scaled(int r) const {
    std::vector<int> q;
    q.reserve(parts_.size());
    for (int p : parts_) q.push_back(p * r);
    return Partition(std::move(q));
}

bool Partition::is_rectangle(int v) const {
    return std::all_of(parts_.begin(), parts_.end(), [v](int p) { return p == v; });
}

std::string Partition::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) os << ',';
        os << parts_[i];
    }
    os << ']';
    return os.str();
}

std::vector<Partition> all_partitions(int d, bool nontrivial_only) {
    std::vector<Partition> out;
    std::vector<int> cur;
    // Descending-first recursion yields canonical (lex-larger-first) order.
    std::function<void(int, int)> rec = [&](int remaining, int max_part) {
        if (remaining == 0) {
            if (!nontrivial_only || (!cur.empty() && cur.front() >= 2))
                out.emplace_back(cur);
            return;
        }
        for (int p = std::min(remaining, max_part); p >= 1; --p) {
            cur.push_back(p);
            rec(remaining - p, p);
            cur.pop_back();
        }
    };
    if (d >= 1) rec(d, d);
    return out;
}

} // namespace hurwitz
