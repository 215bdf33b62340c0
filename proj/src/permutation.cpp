#include "hurwitz/permutation.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "hurwitz/error.hpp"

namespace hurwitz {

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)) {
    std::vector<char> seen(img_.size(), 0);
    for (int v : img_) {
        if (v < 0 || v >= static_cast<int>(img_.size()) || seen[v])
            throw Error(Errc::BadParams, "images do not form a bijection");
        seen[v] = 1;
    }
}

Permutation Permutation::identity(int d) {
    std::vector<int> img(d);
    std::iota(img.begin(), img.end(), 0);
    return Permutation(std::move(img));
}

Permutation Permutation::canonical_of_type(const Partition& mu) {
    int d = mu.degree();
    std::vector<int> img(d);
    int base = 0;
    for (int len : mu.parts()) {
        for (int i = 0; i < len; ++i) img[base + i] = base + (i + 1) % len;
        base += len;
    }
    return Permutation(std::move(img));
}

bool Permutation::is_identity() const {
    for (int i = 0; i < degree(); ++i)
        if (img_[i] != i) return false;
    return true;
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(img_.size());
    for (int i = 0; i < degree(); ++i) inv[img_[i]] = i;
    return Permutation(std::move(inv));
}

Permutation Permutation::then(const Permutation& other) const {
    std::vector<int> out(img_.size());
    for (int i = 0; i < degree(); ++i) out[i] = other.img_[img_[i]];
    return Permutation(std::move(out));
}

Partition Permutation::cycle_type() const {
    std::vector<char> seen(img_.size(), 0);
    std::vector<int> lens;
    for (int i = 0; i < degree(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (int j = i; !seen[j]; j = img_[j]) {
            seen[j] = 1;
            ++len;
        }
        lens.push_back(len);
    }
    return Partition(std::move(lens));
}

std::string Permutation::cycle_string() const {
    std::vector<char> seen(img_.size(), 0);
    std::ostringstream os;
    bool any = false;
    for (int i = 0; i < degree(); ++i) {
        if (seen[i] || img_[i] == i) {
            seen[i] = 1;
            continue;
        }
        any = true;
        os << '(';
        bool first = true;
        for (int j = i; !seen[j]; j = img_[j]) {
            seen[j] = 1;
            if (!first) os << ' ';
            os << j + 1;
            first = false;
        }
        os << ')';
    }
    return any ? os.str() : "()";
}

unsigned long long conjugacy_class_size(const Partition& mu) {
    int d = mu.degree();
    unsigned long long size = 1;
    for (int i = 2; i <= d; ++i) size *= static_cast<unsigned long long>(i);
    std::map<int, int> mult;
    for (int p : mu.parts()) ++mult[p];
    for (auto [len, m] : mult) {
        for (int i = 0; i < m; ++i) size /= static_cast<unsigned long long>(len);
        for (int i = 2; i <= m; ++i) size /= static_cast<unsigned long long>(i);
    }
    return size;
}

namespace {

// Enumerates each permutation of the given cycle type exactly once: the cycle
// containing the smallest unplaced element is built next, choosing its length
// among the distinct remaining lengths and its remaining members as an ordered
// selection of unplaced elements. Heads are cycle minima, so decompositions
// are canonical and never repeat.
class ClassEnumerator {
public:
    ClassEnumerator(const Partition& mu, const std::function<bool(const Permutation&)>& fn)
        : d_(mu.degree()), fn_(fn), img_(d_), used_(d_, 0) {
        std::map<int, int> mult;
        for (int p : mu.parts()) ++mult[p];
        lens_.assign(mult.begin(), mult.end());
    }

    bool run() {
        rec(0);
        return go_;
    }

private:
    void rec(int placed) {
        if (!go_) return;
        if (placed == d_) {
            go_ = fn_(Permutation(img_));
            return;
        }
        int head = 0;
        while (used_[head]) ++head;
        used_[head] = 1;
        for (auto& [len, cnt] : lens_) {
            if (cnt == 0) continue;
            --cnt;
            extend(head, head, len - 1, placed + 1);
            ++cnt;
            if (!go_) break;
        }
        used_[head] = 0;
    }

    void extend(int head, int prev, int need, int placed) {
        if (!go_) return;
        if (need == 0) {
            img_[prev] = head;
            rec(placed);
            return;
        }
        for (int e = head + 1; e < d_ && go_; ++e) {
            if (used_[e]) continue;
            used_[e] = 1;
            img_[prev] = e;
            extend(head, e, need - 1, placed + 1);
            used_[e] = 0;
        }
    }

    int d_;
    const std::function<bool(const Permutation&)>& fn_;
    std::vector<int> img_;
    std::vector<char> used_;
    std::vector<std::pair<int, int>> lens_;
    bool go_ = true;
};

} // namespace

bool for_each_in_class(const Partition& mu, const std::function<bool(const Permutation&)>& fn) {
    return ClassEnumerator(mu, fn).run();
}

std::vector<Permutation> enumerate_class(int d, const Partition& mu) {
    if (mu.degree() != d)
        throw Error(Errc::DegreeMismatch, "cycle type " + mu.to_string() + " is not a partition of " +
                                              std::to_string(d) + "; pad with fixed points");
    std::vector<Permutation> out;
    for_each_in_class(mu, [&](const Permutation& p) {
        out.push_back(p);
        return true;
    });
    return out;
}

} // namespace hurwitz
