#include "hurwitz/ratmap.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "hurwitz/error.hpp"

namespace hurwitz {

namespace {

constexpr double kTrimRel = 1e-12;        // relative coefficient trim threshold
constexpr double kValueClusterTol = 1e-6; // chordal tolerance for critical values
// Root clusters of multiplicity m scatter like eps^(1/m); the ladder is
// escalated only when the base tolerance breaks Riemann-Hurwitz consistency.
constexpr double kRootClusterLadder[] = {1e-4, 1e-3, 4e-3};

std::vector<cplx> trimmed(std::vector<cplx> c) {
    double mx = 0;
    for (const auto& v : c) mx = std::max(mx, std::abs(v));
    while (!c.empty() && std::abs(c.back()) <= kTrimRel * mx) c.pop_back();
    return c;
}

} // namespace

Poly::Poly(std::vector<cplx> coeffs) : c_(trimmed(std::move(coeffs))) {}

Poly Poly::from_roots(const std::vector<std::pair<cplx, int>>& roots_with_mult) {
    Poly p = Poly::constant(1.0);
    for (const auto& [root, mult] : roots_with_mult)
        for (int i = 0; i < mult; ++i) p = p * Poly({-root, 1.0});
    return p;
}

double Poly::max_coeff_mag() const {
    double mx = 0;
    for (const auto& v : c_) mx = std::max(mx, std::abs(v));
    return mx;
}

cplx Poly::eval(cplx z) const {
    cplx acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<cplx> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<double>(i);
    return Poly(std::move(d));
}

Poly Poly::pow(int n) const {
    Poly acc = Poly::constant(1.0);
    for (int i = 0; i < n; ++i) acc = acc * *this;
    return acc;
}

std::vector<cplx> Poly::taylor_at(cplx z0) const {
    // Repeated synthetic division by (z - z0); each remainder is the next
    // Taylor coefficient and the quotient stays in place.
    std::vector<cplx> work = c_;
    std::vector<cplx> out;
    out.reserve(c_.size());
    std::size_t n = work.size();
    for (std::size_t k = 0; k < c_.size(); ++k) {
        cplx carry = 0;
        for (std::size_t i = n; i-- > 0;) {
            cplx cur = work[i] + carry * z0;
            work[i] = carry;
            carry = cur;
        }
        out.push_back(carry);
        if (n > 0) --n;
    }
    return out;
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<cplx> r(c_.size() + o.c_.size() - 1, cplx{});
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(r));
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<cplx> r(std::max(c_.size(), o.c_.size()), cplx{});
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + o * cplx(-1.0); }

Poly Poly::operator*(cplx s) const {
    std::vector<cplx> r = c_;
    for (auto& v : r) v *= s;
    return Poly(std::move(r));
}

double root_residual(const Poly& p, cplx z) {
    double scale = 0, zp = 1, az = std::abs(z), mx = 0;
    for (const auto& c : p.coeffs()) {
        scale += std::abs(c) * zp;
        zp *= az;
        mx = std::max(mx, std::abs(c));
    }
    // Absolute floor: a coefficient that is exactly zero admits no relative
    // perturbation, which would report backward error ~1 for perfect roots.
    scale += std::numeric_limits<double>::epsilon() * mx;
    if (scale == 0) return 0;
    return std::abs(p.eval(z)) / scale;
}

std::vector<cplx> poly_roots(const Poly& p) {
    int n = p.degree();
    if (n < 0) throw Error(Errc::RootFindingFailure, "zero polynomial has no well-defined roots");
    if (n == 0) return {};
    const auto& c = p.coeffs();
    cplx lead = c.back();
    if (n == 1) return {-c[0] / lead};

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) m(i, n - 1) = -c[i] / lead;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw Error(Errc::RootFindingFailure, "companion eigenvalue iteration did not converge");

    std::vector<cplx> roots(n);
    Poly dp = p.derivative();
    for (int i = 0; i < n; ++i) {
        cplx z = solver.eigenvalues()(i);
        // Guarded Newton polish: near multiple roots the derivative sits in
        // coefficient noise, so steps are kept only when they reduce |p|.
        double best = std::abs(p.eval(z));
        for (int it = 0; it < 24; ++it) {
            cplx dz = dp.eval(z);
            if (std::abs(dz) < 1e-300) break;
            cplx step = p.eval(z) / dz;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
            cplx cand = z - step;
            double val = std::abs(p.eval(cand));
            if (val >= best) break;
            z = cand;
            best = val;
            if (std::abs(step) < 1e-16 * (1 + std::abs(z))) break;
        }
        roots[i] = z;
    }
    return roots;
}

double chordal(const SpherePoint& a, const SpherePoint& b) {
    if (a.at_inf && b.at_inf) return 0.0;
    if (a.at_inf) return 2.0 / std::sqrt(1.0 + std::norm(b.z));
    if (b.at_inf) return 2.0 / std::sqrt(1.0 + std::norm(a.z));
    return 2.0 * std::abs(a.z - b.z) / std::sqrt((1.0 + std::norm(a.z)) * (1.0 + std::norm(b.z)));
}

std::string sphere_point_string(const SpherePoint& p) {
    if (p.at_inf) return "inf";
    std::ostringstream os;
    os.precision(12);
    os << p.z.real();
    if (p.z.imag() >= 0)
        os << '+' << p.z.imag() << 'i';
    else
        os << '-' << -p.z.imag() << 'i';
    return os.str();
}

SpherePoint RationalMap::eval(cplx z) const {
    cplx n = num.eval(z), d = den.eval(z);
    if (std::abs(d) <= 1e-14 * (1.0 + std::abs(n)))
        return SpherePoint::infinity();
    return SpherePoint::finite(n / d);
}

SpherePoint RationalMap::value_at_infinity() const {
    if (num.degree() > den.degree()) return SpherePoint::infinity();
    if (num.degree() < den.degree()) return SpherePoint::finite(0.0);
    return SpherePoint::finite(num.coeffs().back() / den.coeffs().back());
}

RationalMap RationalMap::from_zeros_poles(std::vector<std::pair<cplx, int>> zeros,
                                          std::vector<std::pair<cplx, int>> poles) {
    std::vector<cplx> all;
    for (const auto& [z, m] : zeros) all.push_back(z);
    for (const auto& [z, m] : poles) all.push_back(z);
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (chordal(SpherePoint::finite(all[i]), SpherePoint::finite(all[j])) < 1e-9)
                throw Error(Errc::DuplicateLocation, "zero/pole locations must be pairwise distinct");
    for (const auto& [z, m] : zeros)
        if (m < 1) throw Error(Errc::BadParams, "multiplicities must be positive");
    for (const auto& [z, m] : poles)
        if (m < 1) throw Error(Errc::BadParams, "multiplicities must be positive");
    RationalMap f;
    f.num = Poly::from_roots(zeros);
    f.den = Poly::from_roots(poles);
    f.zeros = std::move(zeros);
    f.poles = std::move(poles);
    f.factored = true;
    return f;
}

RationalMap RationalMap::from_coeffs(Poly num, Poly den) {
    if (num.is_zero() || den.is_zero())
        throw Error(Errc::BadParams, "numerator and denominator must be nonzero");
    if (den.degree() >= 1) {
        for (cplx r : poly_roots(den))
            if (root_residual(num, r) < 1e-10)
                throw Error(Errc::DuplicateLocation,
                            "numerator and denominator share a root near " +
                                sphere_point_string(SpherePoint::finite(r)));
    }
    RationalMap f;
    f.num = std::move(num);
    f.den = std::move(den);
    return f;
}

RationalMap power(const RationalMap& g, int r) {
    if (r < 1) throw Error(Errc::BadParams, "power exponent must be >= 1");
    RationalMap f;
    f.num = g.num.pow(r);
    f.den = g.den.pow(r);
    if (g.factored) {
        f.factored = true;
        f.zeros = g.zeros;
        f.poles = g.poles;
        for (auto& [z, m] : f.zeros) m *= r;
        for (auto& [z, m] : f.poles) m *= r;
    }
    return f;
}

int local_degree(const RationalMap& f, cplx z0) {
    const Poly* n = &f.num;
    const Poly* d = &f.den;
    bool pole = root_residual(f.den, z0) < 1e-10;
    if (pole) std::swap(n, d); // analyze 1/f instead
    cplx dz = d->eval(z0);
    if (std::abs(dz) == 0)
        throw Error(Errc::IllConditioned, "both numerator and denominator vanish at the point");
    cplx v = n->eval(z0) / dz;
    Poly h = *n - *d * v;
    auto t = h.taylor_at(z0);
    double scale = 0;
    for (const auto& c : t) scale = std::max(scale, std::abs(c));
    if (scale == 0)
        throw Error(Errc::IllConditioned, "map is constant to working precision");
    for (std::size_t m = 1; m < t.size(); ++m) {
        double a = std::abs(t[m]) / scale;
        if (a >= 1e-6) return static_cast<int>(m);
        if (a >= 1e-12)
            throw Error(Errc::IllConditioned,
                        "derivative magnitude within the noise floor at order " + std::to_string(m));
    }
    throw Error(Errc::IllConditioned, "no nonvanishing derivative detected");
}

namespace {

// Greedy single-linkage clustering under the chordal metric.
std::vector<std::vector<int>> cluster_points(const std::vector<SpherePoint>& pts, double tol) {
    std::vector<std::vector<int>> clusters;
    std::vector<char> assigned(pts.size(), 0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (assigned[i]) continue;
        std::vector<int> cl{static_cast<int>(i)};
        assigned[i] = 1;
        for (std::size_t c = 0; c < cl.size(); ++c)
            for (std::size_t j = 0; j < pts.size(); ++j)
                if (!assigned[j] && chordal(pts[cl[c]], pts[j]) <= tol) {
                    assigned[j] = 1;
                    cl.push_back(static_cast<int>(j));
                }
        clusters.push_back(std::move(cl));
    }
    return clusters;
}

SpherePoint cluster_representative(const std::vector<SpherePoint>& pts, const std::vector<int>& cl) {
    cplx sum = 0;
    for (int i : cl) {
        if (pts[i].at_inf) return SpherePoint::infinity();
        sum += pts[i].z;
    }
    return SpherePoint::finite(sum / static_cast<double>(cl.size()));
}

} // namespace

BranchingReport branching_report(const RationalMap& f) {
    int d = f.degree();
    if (d < 2)
        throw Error(Errc::RootFindingFailure,
                    "degree " + std::to_string(d) + " map has no branching to report");

    Poly wronskian = f.num.derivative() * f.den - f.num * f.den.derivative();
    std::vector<SpherePoint> values;
    if (wronskian.degree() >= 1) {
        for (cplx c : poly_roots(wronskian)) {
            if (root_residual(f.den, c) < 1e-8)
                values.push_back(SpherePoint::infinity());
            else
                values.push_back(SpherePoint::finite(f.num.eval(c) / f.den.eval(c)));
        }
    }
    // Local degree at infinity: d minus the degree of the fiber polynomial.
    SpherePoint vinf = f.value_at_infinity();
    {
        Poly fiber = vinf.at_inf ? f.den : f.num - f.den * vinf.z;
        if (d - fiber.degree() >= 2) values.push_back(vinf);
    }

    auto value_clusters = cluster_points(values, kValueClusterTol);

    BranchingReport report;
    report.degree = d;
    for (double tol : kRootClusterLadder) {
        report.entries.clear();
        report.total_branching = 0;
        report.root_cluster_tol = tol;
        for (const auto& vc : value_clusters) {
            SpherePoint v = cluster_representative(values, vc);
            Poly fiber = v.at_inf ? f.den : f.num - f.den * v.z;
            std::vector<cplx> roots = fiber.degree() >= 1 ? poly_roots(fiber) : std::vector<cplx>{};
            std::vector<SpherePoint> pts;
            pts.reserve(roots.size());
            for (cplx r : roots) pts.push_back(SpherePoint::finite(r));
            std::vector<int> parts;
            double residual = 0;
            for (const auto& rc : cluster_points(pts, tol)) {
                parts.push_back(static_cast<int>(rc.size()));
                for (int i : rc) residual = std::max(residual, root_residual(fiber, roots[i]));
            }
            int inf_mult = d - fiber.degree();
            if (inf_mult >= 1) parts.push_back(inf_mult);
            Partition partition(std::move(parts));
            if (!partition.nontrivial()) continue;
            report.total_branching += partition.branching();
            report.entries.push_back(BranchEntry{v, std::move(partition), residual});
        }
        report.rh_consistent = report.total_branching == 2 * d - 2;
        if (report.rh_consistent) break;
    }
    std::sort(report.entries.begin(), report.entries.end(), [](const BranchEntry& a, const BranchEntry& b) {
        if (a.value.at_inf != b.value.at_inf) return !a.value.at_inf;
        if (a.value.at_inf) return false;
        auto ka = std::make_pair(a.value.z.real(), a.value.z.imag());
        auto kb = std::make_pair(b.value.z.real(), b.value.z.imag());
        return ka < kb;
    });
    return report;
}

namespace {

using Mat2 = std::array<std::array<cplx, 2>, 2>;

// Moebius matrix sending (p1, p2, p3) to (0, 1, inf).
Mat2 to_standard(const std::array<SpherePoint, 3>& t) {
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (chordal(t[i], t[j]) < 1e-12)
                throw Error(Errc::DegenerateTriple, "triple points must be pairwise distinct");
    const auto& [p1, p2, p3] = t;
    if (p1.at_inf) return {{{cplx(0), p2.z - p3.z}, {cplx(1), -p3.z}}};
    if (p2.at_inf) return {{{cplx(1), -p1.z}, {cplx(1), -p3.z}}};
    if (p3.at_inf) return {{{cplx(1), -p1.z}, {cplx(0), p2.z - p1.z}}};
    return {{{p2.z - p3.z, -p1.z * (p2.z - p3.z)}, {p2.z - p1.z, -p3.z * (p2.z - p1.z)}}};
}

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
    Mat2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return r;
}

Mat2 mat_inv(const Mat2& a) {
    return {{{a[1][1], -a[0][1]}, {-a[1][0], a[0][0]}}};
}

} // namespace

RationalMap apply_moebius(const RationalMap& f, const std::array<SpherePoint, 3>& source,
                          const std::array<SpherePoint, 3>& target) {
    Mat2 t = mat_mul(mat_inv(to_standard(target)), to_standard(source));
    RationalMap out;
    out.num = f.num * t[0][0] + f.den * t[0][1];
    out.den = f.num * t[1][0] + f.den * t[1][1];
    return out;
}

namespace {

struct MapCursor {
    const std::string& s;
    std::size_t i = 0;

    void ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    bool eat_word(const char* w) {
        ws();
        std::size_t len = std::strlen(w);
        if (s.compare(i, len, w) == 0) {
            i += len;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(Errc::ParseError, msg + " at position " + std::to_string(i));
    }
    bool done() {
        ws();
        return i >= s.size();
    }

    double number() {
        ws();
        const char* begin = s.c_str() + i;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin) fail("expected number");
        i += static_cast<std::size_t>(end - begin);
        return v;
    }

    // a, a+bi, a-bi, bi, i, -i ...
    cplx complex_literal() {
        ws();
        double re = 0, im = 0;
        auto term = [&](bool sign_required) -> bool {
            ws();
            std::size_t save = i;
            double sign = 1;
            if (eat('+'))
                sign = 1;
            else if (eat('-'))
                sign = -1;
            else if (sign_required)
                return false;
            ws();
            bool have_mag = i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.');
            double mag = have_mag ? number() : 1.0;
            if (eat('i')) {
                im += sign * mag;
                return true;
            }
            if (!have_mag) {
                i = save;
                return false;
            }
            re += sign * mag;
            return true;
        };
        if (!term(false)) fail("expected complex literal");
        term(true);
        return {re, im};
    }
};

std::vector<cplx> coeff_list(MapCursor& c) {
    if (!c.eat('[')) c.fail("expected '['");
    std::vector<cplx> out;
    if (!c.eat(']')) {
        out.push_back(c.complex_literal());
        while (c.eat(',')) out.push_back(c.complex_literal());
        if (!c.eat(']')) c.fail("expected ']'");
    }
    return out;
}

std::vector<std::pair<cplx, int>> location_list(MapCursor& c) {
    std::vector<std::pair<cplx, int>> out;
    out.emplace_back(c.complex_literal(), 1);
    if (c.eat('@')) out.back().second = static_cast<int>(c.number());
    while (c.eat(',')) {
        out.emplace_back(c.complex_literal(), 1);
        if (c.eat('@')) out.back().second = static_cast<int>(c.number());
    }
    return out;
}

} // namespace

RationalMap parse_map(const std::string& text) {
    MapCursor c{text};
    c.ws();
    if (c.eat_word("num")) {
        if (!c.eat(':')) c.fail("expected ':' after 'num'");
        Poly num(coeff_list(c));
        if (!c.eat(';')) c.fail("expected ';' between num and den");
        if (!c.eat_word("den")) c.fail("expected 'den'");
        if (!c.eat(':')) c.fail("expected ':' after 'den'");
        Poly den(coeff_list(c));
        if (!c.done()) c.fail("unexpected trailing input");
        return RationalMap::from_coeffs(std::move(num), std::move(den));
    }
    std::vector<std::pair<cplx, int>> zeros, poles;
    bool any = false;
    while (!c.done()) {
        if (c.eat_word("zeros")) {
            if (!c.eat(':')) c.fail("expected ':' after 'zeros'");
            zeros = location_list(c);
        } else if (c.eat_word("poles")) {
            if (!c.eat(':')) c.fail("expected ':' after 'poles'");
            poles = location_list(c);
        } else {
            c.fail("expected 'zeros', 'poles' or 'num'");
        }
        any = true;
        if (!c.eat(';')) break;
    }
    if (!any || !c.done()) c.fail("expected map description");
    return RationalMap::from_zeros_poles(std::move(zeros), std::move(poles));
}

} // namespace hurwitz
