#pragma once

#include <array>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "hurwitz/partition.hpp"

namespace hurwitz {

using cplx = std::complex<double>;

// Dense complex polynomial, coefficients lowest degree first.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<cplx> coeffs);

    static Poly constant(cplx c) { return Poly({c}); }
    static Poly from_roots(const std::vector<std::pair<cplx, int>>& roots_with_mult);

    const std::vector<cplx>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for the zero poly
    bool is_zero() const { return c_.empty(); }
    double max_coeff_mag() const;

    cplx eval(cplx z) const;
    Poly derivative() const;
    Poly pow(int n) const;

    // Coefficients of p(z0 + w) in w.
    std::vector<cplx> taylor_at(cplx z0) const;

    Poly operator*(const Poly&) const;
    Poly operator+(const Poly&) const;
    Poly operator-(const Poly&) const;
    Poly operator*(cplx s) const;

private:
    std::vector<cplx> c_; // trimmed: back() is nonzero (relative threshold)
};

// All complex roots via balanced companion-matrix eigenvalues, with a Newton
// polish. Throws RootFindingFailure on degenerate input.
std::vector<cplx> poly_roots(const Poly& p);

// |p(z)| / (sum |c_i| |z|^i), the scale-invariant backward error.
double root_residual(const Poly& p, cplx z);

// A point of the Riemann sphere.
struct SpherePoint {
    cplx z{};
    bool at_inf = false;

    static SpherePoint infinity() { return {cplx{}, true}; }
    static SpherePoint finite(cplx v) { return {v, false}; }
};

double chordal(const SpherePoint& a, const SpherePoint& b);
std::string sphere_point_string(const SpherePoint& p);

struct RationalMap {
    Poly num, den;
    // Factored form when built from locations; empty otherwise.
    std::vector<std::pair<cplx, int>> zeros, poles;
    bool factored = false;

    int degree() const { return std::max(num.degree(), den.degree()); }
    SpherePoint eval(cplx z) const;
    SpherePoint value_at_infinity() const;

    // Throws DuplicateLocation when zero/pole locations collide.
    static RationalMap from_zeros_poles(std::vector<std::pair<cplx, int>> zeros,
                                        std::vector<std::pair<cplx, int>> poles);
    // Rejects numerator/denominator with an (approximate) common root.
    static RationalMap from_coeffs(Poly num, Poly den);
};

RationalMap power(const RationalMap& g, int r);

// Order of the first nonvanishing derivative of f - f(z0) at z0 (at a pole,
// of 1/f). Throws IllConditioned when the noise floor makes the order
// ambiguous.
int local_degree(const RationalMap& f, cplx z0);

struct BranchEntry {
    SpherePoint value;
    Partition partition; // of the map degree
    double residual = 0.0;
};

struct BranchingReport {
    int degree = 0;
    std::vector<BranchEntry> entries;
    int total_branching = 0;
    bool rh_consistent = false;
    double root_cluster_tol = 0.0; // chordal tolerance that produced the report
};

// Critical points from N'D - ND' (plus the point at infinity), critical
// values clustered chordally, fibers solved as N - vD with multiplicities
// read off root clusters. Throws RootFindingFailure for degree < 2.
BranchingReport branching_report(const RationalMap& f);

// Post-composition with the unique Moebius map sending the source triple to
// the target triple; branch partitions are invariant, values relocated.
RationalMap apply_moebius(const RationalMap& f, const std::array<SpherePoint, 3>& source,
                          const std::array<SpherePoint, 3>& target);

// Parses "zeros: 1@2, -1@1; poles: 2+1i@3" or "num: [...]; den: [...]".
RationalMap parse_map(const std::string& text);

} // namespace hurwitz
