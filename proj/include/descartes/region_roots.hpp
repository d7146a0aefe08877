#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "descartes/dyadic.hpp"
#include "descartes/polynomial.hpp"

namespace descartes {

using Complex = std::complex<double>;

// Disk cover of [-1, 1] -------------------------------------------------------

struct Disk {
  int index;  // n in -N..N
  Dyadic center;
  Dyadic radius;
};

/// The 2N+1 disks D(xi_n, rho_n), N = ceil(lg d), whose union Omega_d
/// covers [-1, 1]. Centers accumulate at +-1 with geometrically shrinking
/// radii; the two outermost disks reach past the endpoints. The central
/// disk has radius 1/2.
struct DiskFamily {
  int degree = 0;
  int N = 0;
  std::vector<Disk> disks;  // ordered n = -N..N
};

/// Throws std::invalid_argument for d < 2.
DiskFamily disk_family(int d);

/// ceil(lg d) for d >= 1.
int ceil_lg(int d);

/// sum_n lg(e ||f||_1 / |f(xi_n)|), an upper bound on the number of roots
/// of f in Omega_d; +inf if f vanishes at some center. d defaults to
/// max(2, deg f) and must be at least deg f.
double rho_upper_bound(const IntPolynomial& f, int degree_context = -1);

/// Number of roots in a region when membership near the boundary is
/// undecidable at the oracle's precision: the count lies in [min, max].
struct CountRange {
  std::size_t min = 0;
  std::size_t max = 0;
};

enum class Membership { inside, outside, ambiguous };

/// Membership of z in the open union Omega_d, with an absolute margin.
Membership omega_membership(const DiskFamily& family, Complex z, double margin = 1e-9);

/// varrho(f): distinct roots of f in Omega_d, from the numeric oracle.
CountRange count_roots_in_omega(const IntPolynomial& f, int degree_context = -1,
                                double margin = 1e-9);

// Numeric oracle --------------------------------------------------------------

struct ComplexRootSet {
  std::vector<Complex> roots;
  /// Max over roots of |f(z)| / (||f||_1 max(1, |z|)^d) for the square-free
  /// part; for |z| <= 1 this is |f(z)| / ||f||_1.
  double residual_bound = 0.0;
  std::size_t iterations = 0;
};

/// All complex roots of square_free_part(f) by Aberth-Ehrlich iteration in
/// double precision, started from a Newton-polygon placement and polished
/// by Newton steps in extended precision. Deterministic.
/// Throws NoConvergenceError when the residual exceeds tol after the
/// iteration cap, std::invalid_argument for tol < 1e-12 or deg f < 1.
ComplexRootSet numeric_roots(const IntPolynomial& f, double tol = 1e-10,
                             std::size_t max_iterations = 500);

/// Roots with |Im z| <= imag_tol, real parts ascending.
std::vector<double> real_roots(const ComplexRootSet& set, double imag_tol = 1e-10);

/// Distance from z to the segment [-1, 1].
double distance_to_unit_segment(Complex z);

/// Minimum distance between roots of f inside I_eps = {z : dist(z, I) <= eps};
/// +inf with fewer than two such roots; 0 if f has a repeated root in I_eps.
/// Requires 0 <= eps < 1/d.
double eps_real_separation(const IntPolynomial& f, double eps);

// Obreshkoff geometry -----------------------------------------------------------

/// The two discs through the endpoints of J whose centers sit at
/// mid(J) +- i * center_offset, seeing J under the angle pi/(rho+2).
struct ObreshkoffPair {
  double lo = 0.0;
  double hi = 0.0;
  int rho = 0;
  double center_offset = 0.0;  // (wid/2) cot(pi/(rho+2))
  double radius = 0.0;         // wid / (2 sin(pi/(rho+2)))

  Complex upper_center() const { return {0.5 * (lo + hi), center_offset}; }
  Complex lower_center() const { return {0.5 * (lo + hi), -center_offset}; }
};

ObreshkoffPair obreshkoff_discs(const DyadicInterval& J, int rho);

/// Strict interior of the union of the two discs.
bool point_in_area(Complex p, const ObreshkoffPair& pair);
/// Strict interior of the intersection of the two discs.
bool point_in_lens(Complex p, const ObreshkoffPair& pair);

Membership area_membership(Complex p, const ObreshkoffPair& pair, double margin = 1e-9);
Membership lens_membership(Complex p, const ObreshkoffPair& pair, double margin = 1e-9);

}  // namespace descartes
