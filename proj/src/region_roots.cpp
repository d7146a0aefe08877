#include "descartes/region_roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "descartes/errors.hpp"

namespace descartes {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
using LComplex = std::complex<long double>;

// |c| * 2^-shift as a long double with a 64-bit mantissa.
long double scaled_long_double(const BigInt& c, long shift) {
  if (sgn(c) == 0) return 0.0L;
  BigInt m = abs(c);
  const long bits = static_cast<long>(mpz_sizeinbase(m.get_mpz_t(), 2));
  const long drop = std::max(0L, bits - 64);
  if (drop > 0) mpz_fdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(drop));
  const auto top = static_cast<long double>(mpz_get_ui(m.get_mpz_t()));
  const long double v = std::ldexp(top, static_cast<int>(drop - shift));
  return sgn(c) < 0 ? -v : v;
}

// Coefficients of a nonzero polynomial scaled by a common power of two so
// that the largest has magnitude about 1.
struct ScaledCoefficients {
  std::vector<long double> wide;
  std::vector<double> narrow;
  double abs_sum = 0.0;

  explicit ScaledCoefficients(const IntPolynomial& f) {
    long maxbits = 0;
    for (const auto& c : f.coeffs())
      maxbits = std::max(maxbits, static_cast<long>(mpz_sizeinbase(c.get_mpz_t(), 2)));
    for (const auto& c : f.coeffs()) {
      wide.push_back(scaled_long_double(c, maxbits));
      narrow.push_back(static_cast<double>(wide.back()));
      abs_sum += std::fabs(narrow.back());
    }
  }
  int degree() const { return static_cast<int>(narrow.size()) - 1; }
};

// p(z) and p'(z) by Horner; reversed selects the reciprocal polynomial.
template <typename C, typename R>
void horner(const std::vector<R>& c, C z, bool reversed, C& p, C& dp) {
  const std::size_t n = c.size();
  p = C(0);
  dp = C(0);
  for (std::size_t k = 0; k < n; ++k) {
    const R coef = reversed ? c[k] : c[n - 1 - k];
    dp = dp * z + p;
    p = p * z + C(coef);
  }
}

// Horner of sum |c_i| |z|^i (or reversed), the rounding-error scale.
template <typename R>
R abs_horner(const std::vector<R>& c, R r, bool reversed) {
  const std::size_t n = c.size();
  R acc = 0;
  for (std::size_t k = 0; k < n; ++k) acc = acc * r + std::fabs(reversed ? c[k] : c[n - 1 - k]);
  return acc;
}

// Newton correction p(z)/p'(z) evaluated without overflow for large |z|,
// plus whether |p(z)| is within rounding error of zero.
template <typename C, typename R>
C newton_correction(const std::vector<R>& c, C z, bool& at_noise_level) {
  const int d = static_cast<int>(c.size()) - 1;
  const R eps = std::numeric_limits<R>::epsilon();
  C p, dp;
  if (std::abs(z) <= R(1)) {
    horner(c, z, false, p, dp);
    at_noise_level = std::abs(p) <= R(4) * d * eps * abs_horner(c, std::abs(z), false);
    if (dp == C(0)) return C(0);
    return p / dp;
  }
  const C y = C(1) / z;
  horner(c, y, true, p, dp);  // q(y) = y^d p(1/y)
  at_noise_level = std::abs(p) <= R(4) * d * eps * abs_horner(c, std::abs(y), true);
  if (p == C(0)) return C(0);
  // p'(z)/p(z) = y (d - y q'(y)/q(y))
  const C logderiv = y * (C(static_cast<R>(d)) - y * dp / p);
  if (logderiv == C(0)) return C(0);
  return C(1) / logderiv;
}

template <typename C, typename R>
R scaled_residual(const std::vector<R>& c, R abs_sum, C z) {
  C p, dp;
  if (std::abs(z) <= R(1))
    horner(c, z, false, p, dp);
  else
    horner(c, C(1) / z, true, p, dp);
  return std::abs(p) / abs_sum;
}

// Bini's Newton-polygon starting points: radii from the upper convex hull
// of (i, log|c_i|), angles spread per edge and rotated off the real axis.
std::vector<Complex> initial_points(const std::vector<double>& c) {
  const int d = static_cast<int>(c.size()) - 1;
  std::vector<int> hull;
  for (int i = 0; i <= d; ++i) {
    if (c[i] == 0.0) continue;
    const double yi = std::log(std::fabs(c[i]));
    while (hull.size() >= 2) {
      const int a = hull[hull.size() - 2];
      const int b = hull.back();
      const double ya = std::log(std::fabs(c[a]));
      const double yb = std::log(std::fabs(c[b]));
      // Drop b when it lies on or below the chord a -> i.
      if ((yb - ya) * (i - a) <= (yi - ya) * (b - a))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(i);
  }
  std::vector<Complex> z;
  z.reserve(d);
  const double sigma = 0.7;
  for (std::size_t j = 0; j + 1 < hull.size(); ++j) {
    const int a = hull[j];
    const int b = hull[j + 1];
    const int n = b - a;
    const double radius = std::exp((std::log(std::fabs(c[a])) - std::log(std::fabs(c[b]))) / n);
    for (int l = 0; l < n; ++l) {
      const double angle = 2 * std::numbers::pi * l / n + 2 * std::numbers::pi * a / d + sigma;
      z.push_back(std::polar(radius, angle));
    }
  }
  return z;
}

}  // namespace

int ceil_lg(int d) {
  if (d < 1) throw std::invalid_argument("ceil_lg of non-positive value");
  int n = 0;
  while ((1L << n) < d) ++n;
  return n;
}

DiskFamily disk_family(int d) {
  if (d < 2) throw std::invalid_argument("disk family needs d >= 2, got " + std::to_string(d));
  DiskFamily family;
  family.degree = d;
  family.N = ceil_lg(d);
  const int N = family.N;
  for (int n = -N; n <= N; ++n) {
    const auto k = static_cast<std::uint64_t>(std::abs(n));
    const int sign = (n > 0) - (n < 0);
    Dyadic center;
    Dyadic radius;
    if (std::abs(n) <= N - 1) {
      // sgn(n) (1 - 3/2^(k+2)), radius 3/2^(k+3)
      center = Dyadic(sign) * (Dyadic(1) - Dyadic(BigInt(3), k + 2));
      // central disk: radius 1/2
      radius = n == 0 ? Dyadic(BigInt(1), 1) : Dyadic(BigInt(3), k + 3);
    } else {
      center = Dyadic(sign) * (Dyadic(1) - Dyadic(BigInt(1), k));
      radius = Dyadic(BigInt(3), k + 1);
    }
    family.disks.push_back({n, center, radius});
  }
  return family;
}

double rho_upper_bound(const IntPolynomial& f, int degree_context) {
  require_nonzero(f);
  const int d = degree_context < 0 ? std::max(2, f.degree()) : degree_context;
  if (d < f.degree()) throw std::invalid_argument("degree context below degree");
  const DiskFamily family = disk_family(d);
  const double lg_norm = Dyadic(one_norm(f)).log2_abs();
  double total = 0.0;
  for (const auto& disk : family.disks) {
    const Dyadic value = evaluate(f, disk.center);
    if (value.is_zero()) return kInf;
    total += std::numbers::log2e + lg_norm - value.log2_abs();
  }
  return total;
}

Membership omega_membership(const DiskFamily& family, Complex z, double margin) {
  bool near = false;
  for (const auto& disk : family.disks) {
    const double dist = std::abs(z - Complex(disk.center.to_double(), 0.0));
    const double r = disk.radius.to_double();
    if (dist < r - margin) return Membership::inside;
    if (dist <= r + margin) near = true;
  }
  return near ? Membership::ambiguous : Membership::outside;
}

CountRange count_roots_in_omega(const IntPolynomial& f, int degree_context, double margin) {
  require_nonzero(f);
  const int d = degree_context < 0 ? std::max(2, f.degree()) : degree_context;
  const DiskFamily family = disk_family(d);
  CountRange range;
  if (f.degree() < 1) return range;
  for (const auto& z : numeric_roots(f).roots) {
    switch (omega_membership(family, z, margin)) {
      case Membership::inside:
        ++range.min;
        ++range.max;
        break;
      case Membership::ambiguous:
        ++range.max;
        break;
      case Membership::outside:
        break;
    }
  }
  return range;
}

ComplexRootSet numeric_roots(const IntPolynomial& f, double tol, std::size_t max_iterations) {
  if (tol < 1e-12) throw std::invalid_argument("oracle tolerance below 1e-12");
  require_nonzero(f);
  if (f.degree() < 1) throw std::invalid_argument("numeric_roots needs degree >= 1");

  IntPolynomial g = square_free_part(f);
  ComplexRootSet out;
  // A square-free polynomial has at most a simple root at zero.
  if (sgn(g.coeff(0)) == 0) {
    out.roots.emplace_back(0.0, 0.0);
    g = IntPolynomial(std::vector<BigInt>(g.coeffs().begin() + 1, g.coeffs().end()));
  }
  if (g.degree() < 1) return out;

  const ScaledCoefficients c(g);
  const int d = c.degree();
  std::vector<Complex> z = initial_points(c.narrow);
  std::vector<char> done(d, 0);

  std::size_t iter = 0;
  for (; iter < max_iterations; ++iter) {
    bool moved = false;
    for (int i = 0; i < d; ++i) {
      if (done[i]) continue;
      bool noise = false;
      const Complex n = newton_correction(c.narrow, z[i], noise);
      if (noise) {
        done[i] = 1;
        continue;
      }
      Complex sum = 0.0;
      for (int j = 0; j < d; ++j)
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      const Complex w = n / (1.0 - n * sum);
      z[i] -= w;
      if (std::abs(w) <= 2 * std::numeric_limits<double>::epsilon() * std::abs(z[i])) done[i] = 1;
      moved = true;
    }
    if (!moved) break;
  }
  out.iterations = iter;

  // Newton polish in extended precision; a step is kept only when it lowers
  // the residual and stays well inside the gap to the nearest other root.
  const auto wide_sum = static_cast<long double>(c.abs_sum);
  for (int i = 0; i < d; ++i) {
    double gap = kInf;
    for (int j = 0; j < d; ++j)
      if (j != i) gap = std::min(gap, std::abs(z[i] - z[j]));
    LComplex x(z[i].real(), z[i].imag());
    long double res = scaled_residual(c.wide, wide_sum, x);
    for (int step = 0; step < 4 && res > 0; ++step) {
      bool noise = false;
      const LComplex dx = newton_correction(c.wide, x, noise);
      if (std::abs(dx) > 0.1L * gap) break;
      const LComplex cand = x - dx;
      const long double cand_res = scaled_residual(c.wide, wide_sum, cand);
      if (!(cand_res < res)) break;
      x = cand;
      res = cand_res;
    }
    z[i] = Complex(static_cast<double>(x.real()), static_cast<double>(x.imag()));
  }

  double worst = 0.0;
  for (const auto& r : z) worst = std::max(worst, scaled_residual(c.narrow, c.abs_sum, r));
  out.residual_bound = worst;
  out.roots.insert(out.roots.end(), z.begin(), z.end());
  if (!(worst <= tol))
    throw NoConvergenceError("residual " + std::to_string(worst) + " after " + std::to_string(iter) +
                             " iterations");
  return out;
}

std::vector<double> real_roots(const ComplexRootSet& set, double imag_tol) {
  std::vector<double> out;
  for (const auto& z : set.roots)
    if (std::fabs(z.imag()) <= imag_tol) out.push_back(z.real());
  std::sort(out.begin(), out.end());
  return out;
}

double distance_to_unit_segment(Complex z) {
  const double x = std::clamp(z.real(), -1.0, 1.0);
  return std::abs(z - Complex(x, 0.0));
}

double eps_real_separation(const IntPolynomial& f, double eps) {
  require_nonzero(f);
  const int d = f.degree();
  if (eps < 0 || (d > 0 && eps >= 1.0 / d)) throw std::invalid_argument("eps outside [0, 1/d)");
  if (d < 2) return kInf;

  const IntPolynomial repeated = gcd(f, derivative(f));
  if (repeated.degree() >= 1)
    for (const auto& z : numeric_roots(repeated).roots)
      if (distance_to_unit_segment(z) <= eps) return 0.0;

  std::vector<Complex> near;
  for (const auto& z : numeric_roots(f).roots)
    if (distance_to_unit_segment(z) <= eps) near.push_back(z);
  double best = kInf;
  for (std::size_t i = 0; i < near.size(); ++i)
    for (std::size_t j = i + 1; j < near.size(); ++j) best = std::min(best, std::abs(near[i] - near[j]));
  return best;
}

ObreshkoffPair obreshkoff_discs(const DyadicInterval& J, int rho) {
  if (rho < 0) throw std::invalid_argument("Obreshkoff parameter must be non-negative");
  ObreshkoffPair pair;
  pair.lo = J.lo().to_double();
  pair.hi = J.hi().to_double();
  pair.rho = rho;
  const double half = 0.5 * J.width().to_double();
  const double phi = std::numbers::pi / (rho + 2);
  pair.center_offset = rho == 0 ? 0.0 : half / std::tan(phi);
  pair.radius = half / std::sin(phi);
  return pair;
}

bool point_in_area(Complex p, const ObreshkoffPair& pair) {
  return std::abs(p - pair.upper_center()) < pair.radius ||
         std::abs(p - pair.lower_center()) < pair.radius;
}

bool point_in_lens(Complex p, const ObreshkoffPair& pair) {
  return std::abs(p - pair.upper_center()) < pair.radius &&
         std::abs(p - pair.lower_center()) < pair.radius;
}

Membership area_membership(Complex p, const ObreshkoffPair& pair, double margin) {
  const double du = std::abs(p - pair.upper_center());
  const double dl = std::abs(p - pair.lower_center());
  if (du < pair.radius - margin || dl < pair.radius - margin) return Membership::inside;
  if (du > pair.radius + margin && dl > pair.radius + margin) return Membership::outside;
  return Membership::ambiguous;
}

Membership lens_membership(Complex p, const ObreshkoffPair& pair, double margin) {
  const double du = std::abs(p - pair.upper_center());
  const double dl = std::abs(p - pair.lower_center());
  if (du < pair.radius - margin && dl < pair.radius - margin) return Membership::inside;
  if (du > pair.radius + margin || dl > pair.radius + margin) return Membership::outside;
  return Membership::ambiguous;
}

}  // namespace descartes
