#pragma once

// Reference implementations used only by the tests. Everything here works
// over GMP rationals and shares no code with the library beyond the
// coefficient vector.

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "descartes/polynomial.hpp"

namespace oracle {

using Q = mpq_class;
using QPoly = std::vector<Q>;

inline QPoly to_q(const descartes::IntPolynomial& f) {
  QPoly out;
  for (const auto& c : f.coeffs()) out.emplace_back(c);
  return out;
}

inline QPoly to_q(const std::vector<mpz_class>& c) {
  QPoly out;
  for (const auto& x : c) out.emplace_back(x);
  return out;
}

inline void trim(QPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

inline Q eval(const QPoly& p, const Q& x) {
  Q acc = 0;
  Q power = 1;
  for (const auto& c : p) {
    acc += c * power;
    power *= x;
  }
  return acc;
}

inline QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1, Q(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

inline QPoly power(const QPoly& p, std::size_t k) {
  QPoly out{Q(1)};
  for (std::size_t i = 0; i < k; ++i) out = mul(out, p);
  return out;
}

inline QPoly derivative(const QPoly& p) {
  QPoly out;
  for (std::size_t i = 1; i < p.size(); ++i) out.push_back(p[i] * static_cast<long>(i));
  trim(out);
  return out;
}

inline QPoly remainder(QPoly a, const QPoly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const Q q = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

inline QPoly gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Q lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

/// Sign changes with zeros dropped.
inline std::size_t variations(const std::vector<int>& signs) {
  std::size_t v = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

inline std::size_t coefficient_variations(const QPoly& p) {
  std::vector<int> s;
  for (const auto& c : p) s.push_back(sgn(c));
  return variations(s);
}

/// Sturm chain of a polynomial over Q.
class Sturm {
 public:
  explicit Sturm(const QPoly& f) {
    QPoly a = f;
    trim(a);
    QPoly b = derivative(a);
    chain_.push_back(a);
    while (!b.empty()) {
      chain_.push_back(b);
      QPoly r = remainder(a, b);
      for (auto& c : r) c = -c;
      a = std::move(b);
      b = std::move(r);
    }
  }

  std::size_t sign_changes(const Q& x) const {
    std::vector<int> s;
    for (const auto& p : chain_) s.push_back(sgn(eval(p, x)));
    return variations(s);
  }

  /// Distinct real roots in the open interval (a, b).
  std::size_t count_open(const Q& a, const Q& b) const {
    std::size_t n = sign_changes(a) - sign_changes(b);
    if (sgn(eval(chain_.front(), b)) == 0) --n;
    return n;
  }

  /// Distinct real roots on the whole line.
  std::size_t count_all() const {
    std::vector<int> lo, hi;
    for (const auto& p : chain_) {
      const int lead = sgn(p.back());
      const bool odd = (p.size() - 1) % 2 == 1;
      hi.push_back(lead);
      lo.push_back(odd ? -lead : lead);
    }
    return variations(lo) - variations(hi);
  }

 private:
  std::vector<QPoly> chain_;
};

/// Literal (X+1)^d f((aX+b)/(X+1)) = sum f_i (aX+b)^i (X+1)^(d-i).
inline QPoly mobius_literal(const QPoly& f, const Q& a, const Q& b) {
  const std::size_t d = f.size() - 1;
  QPoly out;
  for (std::size_t i = 0; i <= d; ++i) {
    QPoly term = mul(power({b, a}, i), power({Q(1), Q(1)}, d - i));
    for (auto& c : term) c *= f[i];
    if (out.size() < term.size()) out.resize(term.size(), Q(0));
    for (std::size_t k = 0; k < term.size(); ++k) out[k] += term[k];
  }
  trim(out);
  return out;
}

/// cond(f, x) = ||f||_1 / max(|f(x)|, |f'(x)|/d) in long double.
inline long double cond_at(const descartes::IntPolynomial& f, int d, long double x) {
  long double v = 0, dv = 0, norm = 0;
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    const long double c = f.coeffs()[i].get_d();
    dv = dv * x + v;
    v = v * x + c;
    norm += std::fabs(c);
  }
  const long double m = std::max(std::fabs(v), std::fabs(dv) / d);
  return m == 0 ? INFINITY : norm / m;
}

/// Polynomial with integer coefficients having the given rational roots:
/// prod (den X - num).
inline descartes::IntPolynomial from_roots(const std::vector<std::pair<long, long>>& roots) {
  QPoly p{Q(1)};
  for (auto [num, den] : roots) p = mul(p, {Q(-num), Q(den)});
  std::vector<mpz_class> c;
  for (const auto& q : p) c.push_back(q.get_num());
  return descartes::IntPolynomial(std::move(c));
}

inline Q to_q(const descartes::Dyadic& x) {
  Q out(x.num());
  mpz_class den = 1;
  den <<= x.exp();
  out /= den;
  return out;
}

}  // namespace oracle
