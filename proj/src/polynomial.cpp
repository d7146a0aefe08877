#include "descartes/polynomial.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "descartes/errors.hpp"

namespace descartes {

namespace {

void trim(std::vector<BigInt>& c) {
  while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
}

BigInt shl(const BigInt& v, std::uint64_t k) {
  BigInt out;
  mpz_mul_2exp(out.get_mpz_t(), v.get_mpz_t(), k);
  return out;
}

// Coefficients of a - lc(a)/lc(b) * X^(deg a - deg b) * b scaled to stay
// integral: lc(b) * a - lc(a) * X^s * b, repeated until deg < deg b.
constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % kPrime);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mulmod(a, a))
    if (e & 1) r = mulmod(r, a);
  return r;
}

std::vector<std::uint64_t> reduce(const std::vector<BigInt>& c) {
  std::vector<std::uint64_t> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = mpz_fdiv_ui(c[i].get_mpz_t(), kPrime);
  return out;
}

// True when a and b are certainly coprime over Q: their images mod a prime
// not dividing either leading coefficient have a constant gcd.
bool coprime_mod_prime(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  auto x = reduce(a);
  auto y = reduce(b);
  if (x.back() == 0 || y.back() == 0) return false;
  auto strip = [](std::vector<std::uint64_t>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    const std::uint64_t inv = powmod(y.back(), kPrime - 2);
    const std::size_t dy = y.size() - 1;
    while (x.size() >= y.size()) {
      const std::uint64_t q = mulmod(x.back(), inv);
      const std::size_t shift = x.size() - y.size();
      for (std::size_t i = 0; i <= dy; ++i)
        x[shift + i] = (x[shift + i] + kPrime - mulmod(q, y[i])) % kPrime;
      strip(x);
    }
    std::swap(x, y);
  }
  return x.size() == 1;
}

std::vector<BigInt> pseudo_remainder(std::vector<BigInt> a, const std::vector<BigInt>& b) {
  const std::size_t db = b.size() - 1;
  const BigInt& lb = b.back();
  while (!a.empty() && a.size() - 1 >= db) {
    const std::size_t shift = a.size() - 1 - db;
    const BigInt la = a.back();
    for (auto& c : a) c *= lb;
    for (std::size_t i = 0; i <= db; ++i) a[i + shift] -= la * b[i];
    trim(a);
  }
  return a;
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
  trim(coeffs_);
}

IntPolynomial::IntPolynomial(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  trim(coeffs_);
}

const BigInt& IntPolynomial::leading() const {
  if (is_zero()) throw ZeroPolynomialError();
  return coeffs_.back();
}

std::string IntPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out += ' ';
    out += coeffs_[i].get_str();
  }
  return out;
}

IntPolynomial IntPolynomial::parse(const std::string& text, std::size_t line) {
  std::istringstream in(text);
  std::vector<BigInt> coeffs;
  std::string tok;
  while (in >> tok) {
    std::string digits = tok;
    if (!digits.empty() && digits.front() == '+') digits.erase(0, 1);
    BigInt c;
    if (digits.empty() || (digits.front() == '-' && digits.size() == 1) ||
        c.set_str(digits, 10) != 0)
      throw ParseError("not an integer coefficient: '" + tok + "'", line);
    coeffs.push_back(std::move(c));
  }
  if (coeffs.empty()) throw ParseError("no coefficients", line);
  return IntPolynomial(std::move(coeffs));
}

std::vector<IntPolynomial> read_polynomials(std::istream& in) {
  std::vector<IntPolynomial> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(IntPolynomial::parse(line, number));
  }
  return out;
}

void require_nonzero(const IntPolynomial& f) {
  if (f.is_zero()) throw ZeroPolynomialError();
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<BigInt> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return IntPolynomial(std::move(c));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<BigInt> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
  return IntPolynomial(std::move(c));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return IntPolynomial(std::move(c));
}

IntPolynomial operator*(const BigInt& s, const IntPolynomial& a) {
  std::vector<BigInt> c = a.coeffs_;
  for (auto& x : c) x *= s;
  return IntPolynomial(std::move(c));
}

Dyadic evaluate(const IntPolynomial& f, const Dyadic& x) {
  if (f.is_zero()) return {};
  const auto& c = f.coeffs();
  const std::uint64_t e = x.exp();
  // sum_i c_i m^i 2^{e(d-i)}, over 2^{ed}.
  const std::size_t d = c.size() - 1;
  BigInt acc = c.back();
  BigInt term;
  for (std::size_t i = d; i-- > 0;) {
    acc *= x.num();
    mpz_mul_2exp(term.get_mpz_t(), c[i].get_mpz_t(), e * (d - i));
    acc += term;
  }
  return Dyadic(std::move(acc), e * static_cast<std::uint64_t>(f.degree()));
}

IntPolynomial derivative(const IntPolynomial& f) {
  if (f.degree() < 1) return {};
  std::vector<BigInt> c(f.coeffs().size() - 1);
  for (std::size_t i = 1; i < f.coeffs().size(); ++i) c[i - 1] = f.coeffs()[i] * static_cast<unsigned long>(i);
  return IntPolynomial(std::move(c));
}

BigInt one_norm(const IntPolynomial& f) {
  BigInt s = 0;
  for (const auto& c : f.coeffs()) s += abs(c);
  return s;
}

std::uint64_t bitsize(const BigInt& c) {
  BigInt m = abs(c);
  if (m <= 1) return 0;
  m -= 1;
  return mpz_sizeinbase(m.get_mpz_t(), 2);
}

std::uint64_t bitsize_tau(const IntPolynomial& f) {
  require_nonzero(f);
  std::uint64_t tau = 0;
  for (const auto& c : f.coeffs()) tau = std::max(tau, bitsize(c));
  return tau;
}

IntPolynomial reciprocal(const IntPolynomial& f) {
  std::vector<BigInt> c(f.coeffs().rbegin(), f.coeffs().rend());
  return IntPolynomial(std::move(c));
}

IntPolynomial homothety(const IntPolynomial& f, std::int64_t k) {
  if (f.is_zero() || k == 0) return f;
  const auto d = static_cast<std::uint64_t>(f.degree());
  std::vector<BigInt> c = f.coeffs();
  for (std::uint64_t i = 0; i <= d; ++i) {
    const std::uint64_t power = k > 0 ? static_cast<std::uint64_t>(k) * (d - i)
                                      : static_cast<std::uint64_t>(-k) * i;
    c[i] = shl(c[i], power);
  }
  return IntPolynomial(std::move(c));
}

IntPolynomial taylor_shift(const IntPolynomial& f, const BigInt& c) {
  if (f.degree() < 1 || sgn(c) == 0) return f;
  std::vector<BigInt> a = f.coeffs();
  const std::size_t d = a.size() - 1;
  const int kind = c == 1 ? 1 : (c == -1 ? -1 : 0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = d - 1; j + 1 > i; --j) {
      if (kind == 1)
        a[j] += a[j + 1];
      else if (kind == -1)
        a[j] -= a[j + 1];
      else
        mpz_addmul(a[j].get_mpz_t(), c.get_mpz_t(), a[j + 1].get_mpz_t());
      if (j == 0) break;
    }
  }
  return IntPolynomial(std::move(a));
}

IntPolynomial scale_variable(const IntPolynomial& f, const BigInt& r) {
  if (r == 1) return f;
  std::vector<BigInt> c = f.coeffs();
  BigInt power = 1;
  for (auto& x : c) {
    x *= power;
    power *= r;
  }
  return IntPolynomial(std::move(c));
}

IntPolynomial strip_power_of_two(const IntPolynomial& f) {
  std::uint64_t common = UINT64_MAX;
  for (const auto& c : f.coeffs())
    if (sgn(c) != 0) common = std::min<std::uint64_t>(common, mpz_scan1(c.get_mpz_t(), 0));
  if (common == 0 || common == UINT64_MAX) return f;
  std::vector<BigInt> c = f.coeffs();
  for (auto& x : c) mpz_fdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), common);
  return IntPolynomial(std::move(c));
}

std::size_t var_count(const IntPolynomial& f) {
  std::size_t changes = 0;
  int last = 0;
  for (const auto& c : f.coeffs()) {
    const int s = sgn(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

IntPolynomial interval_image(const IntPolynomial& f, const DyadicInterval& J) {
  if (f.is_zero()) return f;
  const Dyadic width = J.width();
  const std::uint64_t e = std::max(J.lo().exp(), width.exp());
  // lo = p / 2^e and wid = r / 2^e.
  const BigInt p = shl(J.lo().num(), e - J.lo().exp());
  const BigInt r = shl(width.num(), e - width.exp());
  IntPolynomial g = homothety(f, static_cast<std::int64_t>(e));  // 2^{de} f(y / 2^e)
  g = taylor_shift(g, p);                                          // ... at y = p + s
  g = scale_variable(g, r);                                        // ... s = r t
  return strip_power_of_two(g);
}

IntPolynomial mobius_transform(const IntPolynomial& f, const DyadicInterval& J) {
  // (aX + b)/(X + 1) = a + wid(J) / (X + 1), so the transform is
  // T_1(R(g)) with g(t) = f(a + wid(J) t).
  return taylor_shift(reciprocal(interval_image(f, J)), BigInt(1));
}

std::size_t var_in_interval(const IntPolynomial& f, const DyadicInterval& J) {
  return var_count(mobius_transform(f, J));
}

BigInt content(const IntPolynomial& f) {
  BigInt g = 0;
  for (const auto& c : f.coeffs()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPolynomial primitive_part(const IntPolynomial& f) {
  if (f.is_zero()) return f;
  BigInt g = content(f);
  if (sgn(f.leading()) < 0) g = -g;
  std::vector<BigInt> c = f.coeffs();
  for (auto& x : c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return IntPolynomial(std::move(c));
}

IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b) {
  IntPolynomial x = primitive_part(a);
  IntPolynomial y = primitive_part(b);
  if (x.degree() < y.degree()) std::swap(x, y);
  if (!y.is_zero() && y.degree() > 0 && coprime_mod_prime(x.coeffs(), y.coeffs())) return IntPolynomial({1});
  while (!y.is_zero()) {
    IntPolynomial r = primitive_part(IntPolynomial(pseudo_remainder(x.coeffs(), y.coeffs())));
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

IntPolynomial exact_quotient(const IntPolynomial& a, const IntPolynomial& b) {
  require_nonzero(b);
  if (a.is_zero()) return {};
  if (a.degree() < b.degree()) throw std::domain_error("exact_quotient: degree too small");
  std::vector<BigInt> rem = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  std::vector<BigInt> q(rem.size() - db);
  for (std::size_t k = q.size(); k-- > 0;) {
    BigInt& top = rem[k + db];
    if (!mpz_divisible_p(top.get_mpz_t(), bc.back().get_mpz_t()))
      throw std::domain_error("exact_quotient: not divisible");
    mpz_divexact(q[k].get_mpz_t(), top.get_mpz_t(), bc.back().get_mpz_t());
    for (std::size_t i = 0; i <= db; ++i) rem[k + i] -= q[k] * bc[i];
  }
  if (std::any_of(rem.begin(), rem.end(), [](const BigInt& c) { return sgn(c) != 0; }))
    throw std::domain_error("exact_quotient: nonzero remainder");
  return IntPolynomial(std::move(q));
}

IntPolynomial square_free_part(const IntPolynomial& f) {
  require_nonzero(f);
  const IntPolynomial pf = primitive_part(f);
  if (pf.degree() < 1) return pf;
  const IntPolynomial g = gcd(pf, derivative(pf));
  if (g.degree() == 0) return pf;
  return primitive_part(exact_quotient(pf, g));
}

}  // namespace descartes
