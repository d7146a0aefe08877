#include "descartes/random_models.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "descartes/errors.hpp"

namespace descartes {

namespace {

using Engine = std::mt19937_64;

Engine coefficient_engine(std::uint64_t seed, std::uint64_t index, std::uint64_t position,
                          std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    static_cast<std::uint32_t>(position), static_cast<std::uint32_t>(position >> 32),
                    stream};
  return Engine(seq);
}

// Uniform on [0, n) by rejection over the smallest covering power of two.
BigInt uniform_below(Engine& rng, const BigInt& n) {
  if (n <= 1) return 0;
  const BigInt top = n - 1;
  const std::size_t bits = mpz_sizeinbase(top.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  std::vector<std::uint64_t> buf(words);
  BigInt r;
  while (true) {
    for (auto& w : buf) w = rng();
    mpz_import(r.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
    mpz_fdiv_r_2exp(r.get_mpz_t(), r.get_mpz_t(), bits);
    if (r < n) return r;
  }
}

BigInt pow2(std::uint64_t k) {
  BigInt v;
  mpz_ui_pow_ui(v.get_mpz_t(), 2, k);
  return v;
}

// Uniform on [lo, hi].
BigInt uniform_between(Engine& rng, const BigInt& lo, const BigInt& hi) {
  return lo + uniform_below(rng, BigInt(hi - lo + 1));
}

BigInt draw(const RandomModel& m, std::uint64_t seed, std::uint64_t index, int i) {
  Engine rng = coefficient_engine(seed, index, static_cast<std::uint64_t>(i), 0);
  const BigInt bound = pow2(m.tau);
  switch (m.kind) {
    case ModelKind::uniform:
      return uniform_between(rng, BigInt(-bound), bound);
    case ModelKind::support:
      if (!std::binary_search(m.support.begin(), m.support.end(), i)) return 0;
      return uniform_between(rng, BigInt(-bound), bound);
    case ModelKind::signs:
      return m.signs[i] * uniform_between(rng, BigInt(1), bound);
    case ModelKind::exact_bitsize: {
      // Uniform on the union of two equal-size ranges: magnitude and sign
      // are independent and uniform.
      const BigInt mag = uniform_between(rng, pow2(m.tau - 1), BigInt(bound - 1));
      return (rng() & 1) ? BigInt(-mag) : mag;
    }
    case ModelKind::smoothed:
      break;
  }
  throw InvalidModelError("draw on smoothed model");
}

}  // namespace

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::uniform: return "uniform";
    case ModelKind::support: return "support";
    case ModelKind::signs: return "signs";
    case ModelKind::exact_bitsize: return "exactbits";
    case ModelKind::smoothed: return "smoothed";
  }
  return "?";
}

ModelKind parse_model_kind(const std::string& name) {
  for (auto k : {ModelKind::uniform, ModelKind::support, ModelKind::signs, ModelKind::exact_bitsize,
                 ModelKind::smoothed})
    if (to_string(k) == name) return k;
  throw InvalidModelError("unknown model '" + name + "'");
}

RandomModel RandomModel::uniform(int degree, std::uint64_t tau) {
  RandomModel m;
  m.kind = ModelKind::uniform;
  m.degree = degree;
  m.tau = tau;
  m.validate();
  return m;
}

RandomModel RandomModel::with_support(int degree, std::uint64_t tau, std::vector<int> support) {
  RandomModel m;
  m.kind = ModelKind::support;
  m.degree = degree;
  m.tau = tau;
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  m.support = std::move(support);
  m.validate();
  return m;
}

RandomModel RandomModel::with_signs(int degree, std::uint64_t tau, std::vector<int> signs) {
  RandomModel m;
  m.kind = ModelKind::signs;
  m.degree = degree;
  m.tau = tau;
  m.signs = std::move(signs);
  m.validate();
  return m;
}

RandomModel RandomModel::exact_bitsize(int degree, std::uint64_t tau) {
  RandomModel m;
  m.kind = ModelKind::exact_bitsize;
  m.degree = degree;
  m.tau = tau;
  m.validate();
  return m;
}

RandomModel RandomModel::smoothed(IntPolynomial base, BigInt sigma, RandomModel perturbation) {
  RandomModel m;
  m.kind = ModelKind::smoothed;
  m.degree = perturbation.degree;
  m.tau = base.is_zero() ? 0 : bitsize_tau(base);
  m.base = std::move(base);
  m.sigma = std::move(sigma);
  m.perturbation = std::make_shared<const RandomModel>(std::move(perturbation));
  m.validate();
  return m;
}

void RandomModel::validate() const {
  if (degree < 1) throw InvalidModelError("degree must be at least 1");
  switch (kind) {
    case ModelKind::uniform:
      break;
    case ModelKind::support: {
      for (int i : {0, 1, degree - 1, degree})
        if (!std::binary_search(support.begin(), support.end(), i))
          throw InvalidModelError("support must contain 0, 1, d-1 and d (missing " +
                                  std::to_string(i) + ")");
      if (support.front() < 0 || support.back() > degree)
        throw InvalidModelError("support index outside 0..d");
      break;
    }
    case ModelKind::signs:
      if (signs.size() != static_cast<std::size_t>(degree) + 1)
        throw InvalidModelError("sign vector needs d+1 entries");
      for (int s : signs)
        if (s != 1 && s != -1) throw InvalidModelError("signs must be +1 or -1");
      break;
    case ModelKind::exact_bitsize:
      if (tau < 1) throw InvalidModelError("exact bitsize needs tau >= 1");
      break;
    case ModelKind::smoothed:
      if (sgn(sigma) == 0) throw InvalidModelError("sigma must be a nonzero integer");
      if (!perturbation) throw InvalidModelError("smoothed model without perturbation model");
      if (perturbation->kind == ModelKind::smoothed)
        throw InvalidModelError("nested smoothed models are not supported");
      perturbation->validate();
      if (base.degree() > degree) throw InvalidModelError("base polynomial degree exceeds d");
      break;
  }
}

std::string RandomModel::describe() const {
  std::ostringstream out;
  out << to_string(kind) << "(d=" << degree << ",tau=" << tau;
  if (kind == ModelKind::support) {
    out << ",A=";
    for (std::size_t i = 0; i < support.size(); ++i) out << (i ? ";" : "") << support[i];
  }
  if (kind == ModelKind::signs) {
    out << ",s=";
    for (int s : signs) out << (s > 0 ? '+' : '-');
  }
  if (kind == ModelKind::smoothed) out << ",sigma=" << sigma.get_str() << ",noise=" << perturbation->describe();
  out << ")";
  return out.str();
}

IntPolynomial sample(const RandomModel& model, std::uint64_t seed, std::uint64_t index) {
  if (model.kind == ModelKind::smoothed)
    return model.base + model.sigma * sample(*model.perturbation, seed, index);
  std::vector<BigInt> c(static_cast<std::size_t>(model.degree) + 1);
  for (int i = 0; i <= model.degree; ++i) c[i] = draw(model, seed, index, i);
  return IntPolynomial(std::move(c));
}

std::uint64_t tau_bound(const RandomModel& model) {
  if (model.kind != ModelKind::smoothed) return model.tau;
  return std::max(model.tau, tau_bound(*model.perturbation) + bitsize(model.sigma)) + 1;
}

Uniformity uniformity(const RandomModel& model) {
  switch (model.kind) {
    case ModelKind::uniform:
    case ModelKind::support:
      return {0.0, true};
    case ModelKind::signs:
    case ModelKind::exact_bitsize:
      // 2^tau equally likely values: u = ln((1 + 2^(tau+1)) / 2^tau).
      return {std::log(2.0 + std::ldexp(1.0, -static_cast<int>(std::min<std::uint64_t>(model.tau, 2000)))),
              true};
    case ModelKind::smoothed: {
      const Uniformity inner = uniformity(*model.perturbation);
      const double spread = std::max(static_cast<double>(model.tau) -
                                         static_cast<double>(tau_bound(*model.perturbation)),
                                     static_cast<double>(bitsize(model.sigma)));
      return {1.0 + spread + inner.value, false};
    }
  }
  return {};
}

std::vector<int> parse_signs(const std::string& text) {
  std::vector<int> out;
  if (text.find(',') != std::string::npos) {
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      if (tok == "1" || tok == "+1" || tok == "+") out.push_back(1);
      else if (tok == "-1" || tok == "-") out.push_back(-1);
      else throw InvalidModelError("bad sign '" + tok + "'");
    }
    return out;
  }
  for (char ch : text) {
    if (ch == '+') out.push_back(1);
    else if (ch == '-') out.push_back(-1);
    else throw InvalidModelError(std::string("bad sign '") + ch + "'");
  }
  return out;
}

std::vector<int> parse_support(const std::string& text) {
  std::vector<int> out;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw InvalidModelError("bad support index '" + tok + "'");
    }
  }
  return out;
}

}  // namespace descartes
