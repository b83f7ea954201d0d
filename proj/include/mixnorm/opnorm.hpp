#ifndef MIXNORM_OPNORM_HPP
#define MIXNORM_OPNORM_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mixnorm/errors.hpp"
#include "mixnorm/exponents.hpp"
#include "mixnorm/parallel.hpp"
#include "mixnorm/rng.hpp"
#include "mixnorm/tensor.hpp"

namespace mixnorm {

enum class OpNormMethod { exact_enumeration, diagonal_closed_form, alternating_ascent };

inline std::string method_name(OpNormMethod m) {
  switch (m) {
    case OpNormMethod::exact_enumeration: return "exact-enumeration";
    case OpNormMethod::diagonal_closed_form: return "diagonal-closed-form";
    case OpNormMethod::alternating_ascent: return "alternating-ascent";
  }
  return "unknown";
}

// sup |A(x^(1),...,x^(m))| over the unit ℓ_{p_k} balls: the computed value,
// how it was obtained, and the maximizing vectors. Ascent values are lower
// bounds (exact = false); enumeration and closed-form values are exact.
template <TensorScalar Scalar>
struct OpNormEstimate {
  double value = 0.0;
  OpNormMethod method = OpNormMethod::alternating_ascent;
  bool exact = false;
  std::vector<std::vector<Scalar>> certificate;  // one unit vector per slot
  int starts = 0;
  int sweeps = 0;
};

// |A| evaluated at the estimate's certificate; by the certificate contract
// this reproduces estimate.value within 1e-10 relative.
template <TensorScalar Scalar>
double certificate_value(const Tensor<Scalar>& T, const OpNormEstimate<Scalar>& e) {
  return abs_value(contract_all(T, e.certificate));
}

// The scalar of unit modulus that rotates g onto the nonnegative reals:
// multiplying by it maximizes Re(g·x) under |x| ≤ 1. sign(0) = +1.
inline double align_phase(double g) { return g < 0.0 ? -1.0 : 1.0; }
inline std::complex<double> align_phase(const std::complex<double>& g) {
  const double a = std::abs(g);
  if (a == 0.0) return {1.0, 0.0};
  return std::conj(g) / a;
}

namespace detail {

template <TensorScalar Scalar>
std::vector<double> abs_of(const std::vector<Scalar>& v) {
  std::vector<double> a(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) a[i] = abs_value(v[i]);
  return a;
}

template <TensorScalar Scalar>
std::vector<Scalar> unit_basis_vector(std::size_t n, std::size_t j) {
  std::vector<Scalar> e(n, Scalar{});
  e[j] = Scalar{1.0};
  return e;
}

}  // namespace detail

// Exact maximizer of Re Σ g_j x_j over the unit ℓ_p ball (Hölder duality):
//   p = ∞       x_j = phase alignment of g_j;
//   p = 1       unit mass on the largest |g_j| (lowest index on ties);
//   1 < p < ∞   |x_j| ∝ |g_j|^{p*-1}, explicitly renormalized to unit ℓ_p.
// The attained maximum is ‖g‖_{p*}. A zero g returns e_1 (any feasible
// point is optimal).
template <TensorScalar Scalar>
std::vector<Scalar> holder_extremizer(const std::vector<Scalar>& g, const ExtExp& p) {
  if (g.empty()) throw ShapeError("extremizer: empty vector");
  if (p.recip() > Rational(1, 1))
    throw DomainError("extremizer: exponent " + p.str() + " is below 1");
  const std::size_t n = g.size();
  const std::vector<double> a = detail::abs_of(g);

  if (p.is_inf()) {
    std::vector<Scalar> x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = align_phase(g[j]);
    return x;
  }

  std::size_t peak_at = 0;
  for (std::size_t j = 1; j < n; ++j)
    if (a[j] > a[peak_at]) peak_at = j;
  const double peak = a[peak_at];
  if (peak == 0.0) return detail::unit_basis_vector<Scalar>(n, 0);

  if (p.recip() == Rational(1, 1)) {  // p = 1
    std::vector<Scalar> x(n, Scalar{});
    x[peak_at] = align_phase(g[peak_at]);
    return x;
  }

  const double conj_exp = conjugate(p).to_double() - 1.0;  // p* − 1 > 0
  std::vector<double> w(n);
  for (std::size_t j = 0; j < n; ++j)
    w[j] = a[j] == 0.0 ? 0.0 : std::pow(a[j] / peak, conj_exp);
  const double wn = lp_norm(w, p);
  std::vector<Scalar> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = align_phase(g[j]) * Scalar{w[j] / wn};
  return x;
}

// Exact operator norm of a real form over all-ℓ_∞ balls: the supremum is
// attained at sign vectors, so enumerate axes 2..m (first component pinned
// to +1 by homogeneity — Π 2^{n_k - 1} assignments, checked against
// budget) and solve axis 1 in closed form (x = componentwise sign of the
// contracted fiber, value = its ℓ_1 norm).
inline OpNormEstimate<double> opnorm_exact_signs(const RealTensor& T, std::int64_t budget) {
  const int m = T.rank();
  int bits = 0;
  for (int k = 1; k < m; ++k) bits += static_cast<int>(T.dim(k)) - 1;
  if (bits >= 62 || (std::int64_t{1} << bits) > budget)
    throw BudgetError("sign enumeration needs 2^" + std::to_string(bits) +
                      " assignments, over budget " + std::to_string(budget));
  const std::int64_t total = std::int64_t{1} << bits;

  std::vector<std::vector<double>> xs(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k)
    xs[static_cast<std::size_t>(k)].assign(static_cast<std::size_t>(T.dim(k)), 1.0);

  double best = -1.0;
  std::vector<std::vector<double>> best_xs;
  std::vector<double> best_fiber;
  for (std::int64_t a = 0; a < total; ++a) {
    std::int64_t rest = a;
    for (int k = 1; k < m; ++k) {
      std::vector<double>& x = xs[static_cast<std::size_t>(k)];
      x[0] = 1.0;
      for (std::int64_t j = 1; j < T.dim(k); ++j) {
        x[static_cast<std::size_t>(j)] = (rest & 1) ? -1.0 : 1.0;
        rest >>= 1;
      }
    }
    const std::vector<double> v = contract_except(T, xs, 0);
    long double sum = 0.0L;
    for (double vj : v) sum += std::abs(vj);
    const double value = static_cast<double>(sum);
    if (value > best) {
      best = value;
      best_xs = xs;
      best_fiber = v;
    }
  }

  OpNormEstimate<double> est;
  est.method = OpNormMethod::exact_enumeration;
  est.exact = true;
  est.value = best;
  est.certificate = std::move(best_xs);
  for (std::size_t j = 0; j < best_fiber.size(); ++j)
    est.certificate[0][j] = align_phase(best_fiber[j]);
  return est;
}

// True for square tensors supported on the main diagonal (includes rank 1).
template <TensorScalar Scalar>
bool is_diagonal(const Tensor<Scalar>& T) {
  const std::int64_t n = T.dim(0);
  for (int k = 1; k < T.rank(); ++k)
    if (T.dim(k) != n) return false;
  std::vector<std::int64_t> idx(static_cast<std::size_t>(T.rank()), 0);
  const std::int64_t total = T.size();
  for (std::int64_t flat = 0; flat < total; ++flat) {
    bool on_diag = true;
    for (std::size_t k = 1; k < idx.size(); ++k) on_diag = on_diag && idx[k] == idx[0];
    if (!on_diag && abs_value(T.at_flat(flat)) != 0.0) return false;
    for (std::size_t k = idx.size(); k-- > 0;) {
      if (++idx[k] < n) break;
      idx[k] = 0;
    }
  }
  return true;
}

template <TensorScalar Scalar>
std::vector<Scalar> diagonal_of(const Tensor<Scalar>& T) {
  const std::int64_t n = T.dim(0);
  std::vector<Scalar> c(static_cast<std::size_t>(n));
  std::vector<std::int64_t> idx(static_cast<std::size_t>(T.rank()));
  for (std::int64_t j = 0; j < n; ++j) {
    std::fill(idx.begin(), idx.end(), j);
    c[static_cast<std::size_t>(j)] = T.at(idx);
  }
  return c;
}

// Exact norm of the diagonal form Σ_j c_j x_j^(1)···x_j^(m) on ℓ_{p_1} ×
// ... × ℓ_{p_m}. With t defined by 1/t = 1 − Σ 1/p_k the generalized
// Hölder bound gives ‖A‖ ≤ ℓ_t(|c|), attained by |x_j^(k)| ∝ |c_j|^{t/p_k};
// when Σ 1/p_k ≥ 1 the value degrades to max|c_j|, attained at basis
// vectors. Slot 1 carries the phase alignment of c.
template <TensorScalar Scalar>
OpNormEstimate<Scalar> opnorm_diagonal_closed_form(const std::vector<Scalar>& c,
                                                   const ExponentTuple& p) {
  if (c.empty()) throw ShapeError("diagonal norm: empty weight vector");
  if (p.empty()) throw DomainError("diagonal norm: empty exponent list");
  for (const ExtExp& e : p)
    if (e.recip() > Rational(1, 1))
      throw DomainError("diagonal norm: space exponent " + e.str() + " is below 1");

  const std::size_t n = c.size();
  const std::vector<double> a = detail::abs_of(c);
  Rational recip_sum(0, 1);
  for (const ExtExp& e : p) recip_sum = recip_sum + e.recip();

  OpNormEstimate<Scalar> est;
  est.method = OpNormMethod::diagonal_closed_form;
  est.exact = true;
  est.certificate.assign(p.size(), {});

  std::size_t peak_at = 0;
  for (std::size_t j = 1; j < n; ++j)
    if (a[j] > a[peak_at]) peak_at = j;
  const double peak = a[peak_at];

  if (recip_sum >= Rational(1, 1)) {  // sup-norm regime
    est.value = peak;
    for (std::size_t k = 0; k < p.size(); ++k)
      est.certificate[k] = detail::unit_basis_vector<Scalar>(n, peak_at);
    est.certificate[0][peak_at] = align_phase(c[peak_at]);
    return est;
  }

  const ExtExp t = ExtExp::from_recip(Rational(1, 1) - recip_sum);
  est.value = lp_norm(a, t);
  if (peak == 0.0) {
    for (std::size_t k = 0; k < p.size(); ++k)
      est.certificate[k] = detail::unit_basis_vector<Scalar>(n, 0);
    return est;
  }
  const double td = t.to_double();
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double expo = td * p[k].recip_double();  // t / p_k
    std::vector<double> w(n);
    for (std::size_t j = 0; j < n; ++j)
      w[j] = a[j] == 0.0 ? 0.0 : std::pow(a[j] / peak, expo);
    const double wn = lp_norm(w, p[k]);
    std::vector<Scalar>& x = est.certificate[k];
    x.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = Scalar{w[j] / wn};
      if (k == 0) x[j] *= align_phase(c[j]);
    }
  }
  return est;
}

struct AscentOptions {
  int starts = 32;
  std::uint64_t seed = 0;
  double tol = 1e-12;   // relative sweep-improvement stopping threshold
  int max_sweeps = 200;
  int jobs = 1;
};

namespace detail {

template <TensorScalar Scalar>
Scalar random_component(Rng& rng) {
  if constexpr (std::same_as<Scalar, double>) {
    return rng.normal();
  } else {
    return Scalar{rng.normal(), rng.normal()};
  }
}

template <TensorScalar Scalar>
struct AscentStart {
  double value = 0.0;
  int sweeps = 0;
  std::vector<std::vector<Scalar>> xs;
};

// One seeded start of the alternating maximization. Each slot update
// replaces x^(k) by the exact ℓ_{p_k} extremizer of the induced linear
// functional, after which the objective equals that functional's dual
// norm; the sequence is nondecreasing, so a drop beyond rounding slack
// indicates a library bug.
template <TensorScalar Scalar>
AscentStart<Scalar> run_ascent_start(const Tensor<Scalar>& T, const ExponentTuple& p,
                                     const AscentOptions& opt, std::uint64_t stream) {
  const int m = T.rank();
  Rng rng(opt.seed, stream);
  AscentStart<Scalar> s;
  s.xs.resize(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    std::vector<Scalar>& x = s.xs[static_cast<std::size_t>(k)];
    x.resize(static_cast<std::size_t>(T.dim(k)));
    for (Scalar& v : x) v = random_component<Scalar>(rng);
    const double nrm = lp_norm(abs_of(x), p[static_cast<std::size_t>(k)]);
    if (nrm == 0.0) {
      x = unit_basis_vector<Scalar>(x.size(), 0);
    } else {
      for (Scalar& v : x) v *= Scalar{1.0 / nrm};
    }
  }

  double prev = 0.0;
  for (int sweep = 1; sweep <= opt.max_sweeps; ++sweep) {
    double obj = 0.0;
    for (int k = 0; k < m; ++k) {
      const std::vector<Scalar> g = contract_except(T, s.xs, k);
      const std::vector<double> ga = abs_of(g);
      double gpeak = 0.0;
      for (double v : ga) gpeak = std::max(gpeak, v);
      if (gpeak == 0.0) continue;  // functional vanished; any feasible x is optimal
      s.xs[static_cast<std::size_t>(k)] = holder_extremizer(g, p[static_cast<std::size_t>(k)]);
      obj = lp_norm(ga, conjugate(p[static_cast<std::size_t>(k)]));
    }
    s.sweeps = sweep;
    if (obj < prev * (1.0 - 1e-9))
      throw HardAssertionError("ascent objective decreased within a start");
    if (obj - prev <= opt.tol * std::max(1.0, obj)) {
      prev = obj;
      break;
    }
    prev = obj;
  }
  s.value = abs_value(contract_all(T, s.xs));
  return s;
}

}  // namespace detail

// Multistart alternating maximization of |A| over the product of unit
// ℓ_{p_k} balls. Every reported value is a certified lower bound on the
// norm (the certificate attains it); exactness is never claimed. Starts
// use independent (seed, start-index) streams and are reduced in index
// order, so results do not depend on the worker count.
template <TensorScalar Scalar>
OpNormEstimate<Scalar> opnorm_ascent(const Tensor<Scalar>& T, const ExponentTuple& p,
                                     const AscentOptions& opt = {}) {
  const int m = T.rank();
  if (static_cast<int>(p.size()) != m)
    throw ShapeError("ascent: need one exponent per axis");
  for (const ExtExp& e : p)
    if (e.recip() > Rational(1, 1))
      throw DomainError("ascent: space exponent " + e.str() + " is below 1");
  if (opt.starts < 1) throw DomainError("ascent: starts must be >= 1");

  OpNormEstimate<Scalar> est;
  est.method = OpNormMethod::alternating_ascent;
  est.exact = false;
  est.starts = opt.starts;

  bool all_zero = true;
  for (std::int64_t i = 0; i < T.size() && all_zero; ++i)
    all_zero = abs_value(T.at_flat(i)) == 0.0;
  if (all_zero) {
    est.value = 0.0;
    for (int k = 0; k < m; ++k)
      est.certificate.push_back(
          detail::unit_basis_vector<Scalar>(static_cast<std::size_t>(T.dim(k)), 0));
    return est;
  }

  std::vector<detail::AscentStart<Scalar>> runs(static_cast<std::size_t>(opt.starts));
  parallel_for(opt.starts, opt.jobs, [&](std::int64_t i) {
    runs[static_cast<std::size_t>(i)] =
        detail::run_ascent_start(T, p, opt, static_cast<std::uint64_t>(i));
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < runs.size(); ++i)
    if (runs[i].value > runs[best].value) best = i;  // ties keep the lowest start
  est.value = runs[best].value;
  est.sweeps = runs[best].sweeps;
  est.certificate = std::move(runs[best].xs);
  return est;
}

// An m-linear operator into ℓ_r (codomain dimension d): stored as the
// (m+1)-axis coefficient tensor with the codomain coordinate last.
template <TensorScalar Scalar>
struct VectorValuedOp {
  ExponentTuple p;       // domain exponents p_1..p_m
  ExtExp r;              // codomain exponent, r ≥ 1
  Tensor<Scalar> coeffs; // rank m+1

  int arity() const { return coeffs.rank() - 1; }
  std::int64_t codomain_dim() const { return coeffs.dim(coeffs.rank() - 1); }

  void validate() const {
    if (coeffs.rank() < 2) throw ShapeError("vector-valued op: coefficient rank must be >= 2");
    if (static_cast<int>(p.size()) != arity())
      throw ShapeError("vector-valued op: need one domain exponent per input axis");
    for (const ExtExp& e : p)
      if (e.recip() > Rational(1, 1))
        throw DomainError("vector-valued op: domain exponent " + e.str() + " is below 1");
    if (r.recip() > Rational(1, 1))
      throw DomainError("vector-valued op: codomain exponent " + r.str() + " is below 1");
  }
};

template <TensorScalar Scalar>
struct LiftedForm {
  Tensor<Scalar> coeffs;  // the same (m+1)-axis tensor, read as a scalar form
  ExponentTuple p;        // (p_1, ..., p_m, r*)
};

// ‖v‖_r = sup over the unit ℓ_{r*} ball of the pairing, so an ℓ_r-valued
// m-linear operator and the scalar (m+1)-linear form sharing its
// coefficients have equal norms. All opnorm_* machinery then applies.
template <TensorScalar Scalar>
LiftedForm<Scalar> lift_vector_valued(const VectorValuedOp<Scalar>& V) {
  V.validate();
  LiftedForm<Scalar> L{V.coeffs, V.p};
  L.p.push_back(conjugate(V.r));
  return L;
}

// Preferred dispatch: exact methods whenever the instance qualifies
// (diagonal support → closed form; real all-∞ → sign enumeration, which
// propagates BudgetError rather than silently degrading), ascent otherwise.
template <TensorScalar Scalar>
OpNormEstimate<Scalar> opnorm_best(const Tensor<Scalar>& T, const ExponentTuple& p,
                                   std::int64_t budget, const AscentOptions& opt = {}) {
  if (static_cast<int>(p.size()) != T.rank())
    throw ShapeError("opnorm: need one exponent per axis");
  if (is_diagonal(T)) return opnorm_diagonal_closed_form(diagonal_of(T), p);
  if constexpr (std::same_as<Scalar, double>) {
    bool all_inf = true;
    for (const ExtExp& e : p) all_inf = all_inf && e.is_inf();
    if (all_inf) return opnorm_exact_signs(T, budget);
  }
  return opnorm_ascent(T, p, opt);
}

}  // namespace mixnorm

#endif  // MIXNORM_OPNORM_HPP
