#ifndef MIXNORM_EXPONENTS_HPP
#define MIXNORM_EXPONENTS_HPP

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mixnorm/errors.hpp"
#include "mixnorm/rational.hpp"

namespace mixnorm {

// An exponent in (0, ∞], stored via its exact-rational reciprocal so that
// threshold comparisons at equality (e.g. q = 4 vs a cutoff of exactly 4)
// are decided without floating point. recip = 0 encodes ∞; recip ≥ 1
// encodes q ≤ 1, which is allowed only in mixed-norm exponent positions.
class ExtExp {
 public:
  ExtExp() : recip_(0, 1) {}  // default-constructs ∞

  static ExtExp inf() { return ExtExp(); }

  static ExtExp from_recip(const Rational& r) {
    if (r.is_negative()) throw DomainError("exponent: reciprocal must be >= 0, got " + r.str());
    ExtExp e;
    e.recip_ = r;
    return e;
  }

  static ExtExp of(std::int64_t num, std::int64_t den = 1) {
    return from_value(Rational(num, den));
  }

  static ExtExp from_value(const Rational& q) {
    if (q.is_zero() || q.is_negative())
      throw DomainError("exponent: value must be > 0, got " + q.str());
    return from_recip(q.reciprocal());
  }

  bool is_inf() const { return recip_.is_zero(); }
  const Rational& recip() const { return recip_; }

  Rational value() const {
    if (is_inf()) throw DomainError("exponent: infinite exponent has no rational value");
    return recip_.reciprocal();
  }

  double to_double() const {
    if (is_inf()) return std::numeric_limits<double>::infinity();
    return value().to_double();
  }

  double recip_double() const { return recip_.to_double(); }

  std::string str() const { return is_inf() ? "inf" : value().str(); }

  // Accepts "inf", integers, and "a/b"; finite decimals such as "1.9" are
  // parsed as exact rationals only when allow_decimal is set.
  static ExtExp parse(std::string_view text, bool allow_decimal = false) {
    if (text == "inf" || text == "Inf" || text == "INF") return inf();
    return from_value(Rational::parse(text, allow_decimal));
  }

  // Ordering follows exponent magnitude: larger exponent = smaller
  // reciprocal, with ∞ (recip 0) greatest. Valid across all of (0, ∞].
  friend bool operator==(const ExtExp& a, const ExtExp& b) { return a.recip_ == b.recip_; }
  friend std::strong_ordering operator<=>(const ExtExp& a, const ExtExp& b) {
    return b.recip_ <=> a.recip_;
  }

 private:
  Rational recip_;
};

// Ordered outermost-aggregation-first (display order q_1, q_2, ..., with
// the innermost exponent last).
using ExponentTuple = std::vector<ExtExp>;

enum class Field { real, complex };

inline std::string field_name(Field f) { return f == Field::real ? "real" : "complex"; }

inline Field parse_field(std::string_view s) {
  if (s == "real") return Field::real;
  if (s == "complex") return Field::complex;
  throw DomainError("field must be 'real' or 'complex', got '" + std::string(s) + "'");
}

// Arity, space exponents, summation order, and scalar field of one
// multilinear-form problem. sigma[k-1] names the tensor axis aggregated at
// nesting depth k: sigma front = outermost sum, sigma back = innermost.
struct ProblemSpec {
  int m = 2;
  ExponentTuple p;         // size m, each with recip in [0,1] (p_k in [1,∞])
  std::vector<int> sigma;  // permutation of {1..m}, 1-based axis labels
  Field field = Field::real;

  friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;

  void validate() const {
    if (m < 2) throw DomainError("problem spec: arity m must be >= 2");
    if (static_cast<int>(p.size()) != m)
      throw DomainError("problem spec: expected " + std::to_string(m) + " space exponents, got " +
                        std::to_string(p.size()));
    for (const ExtExp& e : p)
      if (e.recip() > Rational(1, 1))
        throw DomainError("problem spec: space exponent " + e.str() + " is below 1");
    if (static_cast<int>(sigma.size()) != m)
      throw DomainError("problem spec: sigma must have m entries");
    std::vector<bool> seen(static_cast<std::size_t>(m), false);
    for (int a : sigma) {
      if (a < 1 || a > m || seen[static_cast<std::size_t>(a - 1)])
        throw DomainError("problem spec: sigma is not a permutation of {1.." + std::to_string(m) + "}");
      seen[static_cast<std::size_t>(a - 1)] = true;
    }
  }
};

inline std::vector<int> identity_permutation(int m) {
  std::vector<int> s(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) s[static_cast<std::size_t>(k)] = k + 1;
  return s;
}

inline ProblemSpec make_spec(int m, ExponentTuple p, std::vector<int> sigma = {},
                             Field field = Field::real) {
  ProblemSpec spec;
  spec.m = m;
  spec.p = std::move(p);
  spec.sigma = sigma.empty() ? identity_permutation(m) : std::move(sigma);
  spec.field = field;
  spec.validate();
  return spec;
}

// Conjugate exponent: 1/p + 1/p* = 1, with 1* = ∞ and ∞* = 1.
inline ExtExp conjugate(const ExtExp& p) {
  if (p.recip() > Rational(1, 1))
    throw DomainError("conjugate: exponent " + p.str() + " is below 1");
  return ExtExp::from_recip(Rational(1, 1) - p.recip());
}

// Threshold δ^{s_1,...,s_k}: reciprocal is max{1 − Σ 1/s_i, 0}; the result
// is ∞ exactly when the reciprocals sum to at least 1.
inline ExtExp delta(std::span<const ExtExp> s) {
  if (s.empty()) throw DomainError("delta: empty exponent list");
  Rational rem(1, 1);
  for (const ExtExp& e : s) rem = rem - e.recip();
  if (rem.is_negative() || rem.is_zero()) return ExtExp::inf();
  return ExtExp::from_recip(rem);
}

inline ExtExp delta(const ExponentTuple& s) { return delta(std::span<const ExtExp>(s)); }

// Threshold λ_r^{s_1,...,s_k}: reciprocal is max{1/r − Σ 1/s_i, 0}.
// Requires r ≥ 2; r = ∞ is accepted (λ_∞ = ∞ always) so that thresholds
// remain defined when the governing cotype is infinite.
inline ExtExp lambda(const ExtExp& r, std::span<const ExtExp> s) {
  if (r.recip() > Rational(1, 2))
    throw DomainError("lambda: exponent r = " + r.str() + " is below 2");
  if (s.empty()) throw DomainError("lambda: empty exponent list");
  Rational rem = r.recip();
  for (const ExtExp& e : s) rem = rem - e.recip();
  if (rem.is_negative() || rem.is_zero()) return ExtExp::inf();
  return ExtExp::from_recip(rem);
}

inline ExtExp lambda(const ExtExp& r, const ExponentTuple& s) {
  return lambda(r, std::span<const ExtExp>(s));
}

// μ = min{p, 2}: reciprocal max{1/p, 1/2}.
inline ExtExp mu(const ExtExp& p_last) {
  if (p_last.recip() > Rational(1, 1))
    throw DomainError("mu: exponent " + p_last.str() + " is below 1");
  const Rational half(1, 2);
  return ExtExp::from_recip(p_last.recip() > half ? p_last.recip() : half);
}

// Cotype of the dual space of ℓ_p: max{p*, 2}, with p = 1 giving ∞ (the
// dual ℓ_∞ has no finite cotype; downstream thresholds then become ∞).
inline ExtExp dual_space_cotype(const ExtExp& p) {
  const ExtExp conj = conjugate(p);
  const Rational half(1, 2);
  return ExtExp::from_recip(conj.recip() < half ? conj.recip() : half);
}

// The exponent cutoffs governing which mixed (ℓ_{q_1},...,ℓ_{q_{m-1}},
// ℓ_{inner})-norms of an m-linear form are bounded by its operator norm
// uniformly in dimension.
struct OrlThresholds {
  ExtExp inner;            // conjugate(p_{σ(m)}): the forced innermost exponent
  ExponentTuple q_min;     // size m−1: lower bound for q_i at depth i
  ExtExp mu;               // min{p_{σ(m)}, 2}
  ExtExp dual_cotype;      // max{p_{σ(m)}*, 2}
  bool degenerate = false; // μ = 1: every finite q_i fails, only ∞ passes
};

inline OrlThresholds orl_thresholds(const ProblemSpec& spec) {
  spec.validate();
  const std::size_t m = static_cast<std::size_t>(spec.m);
  const ExtExp& p_inner = spec.p[static_cast<std::size_t>(spec.sigma[m - 1] - 1)];
  OrlThresholds out;
  out.inner = conjugate(p_inner);
  out.mu = mu(p_inner);
  out.dual_cotype = dual_space_cotype(p_inner);
  out.degenerate = out.mu == ExtExp::of(1);
  out.q_min.reserve(m - 1);
  for (std::size_t i = 0; i < m - 1; ++i) {
    ExponentTuple list;
    list.reserve(m - i);
    for (std::size_t k = i; k < m - 1; ++k)
      list.push_back(spec.p[static_cast<std::size_t>(spec.sigma[k] - 1)]);
    list.push_back(out.mu);
    out.q_min.push_back(delta(list));
  }
  return out;
}

struct AdmissibilityVerdict {
  OrlThresholds thresholds;
  std::vector<bool> position_pass;  // size m−1
  bool admissible = false;          // all positions pass
};

// Position i passes iff q_i ≥ q_min[i]; q_i = ∞ always passes. Entries
// with q_i < 1 are legal inputs and simply fail (thresholds are ≥ 1).
inline AdmissibilityVerdict orl_admissible(const ProblemSpec& spec, const ExponentTuple& q) {
  AdmissibilityVerdict v;
  v.thresholds = orl_thresholds(spec);
  if (q.size() != v.thresholds.q_min.size())
    throw DomainError("admissibility: expected " + std::to_string(v.thresholds.q_min.size()) +
                      " exponents, got " + std::to_string(q.size()));
  v.position_pass.resize(q.size());
  v.admissible = true;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const bool pass = q[i] >= v.thresholds.q_min[i];
    v.position_pass[i] = pass;
    v.admissible = v.admissible && pass;
  }
  return v;
}

// Cutoffs for vector-valued forms into a space of cotype r: position i
// gets λ_r over the tail (p_i, ..., p_m).
inline ExponentTuple cotcrit_thresholds(const ExponentTuple& p, const ExtExp& r) {
  if (p.empty()) throw DomainError("cotype thresholds: empty exponent list");
  ExponentTuple out;
  out.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    ExponentTuple tail(p.begin() + static_cast<std::ptrdiff_t>(i), p.end());
    out.push_back(lambda(r, tail));
  }
  return out;
}

// Parses "a,b,c" into exponents; p-style lists reject decimals so that the
// calculus stays exact, q-style lists accept them (e.g. "1.2" = 6/5).
inline ExponentTuple parse_exponent_list(std::string_view text, bool allow_decimal = false) {
  ExponentTuple out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    out.push_back(ExtExp::parse(text.substr(start, comma - start), allow_decimal));
    start = comma + 1;
  }
  return out;
}

}  // namespace mixnorm

#endif  // MIXNORM_EXPONENTS_HPP
