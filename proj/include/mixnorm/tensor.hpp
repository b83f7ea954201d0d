#ifndef MIXNORM_TENSOR_HPP
#define MIXNORM_TENSOR_HPP

#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mixnorm/errors.hpp"
#include "mixnorm/exponents.hpp"

namespace mixnorm {

template <typename S>
concept TensorScalar = std::same_as<S, double> || std::same_as<S, std::complex<double>>;

inline double abs_value(double x) { return std::abs(x); }
inline double abs_value(const std::complex<double>& z) { return std::abs(z); }

inline bool is_finite_scalar(double x) { return std::isfinite(x); }
inline bool is_finite_scalar(const std::complex<double>& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Hard cap on dense tensor size (entries, not bytes); desk scale.
inline constexpr std::int64_t kMaxTensorEntries = 100'000'000;

// Dense row-major coefficient array of an m-linear form: entry at
// (j_1,...,j_m) is A(e_{j_1},...,e_{j_m}). Immutable after construction.
template <TensorScalar Scalar>
class Tensor {
 public:
  Tensor(std::vector<std::int64_t> dims, std::vector<Scalar> entries)
      : dims_(std::move(dims)), entries_(std::move(entries)) {
    if (dims_.empty()) throw ShapeError("tensor: rank must be >= 1");
    std::int64_t total = 1;
    for (std::int64_t d : dims_) {
      if (d < 1) throw ShapeError("tensor: every dimension must be >= 1");
      if (d > kMaxTensorEntries || total > kMaxTensorEntries / d)
        throw BudgetError("tensor: entry count exceeds budget of " +
                          std::to_string(kMaxTensorEntries));
      total *= d;
    }
    if (static_cast<std::int64_t>(entries_.size()) != total)
      throw ShapeError("tensor: expected " + std::to_string(total) + " entries, got " +
                       std::to_string(entries_.size()));
    for (const Scalar& e : entries_)
      if (!is_finite_scalar(e)) throw DomainError("tensor: entries must be finite");
  }

  static Tensor zeros(std::vector<std::int64_t> dims) {
    std::int64_t total = 1;
    for (std::int64_t d : dims) {
      if (d < 1) throw ShapeError("tensor: every dimension must be >= 1");
      if (d > kMaxTensorEntries || total > kMaxTensorEntries / d)
        throw BudgetError("tensor: entry count exceeds budget of " +
                          std::to_string(kMaxTensorEntries));
      total *= d;
    }
    return Tensor(std::move(dims), std::vector<Scalar>(static_cast<std::size_t>(total)));
  }

  int rank() const { return static_cast<int>(dims_.size()); }
  const std::vector<std::int64_t>& dims() const { return dims_; }
  std::int64_t dim(int axis) const { return dims_[static_cast<std::size_t>(axis)]; }
  std::int64_t size() const { return static_cast<std::int64_t>(entries_.size()); }
  const std::vector<Scalar>& entries() const { return entries_; }
  Scalar at_flat(std::int64_t i) const { return entries_[static_cast<std::size_t>(i)]; }

  // Row-major strides: last axis contiguous.
  std::vector<std::int64_t> strides() const {
    std::vector<std::int64_t> s(dims_.size());
    std::int64_t acc = 1;
    for (std::size_t k = dims_.size(); k-- > 0;) {
      s[k] = acc;
      acc *= dims_[k];
    }
    return s;
  }

  std::int64_t flat_index(const std::vector<std::int64_t>& idx) const {
    if (idx.size() != dims_.size()) throw ShapeError("tensor: index rank mismatch");
    std::int64_t flat = 0;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      if (idx[k] < 0 || idx[k] >= dims_[k]) throw ShapeError("tensor: index out of range");
      flat = flat * dims_[k] + idx[k];
    }
    return flat;
  }

  Scalar at(const std::vector<std::int64_t>& idx) const {
    return entries_[static_cast<std::size_t>(flat_index(idx))];
  }

  std::vector<double> abs_entries() const {
    std::vector<double> out(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) out[i] = abs_value(entries_[i]);
    return out;
  }

 private:
  std::vector<std::int64_t> dims_;
  std::vector<Scalar> entries_;
};

using RealTensor = Tensor<double>;
using ComplexTensor = Tensor<std::complex<double>>;
using TensorVariant = std::variant<RealTensor, ComplexTensor>;

// ℓ_q norm of the strided fiber (base[0], base[stride], ...), absolute
// values applied. Power sums are max-normalized: with M = max|v| the result
// is M·(Σ (|v_j|/M)^q)^{1/q}, which avoids overflow for extreme q and makes
// fibers holding a single nonzero reduce to exactly M (pow(1,q) = 1 and
// pow(0,q) = 0 are exact), so diagonal-tensor identities hold bit-for-bit.
inline double lp_norm_strided(const double* base, std::int64_t len, std::int64_t stride,
                              const ExtExp& q) {
  double peak = 0.0;
  for (std::int64_t j = 0; j < len; ++j) {
    const double a = std::abs(base[j * stride]);
    if (a > peak) peak = a;
  }
  if (q.is_inf() || peak == 0.0) return peak;
  const double qd = q.to_double();
  long double acc = 0.0L;
  for (std::int64_t j = 0; j < len; ++j) {
    const double a = std::abs(base[j * stride]);
    if (a != 0.0) acc += std::pow(a / peak, qd);
  }
  return peak * std::pow(static_cast<double>(acc), q.recip_double());
}

inline double lp_norm(const std::vector<double>& v, const ExtExp& q) {
  if (v.empty()) throw ShapeError("lp_norm: empty vector");
  return lp_norm_strided(v.data(), static_cast<std::int64_t>(v.size()), 1, q);
}

// Axis aggregation order and exponents of one nested norm, outermost first:
// order.front() is aggregated last (outermost sum), order.back() first.
struct MixedNormSpec {
  std::vector<int> order;  // permutation of {1..m}, 1-based axis labels
  ExponentTuple exps;      // length m, aligned with order

  void validate(int rank) const {
    if (static_cast<int>(order.size()) != rank || static_cast<int>(exps.size()) != rank)
      throw ShapeError("mixed norm: order/exponent length must equal tensor rank " +
                       std::to_string(rank));
    std::vector<bool> seen(static_cast<std::size_t>(rank), false);
    for (int a : order) {
      if (a < 1 || a > rank || seen[static_cast<std::size_t>(a - 1)])
        throw DomainError("mixed norm: order is not a permutation of {1.." +
                          std::to_string(rank) + "}");
      seen[static_cast<std::size_t>(a - 1)] = true;
    }
  }
};

inline MixedNormSpec make_mixed_spec(std::vector<int> order, ExponentTuple exps) {
  MixedNormSpec s;
  s.order = std::move(order);
  s.exps = std::move(exps);
  return s;
}

// Nested (ℓ_{q_1},...,ℓ_{q_m})-norm: absolute values of entries, innermost
// axis order[m] aggregated with exps[m] first, then outward to order[1].
// Each pass materializes the next smaller tensor of fiber norms.
template <TensorScalar Scalar>
double mixed_norm(const Tensor<Scalar>& T, const MixedNormSpec& spec) {
  spec.validate(T.rank());
  std::vector<double> cur = T.abs_entries();
  std::vector<std::int64_t> cur_dims = T.dims();
  // position of each original axis in cur_dims; -1 once reduced
  std::vector<int> pos(static_cast<std::size_t>(T.rank()));
  for (int k = 0; k < T.rank(); ++k) pos[static_cast<std::size_t>(k)] = k;

  for (std::size_t depth = spec.order.size(); depth-- > 0;) {
    const int axis = spec.order[depth] - 1;
    const int p = pos[static_cast<std::size_t>(axis)];
    const ExtExp& q = spec.exps[depth];

    std::int64_t outer = 1, inner = 1;
    const std::int64_t len = cur_dims[static_cast<std::size_t>(p)];
    for (int k = 0; k < p; ++k) outer *= cur_dims[static_cast<std::size_t>(k)];
    for (std::size_t k = static_cast<std::size_t>(p) + 1; k < cur_dims.size(); ++k)
      inner *= cur_dims[k];

    std::vector<double> next(static_cast<std::size_t>(outer * inner));
    for (std::int64_t o = 0; o < outer; ++o)
      for (std::int64_t i = 0; i < inner; ++i)
        next[static_cast<std::size_t>(o * inner + i)] =
            lp_norm_strided(cur.data() + o * len * inner + i, len, inner, q);

    cur = std::move(next);
    cur_dims.erase(cur_dims.begin() + p);
    pos[static_cast<std::size_t>(axis)] = -1;
    for (auto& pp : pos)
      if (pp > p) --pp;
  }
  return cur[0];
}

// ℓ_q norm of all entries flattened; equals mixed_norm with every exponent q.
template <TensorScalar Scalar>
double flat_norm(const Tensor<Scalar>& T, const ExtExp& q) {
  const std::vector<double> a = T.abs_entries();
  return lp_norm_strided(a.data(), static_cast<std::int64_t>(a.size()), 1, q);
}

template <TensorScalar Scalar>
Tensor<Scalar> scale(const Tensor<Scalar>& T, Scalar factor) {
  std::vector<Scalar> e = T.entries();
  for (Scalar& x : e) x *= factor;
  return Tensor<Scalar>(T.dims(), std::move(e));
}

// Embeds T at the origin of a larger zero tensor. Zero padding changes no
// mixed norm, and the operator norm is also preserved (ball inclusion).
template <TensorScalar Scalar>
Tensor<Scalar> embed(const Tensor<Scalar>& T, const std::vector<std::int64_t>& new_dims) {
  if (static_cast<int>(new_dims.size()) != T.rank())
    throw ShapeError("embed: rank mismatch");
  for (int k = 0; k < T.rank(); ++k)
    if (new_dims[static_cast<std::size_t>(k)] < T.dim(k))
      throw ShapeError("embed: target dimension smaller than source");
  Tensor<Scalar> out = Tensor<Scalar>::zeros(new_dims);
  std::vector<Scalar> entries = out.entries();
  const std::vector<std::int64_t> src_dims = T.dims();
  std::vector<std::int64_t> idx(src_dims.size(), 0);
  const std::int64_t n = T.size();
  for (std::int64_t flat = 0; flat < n; ++flat) {
    std::int64_t dst = 0;
    for (std::size_t k = 0; k < new_dims.size(); ++k) dst = dst * new_dims[k] + idx[k];
    entries[static_cast<std::size_t>(dst)] = T.at_flat(flat);
    for (std::size_t k = idx.size(); k-- > 0;) {
      if (++idx[k] < src_dims[k]) break;
      idx[k] = 0;
    }
  }
  return Tensor<Scalar>(new_dims, std::move(entries));
}

// Extracts the sub-block [lo, lo+sizes) in every axis.
template <TensorScalar Scalar>
Tensor<Scalar> slice(const Tensor<Scalar>& T, const std::vector<std::int64_t>& lo,
                     const std::vector<std::int64_t>& sizes) {
  if (static_cast<int>(lo.size()) != T.rank() || static_cast<int>(sizes.size()) != T.rank())
    throw ShapeError("slice: rank mismatch");
  for (int k = 0; k < T.rank(); ++k) {
    const std::size_t ks = static_cast<std::size_t>(k);
    if (lo[ks] < 0 || sizes[ks] < 1 || lo[ks] + sizes[ks] > T.dim(k))
      throw ShapeError("slice: window out of range on axis " + std::to_string(k + 1));
  }
  std::int64_t total = 1;
  for (std::int64_t s : sizes) total *= s;
  std::vector<Scalar> entries(static_cast<std::size_t>(total));
  std::vector<std::int64_t> idx(sizes.size(), 0);
  std::vector<std::int64_t> src(sizes.size());
  for (std::int64_t flat = 0; flat < total; ++flat) {
    for (std::size_t k = 0; k < sizes.size(); ++k) src[k] = lo[k] + idx[k];
    entries[static_cast<std::size_t>(flat)] = T.at(src);
    for (std::size_t k = idx.size(); k-- > 0;) {
      if (++idx[k] < sizes[k]) break;
      idx[k] = 0;
    }
  }
  return Tensor<Scalar>(sizes, std::move(entries));
}

// Full contraction A(x^{(1)},...,x^{(m)}): each x^{(k)} has length dim(k).
template <TensorScalar Scalar>
Scalar contract_all(const Tensor<Scalar>& T, const std::vector<std::vector<Scalar>>& xs) {
  if (static_cast<int>(xs.size()) != T.rank())
    throw ShapeError("contract: need one vector per axis");
  for (int k = 0; k < T.rank(); ++k)
    if (static_cast<std::int64_t>(xs[static_cast<std::size_t>(k)].size()) != T.dim(k))
      throw ShapeError("contract: vector length mismatch on axis " + std::to_string(k + 1));
  Scalar total{};
  std::vector<std::int64_t> idx(static_cast<std::size_t>(T.rank()), 0);
  const std::int64_t n = T.size();
  const std::vector<std::int64_t>& dims = T.dims();
  for (std::int64_t flat = 0; flat < n; ++flat) {
    Scalar w = T.at_flat(flat);
    for (std::size_t k = 0; k < idx.size(); ++k)
      w *= xs[k][static_cast<std::size_t>(idx[k])];
    total += w;
    for (std::size_t k = idx.size(); k-- > 0;) {
      if (++idx[k] < dims[k]) break;
      idx[k] = 0;
    }
  }
  return total;
}

// Contraction over every axis except `skip_axis` (0-based): returns the
// length dim(skip_axis) coefficient vector of the induced linear functional
// in that slot. xs[skip_axis] is ignored.
template <TensorScalar Scalar>
std::vector<Scalar> contract_except(const Tensor<Scalar>& T,
                                    const std::vector<std::vector<Scalar>>& xs, int skip_axis) {
  if (static_cast<int>(xs.size()) != T.rank())
    throw ShapeError("contract: need one vector per axis");
  if (skip_axis < 0 || skip_axis >= T.rank()) throw ShapeError("contract: bad axis");
  for (int k = 0; k < T.rank(); ++k)
    if (k != skip_axis &&
        static_cast<std::int64_t>(xs[static_cast<std::size_t>(k)].size()) != T.dim(k))
      throw ShapeError("contract: vector length mismatch on axis " + std::to_string(k + 1));
  std::vector<Scalar> g(static_cast<std::size_t>(T.dim(skip_axis)), Scalar{});
  std::vector<std::int64_t> idx(static_cast<std::size_t>(T.rank()), 0);
  const std::int64_t n = T.size();
  const std::vector<std::int64_t>& dims = T.dims();
  for (std::int64_t flat = 0; flat < n; ++flat) {
    Scalar w = T.at_flat(flat);
    for (std::size_t k = 0; k < idx.size(); ++k)
      if (static_cast<int>(k) != skip_axis) w *= xs[k][static_cast<std::size_t>(idx[k])];
    g[static_cast<std::size_t>(idx[static_cast<std::size_t>(skip_axis)])] += w;
    for (std::size_t k = idx.size(); k-- > 0;) {
      if (++idx[k] < dims[k]) break;
      idx[k] = 0;
    }
  }
  return g;
}

}  // namespace mixnorm

#endif  // MIXNORM_TENSOR_HPP
