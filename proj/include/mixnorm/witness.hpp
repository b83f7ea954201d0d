#ifndef MIXNORM_WITNESS_HPP
#define MIXNORM_WITNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mixnorm/errors.hpp"
#include "mixnorm/exponents.hpp"
#include "mixnorm/opnorm.hpp"
#include "mixnorm/rng.hpp"
#include "mixnorm/tensor.hpp"

namespace mixnorm {

// Flat position of the diagonal entry (j,...,j) in a cubical rank-m tensor.
inline std::int64_t diagonal_flat_index(int m, std::int64_t n, std::int64_t j) {
  std::int64_t step = 0, power = 1;
  for (int k = 0; k < m; ++k) {
    step += power;
    power *= n;
  }
  return j * step;
}

// Σ_j c_j x_j^(1)···x_j^(m): entry (j,...,j) = c_j, zero elsewhere.
inline RealTensor diagonal_tensor(int m, std::int64_t n, std::vector<double> c = {}) {
  if (m < 1) throw DomainError("diagonal witness: arity must be >= 1");
  if (n < 1) throw DomainError("diagonal witness: n must be >= 1");
  if (c.empty()) c.assign(static_cast<std::size_t>(n), 1.0);
  if (static_cast<std::int64_t>(c.size()) != n)
    throw DomainError("diagonal witness: weight vector length must equal n");
  RealTensor T = RealTensor::zeros(std::vector<std::int64_t>(static_cast<std::size_t>(m), n));
  std::vector<double> entries = T.entries();
  for (std::int64_t j = 0; j < n; ++j)
    entries[static_cast<std::size_t>(diagonal_flat_index(m, n, j))] =
        c[static_cast<std::size_t>(j)];
  return RealTensor(T.dims(), std::move(entries));
}

// The ℓ_r-valued diagonal operator Σ_j c_j x_j^(1)···x_j^(m) e_j, stored as
// the rank-(m+1) tensor with entry (j,...,j,j) = c_j. Codomain dimension
// equals n, so the image basis vectors are the witnesses' target vectors.
inline VectorValuedOp<double> diagonal_vector_witness(int m, std::int64_t n, ExponentTuple p,
                                                      const ExtExp& r,
                                                      std::vector<double> c = {}) {
  VectorValuedOp<double> V{std::move(p), r, diagonal_tensor(m + 1, n, std::move(c))};
  V.validate();
  return V;
}

// First `pins` indices pinned to coordinate 1, remaining m−pins indices on
// the diagonal: entry (1,...,1,j,...,j) = 1 for j = 1..n.
inline RealTensor pinned_diagonal_tensor(int m, std::int64_t n, int pins) {
  if (m < 2) throw DomainError("pinned witness: arity must be >= 2");
  if (n < 1) throw DomainError("pinned witness: n must be >= 1");
  if (pins < 1 || pins > m - 1)
    throw DomainError("pinned witness: pin count must be in [1, m-1]");
  RealTensor T = RealTensor::zeros(std::vector<std::int64_t>(static_cast<std::size_t>(m), n));
  std::vector<double> entries = T.entries();
  const int free = m - pins;
  for (std::int64_t j = 0; j < n; ++j)
    entries[static_cast<std::size_t>(diagonal_flat_index(free, n, j))] = 1.0;
  return RealTensor(T.dims(), std::move(entries));
}

// Sylvester-recursive ±1 matrix of order 2^k:
//   H_0 = [1],  H_{k+1} = [[H_k, H_k], [H_k, -H_k]].
inline RealTensor hadamard_tensor(int k) {
  if (k < 0) throw DomainError("hadamard witness: order exponent must be >= 0");
  if (k > 13) throw BudgetError("hadamard witness: order 2^" + std::to_string(k) +
                                " exceeds the tensor budget");
  const std::int64_t n = std::int64_t{1} << k;
  std::vector<double> h(static_cast<std::size_t>(n * n));
  h[0] = 1.0;
  for (std::int64_t s = 1; s < n; s *= 2) {
    for (std::int64_t i = 0; i < s; ++i)
      for (std::int64_t j = 0; j < s; ++j) {
        const double v = h[static_cast<std::size_t>(i * n + j)];
        h[static_cast<std::size_t>(i * n + (j + s))] = v;
        h[static_cast<std::size_t>((i + s) * n + j)] = v;
        h[static_cast<std::size_t>((i + s) * n + (j + s))] = -v;
      }
  }
  return RealTensor({n, n}, std::move(h));
}

// i.i.d. ±1 entries from the documented deterministic generator; identical
// streams for identical (dims, seed) on every platform.
inline RealTensor random_sign_tensor(const std::vector<std::int64_t>& dims, std::uint64_t seed) {
  RealTensor shape = RealTensor::zeros(dims);  // validates dims and budget
  std::vector<double> entries(static_cast<std::size_t>(shape.size()));
  Rng rng(seed, 0);
  for (double& e : entries) e = static_cast<double>(rng.sign());
  return RealTensor(dims, std::move(entries));
}

// Parameters selecting one witness family; the config-file form of the
// generators above. n is the per-axis size (for the Sylvester family it
// must be a power of two).
struct FamilyDescriptor {
  std::string kind;  // diagonal | pinned-diagonal | hadamard | random-sign
  int m = 2;
  std::int64_t n = 2;
  int pins = 1;
  std::uint64_t seed = 0;
  std::optional<ExtExp> codomain_r;  // set: ℓ_r-valued diagonal witness

  friend bool operator==(const FamilyDescriptor&, const FamilyDescriptor&) = default;
};

inline bool is_power_of_two(std::int64_t n) { return n >= 1 && (n & (n - 1)) == 0; }

// Scalar-form instance of the family at size n with the given seed (the
// seed only matters for random-sign).
inline RealTensor scalar_instance(const FamilyDescriptor& f, std::int64_t n, std::uint64_t seed) {
  if (f.kind == "diagonal") return diagonal_tensor(f.m, n);
  if (f.kind == "pinned-diagonal") return pinned_diagonal_tensor(f.m, n, f.pins);
  if (f.kind == "hadamard") {
    if (!is_power_of_two(n))
      throw DomainError("hadamard witness: size " + std::to_string(n) + " is not a power of two");
    int k = 0;
    while ((std::int64_t{1} << k) < n) ++k;
    return hadamard_tensor(k);
  }
  if (f.kind == "random-sign")
    return random_sign_tensor(std::vector<std::int64_t>(static_cast<std::size_t>(f.m), n), seed);
  throw DomainError("unknown witness family '" + f.kind + "'");
}

}  // namespace mixnorm

#endif  // MIXNORM_WITNESS_HPP
