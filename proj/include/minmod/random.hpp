#pragma once

#include <cstdint>
#include <random>

#include "minmod/dense_operator.hpp"
#include "minmod/subspace.hpp"

namespace minmod {

// splitmix64 of (seed, index): per-trial seeds that do not depend on the
// order in which trials run.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi);
  std::size_t uniform_index(std::size_t lo, std::size_t hi);  // inclusive
  // exp of a uniform draw on [log lo, log hi]
  double log_uniform(double lo, double hi);
  // Standard complex Gaussian: real and imaginary parts N(0, 1/2).
  cplx complex_normal();

  Vector gaussian_vector(std::size_t n);
  Vector unit_vector(std::size_t n);
  Matrix gaussian_matrix(std::size_t rows, std::size_t cols);

 private:
  std::mt19937_64 engine_;
};

// G* G + eps I with G complex Gaussian scaled by 1/sqrt(n), so ||P|| = O(1),
// and eps log-uniform in [1e-3, 1].
DenseOperator random_psd(Rng& rng, std::size_t n);
// (G + G*) / 2 with the same scaling.
DenseOperator random_hermitian(Rng& rng, std::size_t n);
DenseOperator random_dense(Rng& rng, std::size_t rows, std::size_t cols);
// Haar-distributed unitary from orthonormalized Gaussian columns.
DenseOperator random_unitary(Rng& rng, std::size_t n);
// rows x cols isometry (cols <= rows).
DenseOperator random_isometry(Rng& rng, std::size_t rows, std::size_t cols);
Subspace random_subspace(Rng& rng, std::size_t ambient, std::size_t dim);
// Orthogonal projection onto a random subspace of dimension `rank` (0 allowed).
DenseOperator random_projection(Rng& rng, std::size_t n, std::size_t rank);

}  // namespace minmod
