#include "minmod/random.hpp"

#include <cmath>
#include <vector>

#include "minmod/error.hpp"

namespace minmod {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

std::size_t Rng::uniform_index(std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
}

double Rng::log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

cplx Rng::complex_normal() {
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
  const double re = nd(engine_);
  const double im = nd(engine_);
  return {re, im};
}

Vector Rng::gaussian_vector(std::size_t n) {
  Vector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = complex_normal();
  return v;
}

Vector Rng::unit_vector(std::size_t n) {
  for (;;) {
    Vector v = gaussian_vector(n);
    const double nv = v.norm();
    if (nv > 1e-300) return v / nv;
  }
}

Matrix Rng::gaussian_matrix(std::size_t rows, std::size_t cols) {
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = complex_normal();
  return m;
}

DenseOperator random_psd(Rng& rng, std::size_t n) {
  const Matrix g = rng.gaussian_matrix(n, n) / std::sqrt(static_cast<double>(n));
  const double eps = rng.log_uniform(1e-3, 1.0);
  Matrix p = g.adjoint() * g;
  p = 0.5 * (p + p.adjoint()).eval();
  p.diagonal().array() += eps;
  return DenseOperator(std::move(p));
}

DenseOperator random_hermitian(Rng& rng, std::size_t n) {
  const Matrix g = rng.gaussian_matrix(n, n) / std::sqrt(static_cast<double>(n));
  return DenseOperator(0.5 * (g + g.adjoint()));
}

DenseOperator random_dense(Rng& rng, std::size_t rows, std::size_t cols) {
  return DenseOperator(rng.gaussian_matrix(rows, cols) / std::sqrt(static_cast<double>(std::max(rows, cols))));
}

DenseOperator random_isometry(Rng& rng, std::size_t rows, std::size_t cols) {
  if (cols > rows) throw DimensionError("isometry needs cols <= rows");
  return random_subspace(rng, rows, cols).embedding();
}

DenseOperator random_unitary(Rng& rng, std::size_t n) { return random_isometry(rng, n, n); }

Subspace random_subspace(Rng& rng, std::size_t ambient, std::size_t dim) {
  if (dim < 1 || dim > ambient) throw DimensionError("random subspace dimension out of range");
  for (;;) {
    std::vector<Vector> cols;
    cols.reserve(dim);
    for (std::size_t j = 0; j < dim; ++j) cols.push_back(rng.gaussian_vector(ambient));
    try {
      return orthonormalize(cols, 1e-8);
    } catch (const DomainError&) {
      // Gaussian columns are dependent with probability zero; redraw.
    }
  }
}

DenseOperator random_projection(Rng& rng, std::size_t n, std::size_t rank) {
  if (rank > n) throw DimensionError("projection rank exceeds dimension");
  if (rank == 0) return DenseOperator::zero(n, n);
  const Matrix e = random_subspace(rng, n, rank).frame();
  return DenseOperator(e * e.adjoint());
}

}  // namespace minmod
