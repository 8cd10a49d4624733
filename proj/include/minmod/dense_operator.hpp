#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace minmod {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Default absolute tolerance for orthonormality and Hermitian checks on
// unit-scale data.
inline constexpr double kFrameTolerance = 1e-10;

// A vector on the unit sphere. The phase is normalized so that the first
// entry whose modulus exceeds the tolerance is real and positive.
class UnitVector {
 public:
  // Scales v to unit length and fixes its phase. Throws DomainError for a
  // zero or non-finite vector.
  static UnitVector normalized(const Vector& v);

  // Standard basis vector e_{index+1} of C^dim.
  static UnitVector basis(std::size_t dim, std::size_t index);

  const Vector& coords() const { return coords_; }
  std::size_t size() const { return static_cast<std::size_t>(coords_.size()); }

 private:
  explicit UnitVector(Vector v) : coords_(std::move(v)) {}
  Vector coords_;
};

// Rotates v in place so its first significant entry is real positive.
void normalize_phase(Vector& v, double tol = kFrameTolerance);

// A finite-dimensional operator C^cols -> C^rows. Immutable once built;
// every entry is finite and both dimensions are at least one.
class DenseOperator {
 public:
  explicit DenseOperator(Matrix m);

  static DenseOperator identity(std::size_t n);
  static DenseOperator zero(std::size_t rows, std::size_t cols);
  static DenseOperator diagonal(const std::vector<double>& weights);
  static DenseOperator diagonal(const std::vector<cplx>& weights);
  // Row-major construction, as in the JSON wire format.
  static DenseOperator from_row_major(std::size_t rows, std::size_t cols,
                                      const std::vector<cplx>& entries);

  std::size_t rows() const { return static_cast<std::size_t>(m_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(m_.cols()); }
  bool is_square() const { return m_.rows() == m_.cols(); }
  const Matrix& matrix() const { return m_; }
  cplx operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  // T x through the dispatched SIMD kernels.
  Vector apply(const Vector& x) const;
  // <T x, x>; requires a square operator.
  cplx quadratic_form(const Vector& x) const;

  // ||T - T*||_max relative check: max |t_ij - conj(t_ji)| <= tol * max(1, max|t|).
  bool is_hermitian(double tol = 1e-9) const;

  std::vector<cplx> row_major_entries() const;

 private:
  Matrix m_;
};

DenseOperator adjoint(const DenseOperator& t);
// A * B; throws DimensionError unless A.cols() == B.rows().
DenseOperator compose(const DenseOperator& a, const DenseOperator& b);
// T^k for square T, k >= 0.
DenseOperator power(const DenseOperator& t, unsigned k);
DenseOperator add(const DenseOperator& a, const DenseOperator& b, cplx b_scale = 1.0);
DenseOperator scaled(const DenseOperator& a, cplx s);

// Sesquilinear pairing <x, y> = sum x_i conj(y_i).
cplx inner(const Vector& x, const Vector& y);
double norm(const Vector& x);

}  // namespace minmod
