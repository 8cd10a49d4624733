#include "minmod/dense_operator.hpp"

#include <cmath>
#include <span>
#include <string>

#include "minmod/error.hpp"
#include "minmod/kernels.hpp"

namespace minmod {

namespace {

std::span<const cplx> view(const Vector& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

}  // namespace

void normalize_phase(Vector& v, double tol) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mod = std::abs(v(i));
    if (mod > tol) {
      v *= std::conj(v(i)) / mod;
      v(i) = cplx(mod, 0.0);
      return;
    }
  }
}

UnitVector UnitVector::normalized(const Vector& v) {
  if (v.size() == 0 || !v.allFinite()) throw DomainError("unit vector: empty or non-finite input");
  const double n = v.norm();
  if (!(n > 0.0)) throw DomainError("unit vector: zero input");
  Vector u = v / n;
  normalize_phase(u);
  return UnitVector(std::move(u));
}

UnitVector UnitVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw DimensionError("basis vector index out of range");
  Vector e = Vector::Zero(static_cast<Eigen::Index>(dim));
  e(static_cast<Eigen::Index>(index)) = 1.0;
  return UnitVector(std::move(e));
}

DenseOperator::DenseOperator(Matrix m) : m_(std::move(m)) {
  if (m_.rows() < 1 || m_.cols() < 1) throw DimensionError("operator must have at least one row and column");
  if (!m_.allFinite()) throw DomainError("operator entries must be finite");
}

DenseOperator DenseOperator::identity(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  return DenseOperator(Matrix::Identity(k, k));
}

DenseOperator DenseOperator::zero(std::size_t rows, std::size_t cols) {
  return DenseOperator(Matrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols)));
}

DenseOperator DenseOperator::diagonal(const std::vector<double>& weights) {
  const auto n = static_cast<Eigen::Index>(weights.size());
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = weights[static_cast<std::size_t>(i)];
  return DenseOperator(std::move(m));
}

DenseOperator DenseOperator::diagonal(const std::vector<cplx>& weights) {
  const auto n = static_cast<Eigen::Index>(weights.size());
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = weights[static_cast<std::size_t>(i)];
  return DenseOperator(std::move(m));
}

DenseOperator DenseOperator::from_row_major(std::size_t rows, std::size_t cols,
                                            const std::vector<cplx>& entries) {
  if (entries.size() != rows * cols) {
    throw DimensionError("entry count " + std::to_string(entries.size()) + " does not match " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  }
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = entries[i * cols + j];
  return DenseOperator(std::move(m));
}

Vector DenseOperator::apply(const Vector& x) const {
  if (static_cast<std::size_t>(x.size()) != cols()) throw DimensionError("apply: vector length != cols");
  Vector y(m_.rows());
  kernels::gemv({m_.data(), static_cast<std::size_t>(m_.size())}, rows(), cols(), view(x),
                {y.data(), static_cast<std::size_t>(y.size())});
  return y;
}

cplx DenseOperator::quadratic_form(const Vector& x) const {
  if (!is_square()) throw DimensionError("quadratic form needs a square operator");
  const Vector tx = apply(x);
  return kernels::dot(view(tx), view(x));
}

bool DenseOperator::is_hermitian(double tol) const {
  if (!is_square()) return false;
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

std::vector<cplx> DenseOperator::row_major_entries() const {
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(m_.size()));
  for (Eigen::Index i = 0; i < m_.rows(); ++i)
    for (Eigen::Index j = 0; j < m_.cols(); ++j) out.push_back(m_(i, j));
  return out;
}

DenseOperator adjoint(const DenseOperator& t) { return DenseOperator(t.matrix().adjoint()); }

DenseOperator compose(const DenseOperator& a, const DenseOperator& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("compose: inner dimensions " + std::to_string(a.cols()) + " and " +
                         std::to_string(b.rows()) + " differ");
  }
  return DenseOperator(a.matrix() * b.matrix());
}

DenseOperator power(const DenseOperator& t, unsigned k) {
  if (!t.is_square()) throw DimensionError("power needs a square operator");
  Matrix result = Matrix::Identity(t.matrix().rows(), t.matrix().cols());
  for (unsigned i = 0; i < k; ++i) result = t.matrix() * result;
  return DenseOperator(std::move(result));
}

DenseOperator add(const DenseOperator& a, const DenseOperator& b, cplx b_scale) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("add: shape mismatch");
  return DenseOperator(a.matrix() + b_scale * b.matrix());
}

DenseOperator scaled(const DenseOperator& a, cplx s) { return DenseOperator(s * a.matrix()); }

cplx inner(const Vector& x, const Vector& y) { return kernels::dot(view(x), view(y)); }

double norm(const Vector& x) { return std::sqrt(kernels::norm_sq(view(x))); }

}  // namespace minmod
