#include "minmod/subspace.hpp"

#include <cmath>
#include <span>
#include <string>

#include <Eigen/SparseCore>

#include "minmod/error.hpp"
#include "minmod/kernels.hpp"

namespace minmod {

Subspace::Subspace(Matrix frame, double tol) : frame_(std::move(frame)) {
  if (frame_.cols() < 1 || frame_.rows() < 1) throw DimensionError("subspace frame must be nonempty");
  if (frame_.cols() > frame_.rows()) throw DimensionError("subspace frame has more vectors than ambient dimension");
  if (!frame_.allFinite()) throw DomainError("subspace frame entries must be finite");
  Matrix gram;
  if (frame_.rows() * frame_.cols() > 4096 && (frame_.array() != cplx(0.0, 0.0)).count() < frame_.size() / 16) {
    const Eigen::SparseMatrix<cplx> s = frame_.sparseView();
    gram = Matrix(s.adjoint() * s);
  } else {
    gram = frame_.adjoint() * frame_;
  }
  const double err = (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  if (err > tol) throw DomainError("subspace frame is not orthonormal (max |E*E - I| = " + std::to_string(err) + ")");
}

Subspace Subspace::full(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  return Subspace(Matrix::Identity(k, k));
}

Subspace Subspace::padded(std::size_t n) const {
  if (n < ambient()) throw DimensionError("padded: target dimension below ambient dimension");
  Matrix f = Matrix::Zero(static_cast<Eigen::Index>(n), frame_.cols());
  f.topRows(frame_.rows()) = frame_;
  return Subspace(std::move(f), Trusted{});
}

Vector Subspace::lift(const Vector& coords) const {
  if (coords.size() != frame_.cols()) throw DimensionError("lift: coordinate count != subspace dimension");
  return frame_ * coords;
}

Subspace orthonormalize(const std::vector<Vector>& vectors, double tol) {
  if (vectors.empty()) throw DimensionError("orthonormalize: no vectors");
  const Eigen::Index n = vectors.front().size();
  if (n < 1) throw DimensionError("orthonormalize: empty vectors");
  Matrix frame(n, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    const Vector& v = vectors[k];
    if (v.size() != n) throw DimensionError("orthonormalize: vectors differ in length");
    Vector w = v;
    const double original = w.norm();
    if (!(original > 0.0)) throw DomainError("orthonormalize: zero vector at position " + std::to_string(k));
    std::span<cplx> ws{w.data(), static_cast<std::size_t>(n)};
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < k; ++j) {
        std::span<const cplx> q{frame.col(static_cast<Eigen::Index>(j)).data(), static_cast<std::size_t>(n)};
        const cplx c = kernels::dot(ws, q);
        kernels::axpy(-c, q, ws);
      }
    }
    const double remaining = std::sqrt(kernels::norm_sq(ws));
    if (remaining <= tol * original) {
      throw DomainError("orthonormalize: vector " + std::to_string(k) + " is linearly dependent on its predecessors");
    }
    w /= remaining;
    normalize_phase(w);
    frame.col(static_cast<Eigen::Index>(k)) = w;
  }
  return Subspace(std::move(frame));
}

Subspace example31_frame(std::size_t blocks) {
  if (blocks < 1) throw DomainError("example31_frame: need at least one block");
  const auto ambient = static_cast<Eigen::Index>(2 + 3 * (blocks - 1));
  Matrix f = Matrix::Zero(ambient, static_cast<Eigen::Index>(blocks));
  const double r2 = 1.0 / std::sqrt(2.0);
  const double r3 = 1.0 / std::sqrt(3.0);
  f(0, 0) = r2;
  f(1, 0) = r2;
  for (std::size_t b = 1; b < blocks; ++b) {
    const auto start = static_cast<Eigen::Index>(2 + 3 * (b - 1));
    for (Eigen::Index i = 0; i < 3; ++i) f(start + i, static_cast<Eigen::Index>(b)) = r3;
  }
  return Subspace(std::move(f));
}

DenseOperator restrict(const DenseOperator& t, const Subspace& m) {
  if (m.ambient() != t.cols()) {
    throw DimensionError("restrict: subspace ambient dimension " + std::to_string(m.ambient()) +
                         " != operator domain dimension " + std::to_string(t.cols()));
  }
  return DenseOperator(t.matrix() * m.frame());
}

}  // namespace minmod
