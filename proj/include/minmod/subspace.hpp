#pragma once

#include <vector>

#include "minmod/dense_operator.hpp"

namespace minmod {

// A nonzero closed subspace of C^ambient, held as the isometric embedding
// E (ambient x dim) whose columns form an orthonormal frame.
class Subspace {
 public:
  // Validates E* E = I to `tol` and that the frame is nonempty.
  explicit Subspace(Matrix frame, double tol = kFrameTolerance);

  // The whole space C^n with the standard basis.
  static Subspace full(std::size_t n);

  std::size_t ambient() const { return static_cast<std::size_t>(frame_.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(frame_.cols()); }
  const Matrix& frame() const { return frame_; }
  DenseOperator embedding() const { return DenseOperator(frame_); }

  // The same subspace inside C^n, n >= ambient(), with trailing zero coordinates.
  Subspace padded(std::size_t n) const;

  // Ambient vector for subspace coordinates c.
  Vector lift(const Vector& coords) const;

 private:
  struct Trusted {};
  Subspace(Matrix frame, Trusted) : frame_(std::move(frame)) {}

  Matrix frame_;
};

// Sequential Gram-Schmidt with one reorthogonalization pass, in input order.
// Each output vector is phase normalized. Throws DomainError when a vector is
// dependent on its predecessors to within `tol` (relative to its norm).
Subspace orthonormalize(const std::vector<Vector>& vectors, double tol = kFrameTolerance);

// Finite section of the subspace of vectors (x1, x1, x2, x2, x2, x3, x3, x3, ...):
// the first basis vector is (1,1,0,...)/sqrt(2), every later one is a block
// of three equal entries 1/sqrt(3). Ambient dimension 2 + 3 (blocks - 1).
Subspace example31_frame(std::size_t blocks);

// T restricted to M, realized as T * E (subspace coordinates -> range space).
DenseOperator restrict(const DenseOperator& t, const Subspace& m);

}  // namespace minmod
