#pragma once

#include <functional>
#include <vector>

#include "minmod/dense_operator.hpp"
#include "minmod/structured.hpp"

namespace minmod {

// Dense decompositions are capped at this dimension unless overridden.
inline constexpr std::size_t kDefaultMaxDim = 2048;

struct Extremum {
  double value = 0.0;
  UnitVector vector;
};

// T = U diag(values) V*, values descending. `right` always has cols(T)
// columns: for wide T the trailing columns span the extra kernel and have
// no entry in `values`.
struct SingularSystem {
  std::vector<double> values;
  Matrix left;
  Matrix right;
};

// Hermitian T = V diag(values) V*, values ascending, V unitary.
struct EigenSystem {
  std::vector<double> values;
  Matrix vectors;
};

struct PolarFactors {
  DenseOperator unitary;
  DenseOperator positive;
};

struct BoundaryPoint {
  double theta = 0.0;
  cplx point;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_open = false;
  bool hi_open = false;
};

// Either support points of W(T) on a uniform angle grid, or an exact interval.
struct RangeDescriptor {
  enum class Kind { sampled_boundary, exact_interval };
  Kind kind = Kind::sampled_boundary;
  std::vector<BoundaryPoint> boundary;
  Interval interval;

  // Largest amount by which any sampled point lies beyond the supporting
  // line of another grid angle; ~0 when the points are in convex position.
  double support_violation() const;
};

SingularSystem singular_decomposition(const DenseOperator& t);

// sup ||T x|| over unit x, with a maximizing right singular vector.
Extremum operator_norm(const DenseOperator& t);

// inf ||T x|| over unit x (the minimum modulus) with an attaining vector.
// Among equal minimal singular values the witness is the normalized
// projection of the lowest-index basis vector that projects most strongly
// onto the minimizing subspace.
Extremum min_modulus(const DenseOperator& t);

// Throws DomainError unless ||T - T*|| <= 1e-9 max(1, ||T||).
EigenSystem hermitian_eig(const DenseOperator& t);

// P_T, the positive square root of T* T.
DenseOperator positive_sqrt(const DenseOperator& t);

// Square root of a Hermitian positive semidefinite P. Eigenvalues down to
// -1e-6 max(1, ||P||) are treated as roundoff and clamped to zero; anything
// lower throws DomainError.
DenseOperator psd_sqrt(const DenseOperator& p);

// f(P) = V f(Lambda) V* for Hermitian P.
DenseOperator hermitian_function(const DenseOperator& p, const std::function<double(double)>& f);

// T = U P_T with U unitary; T must be square.
PolarFactors polar_decomposition(const DenseOperator& t);

// Support points <T v, v> where v is a top eigenvector of the Hermitian part
// of e^{i theta} T, theta = 2 pi k / grid.
RangeDescriptor numerical_range_boundary(const DenseOperator& t, std::size_t grid);

// [lambda_min, lambda_max] of a Hermitian operator.
RangeDescriptor hermitian_range(const DenseOperator& t);

// Exact W(T) for the self-adjoint catalog variants, with endpoint openness.
RangeDescriptor structured_range(const StructuredOperator& op);

}  // namespace minmod
