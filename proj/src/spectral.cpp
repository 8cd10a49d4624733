#include "minmod/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "minmod/error.hpp"

namespace minmod {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Singular values and a full set of right vectors (cols x cols). Tall inputs
// are reduced to their triangular factor first, which leaves values and
// right vectors unchanged.
struct RightSvd {
  Eigen::VectorXd values;  // descending, length min(rows, cols)
  Matrix right;            // cols x cols
};

RightSvd right_svd(const Matrix& a) {
  RightSvd out;
  if (a.rows() > a.cols()) {
    Eigen::HouseholderQR<Matrix> qr(a);
    const Matrix r = qr.matrixQR().topRows(a.cols()).triangularView<Eigen::Upper>();
    Eigen::BDCSVD<Matrix> svd(r, Eigen::ComputeThinV);
    out.values = svd.singularValues();
    out.right = svd.matrixV();
  } else {
    Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeFullV);
    out.values = svd.singularValues();
    out.right = svd.matrixV();
  }
  return out;
}

// Picks a deterministic unit vector inside the column span of `basis`
// (orthonormal columns).
UnitVector pick_in_span(const Matrix& basis) {
  const Eigen::VectorXd weights = basis.rowwise().norm();
  const double best = weights.maxCoeff();
  Eigen::Index k = 0;
  while (weights(k) < best * (1.0 - 1e-9)) ++k;
  const Vector v = basis * basis.row(k).adjoint();
  return UnitVector::normalized(v);
}

Matrix gather(const Matrix& m, const std::vector<Eigen::Index>& cols) {
  Matrix out(m.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = m.col(cols[i]);
  return out;
}

double cluster_tol(double sigma_max) { return 1e-12 * std::max(1.0, sigma_max); }

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

void check_hermitian(const DenseOperator& t, const char* who) {
  if (!t.is_square()) throw DimensionError(std::string(who) + ": operator must be square");
  const Matrix& m = t.matrix();
  const double scale = std::max(1.0, m.norm());
  if ((m - m.adjoint()).norm() > 1e-9 * scale) throw DomainError(std::string(who) + ": operator is not Hermitian");
}

}  // namespace

SingularSystem singular_decomposition(const DenseOperator& t) {
  Eigen::BDCSVD<Matrix> svd(t.matrix(), Eigen::ComputeThinU | Eigen::ComputeFullV);
  SingularSystem s;
  s.values.assign(svd.singularValues().data(), svd.singularValues().data() + svd.singularValues().size());
  s.left = svd.matrixU();
  s.right = svd.matrixV();
  return s;
}

Extremum operator_norm(const DenseOperator& t) {
  const RightSvd svd = right_svd(t.matrix());
  const double top = svd.values(0);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < svd.values.size(); ++i) {
    if (svd.values(i) >= top - cluster_tol(top)) cols.push_back(i);
  }
  return {top, pick_in_span(gather(svd.right, cols))};
}

Extremum min_modulus(const DenseOperator& t) {
  const RightSvd svd = right_svd(t.matrix());
  const Eigen::Index k = svd.values.size();
  const Eigen::Index n = svd.right.cols();
  const double top = svd.values(0);
  // Wide operators have a kernel of dimension at least n - k.
  const double bottom = n > k ? 0.0 : svd.values(k - 1);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (svd.values(i) <= bottom + cluster_tol(top)) cols.push_back(i);
  }
  for (Eigen::Index i = k; i < n; ++i) cols.push_back(i);
  return {bottom, pick_in_span(gather(svd.right, cols))};
}

EigenSystem hermitian_eig(const DenseOperator& t) {
  check_hermitian(t, "hermitian_eig");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(t.matrix()));
  if (es.info() != Eigen::Success) throw DomainError("hermitian_eig: eigensolver did not converge");
  EigenSystem out;
  out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  out.vectors = es.eigenvectors();
  for (Eigen::Index j = 0; j < out.vectors.cols(); ++j) {
    Vector v = out.vectors.col(j);
    normalize_phase(v);
    out.vectors.col(j) = v;
  }
  return out;
}

DenseOperator positive_sqrt(const DenseOperator& t) {
  const RightSvd svd = right_svd(t.matrix());
  Eigen::VectorXd sigma = Eigen::VectorXd::Zero(svd.right.cols());
  sigma.head(svd.values.size()) = svd.values;
  const Matrix p = svd.right * sigma.asDiagonal() * svd.right.adjoint();
  return DenseOperator(hermitian_part(p));
}

DenseOperator psd_sqrt(const DenseOperator& p) {
  const EigenSystem es = hermitian_eig(p);
  const double scale = std::max(1.0, std::max(std::abs(es.values.front()), std::abs(es.values.back())));
  if (es.values.front() < -1e-6 * scale) {
    throw DomainError("psd_sqrt: operator has eigenvalue " + std::to_string(es.values.front()) +
                      " and is not positive semidefinite");
  }
  return hermitian_function(p, [](double x) { return std::sqrt(std::max(0.0, x)); });
}

DenseOperator hermitian_function(const DenseOperator& p, const std::function<double(double)>& f) {
  const EigenSystem es = hermitian_eig(p);
  Eigen::VectorXd fv(static_cast<Eigen::Index>(es.values.size()));
  for (std::size_t i = 0; i < es.values.size(); ++i) fv(static_cast<Eigen::Index>(i)) = f(es.values[i]);
  const Matrix m = es.vectors * fv.asDiagonal() * es.vectors.adjoint();
  return DenseOperator(hermitian_part(m));
}

PolarFactors polar_decomposition(const DenseOperator& t) {
  if (!t.is_square()) throw DimensionError("polar_decomposition: operator must be square");
  // Full U and V: kernel directions of P_T are matched through the paired
  // singular vectors, so U is unitary even for singular T.
  Eigen::JacobiSVD<Matrix> svd(t.matrix(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Matrix& w = svd.matrixU();
  const Matrix& v = svd.matrixV();
  const Matrix u = w * v.adjoint();
  const Matrix p = v * svd.singularValues().asDiagonal() * v.adjoint();
  return {DenseOperator(u), DenseOperator(hermitian_part(p))};
}

double RangeDescriptor::support_violation() const {
  double worst = 0.0;
  for (const auto& a : boundary) {
    const cplx rot = std::polar(1.0, a.theta);
    const double h = (rot * a.point).real();
    for (const auto& b : boundary) worst = std::max(worst, (rot * b.point).real() - h);
  }
  return worst;
}

RangeDescriptor numerical_range_boundary(const DenseOperator& t, std::size_t grid) {
  if (!t.is_square()) throw DimensionError("numerical range: operator must be square");
  if (grid < 8) throw DomainError("numerical range: grid must be at least 8");
  RangeDescriptor out;
  out.kind = RangeDescriptor::Kind::sampled_boundary;
  out.boundary.reserve(grid);
  const Matrix& m = t.matrix();
  for (std::size_t k = 0; k < grid; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(grid);
    const cplx rot = std::polar(1.0, theta);
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(rot * m));
    Vector v = es.eigenvectors().col(m.cols() - 1);
    normalize_phase(v);
    out.boundary.push_back({theta, t.quadratic_form(v)});
  }
  return out;
}

RangeDescriptor hermitian_range(const DenseOperator& t) {
  const EigenSystem es = hermitian_eig(t);
  RangeDescriptor out;
  out.kind = RangeDescriptor::Kind::exact_interval;
  out.interval = {es.values.front(), es.values.back(), false, false};
  return out;
}

RangeDescriptor structured_range(const StructuredOperator& op) {
  validate(op);
  RangeDescriptor out;
  out.kind = RangeDescriptor::Kind::exact_interval;
  out.interval = std::visit(
      overloaded{
          [](const Diagonal& d) {
            const WeightBounds b = d.bounds();
            return Interval{b.inf, b.sup, !b.inf_attained, !b.sup_attained};
          },
          [](const ScaledIdentityMinusCompact& w) {
            const WeightBounds b = w.compact.bounds();
            return Interval{w.eta - b.sup, w.eta - b.inf, !b.sup_attained, !b.inf_attained};
          },
          [](const IdentityPlusFiniteRank& r) {
            double top = 1.0;
            for (double x : r.weights) top = std::max(top, 1.0 + x);
            return Interval{1.0, top, false, false};
          },
          [](const Projection& p) {
            const bool has_range = !(p.rank == Cardinality::finite(0));
            const bool has_kernel = !(p.corank == Cardinality::finite(0));
            return Interval{has_kernel ? 0.0 : 1.0, has_range ? 1.0 : 0.0, false, false};
          },
          [](const TripledProjection& t) -> Interval {
            if (t.on_subspace) throw UnsupportedError("numerical range: the restricted operator is not square");
            return Interval{0.0, 1.0, false, false};
          },
          [](const ShiftVariant&) -> Interval {
            throw UnsupportedError("numerical range: no exact form for the shift variant");
          },
      },
      op);
  return out;
}

}  // namespace minmod
