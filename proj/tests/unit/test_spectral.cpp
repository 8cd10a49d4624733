#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "minmod/error.hpp"
#include "minmod/kernels.hpp"
#include "minmod/random.hpp"
#include "minmod/spectral.hpp"

using namespace minmod;

namespace {

double opnorm(const Matrix& m) { return operator_norm(DenseOperator(m)).value; }
double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("kernel variant in use", "[spectral]") {
  INFO("active kernels: " << kernels::isa_name(kernels::active_isa()));
  SUCCEED();
}

TEST_CASE("singular decomposition reconstructs", "[spectral]") {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = rng.uniform_index(1, 10), n = rng.uniform_index(1, 10);
    const DenseOperator t = random_dense(rng, m, n);
    const SingularSystem s = singular_decomposition(t);
    CHECK(std::is_sorted(s.values.rbegin(), s.values.rend()));
    CHECK(static_cast<std::size_t>(s.right.cols()) == n);
    const auto k = static_cast<Eigen::Index>(s.values.size());
    Vector sv(k);
    for (Eigen::Index i = 0; i < k; ++i) sv(i) = s.values[static_cast<std::size_t>(i)];
    const Matrix rec = s.left.leftCols(k) * sv.asDiagonal() * s.right.leftCols(k).adjoint();
    CHECK(opnorm(rec - t.matrix()) <= 1e-9 * std::max(1.0, s.values.front()));
    CHECK(max_abs(s.right.adjoint() * s.right - Matrix::Identity(n, n)) <= 1e-10);
  }
}

TEST_CASE("norm and minimum modulus witnesses", "[spectral]") {
  const DenseOperator d = DenseOperator::diagonal(std::vector<double>{3.0, 2.0, 5.0});
  const Extremum lo = min_modulus(d);
  CHECK(lo.value == Catch::Approx(2.0));
  CHECK(std::abs(lo.vector.coords()(1) - cplx(1, 0)) <= 1e-12);
  const Extremum hi = operator_norm(d);
  CHECK(hi.value == Catch::Approx(5.0));
  CHECK(std::abs(hi.vector.coords()(2) - cplx(1, 0)) <= 1e-12);

  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = rng.uniform_index(1, 10), n = rng.uniform_index(1, 10);
    const DenseOperator t = random_dense(rng, m, n);
    const Extremum a = min_modulus(t), b = operator_norm(t);
    CHECK(std::abs(norm(t.apply(a.vector.coords())) - a.value) <= 1e-9 * std::max(1.0, b.value));
    CHECK(std::abs(norm(t.apply(b.vector.coords())) - b.value) <= 1e-9 * b.value);
    if (n > m) CHECK(a.value == 0.0);
    const EigenSystem g = hermitian_eig(DenseOperator(t.matrix().adjoint() * t.matrix()));
    CHECK(std::abs(b.value * b.value - g.values.back()) <= 1e-9 * std::max(1.0, g.values.back()));
  }
}

TEST_CASE("equal minimal singular values pick a deterministic witness", "[spectral]") {
  const DenseOperator i3 = DenseOperator::identity(3);
  const Extremum e = min_modulus(i3);
  CHECK(std::abs(e.vector.coords()(0) - cplx(1, 0)) <= 1e-12);
  const Extremum again = min_modulus(i3);
  CHECK((e.vector.coords() - again.vector.coords()).norm() == 0.0);
}

TEST_CASE("hermitian eigendecomposition", "[spectral]") {
  Rng rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = rng.uniform_index(1, 12);
    const DenseOperator h = random_hermitian(rng, n);
    const EigenSystem e = hermitian_eig(h);
    CHECK(std::is_sorted(e.values.begin(), e.values.end()));
    for (std::size_t i = 0; i < n; ++i) {
      const Vector v = e.vectors.col(static_cast<Eigen::Index>(i));
      CHECK(norm(h.apply(v) - e.values[i] * v) <= 1e-9);
    }
    CHECK(max_abs(e.vectors.adjoint() * e.vectors - Matrix::Identity(n, n)) <= 1e-10);
  }
  CHECK_THROWS_AS(hermitian_eig(DenseOperator::from_row_major(2, 2, {0.0, 1.0, 0.0, 0.0})), DomainError);
}

TEST_CASE("positive square roots", "[spectral]") {
  Rng rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = rng.uniform_index(1, 10), n = rng.uniform_index(1, 10);
    const DenseOperator t = random_dense(rng, m, n);
    const DenseOperator p = positive_sqrt(t);
    CHECK(p.is_hermitian());
    CHECK(hermitian_eig(p).values.front() >= -1e-12);
    const Matrix gram = t.matrix().adjoint() * t.matrix();
    CHECK(opnorm(p.matrix() * p.matrix() - gram) <= 1e-8 * std::max(1.0, opnorm(gram)));
    for (int s = 0; s < 100; ++s) {
      const Vector x = rng.unit_vector(n);
      CHECK(std::abs(norm(t.apply(x)) - norm(p.apply(x))) <= 1e-8);
    }
  }
}

TEST_CASE("psd_sqrt clamps roundoff and rejects indefinite input", "[spectral]") {
  const DenseOperator tiny = DenseOperator::diagonal(std::vector<double>{4.0, -1e-9});
  const DenseOperator r = psd_sqrt(tiny);
  CHECK(r(0, 0).real() == Catch::Approx(2.0));
  CHECK(r(1, 1).real() == 0.0);
  CHECK_THROWS_AS(psd_sqrt(DenseOperator::diagonal(std::vector<double>{1.0, -1e-3})), DomainError);
}

TEST_CASE("hermitian functions", "[spectral]") {
  Rng rng(15);
  const DenseOperator p = random_psd(rng, 6);
  const DenseOperator e = hermitian_function(p, [](double x) { return std::exp(x); });
  CHECK(std::abs(operator_norm(e).value - std::exp(operator_norm(p).value)) <= 1e-8 * std::exp(operator_norm(p).value));
  const DenseOperator sq = hermitian_function(p, [](double x) { return x * x; });
  CHECK(max_abs(sq.matrix() - p.matrix() * p.matrix()) <= 1e-12);
}

TEST_CASE("polar decomposition, including singular input", "[spectral]") {
  Rng rng(16);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = rng.uniform_index(2, 10);
    DenseOperator t = random_dense(rng, n, n);
    if (trial % 2) t = compose(random_dense(rng, n, 1), random_dense(rng, 1, n));
    const PolarFactors f = polar_decomposition(t);
    CHECK(opnorm(f.unitary.matrix() * f.positive.matrix() - t.matrix()) <= 1e-8);
    CHECK(opnorm(f.unitary.matrix().adjoint() * f.unitary.matrix() - Matrix::Identity(n, n)) <= 1e-9);
    CHECK(opnorm(f.positive.matrix() - positive_sqrt(t).matrix()) <= 1e-9);
  }
  CHECK_THROWS_AS(polar_decomposition(DenseOperator::zero(2, 3)), DimensionError);
}

TEST_CASE("numerical range of a Jordan block is a disc of radius 1/2", "[spectral][range]") {
  const DenseOperator j = DenseOperator::from_row_major(2, 2, {0.0, 1.0, 0.0, 0.0});
  const RangeDescriptor r = numerical_range_boundary(j, 720);
  REQUIRE(r.boundary.size() == 720);
  for (const auto& p : r.boundary) CHECK(std::abs(std::abs(p.point) - 0.5) <= 1e-6);
  CHECK(r.support_violation() <= 1e-10);
  // random sampling of <Tx,x> stays inside the disc
  Rng rng(17);
  for (int s = 0; s < 1000; ++s) CHECK(std::abs(j.quadratic_form(rng.unit_vector(2))) <= 0.5 + 1e-12);
  CHECK_THROWS_AS(numerical_range_boundary(DenseOperator::zero(2, 3), 16), DimensionError);
  CHECK_THROWS_AS(numerical_range_boundary(j, 4), DomainError);
}

TEST_CASE("numerical range of a normal matrix is the hull of its eigenvalues", "[spectral][range]") {
  const DenseOperator d = DenseOperator::diagonal(std::vector<cplx>{{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  const RangeDescriptor r = numerical_range_boundary(d, 64);
  for (const auto& p : r.boundary) CHECK(std::abs(p.point.real()) + std::abs(p.point.imag()) <= 1.0 + 1e-12);
}

TEST_CASE("exact ranges", "[spectral][range]") {
  const RangeDescriptor h = hermitian_range(DenseOperator::diagonal(std::vector<double>{1.0, 2.0}));
  CHECK(h.interval.lo == Catch::Approx(1.0));
  CHECK(h.interval.hi == Catch::Approx(2.0));

  Diagonal d;
  d.weights.tail = TailRule::parse("1+1/j");
  const RangeDescriptor r = structured_range(d);
  CHECK(r.interval.lo == 1.0);
  CHECK(r.interval.lo_open);
  CHECK(r.interval.hi == 2.0);
  CHECK_FALSE(r.interval.hi_open);

  Diagonal z;
  z.weights.tail = TailRule::parse("1/j");
  const RangeDescriptor injective = structured_range(z);
  CHECK(injective.interval.lo == 0.0);
  CHECK(injective.interval.lo_open);
  z.weights.prefix = {0.0};
  z.weights.tail_offset = 1;
  const RangeDescriptor with_kernel = structured_range(z);
  CHECK(with_kernel.interval.lo == 0.0);
  CHECK_FALSE(with_kernel.interval.lo_open);
  CHECK(with_kernel.interval.hi == 1.0);

  CHECK(structured_range(Projection{Cardinality::infinite(), Cardinality::infinite()}).interval.hi == 1.0);
  ShiftVariant s;
  s.weights.tail = TailRule::parse("1+1/j");
  CHECK_THROWS_AS(structured_range(s), UnsupportedError);
}
