#include <catch_amalgamated.hpp>

#include <cmath>

#include "minmod/attainment.hpp"
#include "minmod/error.hpp"
#include "minmod/random.hpp"
#include "minmod/spectral.hpp"
#include "minmod/verifier.hpp"

using namespace minmod;

namespace {

Diagonal diag(const std::string& rule, std::vector<double> prefix = {}, unsigned power = 1) {
  Diagonal d;
  d.weights.tail = TailRule::parse(rule);
  d.weights.prefix = std::move(prefix);
  d.weights.tail_offset = d.weights.prefix.size();
  d.power = power;
  return d;
}

const Cardinality kInf = Cardinality::infinite();

}  // namespace

TEST_CASE("injectivity counts small singular values", "[attainment]") {
  CHECK(injectivity_check(DenseOperator::identity(3)).injective);
  const Injectivity p = injectivity_check(DenseOperator::diagonal(std::vector<double>{1.0, 0.0, 1e-14}));
  CHECK_FALSE(p.injective);
  CHECK(p.kernel_dim == 2);
  const Injectivity wide = injectivity_check(DenseOperator::from_row_major(1, 3, {1.0, 0.0, 0.0}));
  CHECK(wide.kernel_dim == 2);
}

TEST_CASE("dense N* always holds with a witness", "[attainment]") {
  Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = rng.uniform_index(1, 10), n = rng.uniform_index(1, 10);
    const DenseOperator t = random_dense(rng, m, n);
    const AttainmentVerdict v = nstar_check_dense(t);
    CHECK(v.verdict == Verdict::holds);
    REQUIRE(v.witness);
    CHECK(std::abs(norm(t.apply(v.witness->coords())) - v.min_value) <= 1e-8);
    CHECK(v.kernel_dim.has_value());
  }
}

TEST_CASE("positive input: the witness is an eigenvector for [P]", "[attainment]") {
  Rng rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = rng.uniform_index(1, 12);
    const DenseOperator p = random_psd(rng, n);
    const AttainmentVerdict v = nstar_check_dense(p);
    REQUIRE(v.witness);
    const Vector& x = v.witness->coords();
    CHECK(norm(p.apply(x) - v.min_value * x) <= 1e-8);
    CHECK(std::abs(hermitian_eig(p).values.front() - v.min_value) <= 1e-10);
  }
}

TEST_CASE("[P] = ||P|| forces a scalar operator", "[attainment]") {
  Rng rng(23);
  const DenseOperator u = random_unitary(rng, 5);
  const DenseOperator p = compose(scaled(u, 1.7), adjoint(u));
  const double lo = min_modulus(p).value;
  CHECK(std::abs(lo - operator_norm(p).value) <= 1e-12);
  CHECK((p.matrix() - lo * Matrix::Identity(5, 5)).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("structured N* decisions", "[attainment][structured]") {
  SECTION("decreasing weights: fails, [T] is the limit") {
    const AttainmentVerdict v = nstar_decide_structured(diag("1+1/j"));
    CHECK(v.verdict == Verdict::fails);
    CHECK(v.min_value == 1.0);
    CHECK_FALSE(v.witness);
    CHECK(v.certificate);
  }
  SECTION("compact injective diagonal: fails with [T] = 0") {
    const AttainmentVerdict v = nstar_decide_structured(diag("1/j"));
    CHECK(v.verdict == Verdict::fails);
    CHECK(v.min_value == 0.0);
    CHECK(v.injective);
  }
  SECTION("a zero weight makes it non-injective and attained") {
    const AttainmentVerdict v = nstar_decide_structured(diag("1/j", {0.0}));
    CHECK(v.verdict == Verdict::holds);
    CHECK_FALSE(v.injective);
  }
  SECTION("increasing weights: attained at the first tail index") {
    const AttainmentVerdict v = nstar_decide_structured(diag("1-0.5/j", {0.9}));
    CHECK(v.verdict == Verdict::holds);
    CHECK(v.min_value == 0.5);
    REQUIRE(v.witness);
    CHECK(v.witness->coords()(1) == cplx(1, 0));
  }
  SECTION("a prefix weight below the limit is attained") {
    const AttainmentVerdict v = nstar_decide_structured(diag("2", {0.5}));
    CHECK(v.verdict == Verdict::holds);
    CHECK(v.min_value == 0.5);
  }
  SECTION("power transfer") {
    CHECK(nstar_decide_structured(diag("1+1/j", {}, 3)).verdict == Verdict::fails);
    CHECK(nstar_decide_structured(diag("1-0.5/j", {}, 3)).min_value == 0.125);
  }
  SECTION("shift: non-injective, with the quoted value flagged") {
    ShiftVariant s;
    s.lead = 0.5;
    s.weights.tail = TailRule::parse("0.5+1/j");
    const AttainmentVerdict v = nstar_decide_structured(s);
    CHECK(v.verdict == Verdict::holds);
    CHECK(v.min_value == 0.0);
    REQUIRE_FALSE(v.notes.empty());
    CHECK(v.notes.front().find("discrepancy") != std::string::npos);
    // agrees with the truncation
    CHECK(min_modulus(truncate(s, 12)).value == 0.0);
  }
  SECTION("tripled projection on its subspace: fails at 1/sqrt(3)") {
    const AttainmentVerdict v = nstar_decide_structured(TripledProjection{true});
    CHECK(v.verdict == Verdict::fails);
    CHECK(v.min_value == Catch::Approx(1.0 / std::sqrt(3.0)));
  }
  SECTION("eta I - K: the gap |eta - k_j| is attained") {
    ScaledIdentityMinusCompact w;
    w.eta = 0.7;
    w.compact = diag("1/j");
    const AttainmentVerdict v = nstar_decide_structured(w);
    CHECK(v.verdict == Verdict::holds);
    CHECK(v.min_value == Catch::Approx(0.2));  // |0.7 - 0.5| at j = 2
  }
}

TEST_CASE("projection AN* decisions", "[attainment][structured]") {
  CHECK(anstar_decide_projection({Cardinality::finite(3), kInf}).verdict == Verdict::holds);
  CHECK(anstar_decide_projection({kInf, Cardinality::finite(2)}).verdict == Verdict::holds);
  CHECK(anstar_decide_projection({kInf, kInf}).verdict == Verdict::fails);
  CHECK(anstar_decide_projection({Cardinality::finite(2), Cardinality::finite(2)}).verdict == Verdict::holds);
  // N* itself holds: the kernel is nontrivial
  CHECK(nstar_decide_structured(Projection{kInf, kInf}).verdict == Verdict::holds);
}

TEST_CASE("structured AN* decisions", "[attainment][structured]") {
  CHECK(anstar_decide_structured(diag("2")).verdict == Verdict::holds);
  CHECK(anstar_decide_structured(diag("1-0.5/j")).verdict == Verdict::holds);
  CHECK(anstar_decide_structured(diag("1+1/j", {0.2 + 1.0})).verdict == Verdict::fails);
  CHECK(anstar_decide_structured(TripledProjection{}).verdict == Verdict::fails);
  IdentityPlusFiniteRank r;
  r.weights = {3.0};
  r.frame = {Vector::Unit(2, 1)};
  CHECK(anstar_decide_structured(r).verdict == Verdict::holds);
  ScaledIdentityMinusCompact w;
  w.eta = 1.0;
  w.compact = diag("1/j");
  CHECK(anstar_decide_structured(w).verdict == Verdict::holds);
}

TEST_CASE("sampled AN* on dense operators", "[attainment]") {
  Rng rng(24);
  const DenseOperator t = random_dense(rng, 6, 5);
  const AttainmentVerdict v = anstar_sample(t, 20, 99);
  CHECK(v.verdict == Verdict::holds);
  REQUIRE(v.trials.size() == 20);
  for (const auto& tr : v.trials) {
    CHECK(tr.subspace_dim >= 1);
    CHECK(std::abs(norm(t.apply(tr.witness)) - tr.min_value) <= 1e-8);
  }
  const AttainmentVerdict again = anstar_sample(t, 20, 99);
  CHECK(again.trials.back().min_value == v.trials.back().min_value);
  CHECK_THROWS_AS(anstar_sample(t, 0, 1), DomainError);
}

TEST_CASE("isometries compose without moving restricted minima", "[attainment]") {
  Rng rng(25);
  const DenseOperator t = random_dense(rng, 4, 4);
  const PropertyReport left = isometry_compose_check(t, random_isometry(rng, 7, 4), 20, 1);
  CHECK(left.passed());
  const PropertyReport right = isometry_compose_check(random_dense(rng, 3, 6), random_isometry(rng, 6, 4), 20, 2);
  CHECK(right.passed());
  CHECK(right.trials == 20);
  CHECK_THROWS_AS(isometry_compose_check(t, random_dense(rng, 5, 4), 3, 1), DomainError);
}
