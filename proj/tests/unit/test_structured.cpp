#include <catch_amalgamated.hpp>

#include <cmath>

#include "minmod/error.hpp"
#include "minmod/structured.hpp"

using namespace minmod;

namespace {

Diagonal diag(const std::string& rule, std::vector<double> prefix = {}) {
  Diagonal d;
  d.weights.tail = TailRule::parse(rule);
  d.weights.prefix = std::move(prefix);
  d.weights.tail_offset = d.weights.prefix.size();
  return d;
}

}  // namespace

TEST_CASE("tail rules parse to the expected generators", "[structured]") {
  const TailRule c = TailRule::parse("2");
  CHECK(c.shape == TailShape::constant);
  CHECK(c.at(17) == 2.0);

  const TailRule h = TailRule::parse("1 + 1/j");
  CHECK(h.shape == TailShape::decreasing);
  CHECK(h.at(1) == 2.0);
  CHECK(h.at(4) == 1.25);

  const TailRule inc = TailRule::parse("1-0.5/j");
  CHECK(inc.shape == TailShape::increasing);
  CHECK(inc.at(1) == 0.5);

  const TailRule z = TailRule::parse("1/j");
  CHECK(z.limit == 0.0);
  CHECK(z.at(8) == 0.125);

  const TailRule g = TailRule::parse("1+0.5*0.5^j");
  CHECK(g.generator == TailGenerator::geometric);
  CHECK(g.at(2) == Catch::Approx(1.125));

  const TailRule g0 = TailRule::parse("0.5^j");
  CHECK(g0.at(3) == Catch::Approx(0.125));
}

TEST_CASE("tail rule text round-trips", "[structured]") {
  for (const char* s : {"2", "1+1/j", "1-0.5/j", "1/j", "3/j", "1+0.5*0.25^j", "2-1*0.5^j", "0.1"}) {
    const TailRule r = TailRule::parse(s);
    CHECK(TailRule::parse(r.to_string()) == r);
  }
}

TEST_CASE("bad tail rules are rejected", "[structured]") {
  CHECK_THROWS_AS(TailRule::parse("j"), ParseError);
  CHECK_THROWS_AS(TailRule::parse("1+1/k"), ParseError);
  CHECK_THROWS_AS(TailRule::parse(""), ParseError);
  CHECK_THROWS_AS(TailRule::parse("1+2^j"), DomainError);  // ratio must be below one
  CHECK_THROWS_AS(TailRule::parse("1+0/j"), DomainError);
}

TEST_CASE("weight bounds", "[structured]") {
  SECTION("decreasing tail: inf not attained") {
    const WeightBounds b = diag("1+1/j").bounds();
    CHECK(b.inf == 1.0);
    CHECK_FALSE(b.inf_attained);
    CHECK(b.sup == 2.0);
    CHECK(b.sup_index == 1);
  }
  SECTION("increasing tail: inf at the first tail index") {
    const WeightBounds b = diag("1-0.5/j", {0.7}).bounds();
    CHECK(b.inf == 0.5);
    CHECK(b.inf_index == 2);
    CHECK_FALSE(b.sup_attained);
  }
  SECTION("prefix zero") {
    const WeightBounds b = diag("2", {0.0, 3.0}).bounds();
    CHECK(b.has_zero);
    CHECK(b.inf_index == 1);
    CHECK(b.sup == 3.0);
  }
  SECTION("ties resolve to the smallest index") {
    const WeightBounds b = diag("2", {2.0}).bounds();
    CHECK(b.inf_index == 1);
    CHECK(b.sup_index == 1);
  }
}

TEST_CASE("weight sequence invariants", "[structured]") {
  CHECK_THROWS_AS(validate(StructuredOperator{diag("1+1/j", {0.5})}), DomainError);
  CHECK_NOTHROW(validate(StructuredOperator{diag("1+1/j", {1.5})}));
  CHECK_THROWS_AS(validate(StructuredOperator{diag("1-2/j")}), DomainError);
  CHECK_THROWS_AS(validate(StructuredOperator{diag("2", {-1.0})}), DomainError);
  // strict monotonicity runs out in double precision
  CHECK_THROWS_AS(diag("1+0.5^j").weights.first(200), DomainError);
  const auto w = diag("1+1/j").weights.first(5);
  CHECK(w.size() == 5);
  CHECK(w[4] == 1.2);
}

TEST_CASE("diagonal power applies to the weights", "[structured]") {
  Diagonal d = diag("1+1/j");
  d.power = 2;
  CHECK(d.weight(1) == 4.0);
  CHECK(d.bounds().inf == 1.0);
  CHECK(diagonal_norm(d) == 4.0);
}

TEST_CASE("cardinality", "[structured]") {
  CHECK(Cardinality::finite(3).count() == 3);
  CHECK(Cardinality::infinite().to_string() == "inf");
  CHECK_THROWS_AS(Cardinality::infinite().count(), DomainError);
}

TEST_CASE("truncations", "[structured]") {
  SECTION("diagonal") {
    const DenseOperator t = truncate(diag("1+1/j"), 4);
    CHECK(t(3, 3).real() == 1.25);
    CHECK(t(0, 1) == cplx(0, 0));
  }
  SECTION("shift") {
    ShiftVariant s;
    s.lead = 2.0;
    s.weights.tail = TailRule::parse("1+1/j");
    const DenseOperator t = truncate(s, 5);
    CHECK(t(0, 1).real() == 2.0);
    CHECK(t(2, 2).real() == 2.0);
    CHECK(t(4, 4).real() == 1.0 + 1.0 / 3.0);
    CHECK(t.matrix().col(0).norm() == 0.0);
    CHECK_THROWS_AS(truncate(s, 2), DimensionError);
  }
  SECTION("tripled projection on its subspace is n x n/3") {
    const DenseOperator t = truncate(TripledProjection{true}, 9);
    CHECK(t.rows() == 9);
    CHECK(t.cols() == 3);
  }
  SECTION("projection canonical representatives") {
    const DenseOperator a = truncate(Projection{Cardinality::finite(2), Cardinality::infinite()}, 5);
    CHECK(a.matrix().diagonal().real().sum() == 2.0);
    CHECK(a(0, 0).real() == 1.0);
    const DenseOperator b = truncate(Projection{Cardinality::infinite(), Cardinality::finite(1)}, 5);
    CHECK(b(0, 0).real() == 0.0);
    CHECK(b.matrix().diagonal().real().sum() == 4.0);
    const DenseOperator c = truncate(Projection{Cardinality::infinite(), Cardinality::infinite()}, 4);
    CHECK(c.matrix().diagonal().real().sum() == 2.0);
    CHECK_THROWS_AS(truncate(Projection{Cardinality::finite(1), Cardinality::finite(1)}, 3), DimensionError);
    CHECK_THROWS_AS(validate(StructuredOperator{Projection{Cardinality::finite(0), Cardinality::finite(0)}}), DomainError);
  }
  SECTION("identity plus finite rank") {
    IdentityPlusFiniteRank r;
    r.weights = {2.0};
    Vector e(2);
    e << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    r.frame = {e};
    CHECK(minimum_truncation(r) == 2);
    const DenseOperator t = truncate(r, 3);
    CHECK(std::abs(t(0, 1).real() - 1.0) < 1e-15);
    CHECK(t(2, 2).real() == 1.0);
    r.frame = {Vector::Ones(2)};
    CHECK_THROWS_AS(validate(StructuredOperator{r}), DomainError);
  }
  SECTION("eta I - K needs eta > ||K||/2 and compact K") {
    ScaledIdentityMinusCompact w;
    w.compact = diag("1/j");
    w.eta = 0.4;
    CHECK_THROWS_AS(validate(StructuredOperator{w}), DomainError);
    w.eta = 0.6;
    CHECK_NOTHROW(validate(StructuredOperator{w}));
    CHECK(truncate(w, 2)(1, 1).real() == Catch::Approx(0.1));
    w.compact = diag("1+1/j");
    CHECK_THROWS_AS(validate(StructuredOperator{w}), DomainError);
  }
}

TEST_CASE("variant names", "[structured]") {
  CHECK(variant_name(diag("2")) == "diagonal");
  CHECK(variant_name(TripledProjection{}) == "tripled_projection");
  CHECK(variant_name(Projection{}) == "projection");
}
