#include "minmod/structured.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <regex>
#include <string>

#include "minmod/error.hpp"
#include "minmod/subspace.hpp"

namespace minmod {

namespace {

std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return std::to_string(v);
  return std::string(buf, end);
}

double parse_number(const std::string& s) {
  double v = 0.0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) throw ParseError("bad number '" + s + "' in tail rule");
  return v;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

// ---------------------------------------------------------------- Cardinality

std::size_t Cardinality::count() const {
  if (!count_) throw DomainError("cardinality is infinite");
  return *count_;
}

std::string Cardinality::to_string() const { return count_ ? std::to_string(*count_) : std::string("inf"); }

// ------------------------------------------------------------------- TailRule

TailRule TailRule::constant(double value) {
  TailRule r;
  r.shape = TailShape::constant;
  r.limit = value;
  return r;
}

TailRule TailRule::harmonic(TailShape shape, double limit, double scale) {
  TailRule r;
  r.shape = shape;
  r.limit = limit;
  r.generator = TailGenerator::harmonic;
  r.scale = scale;
  return r;
}

TailRule TailRule::geometric(TailShape shape, double limit, double scale, double ratio) {
  TailRule r;
  r.shape = shape;
  r.limit = limit;
  r.generator = TailGenerator::geometric;
  r.scale = scale;
  r.ratio = ratio;
  return r;
}

TailRule TailRule::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  static const std::string num = R"(([0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?))";
  static const std::regex constant_re("^" + num + "$");
  static const std::regex harmonic_re("^(?:" + num + "([+-]))?" + num + "?/j$");
  static const std::regex geometric_re("^(?:" + num + "([+-]))?(?:" + num + R"(\*)?)" + num + R"(\^j$)");
  std::smatch m;
  TailRule rule;
  if (std::regex_match(s, m, constant_re)) {
    rule = constant(parse_number(m[1].str()));
  } else if (std::regex_match(s, m, harmonic_re)) {
    const double limit = m[1].matched ? parse_number(m[1].str()) : 0.0;
    const double scale = m[3].matched ? parse_number(m[3].str()) : 1.0;
    const bool minus = m[2].matched && m[2].str() == "-";
    rule = harmonic(minus ? TailShape::increasing : TailShape::decreasing, limit, scale);
  } else if (std::regex_match(s, m, geometric_re)) {
    const double limit = m[1].matched ? parse_number(m[1].str()) : 0.0;
    const double scale = m[3].matched ? parse_number(m[3].str()) : 1.0;
    const bool minus = m[2].matched && m[2].str() == "-";
    rule = geometric(minus ? TailShape::increasing : TailShape::decreasing, limit, scale,
                     parse_number(m[4].str()));
  } else {
    throw ParseError("unrecognized tail rule '" + std::string(text) + "'");
  }
  rule.validate();
  return rule;
}

double TailRule::at(std::size_t j) const {
  if (shape == TailShape::constant) return limit;
  const double jd = static_cast<double>(j);
  const double offset = generator == TailGenerator::harmonic ? scale / jd : scale * std::pow(ratio, jd);
  return shape == TailShape::decreasing ? limit + offset : limit - offset;
}

std::string TailRule::to_string() const {
  if (shape == TailShape::constant) return shortest(limit);
  const std::string body = generator == TailGenerator::harmonic ? shortest(scale) + "/j"
                                                                : shortest(scale) + "*" + shortest(ratio) + "^j";
  if (shape == TailShape::decreasing) return limit == 0.0 ? body : shortest(limit) + "+" + body;
  return shortest(limit) + "-" + body;
}

void TailRule::validate() const {
  if (!std::isfinite(limit) || !std::isfinite(scale) || !std::isfinite(ratio)) {
    throw DomainError("tail rule parameters must be finite");
  }
  if (limit < 0.0) throw DomainError("tail rule limit must be nonnegative");
  if (shape == TailShape::constant) return;
  if (!(scale > 0.0)) throw DomainError("tail rule scale must be positive");
  if (generator == TailGenerator::geometric && !(ratio > 0.0 && ratio < 1.0)) {
    throw DomainError("geometric tail rule needs 0 < ratio < 1");
  }
}

// -------------------------------------------------------------- WeightSequence

double WeightSequence::weight(std::size_t j) const {
  if (j < 1) throw DomainError("weights are indexed from 1");
  if (j <= prefix.size()) return prefix[j - 1];
  return tail.at(j - tail_offset);
}

std::vector<double> WeightSequence::first(std::size_t n) const {
  std::vector<double> w(n);
  for (std::size_t j = 1; j <= n; ++j) w[j - 1] = weight(j);
  const std::size_t k = prefix.size();
  for (std::size_t j = k + 1; j <= n; ++j) {
    const double cur = w[j - 1];
    bool ok = true;
    if (tail.shape == TailShape::decreasing) {
      ok = cur > tail.limit && (j == k + 1 || cur < w[j - 2]);
    } else if (tail.shape == TailShape::increasing) {
      ok = cur < tail.limit && (j == k + 1 || cur > w[j - 2]);
    }
    if (!ok) {
      throw DomainError("tail rule '" + tail.to_string() + "' cannot produce " + std::to_string(n) +
                        " strictly monotone weights in double precision (fails at index " + std::to_string(j) + ")");
    }
  }
  return w;
}

WeightBounds WeightSequence::bounds() const {
  const std::size_t k = prefix.size();
  const std::size_t t_index = k + 1;
  const double t0 = weight(t_index);
  double t_inf, t_sup;
  bool t_inf_att, t_sup_att;
  switch (tail.shape) {
    case TailShape::constant:
      t_inf = t_sup = tail.limit;
      t_inf_att = t_sup_att = true;
      break;
    case TailShape::decreasing:
      t_inf = tail.limit;
      t_inf_att = false;
      t_sup = t0;
      t_sup_att = true;
      break;
    case TailShape::increasing:
    default:
      t_inf = t0;
      t_inf_att = true;
      t_sup = tail.limit;
      t_sup_att = false;
      break;
  }
  WeightBounds b;
  b.inf = t_inf;
  b.inf_attained = t_inf_att;
  b.inf_index = t_inf_att ? t_index : 0;
  b.sup = t_sup;
  b.sup_attained = t_sup_att;
  b.sup_index = t_sup_att ? t_index : 0;
  // Scan the prefix backwards so ties resolve to the smallest index.
  for (std::size_t i = k; i >= 1; --i) {
    const double v = prefix[i - 1];
    if (v <= b.inf) {
      b.inf = v;
      b.inf_attained = true;
      b.inf_index = i;
    }
    if (v >= b.sup) {
      b.sup = v;
      b.sup_attained = true;
      b.sup_index = i;
    }
    if (v == 0.0) b.has_zero = true;
  }
  if (tail.shape == TailShape::constant && tail.limit == 0.0) b.has_zero = true;
  if (tail.shape == TailShape::increasing && t0 == 0.0) b.has_zero = true;
  return b;
}

void WeightSequence::validate() const {
  for (double v : prefix) {
    if (!std::isfinite(v) || v < 0.0) throw DomainError("weights must be finite and nonnegative");
  }
  tail.validate();
  if (tail_offset > prefix.size()) throw DomainError("tail offset exceeds prefix length");
  const double t0 = weight(prefix.size() + 1);
  if (tail.shape == TailShape::increasing && t0 < 0.0) {
    throw DomainError("increasing tail rule '" + tail.to_string() + "' starts below zero");
  }
  // Decreasing to zero may still carry zero weights (non-injective).
  if (tail.shape == TailShape::decreasing && tail.limit > 0.0) {
    for (double v : prefix) {
      if (!(v > tail.limit)) {
        throw DomainError("decreasing tail to " + shortest(tail.limit) + " requires every prefix weight above the limit");
      }
    }
  }
}

// ------------------------------------------------------------------ Diagonal

double Diagonal::weight(std::size_t j) const { return std::pow(weights.weight(j), static_cast<double>(power)); }

WeightBounds Diagonal::bounds() const {
  WeightBounds b = weights.bounds();
  const double p = static_cast<double>(power);
  b.inf = std::pow(b.inf, p);
  b.sup = std::pow(b.sup, p);
  return b;
}

bool Diagonal::is_compact() const { return weights.tail.limit == 0.0; }

double diagonal_norm(const Diagonal& d) { return d.bounds().sup; }

Diagonal ShiftVariant::modulus_diagonal() const {
  Diagonal d;
  d.weights.prefix = {0.0, lead};
  d.weights.prefix.insert(d.weights.prefix.end(), weights.prefix.begin(), weights.prefix.end());
  d.weights.tail = weights.tail;
  d.weights.tail_offset = weights.tail_offset + 2;
  return d;
}

std::size_t IdentityPlusFiniteRank::support() const {
  std::size_t s = 0;
  for (const auto& v : frame) s = std::max(s, static_cast<std::size_t>(v.size()));
  return s;
}

// ---------------------------------------------------------------- dispatch

std::string variant_name(const StructuredOperator& op) {
  return std::visit(overloaded{
                        [](const Diagonal&) { return std::string("diagonal"); },
                        [](const ShiftVariant&) { return std::string("shift"); },
                        [](const TripledProjection&) { return std::string("tripled_projection"); },
                        [](const IdentityPlusFiniteRank&) { return std::string("identity_plus_finite_rank"); },
                        [](const ScaledIdentityMinusCompact&) { return std::string("scaled_identity_minus_compact"); },
                        [](const Projection&) { return std::string("projection"); },
                    },
                    op);
}

namespace {

void validate_diagonal(const Diagonal& d) {
  d.weights.validate();
  if (d.power < 1) throw DomainError("diagonal power must be at least 1");
}

Matrix padded_frame(const IdentityPlusFiniteRank& op, std::size_t n) {
  Matrix f = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(op.frame.size()));
  for (std::size_t j = 0; j < op.frame.size(); ++j) {
    f.col(static_cast<Eigen::Index>(j)).head(op.frame[j].size()) = op.frame[j];
  }
  return f;
}

std::vector<double> diagonal_weights(const Diagonal& d, std::size_t n) {
  std::vector<double> base = d.weights.first(n);
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = std::pow(base[i], static_cast<double>(d.power));
  const std::size_t k = d.weights.prefix.size();
  if (d.weights.tail.shape != TailShape::constant) {
    for (std::size_t i = k + 1; i < n; ++i) {
      if (w[i] == w[i - 1] || (d.weights.tail.limit == 0.0 && w[i] == 0.0)) {
        throw DomainError("diagonal power " + std::to_string(d.power) + " loses strict monotonicity at index " +
                          std::to_string(i + 1));
      }
    }
  }
  return w;
}

Matrix tripled_projection_matrix(std::size_t n) {
  Matrix p = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t b = 0; b < n / 3; ++b) {
    const auto i = static_cast<Eigen::Index>(3 * b);
    p(i, i) = 1.0;
    p.block(i + 1, i + 1, 2, 2).setConstant(0.5);
  }
  return p;
}

}  // namespace

void validate(const StructuredOperator& op) {
  std::visit(overloaded{
                 [](const Diagonal& d) { validate_diagonal(d); },
                 [](const ShiftVariant& s) {
                   if (!std::isfinite(s.lead) || !(s.lead > 0.0)) throw DomainError("shift lead weight must be positive");
                   s.weights.validate();
                 },
                 [](const TripledProjection&) {},
                 [](const IdentityPlusFiniteRank& r) {
                   if (r.weights.size() != r.frame.size()) throw DomainError("one weight per frame vector is required");
                   for (double w : r.weights) {
                     if (!std::isfinite(w) || w < 0.0) throw DomainError("finite-rank weights must be nonnegative");
                   }
                   if (r.frame.empty()) return;
                   for (const auto& v : r.frame) {
                     if (v.size() == 0) throw DomainError("frame vectors must be nonempty");
                   }
                   Subspace(padded_frame(r, r.support()));  // throws when not orthonormal
                 },
                 [](const ScaledIdentityMinusCompact& w) {
                   validate_diagonal(w.compact);
                   if (!w.compact.is_compact()) throw DomainError("K must be compact: its weights have to tend to zero");
                   if (!std::isfinite(w.eta) || !(w.eta > 0.0)) throw DomainError("eta must be positive");
                   const double k_norm = diagonal_norm(w.compact);
                   if (!(w.eta > k_norm / 2.0)) {
                     throw DomainError("eta = " + shortest(w.eta) + " must exceed ||K||/2 = " + shortest(k_norm / 2.0));
                   }
                 },
                 [](const Projection& p) {
                   if (p.rank == Cardinality::finite(0) && p.corank == Cardinality::finite(0)) {
                     throw DomainError("projection on the zero space");
                   }
                 },
             },
             op);
}

std::size_t minimum_truncation(const StructuredOperator& op) {
  return std::visit(overloaded{
                        [](const ShiftVariant&) -> std::size_t { return 3; },
                        [](const TripledProjection&) -> std::size_t { return 3; },
                        [](const IdentityPlusFiniteRank& r) -> std::size_t { return std::max<std::size_t>(1, r.support()); },
                        [](const auto&) -> std::size_t { return 1; },
                    },
                    op);
}

DenseOperator truncate(const StructuredOperator& op, std::size_t n) {
  validate(op);
  const std::size_t min_n = minimum_truncation(op);
  if (n < min_n) {
    throw DimensionError("truncation size " + std::to_string(n) + " below the minimum " + std::to_string(min_n) +
                         " for variant " + variant_name(op));
  }
  const auto k = static_cast<Eigen::Index>(n);
  return std::visit(
      overloaded{
          [&](const Diagonal& d) { return DenseOperator::diagonal(diagonal_weights(d, n)); },
          [&](const ShiftVariant& s) {
            const std::vector<double> w = s.weights.first(n - 2);
            Matrix m = Matrix::Zero(k, k);
            m(0, 1) = s.lead;
            for (Eigen::Index i = 2; i < k; ++i) m(i, i) = w[static_cast<std::size_t>(i - 2)];
            return DenseOperator(std::move(m));
          },
          [&](const TripledProjection& t) {
            if (n % 3 != 0) throw DimensionError("tripled projection truncation must be a multiple of 3");
            const Matrix p = tripled_projection_matrix(n);
            if (!t.on_subspace) return DenseOperator(p);
            // P is block diagonal, so P F is formed one 3-row slab at a time.
            const Subspace m = example31_frame(n / 3).padded(n);
            const Matrix& f = m.frame();
            Matrix out(f.rows(), f.cols());
            for (Eigen::Index i = 0; i < f.rows(); i += 3) {
              out.middleRows(i, 3).noalias() = p.block(i, i, 3, 3) * f.middleRows(i, 3);
            }
            return DenseOperator(std::move(out));
          },
          [&](const IdentityPlusFiniteRank& r) {
            Matrix m = Matrix::Identity(k, k);
            if (!r.frame.empty()) {
              const Matrix f = padded_frame(r, n);
              for (std::size_t j = 0; j < r.weights.size(); ++j) {
                const auto c = static_cast<Eigen::Index>(j);
                m += r.weights[j] * f.col(c) * f.col(c).adjoint();
              }
            }
            return DenseOperator(std::move(m));
          },
          [&](const ScaledIdentityMinusCompact& w) {
            const std::vector<double> kw = diagonal_weights(w.compact, n);
            std::vector<double> d(n);
            for (std::size_t i = 0; i < n; ++i) d[i] = w.eta - kw[i];
            return DenseOperator::diagonal(d);
          },
          [&](const Projection& p) {
            std::vector<double> d(n, 0.0);
            if (p.rank.is_finite() && p.corank.is_finite()) {
              const std::size_t total = p.rank.count() + p.corank.count();
              if (n > total) {
                throw DimensionError("projection acts on a space of dimension " + std::to_string(total) +
                                     "; cannot truncate to " + std::to_string(n));
              }
            }
            for (std::size_t i = 0; i < n; ++i) {
              if (p.rank.is_finite()) {
                d[i] = i < p.rank.count() ? 1.0 : 0.0;
              } else if (p.corank.is_finite()) {
                d[i] = i < p.corank.count() ? 0.0 : 1.0;
              } else {
                d[i] = i % 2 == 0 ? 1.0 : 0.0;
              }
            }
            return DenseOperator::diagonal(d);
          },
      },
      op);
}

}  // namespace minmod
