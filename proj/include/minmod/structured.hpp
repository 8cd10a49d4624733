#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "minmod/dense_operator.hpp"

namespace minmod {

// Dimension of a range or kernel: a finite count or countably infinite.
class Cardinality {
 public:
  static Cardinality finite(std::size_t n) { return Cardinality(n); }
  static Cardinality infinite() { return Cardinality(); }

  bool is_finite() const { return count_.has_value(); }
  std::size_t count() const;  // throws DomainError when infinite
  std::string to_string() const;
  bool operator==(const Cardinality&) const = default;

 private:
  Cardinality() = default;
  explicit Cardinality(std::size_t n) : count_(n) {}
  std::optional<std::size_t> count_;
};

enum class TailShape { constant, decreasing, increasing };
enum class TailGenerator { harmonic, geometric };

// Closed-form rule for the tail of a weight sequence, evaluated at the
// 1-based index j:
//   constant                 limit
//   decreasing, harmonic     limit + scale / j
//   increasing, harmonic     limit - scale / j
//   decreasing, geometric    limit + scale * ratio^j
//   increasing, geometric    limit - scale * ratio^j
// A decreasing rule with limit 0 is the decreasing-to-zero (compact) case.
struct TailRule {
  TailShape shape = TailShape::constant;
  double limit = 0.0;
  TailGenerator generator = TailGenerator::harmonic;
  double scale = 0.0;
  double ratio = 0.0;

  static TailRule constant(double value);
  static TailRule harmonic(TailShape shape, double limit, double scale);
  static TailRule geometric(TailShape shape, double limit, double scale, double ratio);

  // Parses "2", "1+1/j", "1-0.5/j", "1/j", "1+0.5*0.5^j", "0.5^j", ...
  static TailRule parse(std::string_view text);

  double at(std::size_t j) const;
  std::string to_string() const;
  void validate() const;
  bool operator==(const TailRule&) const = default;
};

// Order facts about the values of a nonnegative weight sequence.
struct WeightBounds {
  double inf = 0.0;
  bool inf_attained = false;
  std::size_t inf_index = 0;  // smallest 1-based index attaining inf (0 if not attained)
  double sup = 0.0;
  bool sup_attained = false;
  std::size_t sup_index = 0;
  bool has_zero = false;
};

// lambda_1, lambda_2, ...: an explicit prefix followed by a tail rule. The tail
// weight at global index j > prefix.size() is tail.at(j - tail_offset).
struct WeightSequence {
  std::vector<double> prefix;
  TailRule tail;
  std::size_t tail_offset = 0;

  double weight(std::size_t j) const;
  // First n weights; throws DomainError when the rule cannot produce n
  // strictly monotone values in double precision.
  std::vector<double> first(std::size_t n) const;
  WeightBounds bounds() const;
  void validate() const;
  bool operator==(const WeightSequence&) const = default;
};

// (x_j) -> (w_j^power x_j) with w the weight sequence.
struct Diagonal {
  WeightSequence weights;
  unsigned power = 1;

  double weight(std::size_t j) const;
  WeightBounds bounds() const;
  bool is_compact() const;  // weights tend to zero
  bool operator==(const Diagonal&) const = default;
};

// (x1, x2, x3, ...) -> (lead x2, 0, w1 x3, w2 x4, ...).
struct ShiftVariant {
  double lead = 1.0;
  WeightSequence weights;

  // The diagonal D with ||T x|| = ||D x|| for all x: weights (0, lead, w1, w2, ...).
  Diagonal modulus_diagonal() const;
  bool operator==(const ShiftVariant&) const = default;
};

// Orthogonal projection onto {(x1, x2, x2, x3, x4, x4, x5, ...)}; with
// on_subspace set, the operator is its restriction to the subspace of
// vectors (x1, x1, x2, x2, x2, x3, x3, x3, ...).
struct TripledProjection {
  bool on_subspace = false;
  bool operator==(const TripledProjection&) const = default;
};

// I + sum_j w_j <x, e_j> e_j with w_j >= 0 and e_j orthonormal vectors of
// finite support.
struct IdentityPlusFiniteRank {
  std::vector<double> weights;
  std::vector<Vector> frame;

  std::size_t support() const;
};

// eta I - K with K a positive compact diagonal and eta > ||K|| / 2.
struct ScaledIdentityMinusCompact {
  double eta = 1.0;
  Diagonal compact;
};

// Orthogonal projection described by its rank and corank.
struct Projection {
  Cardinality rank = Cardinality::finite(0);
  Cardinality corank = Cardinality::infinite();
  bool operator==(const Projection&) const = default;
};

using StructuredOperator = std::variant<Diagonal, ShiftVariant, TripledProjection, IdentityPlusFiniteRank,
                                        ScaledIdentityMinusCompact, Projection>;

std::string variant_name(const StructuredOperator& op);

// Checks every invariant of the variant; throws DomainError.
void validate(const StructuredOperator& op);

std::size_t minimum_truncation(const StructuredOperator& op);

// Finite section on span(e_1..e_n). For TripledProjection n must be a
// multiple of 3; with on_subspace the result is n x (n/3), the operator on
// the first n/3 subspace coordinates.
DenseOperator truncate(const StructuredOperator& op, std::size_t n);

// Sup of the weight sequence |w_j|^power, i.e. the norm of a positive diagonal.
double diagonal_norm(const Diagonal& d);

}  // namespace minmod
