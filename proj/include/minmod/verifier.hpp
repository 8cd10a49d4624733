#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "minmod/structured.hpp"

namespace minmod {

struct SuiteConfig {
  std::string name;
  std::size_t trials = 100;
  std::size_t dim_min = 2;
  std::size_t dim_max = 12;
  std::uint64_t seed = 42;
  // Unset: the suite's own pinned tolerance.
  std::optional<double> tolerance;
  // Truncation sizes (or block counts) for suites over structured families;
  // empty selects the suite default.
  std::vector<std::size_t> truncations;

  void validate() const;
};

struct PropertyReport {
  std::string suite;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double max_violation = 0.0;
  std::string worst_case;
  double tolerance = 0.0;
  double elapsed_ms = 0.0;
  std::vector<std::string> notes;

  bool passed() const { return failures == 0; }
};

// Accumulates per-check violations against one tolerance.
class ViolationLog {
 public:
  explicit ViolationLog(double tolerance) : tolerance_(tolerance) {}

  void record(double violation, const std::string& instance);
  // A check with its own limit; stored rescaled to the log tolerance so that
  // max_violation <= tolerance still means no failures.
  void record(double violation, double limit, const std::string& instance);
  void note(std::string text) { notes_.push_back(std::move(text)); }
  PropertyReport report(std::string suite) const;

 private:
  double tolerance_;
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  double max_violation_ = 0.0;
  std::string worst_;
  std::vector<std::string> notes_;
};

// |a - b| / max(1, |a|, |b|)
double scaled_error(double a, double b);

struct SuiteInfo {
  std::string name;
  std::string description;
  double tolerance;
};

const std::vector<SuiteInfo>& suite_registry();
const SuiteInfo& find_suite(const std::string& name);  // throws ParseError

// Deterministic for a fixed config (apart from elapsed_ms).
PropertyReport run_suite(const SuiteConfig& cfg);
// Every registered suite with the shared settings of `base`.
std::vector<PropertyReport> run_all(const SuiteConfig& base);

// ||T t^n||^2 for the unit vector t^n of the tripled-projection example,
// in closed form and by applying the truncated operator.
struct SequenceValue {
  std::size_t n = 0;
  double closed_form = 0.0;
  double numeric = 0.0;
};
double example31_closed_form(std::size_t n);
SequenceValue example31_sequence(std::size_t n);

// The minimum modulus of the restricted tripled projection on `blocks`
// subspace coordinates.
double example31_min_modulus(std::size_t blocks);

// Rank/corank calculus for sums, differences and products of two AN*
// projections, corroborated on random dense representatives.
PropertyReport projection_algebra_check(const Projection& p1, const Projection& p2, std::size_t dim = 24,
                                        std::uint64_t seed = 42);

}  // namespace minmod
