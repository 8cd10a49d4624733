#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "minmod/dense_operator.hpp"
#include "minmod/structured.hpp"

namespace minmod {

struct PropertyReport;

enum class Property { nstar, anstar };
enum class Verdict { holds, fails };

std::string to_string(Property p);
std::string to_string(Verdict v);

// One sampled restriction T|_M.
struct RestrictionTrial {
  std::size_t subspace_dim = 0;
  double min_value = 0.0;
  Vector witness;  // ambient coordinates
};

// Outcome of an attainment decision. When the verdict holds for N*, either a
// witness is present (dense) or the certificate explains the exact decision
// (structured, where the witness is a finitely supported basis vector).
struct AttainmentVerdict {
  Property property = Property::nstar;
  Verdict verdict = Verdict::holds;
  double min_value = 0.0;
  std::optional<UnitVector> witness;
  std::optional<std::string> certificate;
  bool injective = true;
  // Known for dense inputs only.
  std::optional<std::size_t> kernel_dim;
  std::vector<std::string> notes;
  std::vector<RestrictionTrial> trials;
};

struct Injectivity {
  bool injective = true;
  std::size_t kernel_dim = 0;
};

// Kernel dimension = number of singular values <= tol * sigma_max, plus the
// cols - rows directions a wide operator necessarily annihilates.
Injectivity injectivity_check(const DenseOperator& t, double tol = 1e-10);

// Finite dimension: always holds. For a positive semidefinite input the
// witness is also certified as an eigenvector for [P].
AttainmentVerdict nstar_check_dense(const DenseOperator& t);

// Exact decisions for the structured catalog (no numerics involved).
AttainmentVerdict nstar_decide_structured(const StructuredOperator& op);
AttainmentVerdict anstar_decide_projection(const Projection& p);
AttainmentVerdict anstar_decide_structured(const StructuredOperator& op);

// Samples `trials` random subspaces (dimension uniform in 1..cols, seeded
// per trial) and records [T|_M] with its witness.
AttainmentVerdict anstar_sample(const DenseOperator& t, std::size_t trials, std::uint64_t seed);

// For an isometry R: [R T|_M] = [T|_M] and [T R|_M] = [T|_{R(M)}] over
// sampled subspaces. Each identity is checked when the shapes compose.
PropertyReport isometry_compose_check(const DenseOperator& t, const DenseOperator& r, std::size_t trials,
                                      std::uint64_t seed, double tol = 1e-8);

}  // namespace minmod
