#pragma once

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "minmod/attainment.hpp"
#include "minmod/dense_operator.hpp"
#include "minmod/spectral.hpp"
#include "minmod/structured.hpp"
#include "minmod/subspace.hpp"
#include "minmod/verifier.hpp"

namespace minmod::io {

using json = nlohmann::ordered_json;

// Complex numbers travel as [re, im]; plain numbers are read as real.
json to_json(cplx z);
cplx complex_from_json(const json& j);

// {"rows": m, "cols": n, "entries": [[re, im], ...]} in row-major order.
json to_json(const DenseOperator& t);
DenseOperator dense_from_json(const json& j);

json to_json(const Vector& v);
Vector vector_from_json(const json& j);

// {"ambient": n, "dim": k, "frame": <dense operator>}
json to_json(const Subspace& m);
Subspace subspace_from_json(const json& j);

// {"variant": "diagonal", ...}; see README for the per-variant fields.
json to_json(const StructuredOperator& op);
StructuredOperator structured_from_json(const json& j);

json to_json(const AttainmentVerdict& v);
json to_json(const PropertyReport& r);
json to_json(const RangeDescriptor& r);  // exact interval
std::string range_csv(const RangeDescriptor& r);  // theta,re,im

struct RunManifest {
  std::string tool = "minmod";
  std::string version;
  std::string command;
  std::vector<std::string> arguments;
  std::vector<std::string> inputs;
  std::uint64_t seed = 42;
  std::vector<std::pair<std::string, double>> tolerances;
  std::vector<std::size_t> truncations;
  std::vector<std::string> outputs;
};
json to_json(const RunManifest& m);

using OperatorInput = std::variant<DenseOperator, StructuredOperator>;
// Dense when the object has "entries", structured when it has "variant".
OperatorInput operator_from_json(const json& j);
OperatorInput load_operator(const std::string& path);  // ParseError on bad files

}  // namespace minmod::io
