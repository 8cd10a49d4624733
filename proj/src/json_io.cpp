#include "minmod/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "minmod/error.hpp"

namespace minmod::io {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// JSON has no infinities; they are written as strings.
json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

double real_of(const json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + ": expected a number");
  return j.get<double>();
}

std::size_t count_of(const json& j, const char* what) {
  if (!j.is_number_unsigned()) throw ParseError(std::string(what) + ": expected a nonnegative integer");
  return j.get<std::size_t>();
}

std::vector<double> reals(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + ": expected an array");
  std::vector<double> out;
  for (const auto& e : j) out.push_back(real_of(e, what));
  return out;
}

Cardinality cardinality_from_json(const json& j, const char* what) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinite" || s == "∞") return Cardinality::infinite();
    throw ParseError(std::string(what) + ": expected a count or \"inf\"");
  }
  return Cardinality::finite(count_of(j, what));
}

json cardinality_to_json(const Cardinality& c) {
  if (c.is_finite()) return c.count();
  return "inf";
}

WeightSequence weights_from_json(const json& j) {
  WeightSequence w;
  w.tail = TailRule::parse(field(j, "rule").get<std::string>());
  if (j.contains("prefix")) w.prefix = reals(j.at("prefix"), "prefix");
  w.tail_offset = j.contains("tail_offset") ? count_of(j.at("tail_offset"), "tail_offset") : w.prefix.size();
  return w;
}

void weights_to_json(json& j, const WeightSequence& w) {
  j["rule"] = w.tail.to_string();
  j["prefix"] = w.prefix;
  j["tail_offset"] = w.tail_offset;
}

Diagonal diagonal_from_json(const json& j) {
  Diagonal d;
  d.weights = weights_from_json(j);
  if (j.contains("power")) {
    const std::size_t p = count_of(j.at("power"), "power");
    if (p < 1) throw ParseError("power must be at least 1");
    d.power = static_cast<unsigned>(p);
  }
  return d;
}

void diagonal_to_json(json& j, const Diagonal& d) {
  weights_to_json(j, d.weights);
  j["power"] = d.power;
}

}  // namespace

json to_json(cplx z) { return json::array({number(z.real()), number(z.imag())}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ParseError("complex entry must be a number or [re, im]");
}

json to_json(const DenseOperator& t) {
  json entries = json::array();
  for (const cplx& z : t.row_major_entries()) entries.push_back(to_json(z));
  return json{{"rows", t.rows()}, {"cols", t.cols()}, {"entries", entries}};
}

DenseOperator dense_from_json(const json& j) {
  const std::size_t rows = count_of(field(j, "rows"), "rows");
  const std::size_t cols = count_of(field(j, "cols"), "cols");
  const json& e = field(j, "entries");
  if (!e.is_array()) throw ParseError("entries: expected an array");
  std::vector<cplx> vals;
  vals.reserve(e.size());
  for (const auto& z : e) vals.push_back(complex_from_json(z));
  if (vals.size() != rows * cols) {
    throw ParseError("entries: expected " + std::to_string(rows * cols) + " values, got " + std::to_string(vals.size()));
  }
  return DenseOperator::from_row_major(rows, cols, vals);
}

json to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Vector vector_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("vector: expected an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

json to_json(const Subspace& m) {
  return json{{"ambient", m.ambient()}, {"dim", m.dim()}, {"frame", to_json(m.embedding())}};
}

Subspace subspace_from_json(const json& j) {
  const DenseOperator f = dense_from_json(field(j, "frame"));
  if (j.contains("ambient") && count_of(j.at("ambient"), "ambient") != f.rows()) {
    throw ParseError("subspace: ambient does not match the frame rows");
  }
  if (j.contains("dim") && count_of(j.at("dim"), "dim") != f.cols()) {
    throw ParseError("subspace: dim does not match the frame columns");
  }
  return Subspace(f.matrix());
}

json to_json(const StructuredOperator& op) {
  json j{{"variant", variant_name(op)}};
  std::visit(overloaded{
                 [&](const Diagonal& d) { diagonal_to_json(j, d); },
                 [&](const ShiftVariant& s) {
                   j["lead"] = s.lead;
                   weights_to_json(j, s.weights);
                 },
                 [&](const TripledProjection& t) { j["on_subspace"] = t.on_subspace; },
                 [&](const IdentityPlusFiniteRank& r) {
                   j["weights"] = r.weights;
                   json frame = json::array();
                   for (const auto& v : r.frame) frame.push_back(to_json(v));
                   j["frame"] = frame;
                 },
                 [&](const ScaledIdentityMinusCompact& w) {
                   j["eta"] = w.eta;
                   diagonal_to_json(j, w.compact);
                 },
                 [&](const Projection& p) {
                   j["rank"] = cardinality_to_json(p.rank);
                   j["corank"] = cardinality_to_json(p.corank);
                 },
             },
             op);
  return j;
}

StructuredOperator structured_from_json(const json& j) {
  const json& v = field(j, "variant");
  if (!v.is_string()) throw ParseError("variant: expected a string");
  const std::string name = v.get<std::string>();
  StructuredOperator op;
  if (name == "diagonal") {
    op = diagonal_from_json(j);
  } else if (name == "shift") {
    ShiftVariant s;
    s.lead = real_of(field(j, "lead"), "lead");
    s.weights = weights_from_json(j);
    op = s;
  } else if (name == "tripled_projection") {
    TripledProjection t;
    if (j.contains("on_subspace")) t.on_subspace = j.at("on_subspace").get<bool>();
    op = t;
  } else if (name == "identity_plus_finite_rank") {
    IdentityPlusFiniteRank r;
    r.weights = reals(field(j, "weights"), "weights");
    const json& f = field(j, "frame");
    if (!f.is_array()) throw ParseError("frame: expected an array of vectors");
    for (const auto& e : f) r.frame.push_back(vector_from_json(e));
    op = r;
  } else if (name == "scaled_identity_minus_compact") {
    ScaledIdentityMinusCompact w;
    w.eta = real_of(field(j, "eta"), "eta");
    w.compact = diagonal_from_json(j);
    op = w;
  } else if (name == "projection") {
    Projection p;
    p.rank = cardinality_from_json(field(j, "rank"), "rank");
    p.corank = cardinality_from_json(field(j, "corank"), "corank");
    op = p;
  } else {
    throw ParseError("unknown variant '" + name + "'");
  }
  try {
    validate(op);
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid ") + name + ": " + e.what());
  }
  return op;
}

json to_json(const AttainmentVerdict& v) {
  json j{{"property", to_string(v.property)}, {"verdict", to_string(v.verdict)}, {"min_value", number(v.min_value)}};
  j["witness"] = v.witness ? to_json(v.witness->coords()) : json(nullptr);
  j["certificate"] = v.certificate ? json(*v.certificate) : json(nullptr);
  j["injective"] = v.injective;
  j["kernel_dim"] = v.kernel_dim ? json(*v.kernel_dim) : json(nullptr);
  j["notes"] = v.notes;
  if (!v.trials.empty()) {
    json trials = json::array();
    for (const auto& t : v.trials) {
      trials.push_back({{"subspace_dim", t.subspace_dim}, {"min_value", number(t.min_value)}, {"witness", to_json(t.witness)}});
    }
    j["trials"] = trials;
  }
  return j;
}

json to_json(const PropertyReport& r) {
  return json{{"suite", r.suite},
              {"passed", r.passed()},
              {"trials", r.trials},
              {"failures", r.failures},
              {"max_violation", number(r.max_violation)},
              {"tolerance", r.tolerance},
              {"worst_case", r.worst_case},
              {"notes", r.notes},
              {"elapsed_ms", std::round(r.elapsed_ms * 1000.0) / 1000.0}};
}

json to_json(const RangeDescriptor& r) {
  if (r.kind != RangeDescriptor::Kind::exact_interval) {
    json pts = json::array();
    for (const auto& p : r.boundary) pts.push_back({{"theta", p.theta}, {"point", to_json(p.point)}});
    return json{{"kind", "sampled_boundary"}, {"boundary", pts}};
  }
  return json{{"kind", "exact_interval"},
              {"lo", number(r.interval.lo)},
              {"hi", number(r.interval.hi)},
              {"lo_open", r.interval.lo_open},
              {"hi_open", r.interval.hi_open}};
}

std::string range_csv(const RangeDescriptor& r) {
  std::ostringstream os;
  os << "theta,re,im\n";
  char buf[96];
  for (const auto& p : r.boundary) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", p.theta, p.point.real(), p.point.imag());
    os << buf;
  }
  return os.str();
}

json to_json(const RunManifest& m) {
  json tol = json::object();
  for (const auto& [k, v] : m.tolerances) tol[k] = v;
  return json{{"tool", m.tool},       {"version", m.version},         {"command", m.command},
              {"arguments", m.arguments}, {"inputs", m.inputs},           {"seed", m.seed},
              {"tolerances", tol},    {"truncations", m.truncations}, {"outputs", m.outputs}};
}

OperatorInput operator_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("operator file must hold a JSON object");
  if (j.contains("variant")) return structured_from_json(j);
  if (j.contains("entries")) return dense_from_json(j);
  throw ParseError("operator object needs either \"entries\" (dense) or \"variant\" (structured)");
}

OperatorInput load_operator(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
  try {
    return operator_from_json(j);
  } catch (const json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  } catch (const DomainError& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

}  // namespace minmod::io
