#include "minmod/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "minmod/attainment.hpp"
#include "minmod/error.hpp"
#include "minmod/json_io.hpp"
#include "minmod/spectral.hpp"
#include "minmod/verifier.hpp"

namespace minmod {

namespace {

using io::json;

std::size_t parse_count(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError("expected a nonnegative integer, got '" + s + "'");
  }
  return std::stoull(s);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::vector<double> parse_reals(const std::string& s) {
  std::vector<double> out;
  for (const auto& tok : split(s, ',')) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw ParseError("bad number '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

Cardinality parse_cardinality(const std::string& s) {
  if (s == "inf" || s == "infinite" || s == "∞") return Cardinality::infinite();
  return Cardinality::finite(parse_count(s));
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot write '" + path + "'");
  f << text;
}

struct Common {
  std::uint64_t seed = 42;
  double tol = 1e-8;
  std::size_t trials = 100;
  std::size_t truncation = 1024;
  std::size_t grid = 360;
  std::size_t max_dim = kDefaultMaxDim;
  std::string out;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "random seed")->capture_default_str();
  app->add_option("--tol", c.tol, "tolerance")->capture_default_str();
  app->add_option("--trials", c.trials, "sampled trials")->capture_default_str();
  app->add_option("--truncation", c.truncation, "finite section size for structured operators")->capture_default_str();
  app->add_option("--grid", c.grid, "numerical range angle grid")->capture_default_str();
  app->add_option("--max-dim", c.max_dim, "dense dimension cap")->capture_default_str();
  app->add_option("--out", c.out, "output path (default stdout)");
}

io::RunManifest manifest(const std::string& command, const std::vector<std::string>& args, const Common& c,
                         std::vector<std::string> inputs) {
  io::RunManifest m;
  m.version = kVersion;
  m.command = command;
  m.arguments = args;
  m.inputs = std::move(inputs);
  m.seed = c.seed;
  m.tolerances = {{"tol", c.tol}};
  m.truncations = {c.truncation};
  m.outputs = {c.out.empty() ? std::string("-") : c.out};
  return m;
}

void check_cap(std::size_t rows, std::size_t cols, std::size_t cap) {
  if (rows > cap || cols > cap) {
    throw ResourceError("dimension " + std::to_string(rows) + "x" + std::to_string(cols) + " exceeds --max-dim " +
                        std::to_string(cap));
  }
}

// Dense matrix for an operator file; structured inputs are truncated.
DenseOperator materialize(const io::OperatorInput& in, const Common& c, std::size_t* used_n) {
  if (const auto* d = std::get_if<DenseOperator>(&in)) {
    check_cap(d->rows(), d->cols(), c.max_dim);
    if (used_n) *used_n = 0;
    return *d;
  }
  const auto& op = std::get<StructuredOperator>(in);
  std::size_t n = std::max(c.truncation, minimum_truncation(op));
  if (std::holds_alternative<TripledProjection>(op) && n % 3 != 0) n += 3 - n % 3;
  check_cap(n, n, c.max_dim);
  if (used_n) *used_n = n;
  return truncate(op, n);
}

double opnorm(const Matrix& m) { return operator_norm(DenseOperator(m)).value; }

int cmd_compute(const std::vector<std::string>& args, const Common& c, const std::string& input,
                const std::string& what, const std::string& apply, std::ostream& out) {
  const io::OperatorInput in = io::load_operator(input);
  std::size_t n = 0;
  DenseOperator t = materialize(in, c, &n);
  if (!apply.empty()) {
    if (apply != "exp") throw ParseError("--apply supports only 'exp'");
    t = hermitian_function(t, [](double x) { return std::exp(x); });
  }
  json j;
  j["manifest"] = io::to_json(manifest("compute", args, c, {input}));
  j["what"] = what;
  if (!apply.empty()) j["applied"] = apply;
  j["rows"] = t.rows();
  j["cols"] = t.cols();
  if (n > 0) j["truncation"] = n;
  if (what == "norm" || what == "minmod") {
    const Extremum e = what == "norm" ? operator_norm(t) : min_modulus(t);
    const double residual = std::abs(norm(t.apply(e.vector.coords())) - e.value);
    j["value"] = e.value;
    if (what == "minmod") j["min_value"] = e.value;
    j["witness"] = io::to_json(e.vector.coords());
    j["residual"] = residual;
    j["residual_ok"] = residual <= c.tol;
    if (what == "minmod" && apply.empty()) {
      if (const auto* op = std::get_if<StructuredOperator>(&in)) {
        const AttainmentVerdict v = nstar_decide_structured(*op);
        j["declared_min_value"] = v.min_value;
        j["declared_attained"] = v.verdict == Verdict::holds;
      }
    }
  } else if (what == "sqrt") {
    const DenseOperator p = positive_sqrt(t);
    const Matrix gram = t.matrix().adjoint() * t.matrix();
    const double residual = opnorm(p.matrix() * p.matrix() - gram) / std::max(1.0, opnorm(gram));
    j["sqrt"] = io::to_json(p);
    j["residual"] = residual;
    j["residual_ok"] = residual <= c.tol;
  } else if (what == "polar") {
    if (!t.is_square()) throw DimensionError("polar decomposition needs a square operator");
    const PolarFactors f = polar_decomposition(t);
    const Matrix& u = f.unitary.matrix();
    const double rec = opnorm(u * f.positive.matrix() - t.matrix()) / std::max(1.0, opnorm(t.matrix()));
    const double uni = opnorm(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols()));
    j["unitary"] = io::to_json(f.unitary);
    j["positive"] = io::to_json(f.positive);
    j["reconstruction_residual"] = rec;
    j["unitarity_residual"] = uni;
    j["residual_ok"] = rec <= c.tol && uni <= c.tol;
  } else {
    throw ParseError("--what must be norm, minmod, sqrt or polar");
  }
  emit(j.dump(2) + "\n", c.out, out);
  return kExitOk;
}

struct CheckArgs {
  std::string input;
  std::string property;
  std::string family;
  std::string rule;
  std::string prefix;
  unsigned power = 1;
  std::vector<std::string> projection;
};

StructuredOperator family_operator(const CheckArgs& a) {
  if (!a.projection.empty()) {
    Projection p{Cardinality::infinite(), Cardinality::infinite()};
    bool has_rank = false, has_corank = false;
    for (const auto& tok : a.projection) {
      for (const auto& part : split(tok, ' ')) {
        if (part.empty()) continue;
        const auto eq = part.find('=');
        if (eq == std::string::npos) throw ParseError("--projection expects rank=<n|inf> corank=<n|inf>");
        const std::string key = part.substr(0, eq), val = part.substr(eq + 1);
        if (key == "rank") {
          p.rank = parse_cardinality(val);
          has_rank = true;
        } else if (key == "corank") {
          p.corank = parse_cardinality(val);
          has_corank = true;
        } else {
          throw ParseError("--projection: unknown key '" + key + "'");
        }
      }
    }
    if (!has_rank || !has_corank) throw ParseError("--projection needs both rank= and corank=");
    return p;
  }
  if (a.family != "diagonal") throw ParseError("--family supports only 'diagonal'");
  if (a.rule.empty()) throw ParseError("--family diagonal needs --rule");
  if (a.power < 1) throw ParseError("--power must be at least 1");
  Diagonal d;
  d.weights.tail = TailRule::parse(a.rule);
  d.weights.prefix = parse_reals(a.prefix);
  d.weights.tail_offset = d.weights.prefix.size();
  d.power = a.power;
  try {
    validate(StructuredOperator{d});
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid diagonal: ") + e.what());
  }
  return d;
}

io::OperatorInput check_input(const CheckArgs& a) {
  const bool has_family = !a.family.empty() || !a.projection.empty();
  if (a.input.empty() == !has_family) throw ParseError("give exactly one of an operator file, --family or --projection");
  if (!a.input.empty()) return io::load_operator(a.input);
  return family_operator(a);
}

int cmd_check(const std::vector<std::string>& args, const Common& c, const CheckArgs& a, std::ostream& out) {
  const io::OperatorInput in = check_input(a);
  AttainmentVerdict v;
  if (const auto* d = std::get_if<DenseOperator>(&in)) {
    check_cap(d->rows(), d->cols(), c.max_dim);
    v = a.property == "nstar" ? nstar_check_dense(*d) : anstar_sample(*d, c.trials, c.seed);
  } else {
    const auto& op = std::get<StructuredOperator>(in);
    v = a.property == "nstar" ? nstar_decide_structured(op) : anstar_decide_structured(op);
  }
  json j;
  j["manifest"] = io::to_json(manifest("check", args, c, a.input.empty() ? std::vector<std::string>{} : std::vector{a.input}));
  if (const auto* op = std::get_if<StructuredOperator>(&in)) j["operator"] = io::to_json(*op);
  j.update(io::to_json(v));
  emit(j.dump(2) + "\n", c.out, out);
  return v.verdict == Verdict::holds ? kExitOk : kExitPropertyFailed;
}

std::string summary_table(const std::vector<PropertyReport>& reports) {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-26s %8s %8s %13s %10s %10s  %s\n", "suite", "checks", "failures", "max_violation",
                "tolerance", "ms", "status");
  os << buf;
  std::size_t failed = 0;
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof(buf), "%-26s %8zu %8zu %13.3e %10.1e %10.1f  %s\n", r.suite.c_str(), r.trials, r.failures,
                  r.max_violation, r.tolerance, r.elapsed_ms, r.passed() ? "PASS" : "FAIL");
    os << buf;
    if (!r.passed()) {
      ++failed;
      os << "    worst: " << r.worst_case << "\n";
    }
  }
  os << reports.size() - failed << "/" << reports.size() << " suites passed\n";
  return os.str();
}

struct VerifyArgs {
  std::string suite;
  std::string dims = "2..12";
  std::string blocks;
  bool json_out = false;
  bool tol_given = false;
};

int cmd_verify(const std::vector<std::string>& args, const Common& c, const VerifyArgs& a, std::ostream& out) {
  SuiteConfig cfg;
  cfg.name = a.suite;
  cfg.trials = c.trials;
  cfg.seed = c.seed;
  if (a.tol_given) cfg.tolerance = c.tol;
  const std::vector<std::size_t> dims = parse_index_list(a.dims);
  cfg.dim_min = *std::min_element(dims.begin(), dims.end());
  cfg.dim_max = *std::max_element(dims.begin(), dims.end());
  if (!a.blocks.empty()) cfg.truncations = parse_index_list(a.blocks);
  for (std::size_t n : cfg.truncations) check_cap(n, n, c.max_dim);
  try {
    cfg.validate();
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
  if (a.suite != "all") find_suite(a.suite);
  const std::vector<PropertyReport> reports = a.suite == "all" ? run_all(cfg) : std::vector{run_suite(cfg)};

  io::RunManifest m = manifest("verify", args, c, {});
  m.tolerances.clear();
  if (a.tol_given) m.tolerances.push_back({"tol", c.tol});
  for (const auto& r : reports) m.tolerances.push_back({r.suite, r.tolerance});
  m.truncations = cfg.truncations;
  json j;
  j["manifest"] = io::to_json(m);
  j["config"] = {{"trials", cfg.trials}, {"dim_min", cfg.dim_min}, {"dim_max", cfg.dim_max}, {"seed", cfg.seed}};
  json rs = json::array();
  bool all_pass = true;
  for (const auto& r : reports) {
    rs.push_back(io::to_json(r));
    all_pass = all_pass && r.passed();
  }
  j["reports"] = rs;
  j["passed"] = all_pass;
  if (a.json_out) {
    emit(j.dump(2) + "\n", c.out, out);
  } else {
    if (!c.out.empty() && c.out != "-") emit(j.dump(2) + "\n", c.out, out);
    out << summary_table(reports);
  }
  return all_pass ? kExitOk : kExitPropertyFailed;
}

int cmd_range(const std::vector<std::string>& args, const Common& c, const CheckArgs& a, std::ostream& out) {
  const io::OperatorInput in = check_input(a);
  const io::RunManifest m = manifest("range", args, c, a.input.empty() ? std::vector<std::string>{} : std::vector{a.input});
  if (const auto* d = std::get_if<DenseOperator>(&in)) {
    check_cap(d->rows(), d->cols(), c.max_dim);
    if (!d->is_square()) throw DimensionError("numerical range needs a square operator");
    const RangeDescriptor r = d->is_hermitian() ? hermitian_range(*d) : numerical_range_boundary(*d, c.grid);
    if (r.kind == RangeDescriptor::Kind::exact_interval) {
      json j{{"manifest", io::to_json(m)}};
      j.update(io::to_json(r));
      emit(j.dump(2) + "\n", c.out, out);
    } else {
      emit("# " + io::to_json(m).dump() + "\n" + io::range_csv(r), c.out, out);
    }
    return kExitOk;
  }
  const RangeDescriptor r = structured_range(std::get<StructuredOperator>(in));
  json j{{"manifest", io::to_json(m)}};
  j.update(io::to_json(r));
  emit(j.dump(2) + "\n", c.out, out);
  return kExitOk;
}

}  // namespace

std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& tok : split(text, ',')) {
    if (tok.empty()) throw ParseError("empty item in list '" + text + "'");
    const auto dots = tok.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_count(tok));
      continue;
    }
    const std::size_t lo = parse_count(tok.substr(0, dots)), hi = parse_count(tok.substr(dots + 2));
    if (lo > hi) throw ParseError("descending range '" + tok + "'");
    if (hi - lo > 1000000) throw ParseError("range '" + tok + "' is too long");
    for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
  }
  if (out.empty()) throw ParseError("empty list");
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum modulus, norms, square roots, polar factors and numerical ranges of operators; attainment "
               "decisions and property suites."};
  app.name("minmod");
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Common common;
  std::string input, what = "minmod", apply;
  CheckArgs check_args;
  VerifyArgs verify_args;

  CLI::App* compute = app.add_subcommand("compute", "norm, minimum modulus, square root or polar factors");
  add_common(compute, common);
  compute->add_option("input", input, "operator JSON file")->required();
  compute->add_option("--what", what, "norm|minmod|sqrt|polar")
      ->check(CLI::IsMember({"norm", "minmod", "sqrt", "polar"}))
      ->capture_default_str();
  compute->add_option("--apply", apply, "apply a function first (exp)")->check(CLI::IsMember({"exp"}));

  CLI::App* check = app.add_subcommand("check", "decide N* or AN*");
  add_common(check, common);
  check->add_option("input", check_args.input, "operator JSON file");
  check->add_option("--property", check_args.property, "nstar|anstar")->required()->check(CLI::IsMember({"nstar", "anstar"}));
  check->add_option("--family", check_args.family, "structured family (diagonal)");
  check->add_option("--rule", check_args.rule, "tail rule, e.g. 1+1/j");
  check->add_option("--prefix", check_args.prefix, "comma-separated leading weights");
  check->add_option("--power", check_args.power, "power of the diagonal");
  check->add_option("--projection", check_args.projection, "rank=<n|inf> corank=<n|inf>")->expected(1, 2);

  CLI::App* verify = app.add_subcommand("verify", "run property suites");
  add_common(verify, common);
  verify->add_option("--suite", verify_args.suite, "suite name or 'all'")->required();
  verify->add_option("--dims", verify_args.dims, "dimension range, e.g. 2..12")->capture_default_str();
  verify->add_option("--blocks,--truncations", verify_args.blocks, "block counts or truncation sizes, e.g. 1..100");
  verify->add_flag("--json", verify_args.json_out, "print the JSON report instead of the table");

  CLI::App* range = app.add_subcommand("range", "numerical range: boundary CSV or exact interval");
  add_common(range, common);
  range->add_option("input", check_args.input, "operator JSON file");
  range->add_option("--family", check_args.family, "structured family (diagonal)");
  range->add_option("--rule", check_args.rule, "tail rule");
  range->add_option("--prefix", check_args.prefix, "comma-separated leading weights");
  range->add_option("--power", check_args.power, "power of the diagonal");
  range->add_option("--projection", check_args.projection, "rank=<n|inf> corank=<n|inf>")->expected(1, 2);

  std::vector<std::string> argv_store{"minmod"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }

  try {
    if (*compute) return cmd_compute(args, common, input, what, apply, out);
    if (*check) return cmd_check(args, common, check_args, out);
    if (*verify) {
      verify_args.tol_given = verify->count("--tol") > 0;
      return cmd_verify(args, common, verify_args, out);
    }
    if (*range) return cmd_range(args, common, check_args, out);
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitParse;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace minmod
