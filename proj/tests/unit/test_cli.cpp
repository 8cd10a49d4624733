#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "minmod/cli.hpp"
#include "minmod/error.hpp"
#include "minmod/json_io.hpp"
#include "minmod/random.hpp"

using namespace minmod;
using io::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("minmod_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string write_operator(const std::string& name, const DenseOperator& t) {
  return write_file(name, io::to_json(t).dump());
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("index lists", "[cli]") {
  CHECK(parse_index_list("1..3,7") == std::vector<std::size_t>{1, 2, 3, 7});
  CHECK(parse_index_list("5") == std::vector<std::size_t>{5});
  CHECK_THROWS_AS(parse_index_list("3..1"), ParseError);
  CHECK_THROWS_AS(parse_index_list("a"), ParseError);
  CHECK_THROWS_AS(parse_index_list("1,,2"), ParseError);
}

TEST_CASE("json round trips", "[cli][json]") {
  Rng rng(31);
  const DenseOperator t = random_dense(rng, 3, 4);
  const DenseOperator back = io::dense_from_json(json::parse(io::to_json(t).dump()));
  CHECK(back.matrix() == t.matrix());

  const json plain = json::parse(R"({"rows":2,"cols":2,"entries":[1,2,[0,1],4]})");
  CHECK(io::dense_from_json(plain)(1, 0) == cplx(0, 1));
  CHECK_THROWS_AS(io::dense_from_json(json::parse(R"({"rows":2,"cols":2,"entries":[1,2,3]})")), ParseError);
  CHECK_THROWS_AS(io::dense_from_json(json::parse(R"({"rows":1,"cols":1,"entries":[[1,2,3]]})")), ParseError);

  Diagonal d;
  d.weights.tail = TailRule::parse("1+1/j");
  d.weights.prefix = {3.0};
  d.weights.tail_offset = 1;
  d.power = 2;
  const std::vector<StructuredOperator> ops{
      d, TripledProjection{true}, Projection{Cardinality::infinite(), Cardinality::finite(2)},
      ScaledIdentityMinusCompact{1.0, Diagonal{WeightSequence{{}, TailRule::parse("1/j"), 0}, 1}},
      IdentityPlusFiniteRank{{2.0}, {Vector::Unit(3, 1)}},
      ShiftVariant{0.5, WeightSequence{{}, TailRule::parse("0.5+1/j"), 0}}};
  for (const auto& op : ops) {
    const json j = json::parse(io::to_json(op).dump());
    CHECK(io::to_json(io::structured_from_json(j)) == io::to_json(op));
  }
  CHECK_THROWS_AS(io::structured_from_json(json::parse(R"({"variant":"nope"})")), ParseError);
  CHECK_THROWS_AS(io::structured_from_json(json::parse(R"({"variant":"diagonal","rule":"1+1/j","prefix":[0.5]})")),
                  ParseError);

  Rng r2(32);
  const Subspace m = random_subspace(r2, 5, 2);
  CHECK((io::subspace_from_json(io::to_json(m)).frame() - m.frame()).norm() == 0.0);
}

TEST_CASE("compute", "[cli]") {
  const std::string d = write_operator("diag.json", DenseOperator::diagonal(std::vector<double>{3.0, 2.0, 5.0}));
  SECTION("minmod of diag(3,2,5)") {
    const Run r = cli({"compute", d, "--what", "minmod"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["min_value"].get<double>() == Catch::Approx(2.0));
    CHECK(j["witness"][1][0].get<double>() == Catch::Approx(1.0));
    CHECK(j["manifest"]["command"] == "compute");
    CHECK(j["manifest"]["seed"] == 42);
  }
  SECTION("norm of exp(P)") {
    Rng rng(33);
    const DenseOperator p = random_psd(rng, 6);
    const std::string f = write_operator("psd.json", p);
    const Run r = cli({"compute", f, "--what", "norm", "--apply", "exp"});
    REQUIRE(r.code == 0);
    const double hi = json::parse(cli({"compute", f, "--what", "norm"}).out)["value"].get<double>();
    const double v = json::parse(r.out)["value"].get<double>();
    CHECK(std::abs(v - std::exp(hi)) <= 1e-8 * std::exp(hi));
  }
  SECTION("polar and sqrt report small residuals") {
    Rng rng(34);
    const std::string f = write_operator("sq.json", random_dense(rng, 5, 5));
    const json polar = json::parse(cli({"compute", f, "--what", "polar"}).out);
    CHECK(polar["reconstruction_residual"].get<double>() <= 1e-8);
    CHECK(polar["residual_ok"].get<bool>());
    const json sq = json::parse(cli({"compute", f, "--what", "sqrt"}).out);
    CHECK(sq["residual"].get<double>() <= 1e-8);
  }
  SECTION("structured input is truncated") {
    const std::string f = write_file("tripled.json", R"({"variant":"tripled_projection","on_subspace":true})");
    const Run r = cli({"compute", f, "--what", "minmod", "--truncation", "100"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["truncation"] == 102);
    CHECK(j["min_value"].get<double>() > 1.0 / std::sqrt(3.0));
    CHECK(j["declared_attained"] == false);
  }
  SECTION("output file and byte-identical reruns") {
    const std::string out1 = (scratch() / "a.json").string(), out2 = (scratch() / "b.json").string();
    REQUIRE(cli({"compute", d, "--out", out1}).code == 0);
    REQUIRE(cli({"compute", d, "--out", out2}).code == 0);
    json a = json::parse(slurp(out1)), b = json::parse(slurp(out2));
    a["manifest"].erase("arguments");
    a["manifest"].erase("outputs");
    b["manifest"].erase("arguments");
    b["manifest"].erase("outputs");
    CHECK(a.dump() == b.dump());
    CHECK(cli({"compute", d}).out == cli({"compute", d}).out);
  }
  SECTION("errors map to exit codes") {
    CHECK(cli({"compute", (scratch() / "missing.json").string()}).code == 2);
    CHECK(cli({"compute", write_file("bad.json", "{not json")}).code == 2);
    CHECK(cli({"compute", d, "--what", "trace"}).code == 2);
    CHECK(cli({"compute", d, "--max-dim", "2"}).code == 3);
    const std::string tall = write_operator("tall.json", DenseOperator::zero(3, 2));
    CHECK(cli({"compute", tall, "--what", "polar"}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
  }
}

TEST_CASE("check", "[cli]") {
  SECTION("decreasing diagonal fails N* with [T] = 1") {
    const Run r = cli({"check", "--property", "nstar", "--family", "diagonal", "--rule", "1+1/j"});
    CHECK(r.code == 1);
    const json j = json::parse(r.out);
    CHECK(j["verdict"] == "fails");
    CHECK(j["min_value"].get<double>() == 1.0);
    CHECK(j["certificate"].is_string());
  }
  SECTION("projection with infinite rank and corank fails AN*") {
    const Run r = cli({"check", "--property", "anstar", "--projection", "rank=inf", "corank=inf"});
    CHECK(r.code == 1);
    CHECK(json::parse(r.out)["verdict"] == "fails");
    CHECK(cli({"check", "--property", "anstar", "--projection", "rank=∞", "corank=∞"}).code == 1);
    CHECK(cli({"check", "--property", "anstar", "--projection", "rank=3", "corank=inf"}).code == 0);
  }
  SECTION("dense N* holds") {
    Rng rng(35);
    const std::string f = write_operator("dense.json", random_dense(rng, 4, 4));
    const Run r = cli({"check", f, "--property", "nstar"});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["witness"].size() == 4);
    const Run s = cli({"check", f, "--property", "anstar", "--trials", "5"});
    CHECK(s.code == 0);
    CHECK(json::parse(s.out)["trials"].size() == 5);
  }
  SECTION("bad invocations") {
    CHECK(cli({"check", "--property", "nstar"}).code == 2);
    CHECK(cli({"check", "--property", "nstar", "--family", "diagonal"}).code == 2);
    CHECK(cli({"check", "--property", "nstar", "--projection", "rank=2"}).code == 2);
    CHECK(cli({"check", "--property", "bogus", "--family", "diagonal", "--rule", "2"}).code == 2);
  }
}

TEST_CASE("verify", "[cli]") {
  SECTION("power-minmod with 200 trials") {
    const Run r = cli({"verify", "--suite", "power-minmod", "--trials", "200", "--seed", "42"});
    CHECK(r.code == 0);
    CHECK(r.out.find("power-minmod") != std::string::npos);
    CHECK(r.out.find("1/1 suites passed") != std::string::npos);
  }
  SECTION("proj31 over blocks 1..100") {
    const Run r = cli({"verify", "--suite", "proj31", "--blocks", "1..100", "--trials", "20", "--json"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["passed"] == true);
    CHECK(j["manifest"]["truncations"].size() == 100);
    CHECK(j["reports"][0]["notes"][0].get<std::string>().find("closed form") != std::string::npos);
  }
  SECTION("unknown suite") { CHECK(cli({"verify", "--suite", "nope"}).code == 2); }
  SECTION("an unreachable tolerance fails the suite") {
    CHECK(cli({"verify", "--suite", "exp-norm", "--trials", "5", "--tol", "1e-30"}).code == 1);
  }
  SECTION("json report to a file") {
    const std::string out = (scratch() / "verify.json").string();
    REQUIRE(cli({"verify", "--suite", "eta-proj", "--trials", "5", "--out", out}).code == 0);
    const json j = json::parse(slurp(out));
    CHECK(j["reports"][0]["suite"] == "eta-proj");
    CHECK(j["manifest"]["tolerances"]["eta-proj"].get<double>() == 1e-10);
  }
}

TEST_CASE("range", "[cli]") {
  SECTION("diag(1,2) gives the interval [1,2]") {
    const std::string f = write_operator("d12.json", DenseOperator::diagonal(std::vector<double>{1.0, 2.0}));
    const json j = json::parse(cli({"range", f}).out);
    CHECK(j["lo"].get<double>() == Catch::Approx(1.0));
    CHECK(j["hi"].get<double>() == Catch::Approx(2.0));
  }
  SECTION("diagonal rule 1+1/j gives (1, 2]") {
    const Run r = cli({"range", "--family", "diagonal", "--rule", "1+1/j"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["lo"] == 1.0);
    CHECK(j["lo_open"] == true);
    CHECK(j["hi"] == 2.0);
    CHECK(j["hi_open"] == false);
  }
  SECTION("Jordan block: 720 boundary points on the circle of radius 1/2") {
    const std::string f = write_file("jordan.json", R"({"rows":2,"cols":2,"entries":[0,1,0,0]})");
    const Run r = cli({"range", f, "--grid", "720"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line.rfind("# ", 0) == 0);
    std::getline(in, line);
    CHECK(line == "theta,re,im");
    std::size_t count = 0;
    while (std::getline(in, line)) {
      double th, re, im;
      REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &th, &re, &im) == 3);
      CHECK(std::abs(std::hypot(re, im) - 0.5) <= 1e-6);
      ++count;
    }
    CHECK(count == 720);
  }
  SECTION("errors") {
    CHECK(cli({"range", write_operator("rect.json", DenseOperator::zero(2, 3))}).code == 2);
    CHECK(cli({"range", write_file("shift.json", R"({"variant":"shift","lead":1,"rule":"1+1/j"})")}).code == 4);
  }
}
