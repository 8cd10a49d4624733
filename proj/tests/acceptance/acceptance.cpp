// One PASS/FAIL line per acceptance criterion; nonzero exit on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "minmod/verifier.hpp"

using namespace minmod;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

void require(Outcome& o, bool cond, const std::string& what) {
  if (!cond) {
    o.ok = false;
    o.detail += (o.detail.empty() ? "" : "; ") + what;
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Runs each suite and folds its result into `o`.
void suites(Outcome& o, const std::vector<std::string>& names, std::size_t trials = 100) {
  for (const auto& name : names) {
    SuiteConfig cfg;
    cfg.name = name;
    cfg.trials = trials;
    const PropertyReport r = run_suite(cfg);
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s max %.3g / tol %.1g", name.c_str(), r.max_violation, r.tolerance);
    if (!o.detail.empty()) o.detail += ", ";
    o.detail += buf;
    if (!r.passed()) {
      o.ok = false;
      o.detail += " [" + std::to_string(r.failures) + " failed: " + r.worst_case + "]";
    }
  }
}

Outcome c1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const double floor = 1.0 / std::sqrt(3.0);
  const double m1000 = example31_min_modulus(1000);
  require(o, m1000 > floor && m1000 <= 0.578, "min modulus at 1000 blocks out of (1/sqrt3, 0.578]");

  double prev = example31_min_modulus(1);
  for (std::size_t b = 2; b <= 100; ++b) {
    const double m = example31_min_modulus(b);
    require(o, m <= prev + 1e-12 && m > floor, "min modulus not decreasing above 1/sqrt3 at " + std::to_string(b));
    prev = m;
  }
  double prev_big = prev;
  for (std::size_t b : {200, 500, 1000}) {
    const double m = example31_min_modulus(b);
    require(o, m <= prev_big + 1e-12, "min modulus not decreasing at " + std::to_string(b));
    prev_big = m;
  }

  double worst = 0.0;
  for (std::size_t n = 1; n <= 100; ++n) {
    const SequenceValue s = example31_sequence(n);
    worst = std::max(worst, std::abs(s.closed_form - s.numeric));
  }
  require(o, worst <= 1e-12, "sequence deviates from closed form");
  require(o, std::abs(example31_closed_form(500) - 1.0 / 3.0) < 1e-3, "closed form not near 1/3 at n=500");

  const double secs = seconds_since(t0);
  require(o, secs < 30.0, "took longer than 30 s");
  char buf[200];
  std::snprintf(buf, sizeof buf, "min modulus(1000) = %.9f, max |closed - numeric| = %.2e, %.2f s", m1000, worst,
                secs);
  o.detail = o.detail.empty() ? buf : std::string(buf) + "; " + o.detail;
  return o;
}

Outcome c2() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  suites(o, {"power-minmod"}, 200);
  const double secs = seconds_since(t0);
  require(o, secs < 10.0, "took longer than 10 s");
  o.detail += ", " + std::to_string(secs).substr(0, 5) + " s";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"restricted tripled projection: sequence and minimum modulus", c1},
      {"minimum modulus of powers", c2},
      {"positive operators: infimum and eigenvector witness",
       [] {
         Outcome o;
         suites(o, {"psd-inf", "eigen-witness"});
         return o;
       }},
      {"N* characterization and positivity",
       [] {
         Outcome o;
         suites(o, {"modulus-bound", "positive-norm-bound"});
         return o;
       }},
      {"polynomial and exponential norms",
       [] {
         Outcome o;
         suites(o, {"exp-norm", "poly-limit"});
         return o;
       }},
      {"unitary equivalence",
       [] {
         Outcome o;
         suites(o, {"unitary-equivalence"});
         return o;
       }},
      {"restrictions of projections and eta I - K",
       [] {
         Outcome o;
         suites(o, {"identity-plus-rank", "eta-compact", "eta-proj"});
         return o;
       }},
      {"structured AN* decisions",
       [] {
         Outcome o;
         SuiteConfig cfg;
         cfg.name = "structured-decisions";
         const PropertyReport r = run_suite(cfg);
         require(o, r.passed(), "decision table mismatch: " + r.worst_case);
         bool flagged = false;
         for (const auto& n : r.notes) flagged = flagged || n.find("discrepancy") != std::string::npos;
         require(o, flagged, "shift discrepancy note missing");
         o.detail = std::to_string(r.trials) + " decisions" + (o.detail.empty() ? "" : "; " + o.detail);
         return o;
       }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.ok) ++failed;
    std::printf("%s criterion %zu: %s (%s)\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
