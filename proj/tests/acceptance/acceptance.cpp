// Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned here.
//   acceptance            run every criterion
//   acceptance --only N   run criterion N

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nilsmooth/error.hpp"
#include "nilsmooth/smoothing.hpp"

using namespace nilsmooth;

namespace {

constexpr double kBallSeconds = 30.0;
constexpr double kDistortionSeconds = 60.0;
constexpr double kGroupoidTolerance = 1e-10;
constexpr double kEndpointTolerance = 1e-3;
constexpr double kFirstDerivativeTolerance = 1e-6;
constexpr double kSecondDerivativeTolerance = 1e-4;
constexpr double kThirdTermRelative = 0.01;
constexpr double kHolderGrowth = 1.05;
constexpr double kTangencyTolerance = 1e-3;
constexpr double kRotationTolerance = 1e-4;
constexpr double kAdditivityTolerance = 1e-3;
constexpr double kIntertwiningTolerance = 1e-8;
constexpr std::size_t kSamples = 1000;
const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;

struct Verdict {
  bool pass = false;
  std::string detail;
  std::vector<std::string> notes;  // informational lines printed after the verdict
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Heisenberg triples (x, y, z) multiply as (x1+x2, y1+y2, z1+z2+y1*x2); no matrices involved.
using Triple = std::array<long long, 3>;
std::vector<std::size_t> triple_balls(std::size_t radius) {
  const std::array<Triple, 4> gens{{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}}};
  std::set<Triple> seen{{0, 0, 0}};
  std::vector<Triple> frontier{{0, 0, 0}};
  std::vector<std::size_t> sizes{1};
  for (std::size_t r = 1; r <= radius; ++r) {
    std::vector<Triple> next;
    for (const Triple& t : frontier)
      for (const Triple& g : gens) {
        const Triple u{t[0] + g[0], t[1] + g[1], t[2] + g[2] + t[1] * g[0]};
        if (seen.insert(u).second) next.push_back(u);
      }
    frontier = std::move(next);
    sizes.push_back(seen.size());
  }
  return sizes;
}

Verdict growth_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v{true, ""};
  const auto z2 = ball(GroupSpec::free_abelian(2), 20).sphere_sizes();
  std::size_t total = 0;
  for (std::size_t n = 0; n <= 20; ++n) {
    total += z2[n];
    if (total != 2 * n * n + 2 * n + 1) {
      v.pass = false;
      v.detail += "Z^2 radius " + std::to_string(n) + " has " + std::to_string(total) + "; ";
    }
  }
  const auto oracle = triple_balls(8);
  const auto h = ball(GroupSpec::heisenberg(), 8).sphere_sizes();
  total = 0;
  for (std::size_t n = 0; n <= 8; ++n) {
    total += h[n];
    if (total != oracle[n]) {
      v.pass = false;
      v.detail += "Heisenberg radius " + std::to_string(n) + " has " + std::to_string(total) + " vs " +
                  std::to_string(oracle[n]) + "; ";
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= kBallSeconds) v.pass = false;
  v.detail += "Z^2 n<=20 and Heisenberg n<=8 (|B(8)| = " + std::to_string(oracle[8]) + ") in " + fmt(secs) + " s";
  return v;
}

Verdict growth_degrees() {
  const std::size_t h = growth_degree(GroupSpec::heisenberg());
  const std::size_t u = growth_degree(GroupSpec::unitriangular(4));
  return {h == 4 && u == 10, "Heisenberg " + std::to_string(h) + ", unitriangular(4) " + std::to_string(u)};
}

Verdict center_distortion() {
  const auto t0 = std::chrono::steady_clock::now();
  const GroupSpec h = GroupSpec::heisenberg();
  const GroupSpec z = GroupSpec::subgroup(h, {commutator(h.generators[0], h.generators[1])}, {"z"});
  auto measure = [&](std::initializer_list<std::size_t> ns, std::vector<double>& xs, std::vector<double>& ys,
                     std::string& text, bool& superlinear) {
    for (std::size_t n : ns) {
      const auto d = distortion(h, z, n);
      const std::size_t value = d.diameter.value_or(0);
      text += " n=" + std::to_string(n) + ":" + (d.diameter ? std::to_string(value) : std::string("cap"));
      if (!d.diameter || value <= 2 * n) superlinear = false;
      if (value > 0) {
        xs.push_back(std::log(double(n)));
        ys.push_back(std::log(double(value)));
      }
    }
  };
  auto slope = [](const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() < 2) return std::nan("");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
    mx /= double(xs.size());
    my /= double(ys.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) sxy += (xs[i] - mx) * (ys[i] - my), sxx += (xs[i] - mx) * (xs[i] - mx);
    return sxy / sxx;
  };
  std::vector<double> xs, ys;
  std::string text;
  bool superlinear = true;
  measure({3, 4, 5, 6}, xs, ys, text, superlinear);
  const double k = slope(xs, ys);
  const double secs = seconds_since(t0);
  Verdict v;
  v.pass = superlinear && std::abs(k - 2.0) <= 0.5 && secs < kDistortionSeconds;
  v.detail = "diameters" + text + ", need > 2n; log-log slope " + fmt(k) + " (2 +- 0.5); " + fmt(secs) + " s";

  std::vector<double> bx, by;
  std::string big;
  bool unused = true;
  measure({8, 12, 16, 20}, bx, by, big, unused);
  v.notes.push_back("info: larger radii" + big + ", log-log slope " + fmt(slope(bx, by)));
  return v;
}

Verdict groupoid() {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> len(0.01, 3.0), u(-0.4999, 0.4999);
  double law = 0.0, ident = 0.0, endpoint = 0.0;
  for (std::size_t k = 0; k < kSamples; ++k) {
    const double a = len(rng), b = len(rng), c = len(rng), x = u(rng) * a;
    law = std::max(law, std::abs(phi_ab(b, c, phi_ab(a, b, x).value).value - phi_ab(a, c, x).value));
    ident = std::max(ident, std::abs(phi_ab(a, a, x).value - x));
    // One-sided quotients at both ends, Richardson-extrapolated from two steps. The
    // offset form is phi_{a,b} moved to [0, a] -> [0, b], so it is defined at the ends.
    auto offset = [&](double d) { return conjugated_translation_offset(a, b, 0.0, d).value; };
    for (double side : {-1.0, 1.0}) {
      const double end = side > 0 ? a : 0.0;
      auto quotient = [&](double h) { return (offset(end) - offset(end - side * h)) / (side * h); };
      const double h = 1e-6 * a;
      const double d = (10.0 * quotient(h / 10.0) - quotient(h)) / 9.0;
      endpoint = std::max(endpoint, std::abs(d - 1.0));
    }
  }
  return {law < kGroupoidTolerance && ident < kGroupoidTolerance && endpoint < kEndpointTolerance,
          "composition law " + fmt(law) + ", identity " + fmt(ident) + " (< 1e-10); endpoint derivative residual " +
              fmt(endpoint) + " (< 1e-3) over " + std::to_string(kSamples) + " cases"};
}

SmoothedAction smooth_at(const LineAction& a, double alpha, std::size_t pairs = 10000) {
  SmoothingConfig c;
  c.alpha = alpha;
  c.holder_pairs = pairs;
  return smooth(a, decompose(a), c);
}

LineAction mixed(std::size_t window) {
  MixedParams p;
  p.window = static_cast<std::int64_t>(window);
  return heisenberg_mixed_action(p);
}

LineAction denjoy_line(std::size_t window) {
  DenjoyParams p;
  p.orbit = static_cast<std::int64_t>(2 * window + 1);
  return unroll_denjoy(denjoy_action(p), static_cast<std::int64_t>(window));
}

Verdict derivative_consistency_check() {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v{true, ""};
  const std::vector<std::pair<std::string, LineAction>> cases{
      {"Heisenberg", farb_franks_action(GroupSpec::heisenberg(), 4)}, {"mixed", mixed(4)}};
  for (const auto& [name, a] : cases) {
    const SmoothedAction sm = smooth_at(a, 0.2, 100);
    const DerivativeReport r = derivative_consistency(sm.action, kSamples, 11);
    v.pass = v.pass && r.points > 0 && r.max_first_error < kFirstDerivativeTolerance &&
             r.max_second_error < kSecondDerivativeTolerance;
    v.detail += name + " W=4: first " + fmt(r.max_first_error) + ", second " + fmt(r.max_second_error) + " over " +
                std::to_string(r.points) + " points; ";
  }
  v.detail += "(< 1e-6 / 1e-4) in " + fmt(seconds_since(t0)) + " s";
  return v;
}

Verdict third_term_limit() {
  Verdict v{true, ""};
  double worst = 0.0;
  for (double alpha : {0.1, 0.2, 0.4, 0.5})
    for (std::size_t i : {0u, 1u, 3u})
      for (int sign : {1, -1}) {
        const double limit = sign * 2.0 / alpha;
        worst = std::max(worst, std::abs(third_coefficient_term(i, 1e4, alpha, sign) - limit) / std::abs(limit));
      }
  v.pass = worst < kThirdTermRelative;
  v.detail = "max relative distance from +-2/alpha at n=1e4: " + fmt(worst) + " (< 1%)";
  return v;
}

Verdict holder_uniformity() {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v{true, ""};
  struct Case {
    std::string name;
    std::function<LineAction(std::size_t)> build;
    double alpha;
  };
  const std::vector<Case> cases{
      {"Heisenberg", [](std::size_t w) { return farb_franks_action(GroupSpec::heisenberg(), std::int64_t(w)); }, 0.2},
      {"Denjoy", denjoy_line, 0.4}};
  for (const Case& c : cases) {
    double base = 0.0, wide = 0.0, tangency = 0.0;
    for (std::size_t w : {2u, 8u}) {
      const SmoothedAction sm = smooth_at(c.build(w), c.alpha);
      const double norm = estimate_holder(sm).global_norm;
      (w == 2 ? base : wide) = norm;
      tangency = std::max(tangency, endpoint_tangency(sm.action, kTangencyTolerance).max_residual);
    }
    const bool ok = std::isfinite(wide) && wide <= kHolderGrowth * base && tangency < kTangencyTolerance;
    v.pass = v.pass && ok;
    v.detail += c.name + " alpha=" + fmt(c.alpha) + ": W=2 " + fmt(base) + ", W=8 " + fmt(wide) + ", tangency " +
                fmt(tangency) + "; ";
  }
  std::string info = "info: mixed action alpha=0.2 sampled norm";
  for (std::size_t w : {2u, 4u, 8u}) info += " W=" + std::to_string(w) + ":" + fmt(estimate_holder(smooth_at(mixed(w), 0.2)).global_norm);
  v.notes.push_back(info);
  v.detail += "W=8 within 5% of W=2, tangency < 1e-3; " + fmt(seconds_since(t0)) + " s";
  return v;
}

Verdict structure_recovery() {
  const LineAction a = mixed(4);
  const Decomposition dec = decompose(a);
  const StructureReport r = check_structure(dec, a);
  std::size_t passed = 0;
  for (const auto& c : r.checks) passed += c.pass ? 1 : 0;
  return {dec.i_classes.size() == 1 && dec.m_classes.size() == 1 && r.all_pass() && r.checks.size() == 5,
          std::to_string(dec.i_classes.size()) + " I-class, " + std::to_string(dec.m_classes.size()) + " M-class, " +
              std::to_string(dec.residual.size()) + " residual; " + std::to_string(passed) + "/" +
              std::to_string(r.checks.size()) + " structure checks pass"};
}

Verdict rotation_numbers() {
  const LineAction a = denjoy_action({});
  const double x0 = a.family().expand(0.3);
  const double rho = rotation_number(a.map(0), x0, 10000).value;
  const auto& f = a.map(0);
  const auto& t = a.map(1);
  double additivity = 0.0;
  for (double y : {0.1, 0.45, 0.8}) {
    const double x = a.family().expand(y);
    const double tf = translation_number(f, x, 10000).value;
    const double tt = translation_number(t, x, 10000).value;
    const double both = translation_number([&](double s) { return f.evaluate(t.evaluate(s)); }, x, 10000).value;
    additivity = std::max(additivity, std::abs(both - tf - tt));
  }
  const double err = std::abs(rho - kGolden);
  return {err < kRotationTolerance && additivity < kAdditivityTolerance,
          "rotation number " + fmt(rho) + " (|err| " + fmt(err) + " < 1e-4), additivity defect " + fmt(additivity) +
              " (< 1e-3)"};
}

Verdict intertwining() {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v{true, ""};
  const std::vector<std::pair<std::string, std::pair<LineAction, double>>> cases{
      {"mixed", {mixed(4), 0.2}},
      {"Heisenberg", {farb_franks_action(GroupSpec::heisenberg(), 4), 0.2}},
      {"unitriangular(4)", {farb_franks_action(GroupSpec::unitriangular(4), 1), 0.08}},
      {"Denjoy", {denjoy_line(4), 0.4}},
      {"Z", {z1_action(4), 0.5}}};
  for (const auto& [name, c] : cases) {
    const IntertwiningReport r = check_intertwining(smooth_at(c.first, c.second, 100), kSamples);
    bool sampled = true;
    for (std::size_t s : r.samples) sampled = sampled && s > 0;
    v.pass = v.pass && sampled && r.worst < kIntertwiningTolerance;
    v.detail += name + " " + fmt(r.worst) + "; ";
  }
  v.detail += "(< 1e-8, " + std::to_string(kSamples) + " samples per generator) in " + fmt(seconds_since(t0)) + " s";
  return v;
}

Verdict summability_gate() {
  Verdict v{true, ""};
  const LineAction a = farb_franks_action(GroupSpec::heisenberg(), 2);
  const Decomposition dec = decompose(a);
  for (double bad : {0.25, 0.3}) {
    try {
      check_summability(dec, GroupSpec::heisenberg(), bad);
      v.pass = false;
      v.detail += "alpha=" + fmt(bad) + " accepted; ";
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Config) v.pass = false;
    }
  }
  const SummabilityReport r = check_summability(dec, GroupSpec::heisenberg(), 0.2);
  bool decreasing = r.class_tails.size() >= 3;
  double ratio = 0.0;
  for (std::size_t i = 1; i < r.class_tails.size(); ++i) {
    decreasing = decreasing && r.class_tails[i] < r.class_tails[i - 1];
    ratio = std::max(ratio, r.class_tails[i] / r.class_tails[i - 1]);
  }
  const bool finite = std::isfinite(r.total_bound) && std::isfinite(r.tail_bound) && r.tail_bound >= 0.0;
  v.pass = v.pass && finite && decreasing && ratio < 1.0;
  v.detail += "alpha >= 1/d rejected; alpha=0.2 window sum " + fmt(r.window_sum) + " + tail " + fmt(r.tail_bound) +
              ", class tails " + fmt(r.class_tails.front()) + " .. " + fmt(r.class_tails.back()) +
              " with largest successive ratio " + fmt(ratio);
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  app.add_option("--only", only, "run a single criterion")->check(CLI::Range(1, 11));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"growth oracle", growth_oracle},
      {"growth degrees", growth_degrees},
      {"center distortion", center_distortion},
      {"arctan groupoid", groupoid},
      {"derivative consistency", derivative_consistency_check},
      {"third coefficient limit", third_term_limit},
      {"Holder uniformity", holder_uniformity},
      {"structure recovery", structure_recovery},
      {"rotation and translation numbers", rotation_numbers},
      {"intertwining", intertwining},
      {"summability gate", summability_gate}};

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<std::size_t>(only) != i + 1) continue;
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    std::cout << "criterion " << i + 1 << ' ' << (v.pass ? "PASS" : "FAIL") << ' ' << criteria[i].first << ": "
              << v.detail << '\n';
    for (const std::string& n : v.notes) std::cout << "  " << n << '\n';
    std::cout.flush();
    failures += v.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
