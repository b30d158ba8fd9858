// Command-line front end: build example actions, decompose them, smooth them
// and verify the result. Exit codes: 0 pass, 1 verification failure,
// 2 configuration error, 3 resource budget exceeded.

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <new>
#include <numbers>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "nilsmooth/documents.hpp"
#include "nilsmooth/error.hpp"

using namespace nilsmooth;

namespace {

struct Options {
  std::string example;
  std::string input;
  std::string decomposition;
  std::string output;
  std::string csv;
  std::string theta = "golden";
  std::int64_t window = 4;
  std::int64_t orbit = 64;
  std::int64_t decks = 4;
  double alpha = 0.0;
  double c0 = 0.5;
  double length_scale = 1.0;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  std::size_t samples = 1000;
  std::size_t pairs = 2000;
  std::size_t radius = 8;
  std::size_t budget = 0;
};

double parse_theta(const std::string& s) {
  if (s == "golden") return (std::sqrt(5.0) - 1.0) / 2.0;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size() && std::isfinite(v)) return v - std::floor(v);
  } catch (const std::exception&) {
  }
  throw config_error("--theta must be 'golden' or a number, got '" + s + "'");
}

std::string stem(const std::string& path) {
  const auto dot = path.rfind(".json");
  return dot == std::string::npos ? path : path.substr(0, dot);
}

LineAction build_example(const Options& o) {
  const std::string& e = o.example;
  if (o.window < 0) throw config_error("--window must be non-negative");
  if (e == "heisenberg-ff") return farb_franks_action(GroupSpec::heisenberg(), o.window);
  if (e == "unitriangular4-ff") return farb_franks_action(GroupSpec::unitriangular(4), o.window);
  if (e == "mixed" || e == "figure1") {
    MixedParams p;
    p.window = o.window;
    return heisenberg_mixed_action(p);
  }
  if (e == "denjoy" || e == "denjoy-line") {
    DenjoyParams p;
    p.theta = parse_theta(o.theta);
    p.orbit = o.orbit;
    LineAction circle = denjoy_action(p);
    return e == "denjoy" ? circle : unroll_denjoy(circle, o.decks);
  }
  if (e == "z1") return z1_action(o.window);
  if (e == "trivial") return trivial_action();
  throw config_error("unknown example '" + e +
                     "' (expected heisenberg-ff, unitriangular4-ff, mixed, denjoy, denjoy-line, z1, trivial)");
}

LineAction load_action(const std::string& path) {
  try {
    return action_from_document(read_document(path));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Config) throw config_error(path + ": " + e.what());
    throw;
  }
}

Decomposition load_or_decompose(const Options& o, const LineAction& a) {
  if (!o.decomposition.empty()) {
    try {
      return decomposition_from_document(read_document(o.decomposition));
    } catch (const Error& e) {
      throw config_error(o.decomposition + ": " + e.what());
    }
  }
  return decompose(a);
}

SmoothingConfig smoothing_config(const Options& o) {
  SmoothingConfig c;
  c.alpha = o.alpha;
  c.c0 = o.c0;
  c.length_scale = o.length_scale;
  c.seed = o.seed;
  c.jobs = o.jobs;
  c.holder_pairs = o.pairs;
  return c;
}

/// Smoothing works on the line; circle actions are unrolled over --decks.
LineAction line_action(const Options& o, LineAction a) {
  if (!a.family().periodic()) return a;
  std::cout << "note: unrolling the circle action over decks [-" << o.decks << ", " << o.decks << "]\n";
  return unroll_denjoy(a, o.decks);
}

int cmd_build(const Options& o) {
  LineAction a = build_example(o);
  if (o.alpha > 0.0) {
    SmoothingConfig c;
    c.alpha = o.alpha;
    c.resolve_alpha(a.spec());
  }
  const std::string out = o.output.empty() ? o.example + ".action.json" : o.output;
  write_document(out, to_document(a));
  std::cout << std::setprecision(10);
  std::cout << "example " << a.example() << "\n";
  std::cout << "intervals " << a.family().size() << "\n";
  std::cout << "maps";
  for (const auto& n : a.names()) std::cout << ' ' << n;
  std::cout << "\n";
  std::cout << "growth_degree " << growth_degree(a.spec()) << "\n";
  if (a.family().periodic()) {
    const double x0 = a.family().expand(0.5 * a.family().complement_total() / a.family().complement_unit());
    const RotationEstimate r = rotation_number(a.map(a.index_of("f")), x0, 10000);
    std::cout << "rotation_number " << r.value << " (residual " << r.residual << ")\n";
  }
  std::cout << "wrote " << out << "\n";
  return 0;
}

int cmd_analyze(const Options& o) {
  const LineAction a = load_action(o.input);
  const Decomposition dec = decompose(a);
  const StructureReport rep = check_structure(dec, a);
  const std::string out = o.output.empty() ? stem(o.input) + ".decomposition.json" : o.output;
  write_document(out, to_document(dec));
  std::cout << "classes: " << dec.i_classes.size() << " I-class" << (dec.i_classes.size() == 1 ? "" : "es") << ", "
            << dec.m_classes.size() << " M-class" << (dec.m_classes.size() == 1 ? "" : "es") << "\n";
  std::cout << "residual intervals: " << dec.residual.size() << "\n";
  std::cout << rep.text();
  std::cout << "wrote " << out << "\n";
  return rep.all_pass() ? 0 : 1;
}

struct SmoothOutcome {
  SmoothedAction sm;
  HolderReport holder;
  TangencyReport tangency;
};

SmoothOutcome run_smoothing(const Options& o, const LineAction& source) {
  const Decomposition dec = load_or_decompose(o, source);
  SmoothOutcome out{smooth(source, dec, smoothing_config(o)), {}, {}};
  out.holder = estimate_holder(out.sm);
  out.tangency = endpoint_tangency(out.sm.action);
  return out;
}

void write_smoothing(const Options& o, const SmoothOutcome& r, const std::string& prefix) {
  write_document(prefix + ".smoothed.action.json", to_document(r.sm.action));
  write_document(prefix + ".conjugacy.json", to_document(r.sm.conjugacy, *r.sm.source));
  write_text(prefix + ".holder.json", r.holder.json_summary());
  if (!o.csv.empty()) write_text(o.csv, r.holder.csv());
}

int cmd_smooth(const Options& o) {
  const LineAction source = line_action(o, load_action(o.input));
  const SmoothOutcome r = run_smoothing(o, source);
  write_smoothing(o, r, o.output.empty() ? stem(o.input) : o.output);
  std::cout << std::setprecision(8);
  std::cout << "alpha " << r.sm.alpha << "\n";
  std::cout << "tail_bound " << r.sm.lengths.tail_bound << "\n";
  std::cout << "global_holder_norm " << r.holder.global_norm << " (sampled)\n";
  std::cout << "tangency_max_residual " << r.tangency.max_residual << "\n";
  for (const auto& f : r.tangency.failures) std::cout << "tangency failure " << f << "\n";
  return r.tangency.failures.empty() && std::isfinite(r.holder.global_norm) ? 0 : 1;
}

int cmd_verify(const Options& o) {
  const LineAction source = line_action(o, load_action(o.input));
  const Decomposition dec = load_or_decompose(o, source);
  const StructureReport structure = check_structure(dec, source);
  const SmoothOutcome r = run_smoothing(o, source);
  const IntertwiningReport inter = check_intertwining(r.sm, o.samples);
  const DerivativeReport deriv = derivative_consistency(r.sm.action, o.samples, o.seed);
  const CoefficientReport coeff = verify_coefficient_bounds(r.sm);
  if (!o.output.empty()) write_smoothing(o, r, o.output);

  bool ok = true;
  auto line = [&](const std::string& name, bool pass, const std::string& detail) {
    ok = ok && pass;
    std::cout << (pass ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
  };
  auto fmt = [](double v) {
    std::ostringstream os;
    os << std::setprecision(4) << v;
    return os.str();
  };
  line("structure", structure.all_pass(), structure.all_pass() ? "all five checks" : structure.text());
  line("intertwining", inter.worst < 1e-8, "max residual " + fmt(inter.worst));
  line("tangency", r.tangency.failures.empty(), "max residual " + fmt(r.tangency.max_residual));
  line("first derivative", deriv.max_first_error < 1e-6, "max relative error " + fmt(deriv.max_first_error));
  line("second derivative", deriv.max_second_error < 1e-4, "max relative error " + fmt(deriv.max_second_error));
  line("coefficient bounds", coeff.pass(), std::to_string(coeff.rows.size()) + " minimal-class pieces");
  line("holder norm", std::isfinite(r.holder.global_norm), "sampled " + fmt(r.holder.global_norm));
  return ok ? 0 : 1;
}

int cmd_report(const Options& o) {
  const LineAction a = load_action(o.input);
  const GroupSpec& spec = a.spec();
  std::cout << "example " << a.example() << "\n";
  std::cout << "group " << family_name(spec.family) << " dimension " << spec.dimension << "\n";
  std::cout << "growth_degree " << growth_degree(spec) << "\n";
  const WordBall b = ball(spec, o.radius, Budget::from_environment());
  std::cout << "ball_sizes";
  std::size_t total = 0;
  for (std::size_t s : b.sphere_sizes()) std::cout << ' ' << (total += s);
  std::cout << "\n";
  const Decomposition dec = decompose(a);
  std::cout << "classes " << dec.i_classes.size() << " trivial, " << dec.m_classes.size() << " minimal, "
            << dec.residual.size() << " residual\n";
  for (const auto* list : {&dec.i_classes, &dec.m_classes})
    for (const OrbitClass& c : *list) {
      std::cout << (c.kind == ClassKind::Trivial ? "I" : "M") << c.id << (c.complement ? " complement" : "")
                << " members " << c.members.size() << " depth " << c.depth;
      if (!c.members.empty()) std::cout << " base " << c.members.front().to_string();
      std::cout << "\n";
    }
  if (!o.csv.empty()) {
    const SmoothOutcome r = run_smoothing(o, line_action(o, a));
    write_text(o.csv, r.holder.csv());
    std::cout << "wrote " << o.csv << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nilpotent group actions on the line: build, decompose, smooth, verify"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* s) {
    s->add_option("--seed", o.seed, "sampling seed");
    s->add_option("--jobs", o.jobs, "worker threads for verification")->check(CLI::PositiveNumber);
    s->add_option("--budget", o.budget, "maximum elements held by one enumeration");
    s->add_option("--decks", o.decks, "decks used when unrolling a circle action");
  };
  auto smoothing = [&](CLI::App* s) {
    s->add_option("--alpha", o.alpha, "Holder exponent (default 0.8/d)");
    s->add_option("--c0", o.c0, "translation speed of the first minimal class");
    s->add_option("--length-scale", o.length_scale, "factor on every new length");
    s->add_option("--decomposition", o.decomposition, "decomposition document to reuse");
    s->add_option("--emit-csv", o.csv, "write the per-interval Holder table here");
    s->add_option("--pairs", o.pairs, "sampled pairs per interval for the Holder estimate");
  };

  CLI::App* build = app.add_subcommand("build", "build an example action");
  build->add_option("example", o.example, "example name")->required();
  build->add_option("--window", o.window, "window half-width");
  build->add_option("--theta", o.theta, "rotation number ('golden' or a number)");
  build->add_option("--orbit", o.orbit, "realized wandering intervals");
  build->add_option("--alpha", o.alpha, "check this exponent against the summability gate");
  build->add_option("-o,--output", o.output, "output file");
  common(build);

  CLI::App* analyze = app.add_subcommand("analyze", "decompose an action and check the structure");
  analyze->add_option("action", o.input, "action document")->required();
  analyze->add_option("-o,--output", o.output, "decomposition output file");
  common(analyze);

  CLI::App* smooth_cmd = app.add_subcommand("smooth", "build the smoothing conjugacy");
  smooth_cmd->add_option("action", o.input, "action document")->required();
  smooth_cmd->add_option("-o,--output", o.output, "output prefix");
  common(smooth_cmd);
  smoothing(smooth_cmd);

  CLI::App* verify = app.add_subcommand("verify", "smooth and run every numerical check");
  verify->add_option("action", o.input, "action document")->required();
  verify->add_option("--samples", o.samples, "samples per map");
  verify->add_option("-o,--output", o.output, "also write the smoothing outputs with this prefix");
  common(verify);
  smoothing(verify);

  CLI::App* report = app.add_subcommand("report", "summarize group and decomposition");
  report->add_option("action", o.input, "action document")->required();
  report->add_option("--radius", o.radius, "ball radius for growth counts");
  common(report);
  smoothing(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (o.budget > 0) setenv("NILSMOOTH_BUDGET", std::to_string(o.budget).c_str(), 1);
    if (*build) return cmd_build(o);
    if (*analyze) return cmd_analyze(o);
    if (*smooth_cmd) return cmd_smooth(o);
    if (*verify) return cmd_verify(o);
    if (*report) return cmd_report(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::Resource ? 3 : 2;
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
