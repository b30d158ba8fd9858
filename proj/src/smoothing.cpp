#include "nilsmooth/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "nilsmooth/error.hpp"

namespace nilsmooth {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSampleSpots[] = {0.03, 0.21, 0.5, 0.77, 0.96};

/// Runs body(i) for i in [0, n) on up to `jobs` threads. Results must be
/// written to per-index slots so the outcome does not depend on scheduling.
template <class Body>
void parallel_for(std::size_t n, std::size_t jobs, Body body) {
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(jobs);
  for (std::size_t t = 0; t < jobs; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += jobs) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

double arctan_frame(const Interval& it, double x) {
  return std::tan(kPi * (x - it.center()) / it.length) / it.length;
}

const std::vector<OrbitClass>& class_list(const Decomposition& dec, ClassKind kind) {
  return kind == ClassKind::Trivial ? dec.i_classes : dec.m_classes;
}

/// Relative sample positions and separations shared by every map.
struct PairPattern {
  std::vector<std::pair<double, double>> pairs;  // (left, right) in [0, 1]
};

PairPattern make_pattern(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  PairPattern p;
  p.pairs.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double sep = std::ldexp(0.5 + 0.5 * unit(rng), -static_cast<int>(k % 6));
    const double u = unit(rng) * (1.0 - sep);
    p.pairs.push_back({u, u + sep});
  }
  return p;
}

double holder_norm(const LocalMap& m, double length, double alpha, const PairPattern& pattern) {
  if (m.kind == LocalMap::Kind::Identity || m.kind == LocalMap::Kind::Affine) return 0.0;
  double best = 0.0;
  for (auto [u, v] : pattern.pairs) {
    const double d1 = m.offset_derivative(u * length, length);
    const double d2 = m.offset_derivative(v * length, length);
    best = std::max(best, std::abs(d2 - d1) / std::pow((v - u) * length, alpha));
  }
  return best;
}

}  // namespace

double SmoothingConfig::resolve_alpha(const GroupSpec& spec) const {
  const std::size_t d = growth_degree(spec);
  const double a = alpha != 0.0 ? alpha : (d > 0 ? 0.8 / static_cast<double>(d) : 0.5);
  if (!(a > 0.0) || !std::isfinite(a)) throw config_error("alpha must be positive");
  if (d > 0 && a * static_cast<double>(d) >= 1.0) {
    std::ostringstream os;
    os << "alpha = " << a << " must satisfy alpha * d < 1 with growth degree d = " << d
       << "; otherwise the interval lengths are not summable";
    throw config_error(os.str());
  }
  if (a >= 1.0) throw config_error("alpha must be below 1");
  return a;
}

double SmoothingConfig::c(std::size_t i) const { return c0 * std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(i, 1000))); }

std::size_t interval_word_length(const Decomposition& dec, ClassKind kind, std::size_t class_id, std::size_t member) {
  const auto& list = class_list(dec, kind);
  if (class_id >= list.size()) throw config_error("no such class");
  const OrbitClass& c = list[class_id];
  if (member >= c.word_lengths.size()) throw config_error("member " + std::to_string(member) + " unreachable from its base");
  return 1 + c.word_lengths[member];
}

double length_formula(std::size_t class_index, std::size_t word_length, double alpha) {
  if (!(alpha > 0.0)) throw config_error("alpha must be positive");
  // (2^{i alpha} + n)^{-1/alpha} evaluated in log space so large i cannot overflow.
  const double log_b = static_cast<double>(class_index) * alpha * std::numbers::ln2;
  const double n = static_cast<double>(word_length);
  const double log_sum = log_b > 700.0 ? log_b + std::log1p(n * std::exp(-log_b)) : std::log(std::exp(log_b) + n);
  return std::exp(-log_sum / alpha);
}

SummabilityReport check_summability(const Decomposition& dec, const GroupSpec& spec, double alpha,
                                    const Budget& budget) {
  SmoothingConfig probe;
  probe.alpha = alpha;
  SummabilityReport r;
  r.alpha = probe.resolve_alpha(spec);
  r.degree = growth_degree(spec);
  const double d = static_cast<double>(r.degree);
  const double inv = 1.0 / r.alpha;

  // Sphere counts, as far as a moderate ball allows.
  const std::size_t cap = std::min<std::size_t>(200000, budget.max_elements);
  std::vector<std::size_t> sphere{1};
  if (!spec.generators.empty()) {
    std::size_t radius = 1;
    while (true) {
      WordBall b = ball(spec, radius, budget);
      sphere = b.sphere_sizes();
      if (sphere.size() <= radius) break;  // finite group
      const std::size_t next = radius < 16 ? radius + 1 : radius + radius / 4;
      const double predicted =
          static_cast<double>(b.size()) * std::pow(static_cast<double>(next) / radius, static_cast<double>(growth_degree(spec)));
      if (next > 400 || predicted > static_cast<double>(cap)) break;
      radius = next;
    }
  }
  r.radius = sphere.size() - 1;
  for (std::size_t m = 1; m < sphere.size(); ++m)
    r.shell_constant = std::max(r.shell_constant, static_cast<double>(sphere[m]) / std::pow(static_cast<double>(m), d - 1.0));
  const bool infinite = !spec.generators.empty() && sphere.back() > 0 && r.degree > 0;

  const double p = inv - d + 1.0;  // > 1 exactly when alpha * d < 1
  auto class_bound = [&](std::size_t i) {
    const double b = std::exp(static_cast<double>(i) * r.alpha * std::numbers::ln2);
    double s = 0.0;
    for (std::size_t n = 1; n <= sphere.size(); ++n)
      s += static_cast<double>(sphere[n - 1]) * std::pow(b + static_cast<double>(n), -inv);
    if (infinite) {
      const double cut = static_cast<double>(sphere.size());
      s += r.shell_constant * std::pow(cut, d - inv) / (inv - d);
    }
    return s;
  };
  auto class_tail = [&](std::size_t i) {
    const double b = std::exp(static_cast<double>(i) * r.alpha * std::numbers::ln2);
    double t = std::pow(b, -inv);
    if (infinite) t += r.shell_constant * std::pow(b, 1.0 - p) / (p - 1.0);
    return t;
  };

  auto window_sum = [&](const OrbitClass& c, std::size_t i) {
    double s = 0.0;
    for (std::size_t k = 0; k < c.members.size(); ++k) s += length_formula(i, 1 + c.word_lengths[k], r.alpha);
    return s;
  };
  for (const auto& c : dec.i_classes) r.trivial_window_sums.push_back(window_sum(c, c.id));
  for (const auto& c : dec.m_classes) r.minimal_window_sums.push_back(window_sum(c, c.id));
  const std::size_t classes = std::max(dec.i_classes.size(), dec.m_classes.size());
  for (std::size_t i = 0; i < classes + 8; ++i) {
    r.class_bounds.push_back(class_bound(i));
    r.class_tails.push_back(class_tail(i));
  }

  double total = 0.0, realized = 0.0;
  for (std::size_t i = 0; i < dec.i_classes.size(); ++i) {
    total += r.class_bounds[i];
    realized += r.trivial_window_sums[i];
  }
  for (std::size_t i = 0; i < dec.m_classes.size(); ++i) {
    total += r.class_bounds[i];
    realized += r.minimal_window_sums[i];
  }
  // Unrealized class indices of both kinds: geometric majorant of class_tail.
  const double ratio = std::exp(-r.alpha * (infinite ? p - 1.0 : inv) * std::numbers::ln2);
  const double head = std::pow(2.0, -static_cast<double>(classes)) * 2.0;
  double beyond = head;
  if (infinite) {
    const double lead = std::exp(-static_cast<double>(classes) * r.alpha * (p - 1.0) * std::numbers::ln2);
    beyond += r.shell_constant / (p - 1.0) * lead / (1.0 - ratio);
  }
  r.beyond_classes = 2.0 * beyond;
  r.window_sum = realized;
  r.total_bound = total + r.beyond_classes;
  r.tail_bound = std::max(0.0, r.total_bound - r.window_sum);
  if (!std::isfinite(r.total_bound)) throw config_error("length series bound is not finite");
  return r;
}

namespace {

LengthAssignment assign_with(const Decomposition& dec, const SmoothingConfig& config,
                             const SummabilityReport& summability) {
  if (!(config.length_scale > 0.0)) throw config_error("length scale must be positive");
  const double alpha = summability.alpha;
  LengthAssignment out;
  for (const auto* list : {&dec.i_classes, &dec.m_classes})
    for (const OrbitClass& c : *list)
      for (std::size_t k = 0; k < c.members.size(); ++k) {
        const double len = config.length_scale * length_formula(c.id, interval_word_length(dec, c.kind, c.id, k), alpha);
        if (!(len > 0.0)) throw config_error("new length of " + c.members[k].to_string() + " underflows");
        out.lengths.emplace(c.members[k], len);
      }
  out.tail_bound = config.length_scale * summability.tail_bound;
  return out;
}

}  // namespace

LengthAssignment assign_lengths(const Decomposition& dec, const GroupSpec& spec, const SmoothingConfig& config) {
  return assign_with(dec, config, check_summability(dec, spec, config.resolve_alpha(spec)));
}

// ---------------------------------------------------------------------------

Conjugacy::Conjugacy(std::shared_ptr<const LineAction> source, LengthHomeo skeleton, std::vector<Role> roles)
    : source_(std::move(source)), skeleton_(std::move(skeleton)), roles_(std::move(roles)) {
  if (roles_.size() != source_->family().size()) throw config_error("conjugacy needs one role per interval");
}

double Conjugacy::evaluate(double x) const {
  const IntervalFamily& fam = source_->family();
  long long deck = 0;
  const double r = fam.reduce(x, deck);
  const auto k = fam.locate(r);
  if (!k || !roles_[*k].assigned) return skeleton_.evaluate(x);
  const Role& role = roles_[*k];
  const Interval& base = fam.item(role.base_item);
  const Interval& target = skeleton_.target().item(*k);
  const double u = source_->evaluate(role.back, x);
  double offset;
  if (role.minimal) {
    offset = 0.5 * role.new_length + phi(role.new_length, role.kappa * arctan_frame(base, u));
  } else {
    double delta = (u - base.position) * (role.base_new / base.length);
    delta = std::clamp(delta, 0.0, role.base_new);
    offset = conjugated_translation_offset(role.base_new, role.new_length, 0.0, delta).value;
  }
  const double period = fam.periodic() ? skeleton_.target().extent() : 0.0;
  return target.position + offset + static_cast<double>(deck) * period;
}

SmoothedAction smooth(const LineAction& action, const Decomposition& dec, const SmoothingConfig& config) {
  SmoothedAction sm;
  sm.config = config;
  sm.alpha = config.resolve_alpha(action.spec());
  sm.dec = dec;
  if (!dec.residual.empty())
    throw config_error("decomposition leaves " + std::to_string(dec.residual.size()) +
                       " intervals unclassified; smoothing needs every interval in a class");
  auto src = std::make_shared<const LineAction>(action);
  sm.source = src;
  const IntervalFamily& fam = action.family();
  sm.summability = check_summability(dec, action.spec(), sm.alpha);
  sm.lengths = assign_with(dec, config, sm.summability);
  LengthHomeo skeleton(fam, sm.lengths);
  auto target = std::make_shared<const IntervalFamily>(skeleton.target());

  std::vector<Conjugacy::Role> roles(fam.size());
  std::vector<std::vector<std::optional<Piece>>> pieces(action.map_count(),
                                                         std::vector<std::optional<Piece>>(fam.size()));
  for (const auto* list : {&dec.i_classes, &dec.m_classes})
    for (const OrbitClass& c : *list) {
      if (c.complement) {
        sm.kappa.push_back(1.0);
        continue;
      }
      const bool minimal = c.kind == ClassKind::Minimal;
      std::unordered_map<Label, std::size_t, LabelHash> pos;
      std::vector<std::size_t> items;
      for (std::size_t k = 0; k < c.members.size(); ++k) {
        pos[c.members[k]] = k;
        items.push_back(fam.index_of(c.members[k]));
      }
      const Interval& base = fam.item(items[0]);

      // Translation in the base frame carried by every (member, map) edge.
      struct Edge {
        std::size_t map, from, to;
        double shift;
      };
      std::vector<Edge> edges;
      double widest = 0.0;
      for (std::size_t mi = 0; mi < action.map_count(); ++mi)
        for (std::size_t k = 0; k < items.size(); ++k) {
          const auto t = action.map(mi).target_index(items[k]);
          if (!t) continue;
          auto pt = pos.find(fam.item(*t).label);
          if (pt == pos.end())
            throw config_error("map " + action.names()[mi] + " sends " + c.members[k].to_string() +
                               " outside its class");
          double shift = 0.0;
          if (minimal) {
            const Word back = inverse_word(c.carriers[pt->second]);
            Word sigma = back;
            sigma.push_back({mi, false});
            sigma.insert(sigma.end(), c.carriers[k].begin(), c.carriers[k].end());
            shift = arctan_frame(base, action.evaluate(sigma, base.center()));
            for (double s : kSampleSpots) {
              const double x = base.position + s * base.length;
              const double lhs = arctan_frame(base, action.evaluate(sigma, x));
              if (std::abs(lhs - arctan_frame(base, x) - shift) > 1e-6 * (1.0 + std::abs(shift)))
                throw config_error("stabilizer of " + c.members[0].to_string() +
                                   " does not act by translations in the arctan frame");
            }
            widest = std::max(widest, std::abs(shift));
          }
          edges.push_back({mi, k, pt->second, shift});
        }
      const double kappa = minimal ? (widest > 0.0 ? config.c(c.id) / widest : 1.0) : 1.0;
      if (minimal) sm.kappa.push_back(kappa);

      for (std::size_t k = 0; k < items.size(); ++k) {
        Conjugacy::Role& role = roles[items[k]];
        role.assigned = true;
        role.minimal = minimal;
        role.class_index = c.id;
        role.base_item = items[0];
        role.back = inverse_word(c.carriers[k]);
        role.base_new = sm.lengths.at(c.members[0]);
        role.new_length = sm.lengths.at(c.members[k]);
        role.kappa = kappa;
      }
      for (const Edge& e : edges) {
        const Interval& from = target->item(items[e.from]);
        const Interval& to = target->item(items[e.to]);
        pieces[e.map][items[e.from]] = Piece{to.label, 0, LocalMap::arctan_between(from, to, kappa * e.shift)};
      }
    }

  std::vector<PiecewiseHomeo> maps;
  for (std::size_t mi = 0; mi < action.map_count(); ++mi)
    maps.emplace_back(target, std::move(pieces[mi]), action.map(mi).complement());
  auto params = action.params();
  params["alpha"] = sm.alpha;
  params["c0"] = config.c0;
  params["length_scale"] = config.length_scale;
  sm.action = LineAction(action.example(), action.spec(), target, action.names(), std::move(maps), std::move(params));
  sm.conjugacy = Conjugacy(src, std::move(skeleton), std::move(roles));
  return sm;
}

// ---------------------------------------------------------------------------

IntertwiningReport check_intertwining(const SmoothedAction& sm, std::size_t samples) {
  const LineAction& src = *sm.source;
  const IntervalFamily& fam = src.family();
  IntertwiningReport rep;
  rep.maps = src.names();
  rep.max_residual.assign(src.map_count(), 0.0);
  rep.samples.assign(src.map_count(), 0);
  parallel_for(src.map_count(), sm.config.jobs, [&](std::size_t mi) {
    std::mt19937_64 rng(sm.config.seed * 0x9E3779B97F4A7C15ull + mi);
    std::uniform_real_distribution<double> pick(fam.start(), fam.end());
    for (std::size_t s = 0; s < samples; ++s) {
      const double x = pick(rng);
      double lhs, rhs;
      try {
        lhs = sm.conjugacy.evaluate(src.map(mi).evaluate(x));
        rhs = sm.action.map(mi).evaluate(sm.conjugacy.evaluate(x));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Domain) throw;
        continue;
      }
      rep.max_residual[mi] = std::max(rep.max_residual[mi], std::abs(lhs - rhs));
      ++rep.samples[mi];
    }
  });
  for (double r : rep.max_residual) rep.worst = std::max(rep.worst, r);
  return rep;
}

double sampled_holder_norm(const LocalMap& m, double length, double alpha, std::size_t pairs, std::uint64_t seed) {
  return holder_norm(m, length, alpha, make_pattern(pairs, seed));
}

HolderReport estimate_holder(const SmoothedAction& sm) {
  const LineAction& a = sm.action;
  const IntervalFamily& fam = a.family();
  HolderReport rep;
  rep.alpha = sm.alpha;
  rep.pairs_per_interval = sm.config.holder_pairs;
  const PairPattern pattern = make_pattern(sm.config.holder_pairs, sm.config.seed);

  std::unordered_map<Label, std::pair<std::size_t, std::size_t>, LabelHash> where;
  for (const auto* list : {&sm.dec.i_classes, &sm.dec.m_classes})
    for (const OrbitClass& c : *list)
      for (std::size_t k = 0; k < c.members.size(); ++k) where[c.members[k]] = {c.id, 1 + c.word_lengths[k]};

  for (std::size_t mi = 0; mi < a.map_count(); ++mi)
    for (std::size_t i = 0; i < fam.size(); ++i) {
      const auto& p = a.map(mi).piece(i);
      if (!p) continue;
      HolderRow row;
      row.map = a.names()[mi];
      row.label = fam.item(i).label;
      if (auto w = where.find(row.label); w != where.end()) std::tie(row.class_index, row.word_length) = w->second;
      row.b = fam.item(i).length;
      row.b_target = fam.item(*a.map(mi).target_index(i)).length;
      row.shift = p->map.kind == LocalMap::Kind::ArctanTranslate ? p->map.shift : 0.0;
      rep.rows.push_back(std::move(row));
    }
  parallel_for(rep.rows.size(), sm.config.jobs, [&](std::size_t r) {
    HolderRow& row = rep.rows[r];
    const std::size_t i = fam.index_of(row.label);
    const std::size_t mi = a.index_of(row.map);
    row.norm = holder_norm(a.map(mi).piece(i)->map, row.b, sm.alpha, pattern);
    const double ratio = row.b_target / row.b;
    if (row.shift == 0.0 && ratio <= 2.0 && ratio >= 0.5)
      row.margin = 6.0 * kPi * std::abs(ratio - 1.0) / std::pow(row.b, sm.alpha) - row.norm;
    else
      row.margin = std::numeric_limits<double>::quiet_NaN();
  });
  for (const HolderRow& row : rep.rows) rep.global_norm = std::max(rep.global_norm, row.norm);
  return rep;
}

std::string HolderReport::csv() const {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "label,i,word_length,b,b_prime,t,sampled_norm,margin\n";
  for (const HolderRow& r : rows) {
    os << '"' << r.map << ':' << r.label.to_string() << "\"," << r.class_index << ',' << r.word_length << ','
       << r.b << ',' << r.b_target << ',' << r.shift << ',' << r.norm << ',';
    if (std::isnan(r.margin))
      os << "";
    else
      os << r.margin;
    os << '\n';
  }
  return os.str();
}

CoefficientReport verify_coefficient_bounds(const SmoothedAction& sm, std::optional<CoefficientReport> frozen) {
  const LineAction& a = sm.action;
  const IntervalFamily& fam = a.family();
  CoefficientReport rep;
  std::unordered_map<Label, bool, LabelHash> minimal;
  for (const OrbitClass& c : sm.dec.m_classes)
    for (const Label& l : c.members) minimal[l] = true;

  for (std::size_t mi = 0; mi < a.map_count(); ++mi)
    for (std::size_t i = 0; i < fam.size(); ++i) {
      const auto& p = a.map(mi).piece(i);
      if (!p || p->map.kind != LocalMap::Kind::ArctanTranslate || !minimal.count(fam.item(i).label)) continue;
      CoefficientRow row;
      row.map = a.names()[mi];
      row.label = fam.item(i).label;
      row.b = p->map.b;
      row.b_target = p->map.b_target;
      row.shift = p->map.shift;
      const double q = row.b_target / row.b;
      const double q4 = q * q * q * q;
      row.terms[0] = q4 * std::abs(row.shift);
      row.terms[1] = q4 * row.b * row.shift * row.shift;
      row.terms[2] = row.b_target * row.b_target / (row.b * row.b * row.b) * std::abs(1.0 - q * q);
      const double k = q * q;
      for (int s = 0; s <= 64; ++s) {
        const double g1 = p->map.offset_derivative(row.b * s / 64.0, row.b) / k;
        row.prefactor = std::max(row.prefactor, g1 * g1);
      }
      row.scale = std::pow(row.b, sm.alpha - 1.0);
      rep.rows.push_back(std::move(row));
    }

  if (frozen) {
    rep.constants = frozen->constants;
    rep.prefactor_bound = frozen->prefactor_bound;
  } else {
    for (const auto& r : rep.rows) {
      for (int t = 0; t < 3; ++t) rep.constants[t] = std::max(rep.constants[t], r.terms[t] / r.scale);
      rep.prefactor_bound = std::max(rep.prefactor_bound, r.prefactor);
    }
  }
  for (const auto& r : rep.rows) {
    for (int t = 0; t < 3; ++t)
      if (r.terms[t] > rep.constants[t] * r.scale * (1.0 + 1e-9)) {
        std::ostringstream os;
        os << r.map << ':' << r.label.to_string() << " term " << t + 1 << " = " << r.terms[t] << " exceeds "
           << rep.constants[t] << " * b^(alpha-1) = " << rep.constants[t] * r.scale;
        rep.violations.push_back(os.str());
      }
    if (r.prefactor > rep.prefactor_bound * (1.0 + 1e-9)) {
      std::ostringstream os;
      os << r.map << ':' << r.label.to_string() << " prefactor " << r.prefactor << " exceeds " << rep.prefactor_bound;
      rep.violations.push_back(os.str());
    }
  }
  return rep;
}

double third_coefficient_term(std::size_t class_index, double n, double alpha, int sign) {
  if (!(alpha > 0.0)) throw config_error("alpha must be positive");
  if (sign != 1 && sign != -1) throw config_error("sign must be +1 or -1");
  const double big = std::exp2(static_cast<double>(class_index) * alpha) + n;
  return big * (1.0 - std::pow(big / (big + sign), 2.0 / alpha));
}

TangencyReport endpoint_tangency(const LineAction& a, double tolerance) {
  const IntervalFamily& fam = a.family();
  TangencyReport rep;
  constexpr double steps[] = {1e-4, 1e-5, 1e-6, 1e-7};
  for (std::size_t mi = 0; mi < a.map_count(); ++mi)
    for (std::size_t i = 0; i < fam.size(); ++i) {
      const auto& p = a.map(mi).piece(i);
      if (!p) continue;
      const double len = fam.item(i).length;
      const double end_value = p->map.offset_value(len, len);
      const double start_value = p->map.offset_value(0.0, len);
      double left[4], right[4];
      for (int s = 0; s < 4; ++s) {
        const double h = steps[s] * len;
        left[s] = (p->map.offset_value(h, len) - start_value) / h;
        right[s] = (end_value - p->map.offset_value(len - h, len)) / h;
      }
      // Richardson with step ratio 10 on the two finest quotients.
      const double dl = (10.0 * left[3] - left[2]) / 9.0;
      const double dr = (10.0 * right[3] - right[2]) / 9.0;
      for (auto [side, d] : {std::pair{"left", dl}, std::pair{"right", dr}}) {
        const double res = std::abs(d - 1.0);
        rep.max_residual = std::max(rep.max_residual, res);
        ++rep.endpoints;
        if (!(res < tolerance) && rep.failures.size() < 50) {
          std::ostringstream os;
          os << a.names()[mi] << ':' << fam.item(i).label.to_string() << ' ' << side << " derivative " << d;
          rep.failures.push_back(os.str());
        }
      }
    }
  return rep;
}

DerivativeReport derivative_consistency(const LineAction& a, std::size_t points_per_map, std::uint64_t seed) {
  const IntervalFamily& fam = a.family();
  DerivativeReport rep;
  for (std::size_t mi = 0; mi < a.map_count(); ++mi) {
    std::vector<std::size_t> arctan;
    for (std::size_t i = 0; i < fam.size(); ++i)
      if (const auto& p = a.map(mi).piece(i); p && p->map.kind == LocalMap::Kind::ArctanTranslate) arctan.push_back(i);
    if (arctan.empty()) continue;
    std::mt19937_64 rng(seed + 7919 * mi);
    std::uniform_real_distribution<double> spot(0.001, 0.999);
    for (std::size_t s = 0; s < points_per_map; ++s) {
      const std::size_t i = arctan[rng() % arctan.size()];
      const LocalMap& m = a.map(mi).piece(i)->map;
      const double b = m.b;
      const double delta = spot(rng) * b;
      // Central differences at h and h/2, Richardson-combined; steep pieces
      // otherwise leave an O(h^2) truncation error above the tolerance.
      auto central = [&](auto&& f, double h) {
        const double coarse = (f(delta + h) - f(delta - h)) / (2.0 * h);
        const double fine = (f(delta + h / 2) - f(delta - h / 2)) / h;
        return (4.0 * fine - coarse) / 3.0;
      };
      const double fd1 = central([&](double y) { return m.offset_value(y, b); }, 1e-5 * b);
      const double cf1 = m.offset_derivative(delta, b);
      const double fd2 = central([&](double y) { return m.offset_derivative(y, b); }, 1e-4 * b);
      const double cf2 = m.offset_second_derivative(delta, b);
      rep.max_first_error = std::max(rep.max_first_error, std::abs(fd1 - cf1) / std::abs(cf1));
      rep.max_second_error =
          std::max(rep.max_second_error, std::abs(fd2 - cf2) / std::max(std::abs(cf2), 0.01 * kPi / b));
      ++rep.points;
    }
  }
  return rep;
}

double c1_distance_from_identity(const LineAction& a, std::size_t samples, std::uint64_t seed) {
  const IntervalFamily& fam = a.family();
  double disp = 0.0, slope = 0.0;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> spot(0.0, 1.0);
  for (std::size_t mi = 0; mi < a.map_count(); ++mi) {
    std::vector<std::size_t> defined;
    for (std::size_t i = 0; i < fam.size(); ++i)
      if (a.map(mi).piece(i)) defined.push_back(i);
    if (defined.empty()) continue;
    for (std::size_t s = 0; s < samples; ++s) {
      const std::size_t i = defined[rng() % defined.size()];
      const Interval& it = fam.item(i);
      const double x = it.position + spot(rng) * it.length;
      const auto& p = a.map(mi).piece(i);
      const double y = p->map.value(x) + static_cast<double>(p->deck_shift) * (fam.periodic() ? fam.extent() : 0.0);
      disp = std::max(disp, std::abs(y - x));
      slope = std::max(slope, std::abs(p->map.derivative(x) - 1.0));
    }
  }
  return disp + slope;
}

}  // namespace nilsmooth
