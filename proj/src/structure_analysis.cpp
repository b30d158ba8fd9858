#include "nilsmooth/structure_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "nilsmooth/error.hpp"

namespace nilsmooth {

namespace {

constexpr double kSampleSpots[] = {0.03, 0.21, 0.5, 0.77, 0.96};
constexpr double kTrivialTolerance = 1e-9;
constexpr double kAbelianTolerance = 1e-8;

bool near(double x, double y, double tol) { return std::abs(x - y) <= tol * std::max(1.0, std::abs(x)); }

std::optional<double> try_evaluate(const LineAction& a, const Word& w, double x) {
  try {
    return a.evaluate(w, x);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Domain) throw;
    return std::nullopt;
  }
}

std::vector<double> item_samples(const Interval& it) {
  std::vector<double> out;
  for (double u : kSampleSpots) out.push_back(it.position + u * it.length);
  return out;
}

bool null_complement(const IntervalFamily& fam) {
  return fam.complement_total() <= 1e-12 * std::max(1.0, fam.extent());
}

/// A handful of points of the positive-measure complement.
std::vector<double> complement_samples(const IntervalFamily& fam) {
  std::vector<double> out;
  if (null_complement(fam)) return out;
  const double range = fam.complement_total() / fam.complement_unit();
  for (int k = 0; k < 8; ++k) out.push_back(fam.expand(range * (k + 0.37) / 8.0));
  return out;
}

Word concat(std::initializer_list<const Word*> parts) {
  Word w;
  for (const Word* p : parts) w.insert(w.end(), p->begin(), p->end());
  return w;
}

/// Label-graph components, each listed in BFS order from its leftmost item,
/// with carrier words and distances.
struct Component {
  std::vector<std::size_t> items;
  std::vector<Word> carriers;
  std::vector<std::size_t> dist;
};

std::vector<Component> label_components(const LineAction& a) {
  const std::size_t n = a.family().size();
  const auto letters = a.letters();
  std::vector<bool> seen(n, false);
  std::vector<Component> out;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    Component c;
    std::unordered_map<std::size_t, std::size_t> pos;
    std::deque<std::size_t> queue{start};
    seen[start] = true;
    c.items.push_back(start);
    c.carriers.push_back({});
    c.dist.push_back(0);
    pos[start] = 0;
    while (!queue.empty()) {
      const std::size_t j = queue.front();
      queue.pop_front();
      const std::size_t pj = pos[j];
      for (const Letter& l : letters) {
        auto t = a.map(l).target_index(j);
        if (!t || seen[*t]) continue;
        seen[*t] = true;
        pos[*t] = c.items.size();
        Word w{l};
        w.insert(w.end(), c.carriers[pj].begin(), c.carriers[pj].end());
        c.items.push_back(*t);
        c.carriers.push_back(std::move(w));
        c.dist.push_back(c.dist[pj] + 1);
        queue.push_back(*t);
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

/// Freely reduced words over the group letters of length 1..len.
std::vector<Word> reduced_words(const LineAction& a, std::size_t len) {
  std::vector<Word> out, layer{{}};
  const auto letters = a.letters();
  for (std::size_t k = 0; k < len; ++k) {
    std::vector<Word> next;
    for (const Word& w : layer)
      for (const Letter& l : letters) {
        if (!w.empty() && w.back() == l.inverted()) continue;
        Word v = w;
        v.push_back(l);
        next.push_back(std::move(v));
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

double arctan_frame(const Interval& it, double x) {
  return std::tan(std::numbers::pi * (x - it.center()) / it.length) / it.length;
}

double arctan_frame_inverse(const Interval& it, double u) {
  return it.center() + it.length / std::numbers::pi * std::atan(it.length * u);
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<FixedPiece> fixed_set(const PiecewiseHomeo& g, double resolution) {
  if (!(resolution > 0.0)) throw config_error("fixed-set grid resolution must be positive");
  const IntervalFamily& fam = g.family();
  std::vector<FixedPiece> pieces;
  auto fixed_at = [&](double x) {
    try {
      return std::abs(g.evaluate(x) - x) <= kFixedTolerance * (1.0 + std::abs(x));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Domain) throw;
      return false;
    }
  };

  for (std::size_t i = 0; i < fam.size(); ++i) {
    const auto t = g.target_index(i);
    if (!t || *t != i || g.piece(i)->deck_shift != 0) continue;
    const Interval& it = fam.item(i);
    const LocalMap& m = g.piece(i)->map;
    bool all_fixed = m.kind == LocalMap::Kind::Identity;
    if (!all_fixed) {
      all_fixed = true;
      for (double x : item_samples(it)) all_fixed = all_fixed && fixed_at(x);
    }
    if (all_fixed) {
      pieces.push_back({it.position, it.right()});
      continue;
    }
    const std::size_t steps =
        std::min<std::size_t>(100000, std::max<std::size_t>(16, static_cast<std::size_t>(std::ceil(it.length * resolution))));
    auto d = [&](double x) { return m.value(x) - x; };
    double xa = it.position + it.length / static_cast<double>(steps);
    double da = d(xa);
    for (std::size_t s = 2; s < steps; ++s) {
      const double xb = it.position + it.length * static_cast<double>(s) / static_cast<double>(steps);
      const double db = d(xb);
      if (std::abs(da) <= kFixedTolerance * (1.0 + std::abs(xa))) {
        pieces.push_back({xa, xa});
      } else if ((da < 0.0) != (db < 0.0) && std::abs(db) > kFixedTolerance * (1.0 + std::abs(xb))) {
        double lo = xa, hi = xb, dlo = da;
        for (int it2 = 0; it2 < 80; ++it2) {
          const double mid = 0.5 * (lo + hi);
          const double dm = d(mid);
          if ((dm < 0.0) == (dlo < 0.0)) {
            lo = mid;
            dlo = dm;
          } else {
            hi = mid;
          }
        }
        pieces.push_back({0.5 * (lo + hi), 0.5 * (lo + hi)});
      }
      xa = xb;
      da = db;
    }
  }

  // Complement: whole gaps under an identity rule, otherwise gap points one by one.
  const bool identity_rule = g.complement().kind == LocalMap::Kind::Identity ||
                             (g.complement().kind == LocalMap::Kind::RigidRotation && g.complement().angle == 0.0);
  std::vector<std::pair<double, double>> gaps;
  double cursor = fam.start();
  for (const Interval& it : fam.items()) {
    gaps.push_back({cursor, it.position});
    cursor = it.right();
  }
  gaps.push_back({cursor, fam.end()});
  for (auto [a, b] : gaps) {
    if (b > a && identity_rule && !null_complement(fam)) {
      pieces.push_back({a, b});
    } else if (!fam.periodic() || a < fam.end()) {
      if (fixed_at(a)) pieces.push_back({a, a});
      if (b > a && fixed_at(b)) pieces.push_back({b, b});
    }
  }

  std::sort(pieces.begin(), pieces.end(), [](const FixedPiece& x, const FixedPiece& y) {
    return x.left < y.left || (x.left == y.left && x.right < y.right);
  });
  std::vector<FixedPiece> merged;
  for (const FixedPiece& p : pieces) {
    if (!merged.empty() && p.left <= merged.back().right) {
      merged.back().right = std::max(merged.back().right, p.right);
    } else {
      merged.push_back(p);
    }
  }
  return merged;
}

CommutatorRegion commutator_fixed_region(const LineAction& a, std::size_t cap) {
  if (cap < 2) throw config_error("commutator word cap must be at least 2");
  const IntervalFamily& fam = a.family();
  CommutatorRegion region;
  region.fixed_items.assign(fam.size(), true);
  const auto words = reduced_words(a, std::max<std::size_t>(1, cap / 2));
  std::vector<Word> comms;
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = i + 1; j < words.size(); ++j) comms.push_back(commutator_word(words[i], words[j]));
  region.commutators = comms.size();

  for (std::size_t i = 0; i < fam.size(); ++i) {
    const Interval& it = fam.item(i);
    for (const Word& c : comms) {
      const auto img = a.label_image(c, i);
      if (!img) {
        ++region.undetermined;
        continue;
      }
      bool ok = *img == i;
      if (ok) {
        for (double x : item_samples(it)) {
          const auto y = try_evaluate(a, c, x);
          if (y && std::abs(*y - x) > kFixedTolerance * (1.0 + std::abs(x))) ok = false;
        }
      }
      if (!ok) {
        region.fixed_items[i] = false;
        break;
      }
    }
  }
  for (double x : complement_samples(fam))
    for (const Word& c : comms) {
      const auto y = try_evaluate(a, c, x);
      if (y && std::abs(*y - x) > kFixedTolerance * (1.0 + std::abs(x))) region.complement_fixed = false;
    }

  // Largest invariant subset: drop every orbit that meets a moved item.
  for (const Component& c : label_components(a)) {
    const bool all = std::all_of(c.items.begin(), c.items.end(), [&](std::size_t i) { return region.fixed_items[i]; });
    if (!all)
      for (std::size_t i : c.items) region.fixed_items[i] = false;
  }
  return region;
}

// ---------------------------------------------------------------------------

RotationEstimate translation_number(const std::function<double(double)>& f, double x0, std::size_t n) {
  if (n < 2) throw config_error("iteration count must be at least 2");
  double x = x0, at_n = x0;
  for (std::size_t k = 1; k <= 2 * n; ++k) {
    x = f(x);
    if (k == n) at_n = x;
  }
  RotationEstimate r;
  r.iterations = n;
  r.value = (at_n - x0) / static_cast<double>(n);
  r.residual = std::abs((x - x0) / static_cast<double>(2 * n) - r.value);
  return r;
}

RotationEstimate translation_number(const PiecewiseHomeo& f, double x0, std::size_t n) {
  return translation_number([&](double x) { return f.evaluate(x); }, x0, n);
}

RotationEstimate rotation_number(const std::function<double(double)>& lift, double period, double x0,
                                 std::size_t n) {
  if (!(period > 0.0)) throw config_error("circle period must be positive");
  RotationEstimate r = translation_number(lift, x0, n);
  r.value /= period;
  r.residual /= period;
  r.value -= std::floor(r.value);
  return r;
}

RotationEstimate rotation_number(const PiecewiseHomeo& f, double x0, std::size_t n) {
  if (!f.family().periodic()) throw config_error("rotation number needs a circle map");
  return rotation_number([&](double x) { return f.evaluate(x); }, f.family().extent(), x0, n);
}

MinimalityVerdict minimality_test(const std::vector<std::function<double(double)>>& maps, double left,
                                  double right, double epsilon, std::size_t budget) {
  if (!(right > left)) throw config_error("minimality region must have positive length");
  if (!(epsilon > 0.0)) throw config_error("density epsilon must be positive");
  const double len = right - left;
  const double cell = 1e-10 * len;
  MinimalityVerdict v;
  v.epsilon = epsilon;

  std::unordered_set<long long> seen;
  std::vector<double> inside;
  std::deque<double> queue;
  auto visit = [&](double x) {
    if (!std::isfinite(x)) return;
    const double q = std::floor((x - left) / cell);
    if (std::abs(q) > 4e18) return;
    if (!seen.insert(static_cast<long long>(q)).second) return;
    queue.push_back(x);
    if (x > left && x < right) inside.push_back(x);
  };
  auto widest_gap = [&]() {
    std::vector<double> pts = inside;
    pts.push_back(left);
    pts.push_back(right);
    std::sort(pts.begin(), pts.end());
    double best = -1.0;
    for (std::size_t i = 1; i < pts.size(); ++i)
      if (pts[i] - pts[i - 1] > best) {
        best = pts[i] - pts[i - 1];
        v.gap_left = pts[i - 1];
        v.gap_right = pts[i];
      }
    return best;
  };

  visit(0.5 * (left + right));
  std::size_t processed = 0, next_check = 64;
  while (!queue.empty() && seen.size() < budget) {
    const double x = queue.front();
    queue.pop_front();
    for (const auto& m : maps) {
      try {
        visit(m(x));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Domain) throw;
      }
    }
    if (++processed >= next_check) {
      next_check *= 2;
      if (widest_gap() < epsilon * len) break;
    }
  }
  v.orbit_points = seen.size();
  v.dense = widest_gap() < epsilon * len;
  return v;
}

MinimalityVerdict minimality_test(const LineAction& a, double left, double right, double epsilon,
                                  std::size_t budget) {
  std::vector<std::function<double(double)>> maps;
  for (const Letter& l : a.letters()) maps.push_back([&a, l](double x) { return a.map(l).evaluate(x); });
  return minimality_test(maps, left, right, epsilon, budget);
}

// ---------------------------------------------------------------------------

Decomposition decompose(const LineAction& a, const DecomposeOptions& opt) {
  const IntervalFamily& fam = a.family();
  Decomposition dec;
  dec.depth_limit = opt.depth_limit ? *opt.depth_limit : growth_degree(a.spec());
  dec.window_measure = fam.extent();
  const CommutatorRegion region = commutator_fixed_region(a, opt.commutator_cap);
  dec.commutators = region.commutators;

  auto residual_all = [&](const Component& c, const std::string& why) {
    for (std::size_t i : c.items) {
      dec.residual.push_back({fam.item(i).label, why});
      dec.residual_measure += fam.item(i).length;
    }
  };

  for (const Component& comp : label_components(a)) {
    std::unordered_map<std::size_t, std::size_t> pos;
    for (std::size_t k = 0; k < comp.items.size(); ++k) pos[comp.items[k]] = k;
    const Interval& base = fam.item(comp.items[0]);

    OrbitClass cls;
    cls.depth = region.fixed_items[comp.items[0]] ? 0 : 1;
    for (std::size_t k = 0; k < comp.items.size(); ++k) {
      cls.members.push_back(fam.item(comp.items[k]).label);
      cls.carriers.push_back(comp.carriers[k]);
      cls.word_lengths.push_back(comp.dist[k]);
    }
    std::vector<Word> moving;
    for (std::size_t k = 0; k < comp.items.size(); ++k)
      for (std::size_t g = 0; g < a.generator_count(); ++g) {
        const Letter s{g, false};
        const auto t = a.map(s).target_index(comp.items[k]);
        if (!t) continue;
        const Word& ct = comp.carriers[pos.at(*t)];
        Word step{s};
        const Word through = concat({&step, &comp.carriers[k]});
        if (through == ct) continue;
        const Word back = inverse_word(ct);
        Word sigma = concat({&back, &through});
        bool identity = true;
        for (double x : item_samples(base)) {
          const auto y = try_evaluate(a, sigma, x);
          if (!y || !near(*y, x, kTrivialTolerance)) identity = false;
        }
        if (!identity) moving.push_back(sigma);
        cls.stabilizer.push_back(std::move(sigma));
      }

    if (moving.empty()) {
      cls.kind = ClassKind::Trivial;
      dec.i_classes.push_back(std::move(cls));
      continue;
    }
    if (cls.depth > dec.depth_limit) {
      residual_all(comp, "depth limit reached");
      continue;
    }
    // Minimal candidate: abelian stabilizer with a dense orbit.
    bool abelian = true;
    const std::size_t pairs = std::min<std::size_t>(moving.size(), 12);
    for (std::size_t i = 0; i < pairs && abelian; ++i)
      for (std::size_t j = i + 1; j < pairs && abelian; ++j) {
        const Word c = commutator_word(moving[i], moving[j]);
        for (double x : item_samples(base)) {
          const auto y = try_evaluate(a, c, x);
          if (!y || !near(*y, x, kAbelianTolerance)) abelian = false;
        }
      }
    if (!abelian) {
      residual_all(comp, "stabilizer restriction is not abelian");
      continue;
    }
    cls.arctan_normal_form = true;
    for (const Word& sigma : cls.stabilizer) {
      const double t = arctan_frame(base, a.evaluate(sigma, base.center()));
      cls.translations.push_back(t);
      for (double x : item_samples(base)) {
        const double lhs = arctan_frame(base, a.evaluate(sigma, x));
        const double rhs = arctan_frame(base, x) + t;
        if (std::abs(lhs - rhs) > 1e-6 * (1.0 + std::abs(rhs))) cls.arctan_normal_form = false;
      }
    }
    std::vector<std::function<double(double)>> maps;
    if (cls.arctan_normal_form) {
      for (double t : cls.translations) {
        if (t == 0.0) continue;
        for (double sgn : {1.0, -1.0})
          maps.push_back([&base, t, sgn](double x) {
            return arctan_frame_inverse(base, arctan_frame(base, x) + sgn * t);
          });
      }
    } else {
      for (const Word& w : moving) {
        const Word wi = inverse_word(w);
        maps.push_back([&a, w](double x) { return a.evaluate(w, x); });
        maps.push_back([&a, wi](double x) { return a.evaluate(wi, x); });
      }
    }
    cls.minimality = minimality_test(maps, base.position, base.right(), opt.epsilon, opt.orbit_budget);
    if (!cls.minimality.dense) {
      std::ostringstream os;
      os << "stabilizer orbit not " << opt.epsilon << "-dense (empty gap [" << cls.minimality.gap_left << ", "
         << cls.minimality.gap_right << "])";
      residual_all(comp, os.str());
      continue;
    }
    cls.kind = ClassKind::Minimal;
    dec.m_classes.push_back(std::move(cls));
  }

  if (!null_complement(fam)) {
    const double comp_measure = fam.complement_total();
    OrbitClass cls;
    cls.kind = ClassKind::Minimal;
    cls.complement = true;
    cls.depth = region.complement_fixed ? 0 : 1;
    std::vector<std::function<double(double)>> maps;
    for (std::size_t g = 0; g < a.generator_count(); ++g) {
      const LocalMap& rule = a.map(g).complement();
      const double t = rule.kind == LocalMap::Kind::RigidRotation ? rule.angle : 0.0;
      cls.translations.push_back(t);
      Word w{{g, false}};
      cls.stabilizer.push_back(w);
      if (t != 0.0) {
        maps.push_back([t](double c) { return c + t; });
        maps.push_back([t](double c) { return c - t; });
      }
    }
    cls.arctan_normal_form = false;
    const double range = comp_measure / fam.complement_unit();
    if (!maps.empty()) cls.minimality = minimality_test(maps, 0.0, range, opt.epsilon, opt.orbit_budget);
    if (cls.minimality.dense) {
      dec.m_classes.push_back(std::move(cls));
    } else {
      dec.residual_measure += comp_measure;
    }
  }

  for (std::size_t i = 0; i < dec.i_classes.size(); ++i) dec.i_classes[i].id = i;
  for (std::size_t i = 0; i < dec.m_classes.size(); ++i) dec.m_classes[i].id = i;
  for (const auto* list : {&dec.i_classes, &dec.m_classes})
    for (const OrbitClass& c : *list) dec.depth = std::max(dec.depth, c.depth);
  return dec;
}

// ---------------------------------------------------------------------------

LineAction restrict_to_member(const LineAction& a, const Decomposition& dec, ClassKind kind,
                              std::size_t class_id, std::size_t member) {
  const auto& list = kind == ClassKind::Trivial ? dec.i_classes : dec.m_classes;
  if (class_id >= list.size()) throw config_error("no such class");
  const OrbitClass& cls = list[class_id];
  if (cls.complement) throw config_error("the complement class has no single interval to restrict to");
  if (member >= cls.members.size()) throw config_error("no such class member");
  const Interval& it = a.family().item(a.family().index_of(cls.members[member]));
  auto fam = std::make_shared<const IntervalFamily>(ManifoldKind::Segment, it.position, it.right(),
                                                    std::vector<Interval>{it});
  const Word& cj = cls.carriers[member];
  const Word cji = inverse_word(cj);

  std::vector<GroupElement> elems;
  std::vector<std::string> names;
  std::vector<PiecewiseHomeo> maps;
  for (std::size_t s = 0; s < cls.stabilizer.size(); ++s) {
    const Word w = concat({&cj, &cls.stabilizer[s], &cji});
    elems.push_back(a.spec().evaluate(w));
    names.push_back("s" + std::to_string(s + 1));
    bool identity = true;
    for (double x : item_samples(it)) identity = identity && near(a.evaluate(w, x), x, kTrivialTolerance);
    LocalMap m = LocalMap::identity();
    if (!identity) {
      const double t = arctan_frame(it, a.evaluate(w, it.center()));
      for (double x : item_samples(it))
        if (std::abs(arctan_frame(it, a.evaluate(w, x)) - arctan_frame(it, x) - t) > 1e-6 * (1.0 + std::abs(t)))
          throw config_error("stabilizer of " + it.label.to_string() + " is not a translation in the arctan frame");
      m = LocalMap::arctan_between(it, it, t);
    }
    maps.push_back(PiecewiseHomeo(fam, {Piece{it.label, 0, m}}));
  }
  GroupSpec spec = GroupSpec::subgroup(a.spec(), std::move(elems), names);
  spec.lcs_ranks = a.spec().lcs_ranks;
  return LineAction("restricted", spec, fam, names, std::move(maps), {});
}

// ---------------------------------------------------------------------------

bool StructureReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const StructureCheck& c) { return c.pass; });
}

std::string StructureReport::text() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.pass ? "PASS " : "FAIL ") << c.name << "\n";
    for (const auto& f : c.failures) os << "  - " << f << "\n";
  }
  return os.str();
}

StructureReport check_structure(const Decomposition& dec, const LineAction& a, double tail_bound) {
  const IntervalFamily& fam = a.family();
  StructureReport rep;
  StructureCheck disjoint{"disjointness", true, {}}, invariant{"invariance", true, {}},
      trivial{"trivial-stabilizers", true, {}}, abelian{"abelian-stabilizers", true, {}},
      coverage{"coverage", true, {}};
  constexpr std::size_t kMaxFailures = 20;
  auto fail = [&](StructureCheck& c, const std::string& msg) {
    c.pass = false;
    if (c.failures.size() < kMaxFailures) c.failures.push_back(msg);
  };

  // Owner of every label: (kind, id), residual marked with id = npos.
  struct Owner {
    ClassKind kind;
    std::size_t id;
  };
  std::unordered_map<Label, Owner, LabelHash> owner;
  auto class_name = [](ClassKind k, std::size_t id) { return std::string(k == ClassKind::Trivial ? "I" : "M") + std::to_string(id); };
  const OrbitClass* complement_class = nullptr;
  for (const auto* list : {&dec.i_classes, &dec.m_classes})
    for (const OrbitClass& c : *list) {
      if (c.complement) complement_class = &c;
      for (const Label& l : c.members) {
        if (!owner.emplace(l, Owner{c.kind, c.id}).second)
          fail(disjoint, "label " + l.to_string() + " belongs to two classes");
        if (!fam.find(l)) fail(invariant, "label " + l.to_string() + " is not in the window");
      }
    }
  for (const ResidualPiece& r : dec.residual)
    if (owner.count(r.label)) fail(disjoint, "residual label " + r.label.to_string() + " also belongs to a class");

  // G-invariance on labels, and of the complement.
  for (const auto* list : {&dec.i_classes, &dec.m_classes})
    for (const OrbitClass& c : *list)
      for (const Label& l : c.members) {
        auto i = fam.find(l);
        if (!i) continue;
        for (const Letter& s : a.letters()) {
          auto t = a.map(s).target_index(*i);
          if (!t) continue;
          auto o = owner.find(fam.item(*t).label);
          if (o == owner.end() || o->second.kind != c.kind || o->second.id != c.id)
            fail(invariant, "generator " + word_to_string({s}, a.names()) + " sends " + l.to_string() + " of class " +
                                class_name(c.kind, c.id) + " to " + fam.item(*t).label.to_string() + " outside it");
        }
      }
  if (complement_class)
    for (double x : complement_samples(fam))
      for (const Letter& s : a.letters()) {
        const auto y = try_evaluate(a, {s}, x);
        if (!y) continue;
        long long deck = 0;
        if (fam.locate(fam.reduce(*y, deck)))
          fail(invariant, "generator " + word_to_string({s}, a.names()) + " sends a complement point into an interval");
      }

  // Trivial classes: every generator agrees with the carrier transport.
  for (const OrbitClass& c : dec.i_classes) {
    if (c.carriers.size() != c.members.size()) {
      fail(trivial, "class " + class_name(c.kind, c.id) + " has no carrier for every member");
      continue;
    }
    std::unordered_map<Label, std::size_t, LabelHash> pos;
    for (std::size_t k = 0; k < c.members.size(); ++k) pos[c.members[k]] = k;
    for (std::size_t k = 0; k < c.members.size(); ++k) {
      auto i = fam.find(c.members[k]);
      if (!i) continue;
      const Word back = inverse_word(c.carriers[k]);
      for (std::size_t g = 0; g < a.generator_count(); ++g) {
        auto t = a.map(g).target_index(*i);
        if (!t) continue;
        auto pt = pos.find(fam.item(*t).label);
        if (pt == pos.end()) continue;  // reported by the invariance check
        const Word transport = concat({&c.carriers[pt->second], &back});
        for (double x : item_samples(fam.item(*i))) {
          const auto y1 = try_evaluate(a, {{g, false}}, x);
          const auto y2 = try_evaluate(a, transport, x);
          if (!y1 || !y2 || !near(*y1, *y2, kTrivialTolerance)) {
            fail(trivial, "generator " + a.names()[g] + " restricted to " + c.members[k].to_string() +
                              " differs from the carrier transport");
            break;
          }
        }
      }
    }
  }

  // Minimal classes: stabilizer commutators vanish on every member.
  for (const OrbitClass& c : dec.m_classes) {
    if (c.complement) {
      const auto gens = a.letters();
      for (double x : complement_samples(fam))
        for (std::size_t i = 0; i < gens.size(); ++i)
          for (std::size_t j = i + 1; j < gens.size(); ++j) {
            const auto y = try_evaluate(a, commutator_word({gens[i]}, {gens[j]}), x);
            if (y && !near(*y, x, kAbelianTolerance)) fail(abelian, "complement generators do not commute");
          }
      continue;
    }
    const std::size_t n = std::min<std::size_t>(c.stabilizer.size(), 12);
    for (std::size_t k = 0; k < c.members.size() && k < c.carriers.size(); ++k) {
      auto i = fam.find(c.members[k]);
      if (!i) continue;
      const Word back = inverse_word(c.carriers[k]);
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) {
          const Word comm = commutator_word(c.stabilizer[p], c.stabilizer[q]);
          const Word w = concat({&c.carriers[k], &comm, &back});
          for (double x : item_samples(fam.item(*i))) {
            const auto y = try_evaluate(a, w, x);
            if (y && !near(*y, x, kAbelianTolerance)) {
              fail(abelian, "stabilizer generators " + std::to_string(p) + " and " + std::to_string(q) +
                                " do not commute on " + c.members[k].to_string());
              break;
            }
          }
        }
    }
  }

  // Coverage of the window.
  double uncovered = 0.0;
  for (const Interval& it : fam.items())
    if (!owner.count(it.label)) uncovered += it.length;
  if (!complement_class && !null_complement(fam)) uncovered += fam.complement_total();
  if (uncovered > tail_bound + 1e-6) {
    std::ostringstream os;
    os << "uncovered measure " << uncovered << " exceeds tail bound " << tail_bound << " + 1e-6";
    fail(coverage, os.str());
  }

  rep.checks = {disjoint, invariant, trivial, abelian, coverage};
  return rep;
}

}  // namespace nilsmooth
