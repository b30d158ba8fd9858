#include "nilsmooth/action_builder.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nilsmooth/arctan.hpp"
#include "nilsmooth/error.hpp"

namespace nilsmooth {

LocalMap LocalMap::affine(double slope, double offset) {
  if (!(slope > 0.0) || !std::isfinite(slope) || !std::isfinite(offset))
    throw config_error("affine local map needs a finite positive slope");
  LocalMap m;
  m.kind = Kind::Affine;
  m.slope = slope;
  m.offset = offset;
  return m;
}

LocalMap LocalMap::affine_between(const Interval& from, const Interval& to) {
  LocalMap m = affine(to.length / from.length, to.position);
  m.source_center = from.position;
  return m;
}

LocalMap LocalMap::arctan_between(const Interval& from, const Interval& to, double shift) {
  if (!std::isfinite(shift)) throw config_error("translation amount must be finite");
  LocalMap m;
  m.kind = Kind::ArctanTranslate;
  m.b = from.length;
  m.b_target = to.length;
  m.shift = shift;
  m.source_center = from.center();
  m.target_center = to.center();
  return m;
}

LocalMap LocalMap::rotation(double angle) {
  if (!std::isfinite(angle)) throw config_error("rotation angle must be finite");
  LocalMap m;
  m.kind = Kind::RigidRotation;
  m.angle = angle;
  return m;
}

double LocalMap::value(double x) const {
  switch (kind) {
    case Kind::Identity: return x;
    case Kind::Affine: return offset + slope * (x - source_center);
    case Kind::ArctanTranslate: {
      const double delta = x - (source_center - 0.5 * b);
      return (target_center - 0.5 * b_target) + conjugated_translation_offset(b, b_target, shift, delta).value;
    }
    case Kind::RigidRotation: break;
  }
  throw domain_error("a rotation rule acts on collapse coordinates, not on an interval");
}

double LocalMap::derivative(double x) const {
  switch (kind) {
    case Kind::Identity: return 1.0;
    case Kind::Affine: return slope;
    case Kind::ArctanTranslate:
      return conjugated_translation_offset(b, b_target, shift, x - (source_center - 0.5 * b)).first;
    case Kind::RigidRotation: break;
  }
  throw domain_error("a rotation rule has no interval derivative");
}

double LocalMap::second_derivative(double x) const {
  switch (kind) {
    case Kind::Identity:
    case Kind::Affine: return 0.0;
    case Kind::ArctanTranslate:
      return conjugated_translation_offset(b, b_target, shift, x - (source_center - 0.5 * b)).second;
    case Kind::RigidRotation: break;
  }
  throw domain_error("a rotation rule has no interval derivative");
}

double LocalMap::offset_value(double delta, double length) const {
  switch (kind) {
    case Kind::Identity: return delta;
    case Kind::Affine: return slope * delta;
    case Kind::ArctanTranslate: return conjugated_translation_offset(b, b_target, shift, delta).value;
    case Kind::RigidRotation: break;
  }
  (void)length;
  throw domain_error("a rotation rule has no offset form");
}

double LocalMap::offset_derivative(double delta, double length) const {
  switch (kind) {
    case Kind::Identity: return 1.0;
    case Kind::Affine: return slope;
    case Kind::ArctanTranslate: return conjugated_translation_offset(b, b_target, shift, delta).first;
    case Kind::RigidRotation: break;
  }
  (void)length;
  throw domain_error("a rotation rule has no offset form");
}

double LocalMap::offset_second_derivative(double delta, double length) const {
  switch (kind) {
    case Kind::Identity:
    case Kind::Affine: return 0.0;
    case Kind::ArctanTranslate: return conjugated_translation_offset(b, b_target, shift, delta).second;
    case Kind::RigidRotation: break;
  }
  (void)length;
  throw domain_error("a rotation rule has no offset form");
}

LocalMap LocalMap::inverse() const {
  LocalMap m = *this;
  switch (kind) {
    case Kind::Identity: break;
    case Kind::Affine:
      m.slope = 1.0 / slope;
      m.source_center = offset;
      m.offset = source_center;
      break;
    case Kind::ArctanTranslate:
      std::swap(m.b, m.b_target);
      std::swap(m.source_center, m.target_center);
      m.shift = -shift;
      break;
    case Kind::RigidRotation: m.angle = -angle; break;
  }
  return m;
}

std::string local_map_kind_name(LocalMap::Kind k) {
  switch (k) {
    case LocalMap::Kind::Identity: return "identity";
    case LocalMap::Kind::Affine: return "affine";
    case LocalMap::Kind::ArctanTranslate: return "arctan_translate";
    case LocalMap::Kind::RigidRotation: return "rigid_rotation";
  }
  return "identity";
}

LocalMap::Kind local_map_kind_from_name(const std::string& name) {
  for (auto k : {LocalMap::Kind::Identity, LocalMap::Kind::Affine, LocalMap::Kind::ArctanTranslate,
                 LocalMap::Kind::RigidRotation})
    if (local_map_kind_name(k) == name) return k;
  throw config_error("unknown local map kind '" + name + "'");
}

// ---------------------------------------------------------------------------

PiecewiseHomeo::PiecewiseHomeo(std::shared_ptr<const IntervalFamily> family,
                               std::vector<std::optional<Piece>> pieces, LocalMap complement)
    : family_(std::move(family)), pieces_(std::move(pieces)), complement_(complement) {
  if (!family_) throw config_error("piecewise map needs an interval family");
  if (pieces_.size() != family_->size())
    throw config_error("piecewise map has " + std::to_string(pieces_.size()) + " pieces for " +
                       std::to_string(family_->size()) + " intervals");
  if (complement_.kind != LocalMap::Kind::Identity && complement_.kind != LocalMap::Kind::RigidRotation)
    throw config_error("complement rule must be identity or a rigid rotation");
  targets_.resize(pieces_.size());
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (!pieces_[i]) continue;
    auto t = family_->find(pieces_[i]->target);
    if (!t) throw config_error("piece for " + family_->item(i).label.to_string() + " targets unknown label " +
                               pieces_[i]->target.to_string());
    if (pieces_[i]->map.kind == LocalMap::Kind::RigidRotation)
      throw config_error("interval pieces cannot be rotation rules");
    targets_[i] = *t;
  }
}

double PiecewiseHomeo::evaluate(double x) const {
  const IntervalFamily& fam = *family_;
  if (!std::isfinite(x)) throw domain_error("cannot evaluate at a non-finite point");
  long long deck = 0;
  const double r = fam.reduce(x, deck);
  fam.require_in_domain(x);
  const double period = fam.periodic() ? fam.extent() : 0.0;
  auto lift = [&](double y, std::int64_t shift) { return y + static_cast<double>(deck + shift) * period; };
  auto escape = [&](std::size_t i) {
    return domain_error("interval " + fam.item(i).label.to_string() + " has no image inside the window");
  };

  if (auto k = fam.locate(r)) {
    const auto& p = pieces_[*k];
    if (!p) throw escape(*k);
    return lift(p->map.value(r), p->deck_shift);
  }

  const std::size_t k = fam.count_before(r);
  const bool null_complement = fam.complement_total() <= 1e-12 * std::max(1.0, fam.extent());
  if (k > 0 && (null_complement || r == fam.item(k - 1).right())) {
    if (pieces_[k - 1]) return lift(fam.item(*targets_[k - 1]).right(), pieces_[k - 1]->deck_shift);
    if (!null_complement) throw escape(k - 1);
  }
  if (null_complement && k < fam.size()) {
    if (pieces_[k]) return lift(fam.item(*targets_[k]).position, pieces_[k]->deck_shift);
    throw escape(k);
  }
  if (null_complement && fam.size() > 0) throw escape(fam.size() - 1);

  if (complement_.kind == LocalMap::Kind::Identity) return x;
  return fam.expand(fam.collapse(x) + complement_.angle);
}

PiecewiseHomeo PiecewiseHomeo::inverse() const {
  std::vector<std::optional<Piece>> inv(pieces_.size());
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (!pieces_[i]) continue;
    const std::size_t j = *targets_[i];
    if (inv[j]) throw config_error("two intervals map onto " + family_->item(j).label.to_string());
    inv[j] = Piece{family_->item(i).label, -pieces_[i]->deck_shift, pieces_[i]->map.inverse()};
  }
  return PiecewiseHomeo(family_, std::move(inv), complement_.inverse());
}

void PiecewiseHomeo::validate() const {
  const IntervalFamily& fam = *family_;
  std::vector<bool> hit(fam.size(), false);
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (!pieces_[i]) continue;
    const std::size_t j = *targets_[i];
    if (hit[j]) throw config_error("two intervals map onto " + fam.item(j).label.to_string());
    hit[j] = true;
    const Interval& a = fam.item(i);
    const Interval& b = fam.item(j);
    const LocalMap& m = pieces_[i]->map;
    const double lo = m.offset_value(0.0, a.length);
    const double hi = m.offset_value(a.length, a.length);
    const double left_abs = m.value(a.position) - b.position;
    const double tol = 1e-12 * std::max(1.0, std::abs(b.position) + b.length);
    if (std::abs(lo) > 1e-12 * b.length || std::abs(hi - b.length) > 1e-12 * b.length || std::abs(left_abs) > tol) {
      std::ostringstream os;
      os.precision(17);
      os << "local map of " << a.label.to_string() << " does not send it onto " << b.label.to_string()
         << " (endpoint offsets " << lo << ", " << hi << " vs length " << b.length << ")";
      throw config_error(os.str());
    }
    if (m.kind == LocalMap::Kind::Identity && i != j)
      throw config_error("identity piece must map an interval to itself");
  }
}

// ---------------------------------------------------------------------------

LineAction::LineAction(std::string example, GroupSpec spec, std::shared_ptr<const IntervalFamily> family,
                       std::vector<std::string> names, std::vector<PiecewiseHomeo> maps,
                       std::map<std::string, double> params)
    : example_(std::move(example)),
      spec_(std::move(spec)),
      family_(std::move(family)),
      names_(std::move(names)),
      maps_(std::move(maps)),
      params_(std::move(params)) {
  if (names_.size() != maps_.size()) throw config_error("action map names do not match maps");
  if (maps_.size() < spec_.generators.size())
    throw config_error("action realizes fewer maps than the group has generators");
  for (std::size_t i = 0; i < spec_.generators.size(); ++i)
    if (names_[i] != spec_.generator_names[i])
      throw config_error("action map '" + names_[i] + "' does not match generator '" + spec_.generator_names[i] + "'");
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (names_[i] == names_[j]) throw config_error("duplicate action map name '" + names_[i] + "'");
  inverses_.reserve(maps_.size());
  for (const auto& m : maps_) {
    if (m.family_ptr().get() != family_.get() && !(m.family().size() == family_->size()))
      throw config_error("action maps must share the action skeleton");
    m.validate();
    inverses_.push_back(m.inverse());
  }
}

std::size_t LineAction::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  throw config_error("action has no map named '" + name + "'");
}

std::vector<Letter> LineAction::letters() const {
  std::vector<Letter> out;
  for (std::size_t i = 0; i < spec_.generators.size(); ++i) {
    out.push_back({i, false});
    out.push_back({i, true});
  }
  return out;
}

Word LineAction::parse_word(const std::vector<std::string>& word) const {
  Word w;
  for (const std::string& tok : word) {
    const bool inv = tok.size() > 3 && tok.compare(tok.size() - 3, 3, "^-1") == 0;
    w.push_back({index_of(inv ? tok.substr(0, tok.size() - 3) : tok), inv});
  }
  return w;
}

double LineAction::evaluate(const Word& w, double x) const {
  for (std::size_t i = w.size(); i-- > 0;) {
    if (w[i].generator >= maps_.size()) throw config_error("word refers to an unknown map");
    try {
      x = map(w[i]).evaluate(x);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Domain) throw;
      const Word applied(w.begin() + static_cast<std::ptrdiff_t>(i), w.end());
      throw domain_error("evaluation escaped at '" + word_to_string(applied, names_) + "': " + e.what());
    }
  }
  return x;
}

double LineAction::evaluate(const std::vector<std::string>& word, double x) const {
  return evaluate(parse_word(word), x);
}

std::optional<std::size_t> LineAction::label_image(const Word& w, std::size_t item) const {
  std::optional<std::size_t> cur = item;
  for (std::size_t i = w.size(); i-- > 0 && cur;) cur = map(w[i]).target_index(*cur);
  return cur;
}

// ---------------------------------------------------------------------------

namespace {

Label index_label(const IndexVector& v) {
  Label l;
  for (const Integer& c : v.coords) l.coords.push_back(static_cast<std::int64_t>(c));
  return l;
}

IndexVector label_index(const Label& l) {
  IndexVector v;
  for (std::int64_t c : l.coords) v.coords.emplace_back(c);
  return v;
}

PiecewiseHomeo matrix_map(const std::shared_ptr<const IntervalFamily>& fam, const GroupElement& m,
                          std::int64_t window) {
  std::vector<std::optional<Piece>> pieces(fam->size());
  for (std::size_t i = 0; i < fam->size(); ++i) {
    const IndexVector img = act_on_index(m, label_index(fam->item(i).label));
    const bool inside = std::all_of(img.coords.begin(), img.coords.end(),
                                    [&](const Integer& c) { return c >= -window && c <= window; });
    if (!inside) continue;
    const Label target = index_label(img);
    pieces[i] = Piece{target, 0, LocalMap::affine_between(fam->item(i), fam->item(fam->index_of(target)))};
  }
  return PiecewiseHomeo(fam, std::move(pieces));
}

double frac(double v) { return v - std::floor(v); }

}  // namespace

LineAction farb_franks_action(const GroupSpec& spec, std::int64_t window, std::optional<LengthAssignment> base) {
  spec.validate();
  if (spec.family == Family::Subgroup) throw config_error("matrix actions need a built-in unitriangular family");
  if (window < 1) throw config_error("window must be at least 1 for a matrix action");
  const std::size_t n = spec.dimension;
  const LengthAssignment lengths = base ? *base : geometric_index_lengths(n, window, 0.5);
  auto fam = std::make_shared<const IntervalFamily>(build_lex_layout(n, window, lengths));

  std::vector<std::string> names = spec.generator_names;
  std::vector<PiecewiseHomeo> maps;
  for (const auto& g : spec.generators) maps.push_back(matrix_map(fam, g, window));
  if (spec.family == Family::Heisenberg) {
    names.push_back("h");
    maps.push_back(matrix_map(fam, commutator(spec.generators[0], spec.generators[1]), window));
  }
  for (const auto& m : maps) {
    bool any = false;
    for (std::size_t i = 0; i < fam->size() && !any; ++i) any = m.target_index(i).has_value();
    if (!any) throw config_error("window too small: some generator moves every interval out of the window");
  }
  std::map<std::string, double> params{{"window", static_cast<double>(window)},
                                       {"base_ratio", base ? 0.0 : 0.5}};
  return LineAction("farb_franks", spec, fam, std::move(names), std::move(maps), std::move(params));
}

LineAction denjoy_action(const DenjoyParams& p) {
  if (!(p.theta > 0.0 && p.theta < 1.0)) throw config_error("rotation angle theta must lie in (0, 1)");
  if (!(p.scale >= 0.0) || !std::isfinite(p.scale)) throw config_error("gap scale must be finite and non-negative");
  if (p.orbit < 0) throw config_error("orbit length must be non-negative");
  if (p.orbit > 10'000'000) throw resource_error("orbit length exceeds the layout budget");
  // The schedule c/(n^2+1) sums to c * pi * coth(pi) over Z.
  constexpr double pi = 3.141592653589793;
  const double full = p.scale * pi / std::tanh(pi);
  if (full > 1.0 + 1e-12) throw config_error("gap schedule does not fit in a circle of circumference 1");

  struct Slot {
    std::int64_t n;
    double angle;
    double length;
  };
  std::vector<Slot> slots;
  const std::int64_t lo = -(p.orbit / 2);
  if (p.scale > 0.0)
    for (std::int64_t n = lo; n < lo + p.orbit; ++n)
      slots.push_back({n, frac(static_cast<double>(n) * p.theta),
                       p.scale / (static_cast<double>(n) * static_cast<double>(n) + 1.0)});
  std::sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) { return a.angle < b.angle; });

  CompensatedSum realized;
  for (const Slot& s : slots) realized.add(s.length);
  const double mass = 1.0 - realized.value();
  if (!(mass > 0.0)) throw config_error("realized gap lengths fill the whole circle");

  std::vector<Interval> items;
  CompensatedSum before;
  for (const Slot& s : slots) {
    items.push_back({Label{{s.n}}, before.value() + mass * s.angle, s.length});
    before.add(s.length);
  }
  auto fam = std::make_shared<const IntervalFamily>(ManifoldKind::Circle, 0.0, 1.0, std::move(items), mass);

  std::vector<std::optional<Piece>> f(fam->size()), t(fam->size());
  for (std::size_t i = 0; i < fam->size(); ++i) {
    const Interval& it = fam->item(i);
    const std::int64_t n = it.label.coords[0];
    t[i] = Piece{it.label, 1, LocalMap::identity()};
    if (auto j = fam->find(Label{{n + 1}})) {
      const std::int64_t wrap = frac(static_cast<double>(n) * p.theta) + p.theta >= 1.0 ? 1 : 0;
      f[i] = Piece{fam->item(*j).label, wrap, LocalMap::affine_between(it, fam->item(*j))};
    }
  }
  GroupSpec spec = GroupSpec::free_abelian(2);
  spec.generator_names = {"f", "T"};
  std::vector<PiecewiseHomeo> maps{PiecewiseHomeo(fam, std::move(f), LocalMap::rotation(p.theta)),
                                   PiecewiseHomeo(fam, std::move(t), LocalMap::rotation(1.0))};
  std::map<std::string, double> params{{"theta", p.theta},
                                       {"scale", p.scale},
                                       {"orbit", static_cast<double>(p.orbit)},
                                       {"tail_mass", mass}};
  return LineAction("denjoy", spec, fam, {"f", "T"}, std::move(maps), std::move(params));
}

LineAction unroll_denjoy(const LineAction& circle, std::int64_t decks) {
  if (circle.example() != "denjoy") throw config_error("only the circle construction can be unrolled");
  if (decks < 0) throw config_error("deck window must be non-negative");
  const IntervalFamily& base = circle.family();
  const double theta = circle.params().at("theta");

  std::vector<Interval> items;
  for (std::int64_t k = -decks; k <= decks; ++k)
    for (const Interval& it : base.items())
      items.push_back({Label{{it.label.coords[0], k}}, it.position + static_cast<double>(k), it.length});
  auto fam = std::make_shared<const IntervalFamily>(ManifoldKind::Line, static_cast<double>(-decks),
                                                    static_cast<double>(decks + 1), std::move(items),
                                                    base.complement_unit());

  const PiecewiseHomeo& fc = circle.map(0);
  std::vector<std::optional<Piece>> f(fam->size()), t(fam->size());
  for (std::size_t i = 0; i < fam->size(); ++i) {
    const Interval& it = fam->item(i);
    const std::int64_t n = it.label.coords[0], k = it.label.coords[1];
    const std::size_t bi = base.index_of(Label{{n}});
    if (auto j = fam->find(Label{{n, k + 1}})) t[i] = Piece{fam->item(*j).label, 0, LocalMap::affine_between(it, fam->item(*j))};
    if (const auto& pc = fc.piece(bi)) {
      if (auto j = fam->find(Label{{pc->target.coords[0], k + pc->deck_shift}}))
        f[i] = Piece{fam->item(*j).label, 0, LocalMap::affine_between(it, fam->item(*j))};
    }
  }
  std::vector<PiecewiseHomeo> maps{PiecewiseHomeo(fam, std::move(f), LocalMap::rotation(theta)),
                                   PiecewiseHomeo(fam, std::move(t), LocalMap::rotation(1.0))};
  auto params = circle.params();
  params["decks"] = static_cast<double>(decks);
  return LineAction("denjoy_line", circle.spec(), fam, {"f", "T"}, std::move(maps), std::move(params));
}

LineAction heisenberg_mixed_action(const MixedParams& p) {
  if (p.window < 1) throw config_error("mixed action window must be at least 1");
  if (!(p.slot_length > 0.0) || !(p.block_decay >= 0.0))
    throw config_error("slot length must be positive and block decay non-negative");
  if (!std::isfinite(p.central_shift) || !std::isfinite(p.base_shift) || p.central_shift == 0.0)
    throw config_error("translation amounts must be finite and the central one non-zero");
  const std::int64_t w = p.window;
  auto piece_length = [&](std::int64_t k) { return 1.0 / (1.0 + p.block_decay * static_cast<double>(k < 0 ? -k : k)); };

  std::vector<Interval> items;
  CompensatedSum cursor;
  for (std::int64_t k = -w; k <= w; ++k) {
    for (std::int64_t m = -w; m <= w; ++m) {
      items.push_back({Label{{k, m}}, cursor.value(), p.slot_length});
      cursor.add(p.slot_length);
    }
    items.push_back({Label{{k}}, cursor.value(), piece_length(k)});
    cursor.add(piece_length(k));
  }
  auto fam = std::make_shared<const IntervalFamily>(ManifoldKind::Line, 0.0, cursor.value(), std::move(items));

  std::vector<std::optional<Piece>> f(fam->size()), g(fam->size()), h(fam->size());
  for (std::size_t i = 0; i < fam->size(); ++i) {
    const Interval& it = fam->item(i);
    const std::int64_t k = it.label.coords[0];
    if (it.label.coords.size() == 2) {
      const std::int64_t m = it.label.coords[1];
      if (auto j = fam->find(Label{{k + 1, m}})) f[i] = Piece{fam->item(*j).label, 0, LocalMap::affine_between(it, fam->item(*j))};
      if (auto j = fam->find(Label{{k, m + 1}})) g[i] = Piece{fam->item(*j).label, 0, LocalMap::affine_between(it, fam->item(*j))};
      h[i] = Piece{it.label, 0, LocalMap::identity()};
    } else {
      if (auto j = fam->find(Label{{k + 1}})) f[i] = Piece{fam->item(*j).label, 0, LocalMap::arctan_between(it, fam->item(*j), 0.0)};
      const double s = p.base_shift - static_cast<double>(k) * p.central_shift;
      g[i] = Piece{it.label, 0, LocalMap::arctan_between(it, it, s)};
      h[i] = Piece{it.label, 0, LocalMap::arctan_between(it, it, p.central_shift)};
    }
  }
  std::vector<PiecewiseHomeo> maps{PiecewiseHomeo(fam, std::move(f)), PiecewiseHomeo(fam, std::move(g)),
                                   PiecewiseHomeo(fam, std::move(h))};
  std::map<std::string, double> params{{"window", static_cast<double>(w)},
                                       {"slot_length", p.slot_length},
                                       {"block_decay", p.block_decay},
                                       {"central_shift", p.central_shift},
                                       {"base_shift", p.base_shift}};
  return LineAction("mixed", GroupSpec::heisenberg(), fam, {"f", "g", "h"}, std::move(maps), std::move(params));
}

LineAction z1_action(std::int64_t window) {
  if (window < 1) throw config_error("window must be at least 1");
  std::vector<Interval> items;
  for (std::int64_t n = -window; n <= window; ++n) items.push_back({Label{{n}}, static_cast<double>(n), 1.0});
  auto fam = std::make_shared<const IntervalFamily>(ManifoldKind::Line, static_cast<double>(-window),
                                                    static_cast<double>(window + 1), std::move(items));
  std::vector<std::optional<Piece>> t(fam->size());
  for (std::size_t i = 0; i + 1 < fam->size(); ++i)
    t[i] = Piece{fam->item(i + 1).label, 0, LocalMap::affine_between(fam->item(i), fam->item(i + 1))};
  GroupSpec spec = GroupSpec::free_abelian(1);
  spec.generator_names = {"T"};
  return LineAction("z1", spec, fam, {"T"}, {PiecewiseHomeo(fam, std::move(t))},
                    {{"window", static_cast<double>(window)}});
}

LineAction trivial_action() {
  auto fam = std::make_shared<const IntervalFamily>(ManifoldKind::Line, 0.0, 1.0,
                                                    std::vector<Interval>{{Label{{0}}, 0.0, 1.0}});
  GroupSpec spec = GroupSpec::subgroup(GroupSpec::free_abelian(1), {}, {});
  spec.lcs_ranks = {0};
  return LineAction("trivial", spec, fam, {}, {}, {});
}

}  // namespace nilsmooth
