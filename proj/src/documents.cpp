#include "nilsmooth/documents.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "nilsmooth/error.hpp"

namespace nilsmooth {

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& problem) {
  throw config_error("schema error: field '" + path + "' " + problem);
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string join(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const Json& need(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) schema_error(path.empty() ? "<root>" : path, "must be an object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(join(path, key), "is missing");
  return *it;
}

double num(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = need(j, key, path);
  if (!v.is_number()) schema_error(join(path, key), "must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) schema_error(join(path, key), "must be finite");
  return d;
}

std::int64_t integer(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = need(j, key, path);
  if (!v.is_number_integer()) schema_error(join(path, key), "must be an integer");
  return v.get<std::int64_t>();
}

std::size_t count(const Json& j, const std::string& key, const std::string& path) {
  const std::int64_t v = integer(j, key, path);
  if (v < 0) schema_error(join(path, key), "must be non-negative");
  return static_cast<std::size_t>(v);
}

bool flag(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = need(j, key, path);
  if (!v.is_boolean()) schema_error(join(path, key), "must be a boolean");
  return v.get<bool>();
}

std::string text(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = need(j, key, path);
  if (!v.is_string()) schema_error(join(path, key), "must be a string");
  return v.get<std::string>();
}

const Json& array(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = need(j, key, path);
  if (!v.is_array()) schema_error(join(path, key), "must be an array");
  return v;
}

void expect_schema(const Json& doc, const char* schema) {
  if (text(doc, "schema", "") != schema) schema_error("schema", std::string("must be '") + schema + "'");
}

Label label_at(const Json& j, const std::string& key, const std::string& path) {
  const std::string s = text(j, key, path);
  try {
    return Label::parse(s);
  } catch (const Error&) {
    schema_error(join(path, key), "is not a label: '" + s + "'");
  }
}

template <class F>
auto rethrow_with(const std::string& path, F f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Config || std::string(e.what()).rfind("schema error", 0) == 0) throw;
    schema_error(path, std::string("is invalid: ") + e.what());
  }
}

Json integer_json(const Integer& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

Integer integer_from(const Json& v, const std::string& path) {
  if (v.is_number_integer()) return Integer(v.get<std::int64_t>());
  if (v.is_string()) {
    try {
      return Integer(v.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  schema_error(path, "must be an integer");
}

Json word_json(const Word& w) {
  Json a = Json::array();
  for (const Letter& l : w) a.push_back(l.inverse ? -static_cast<std::int64_t>(l.generator + 1) : static_cast<std::int64_t>(l.generator + 1));
  return a;
}

Word word_value(const Json& a, const std::string& path) {
  if (!a.is_array()) schema_error(path, "must be an array");
  Word w;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_number_integer() || a[i].get<std::int64_t>() == 0)
      schema_error(join(path, i), "must be a non-zero signed generator number");
    const std::int64_t v = a[i].get<std::int64_t>();
    w.push_back({static_cast<std::size_t>(std::abs(v) - 1), v < 0});
  }
  return w;
}

Word word_from(const Json& j, const std::string& key, const std::string& path) {
  return word_value(need(j, key, path), join(path, key));
}

Json local_map_json(const LocalMap& m) {
  Json j;
  j["kind"] = local_map_kind_name(m.kind);
  switch (m.kind) {
    case LocalMap::Kind::Identity:
      break;
    case LocalMap::Kind::Affine:
      j["slope"] = m.slope;
      j["offset"] = m.offset;
      j["source_center"] = m.source_center;
      break;
    case LocalMap::Kind::ArctanTranslate:
      j["b"] = m.b;
      j["b_target"] = m.b_target;
      j["shift"] = m.shift;
      j["source_center"] = m.source_center;
      j["target_center"] = m.target_center;
      break;
    case LocalMap::Kind::RigidRotation:
      j["angle"] = m.angle;
      break;
  }
  return j;
}

LocalMap local_map_from(const Json& j, const std::string& path) {
  const std::string kind = text(j, "kind", path);
  LocalMap m;
  try {
    m.kind = local_map_kind_from_name(kind);
  } catch (const Error&) {
    schema_error(join(path, "kind"), "has unknown value '" + kind + "'");
  }
  switch (m.kind) {
    case LocalMap::Kind::Identity:
      break;
    case LocalMap::Kind::Affine:
      m.slope = num(j, "slope", path);
      if (!(m.slope > 0.0)) schema_error(join(path, "slope"), "must be positive");
      m.offset = num(j, "offset", path);
      m.source_center = num(j, "source_center", path);
      break;
    case LocalMap::Kind::ArctanTranslate:
      m.b = num(j, "b", path);
      m.b_target = num(j, "b_target", path);
      if (!(m.b > 0.0)) schema_error(join(path, "b"), "must be positive");
      if (!(m.b_target > 0.0)) schema_error(join(path, "b_target"), "must be positive");
      m.shift = num(j, "shift", path);
      m.source_center = num(j, "source_center", path);
      m.target_center = num(j, "target_center", path);
      break;
    case LocalMap::Kind::RigidRotation:
      m.angle = num(j, "angle", path);
      break;
  }
  return m;
}

Json params_json(const std::map<std::string, double>& params) {
  Json j = Json::object();
  for (const auto& [k, v] : params) j[k] = v;
  return j;
}

std::map<std::string, double> params_from(const Json& j, const std::string& key, const std::string& path) {
  const Json& o = need(j, key, path);
  if (!o.is_object()) schema_error(join(path, key), "must be an object");
  std::map<std::string, double> out;
  for (auto it = o.begin(); it != o.end(); ++it) out[it.key()] = num(o, it.key(), join(path, key));
  return out;
}

Json class_json(const OrbitClass& c) {
  Json j;
  j["kind"] = c.kind == ClassKind::Trivial ? "trivial" : "minimal";
  j["id"] = c.id;
  j["depth"] = c.depth;
  j["complement"] = c.complement;
  Json members = Json::array(), carriers = Json::array(), stab = Json::array();
  for (const Label& l : c.members) members.push_back(l.to_string());
  for (const Word& w : c.carriers) carriers.push_back(word_json(w));
  for (const Word& w : c.stabilizer) stab.push_back(word_json(w));
  j["members"] = members;
  j["carriers"] = carriers;
  j["word_lengths"] = c.word_lengths;
  j["stabilizer"] = stab;
  j["translations"] = c.translations;
  j["arctan_normal_form"] = c.arctan_normal_form;
  j["minimality"] = {{"dense", c.minimality.dense},
                     {"epsilon", c.minimality.epsilon},
                     {"gap_left", c.minimality.gap_left},
                     {"gap_right", c.minimality.gap_right},
                     {"orbit_points", c.minimality.orbit_points}};
  return j;
}

OrbitClass class_from(const Json& j, const std::string& path, ClassKind expected) {
  OrbitClass c;
  const std::string kind = text(j, "kind", path);
  if (kind != (expected == ClassKind::Trivial ? "trivial" : "minimal"))
    schema_error(join(path, "kind"), "does not match its list");
  c.kind = expected;
  c.id = count(j, "id", path);
  c.depth = count(j, "depth", path);
  c.complement = flag(j, "complement", path);
  const Json& members = array(j, "members", path);
  for (std::size_t i = 0; i < members.size(); ++i) {
    const std::string p = join(join(path, "members"), i);
    if (!members[i].is_string()) schema_error(p, "must be a string");
    try {
      c.members.push_back(Label::parse(members[i].get<std::string>()));
    } catch (const Error&) {
      schema_error(p, "is not a label");
    }
  }
  const Json& carriers = array(j, "carriers", path);
  for (std::size_t i = 0; i < carriers.size(); ++i)
    c.carriers.push_back(word_value(carriers[i], join(join(path, "carriers"), i)));
  const Json& lengths = array(j, "word_lengths", path);
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (!lengths[i].is_number_unsigned()) schema_error(join(join(path, "word_lengths"), i), "must be a count");
    c.word_lengths.push_back(lengths[i].get<std::size_t>());
  }
  const Json& stab = array(j, "stabilizer", path);
  for (std::size_t i = 0; i < stab.size(); ++i)
    c.stabilizer.push_back(word_value(stab[i], join(join(path, "stabilizer"), i)));
  const Json& tr = array(j, "translations", path);
  for (std::size_t i = 0; i < tr.size(); ++i) {
    if (!tr[i].is_number()) schema_error(join(join(path, "translations"), i), "must be a number");
    c.translations.push_back(tr[i].get<double>());
  }
  c.arctan_normal_form = flag(j, "arctan_normal_form", path);
  const std::string mp = join(path, "minimality");
  const Json& m = need(j, "minimality", path);
  c.minimality.dense = flag(m, "dense", mp);
  c.minimality.epsilon = num(m, "epsilon", mp);
  c.minimality.gap_left = num(m, "gap_left", mp);
  c.minimality.gap_right = num(m, "gap_right", mp);
  c.minimality.orbit_points = count(m, "orbit_points", mp);
  if (c.carriers.size() != c.members.size()) schema_error(join(path, "carriers"), "must have one word per member");
  if (c.word_lengths.size() != c.members.size())
    schema_error(join(path, "word_lengths"), "must have one entry per member");
  return c;
}

}  // namespace

Json to_document(const GroupSpec& spec) {
  Json j;
  j["schema"] = kGroupSpecSchema;
  j["family"] = family_name(spec.family);
  j["rank"] = spec.rank;
  j["dimension"] = spec.dimension;
  j["generator_names"] = spec.generator_names;
  Json gens = Json::array();
  for (const GroupElement& g : spec.generators) {
    Json rows = Json::array();
    for (const auto& row : g.rows()) {
      Json r = Json::array();
      for (const Integer& v : row) r.push_back(integer_json(v));
      rows.push_back(r);
    }
    gens.push_back(rows);
  }
  j["generators"] = gens;
  j["lcs_ranks"] = spec.lcs_ranks;
  return j;
}

GroupSpec groupspec_from_document(const Json& doc) {
  expect_schema(doc, kGroupSpecSchema);
  GroupSpec spec;
  const std::string fam = text(doc, "family", "");
  try {
    spec.family = family_from_name(fam);
  } catch (const Error&) {
    schema_error("family", "has unknown value '" + fam + "'");
  }
  spec.rank = count(doc, "rank", "");
  spec.dimension = count(doc, "dimension", "");
  const Json& names = array(doc, "generator_names", "");
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!names[i].is_string()) schema_error(join("generator_names", i), "must be a string");
    spec.generator_names.push_back(names[i].get<std::string>());
  }
  const Json& gens = array(doc, "generators", "");
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const std::string gp = join("generators", g);
    if (!gens[g].is_array()) schema_error(gp, "must be an array of rows");
    std::vector<std::vector<Integer>> rows;
    for (std::size_t r = 0; r < gens[g].size(); ++r) {
      const std::string rp = join(gp, r);
      if (!gens[g][r].is_array()) schema_error(rp, "must be an array");
      std::vector<Integer> row;
      for (std::size_t c = 0; c < gens[g][r].size(); ++c) row.push_back(integer_from(gens[g][r][c], join(rp, c)));
      rows.push_back(std::move(row));
    }
    spec.generators.push_back(rethrow_with(gp, [&] { return GroupElement::from_rows(rows); }));
  }
  if (names.size() != gens.size())
    schema_error("generator_names", "has " + std::to_string(names.size()) + " entries for " +
                                        std::to_string(gens.size()) + " generators");
  const Json& lcs = array(doc, "lcs_ranks", "");
  for (std::size_t i = 0; i < lcs.size(); ++i) {
    if (!lcs[i].is_number_unsigned()) schema_error(join("lcs_ranks", i), "must be a count");
    spec.lcs_ranks.push_back(lcs[i].get<std::size_t>());
  }
  rethrow_with("generators", [&] {
    spec.validate();
    return 0;
  });
  return spec;
}

Json to_document(const IntervalFamily& family, const LengthAssignment* lengths) {
  Json j;
  j["schema"] = kLayoutSchema;
  j["manifold"] = manifold_name(family.manifold());
  j["start"] = family.start();
  j["end"] = family.end();
  j["complement_unit"] = family.complement_unit();
  Json items = Json::array();
  for (const Interval& it : family.items())
    items.push_back({{"label", it.label.to_string()}, {"position", it.position}, {"length", it.length}});
  j["intervals"] = items;
  if (lengths) {
    Json entries = Json::array();
    for (const Interval& it : family.items())
      if (auto f = lengths->lengths.find(it.label); f != lengths->lengths.end())
        entries.push_back({{"label", it.label.to_string()}, {"length", f->second}});
    j["lengths"] = {{"tail_bound", lengths->tail_bound}, {"entries", entries}};
  }
  return j;
}

IntervalFamily layout_from_document(const Json& doc, LengthAssignment* lengths) {
  expect_schema(doc, kLayoutSchema);
  const std::string manifold = text(doc, "manifold", "");
  ManifoldKind kind;
  try {
    kind = manifold_from_name(manifold);
  } catch (const Error&) {
    schema_error("manifold", "has unknown value '" + manifold + "'");
  }
  const double start = num(doc, "start", "");
  const double end = num(doc, "end", "");
  const double unit = num(doc, "complement_unit", "");
  const Json& items = array(doc, "intervals", "");
  std::vector<Interval> out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string p = join("intervals", i);
    out.push_back({label_at(items[i], "label", p), num(items[i], "position", p), num(items[i], "length", p)});
    if (!(out.back().length > 0.0)) schema_error(join(p, "length"), "must be positive");
  }
  IntervalFamily fam =
      rethrow_with("intervals", [&] { return IntervalFamily(kind, start, end, std::move(out), unit); });
  if (lengths) {
    *lengths = {};
    if (doc.contains("lengths")) {
      const Json& l = doc["lengths"];
      lengths->tail_bound = num(l, "tail_bound", "lengths");
      const Json& entries = array(l, "entries", "lengths");
      for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::string p = join("lengths.entries", i);
        lengths->lengths[label_at(entries[i], "label", p)] = num(entries[i], "length", p);
      }
      rethrow_with("lengths", [&] {
        lengths->validate();
        return 0;
      });
    }
  }
  return fam;
}

Json to_document(const LineAction& action) {
  Json j;
  j["schema"] = kActionSchema;
  j["example"] = action.example();
  j["params"] = params_json(action.params());
  j["group"] = to_document(action.spec());
  j["layout"] = to_document(action.family());
  const IntervalFamily& fam = action.family();
  Json maps = Json::array();
  for (std::size_t mi = 0; mi < action.map_count(); ++mi) {
    const PiecewiseHomeo& m = action.map(mi);
    Json pieces = Json::array();
    for (std::size_t i = 0; i < fam.size(); ++i)
      if (const auto& p = m.piece(i))
        pieces.push_back({{"source", fam.item(i).label.to_string()},
                          {"target", p->target.to_string()},
                          {"deck_shift", p->deck_shift},
                          {"map", local_map_json(p->map)}});
    maps.push_back({{"name", action.names()[mi]}, {"complement", local_map_json(m.complement())}, {"pieces", pieces}});
  }
  j["maps"] = maps;
  return j;
}

LineAction action_from_document(const Json& doc) {
  expect_schema(doc, kActionSchema);
  const std::string example = text(doc, "example", "");
  auto params = params_from(doc, "params", "");
  GroupSpec spec = rethrow_with("group", [&] {
    try {
      return groupspec_from_document(need(doc, "group", ""));
    } catch (const Error& e) {
      std::string w = e.what();
      const std::string key = "field '";
      if (auto at = w.find(key); at != std::string::npos) w.insert(at + key.size(), "group.");
      throw config_error(w);
    }
  });
  auto fam = std::make_shared<const IntervalFamily>([&] {
    try {
      return layout_from_document(need(doc, "layout", ""));
    } catch (const Error& e) {
      std::string w = e.what();
      const std::string key = "field '";
      if (auto at = w.find(key); at != std::string::npos) w.insert(at + key.size(), "layout.");
      throw config_error(w);
    }
  }());
  const Json& maps = array(doc, "maps", "");
  std::vector<std::string> names;
  std::vector<PiecewiseHomeo> homeos;
  for (std::size_t mi = 0; mi < maps.size(); ++mi) {
    const std::string mp = join("maps", mi);
    names.push_back(text(maps[mi], "name", mp));
    LocalMap complement = local_map_from(need(maps[mi], "complement", mp), join(mp, "complement"));
    std::vector<std::optional<Piece>> pieces(fam->size());
    const Json& list = array(maps[mi], "pieces", mp);
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string pp = join(join(mp, "pieces"), k);
      const Label src = label_at(list[k], "source", pp);
      const auto idx = fam->find(src);
      if (!idx) schema_error(join(pp, "source"), "names an interval missing from the layout");
      if (pieces[*idx]) schema_error(join(pp, "source"), "repeats an interval");
      Piece piece{label_at(list[k], "target", pp), integer(list[k], "deck_shift", pp),
                  local_map_from(need(list[k], "map", pp), join(pp, "map"))};
      if (!fam->find(piece.target)) schema_error(join(pp, "target"), "names an interval missing from the layout");
      pieces[*idx] = std::move(piece);
    }
    homeos.push_back(rethrow_with(mp, [&] { return PiecewiseHomeo(fam, std::move(pieces), complement); }));
  }
  return rethrow_with("maps", [&] {
    return LineAction(example, std::move(spec), fam, std::move(names), std::move(homeos), std::move(params));
  });
}

Json to_document(const Decomposition& dec) {
  Json j;
  j["schema"] = kDecompositionSchema;
  Json ic = Json::array(), mc = Json::array(), res = Json::array();
  for (const auto& c : dec.i_classes) ic.push_back(class_json(c));
  for (const auto& c : dec.m_classes) mc.push_back(class_json(c));
  for (const auto& r : dec.residual) res.push_back({{"label", r.label.to_string()}, {"reason", r.reason}});
  j["i_classes"] = ic;
  j["m_classes"] = mc;
  j["residual"] = res;
  j["residual_measure"] = dec.residual_measure;
  j["window_measure"] = dec.window_measure;
  j["depth"] = dec.depth;
  j["depth_limit"] = dec.depth_limit;
  j["commutators"] = dec.commutators;
  return j;
}

Decomposition decomposition_from_document(const Json& doc) {
  expect_schema(doc, kDecompositionSchema);
  Decomposition dec;
  const Json& ic = array(doc, "i_classes", "");
  for (std::size_t i = 0; i < ic.size(); ++i)
    dec.i_classes.push_back(class_from(ic[i], join("i_classes", i), ClassKind::Trivial));
  const Json& mc = array(doc, "m_classes", "");
  for (std::size_t i = 0; i < mc.size(); ++i)
    dec.m_classes.push_back(class_from(mc[i], join("m_classes", i), ClassKind::Minimal));
  const Json& res = array(doc, "residual", "");
  for (std::size_t i = 0; i < res.size(); ++i) {
    const std::string p = join("residual", i);
    dec.residual.push_back({label_at(res[i], "label", p), text(res[i], "reason", p)});
  }
  dec.residual_measure = num(doc, "residual_measure", "");
  dec.window_measure = num(doc, "window_measure", "");
  dec.depth = count(doc, "depth", "");
  dec.depth_limit = count(doc, "depth_limit", "");
  dec.commutators = count(doc, "commutators", "");
  return dec;
}

Json to_document(const Conjugacy& psi, const LineAction& source) {
  const IntervalFamily& fam = source.family();
  const IntervalFamily& tgt = psi.skeleton().target();
  Json j;
  j["schema"] = kConjugacySchema;
  j["example"] = source.example();
  j["complement_scale"] = psi.skeleton().complement_scale();
  j["target_start"] = tgt.start();
  j["target_end"] = tgt.end();
  j["tail_bound"] = tgt.complement_total();
  Json rows = Json::array();
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const auto& r = psi.roles()[i];
    Json row = {{"label", fam.item(i).label.to_string()},
                {"source_position", fam.item(i).position},
                {"source_length", fam.item(i).length},
                {"target_position", tgt.item(i).position},
                {"target_length", tgt.item(i).length},
                {"assigned", r.assigned}};
    if (r.assigned) {
      row["minimal"] = r.minimal;
      row["class_index"] = r.class_index;
      row["base"] = fam.item(r.base_item).label.to_string();
      row["back"] = word_json(r.back);
      row["base_new"] = r.base_new;
      row["new_length"] = r.new_length;
      row["kappa"] = r.kappa;
    }
    rows.push_back(row);
  }
  j["breakpoints"] = rows;
  return j;
}

Conjugacy conjugacy_from_document(const Json& doc, std::shared_ptr<const LineAction> source) {
  expect_schema(doc, kConjugacySchema);
  const IntervalFamily& fam = source->family();
  const Json& rows = array(doc, "breakpoints", "");
  if (rows.size() != fam.size()) schema_error("breakpoints", "must list every interval of the source layout");
  LengthAssignment lengths;
  lengths.tail_bound = num(doc, "tail_bound", "");
  std::vector<Conjugacy::Role> roles(fam.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string p = join("breakpoints", i);
    const Label l = label_at(rows[i], "label", p);
    if (l != fam.item(i).label) schema_error(join(p, "label"), "does not match the source layout order");
    const double len = num(rows[i], "target_length", p);
    if (!(len > 0.0)) schema_error(join(p, "target_length"), "must be positive");
    lengths.lengths[l] = len;
    auto& r = roles[i];
    r.assigned = flag(rows[i], "assigned", p);
    if (!r.assigned) continue;
    r.minimal = flag(rows[i], "minimal", p);
    r.class_index = count(rows[i], "class_index", p);
    const auto base = fam.find(label_at(rows[i], "base", p));
    if (!base) schema_error(join(p, "base"), "names an interval missing from the layout");
    r.base_item = *base;
    r.back = word_from(rows[i], "back", p);
    for (const Letter& letter : r.back)
      if (letter.generator >= source->map_count()) schema_error(join(p, "back"), "uses an unknown generator");
    r.base_new = num(rows[i], "base_new", p);
    r.new_length = num(rows[i], "new_length", p);
    r.kappa = num(rows[i], "kappa", p);
  }
  LengthHomeo skeleton = rethrow_with("breakpoints", [&] { return LengthHomeo(fam, lengths); });
  return Conjugacy(std::move(source), std::move(skeleton), std::move(roles));
}

std::string HolderReport::json_summary() const {
  Json j;
  j["alpha"] = alpha;
  j["global_norm"] = global_norm;
  j["pairs_per_interval"] = pairs_per_interval;
  j["rows"] = rows.size();
  std::map<std::string, double> per_map;
  double min_margin = std::numeric_limits<double>::infinity();
  std::size_t with_margin = 0;
  for (const HolderRow& r : rows) {
    per_map[r.map] = std::max(per_map[r.map], r.norm);
    if (!std::isnan(r.margin)) {
      min_margin = std::min(min_margin, r.margin);
      ++with_margin;
    }
  }
  j["max_norm_per_map"] = per_map;
  j["rows_with_margin"] = with_margin;
  j["min_margin"] = with_margin ? Json(min_margin) : Json(nullptr);
  return j.dump(2) + "\n";
}

Json read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw config_error("cannot parse '" + path + "': " + e.what());
  }
}

void write_document(const std::string& path, const Json& doc) { write_text(path, doc.dump(2) + "\n"); }

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw config_error("failed writing '" + path + "'");
}

}  // namespace nilsmooth
