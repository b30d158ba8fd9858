#include "nilsmooth/group_core.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <sstream>

#include "nilsmooth/error.hpp"

namespace nilsmooth {

namespace {

void require_same_dimension(const GroupElement& g, const GroupElement& h, const char* op) {
  if (g.dimension() != h.dimension()) {
    std::ostringstream os;
    os << op << ": dimension mismatch (" << g.dimension() << " vs " << h.dimension() << ")";
    throw config_error(os.str());
  }
}

std::uint64_t low_bits(const Integer& v) {
  const Integer mag = v < 0 ? Integer(-v) : v;
  const auto low = static_cast<std::uint64_t>(mag & Integer(0xFFFFFFFFFFFFFFFFull));
  return v < 0 ? ~low : low;
}

}  // namespace

GroupElement GroupElement::identity(std::size_t n) {
  GroupElement g;
  g.n_ = n;
  g.entries_.assign(n * n, Integer(0));
  for (std::size_t i = 0; i < n; ++i) g.entries_[i * n + i] = 1;
  return g;
}

GroupElement GroupElement::elementary(std::size_t n, std::size_t row, std::size_t col,
                                      const Integer& value) {
  if (row < 1 || col < 1 || row > n || col > n || row <= col)
    throw config_error("elementary matrix needs 1 <= col < row <= n");
  GroupElement g = identity(n);
  g.entries_[(row - 1) * n + (col - 1)] = value;
  return g;
}

GroupElement GroupElement::from_rows(const std::vector<std::vector<Integer>>& rows) {
  const std::size_t n = rows.size();
  if (n == 0) throw config_error("group element must have positive dimension");
  GroupElement g = identity(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != n) throw config_error("group element matrix is not square");
    for (std::size_t c = 0; c < n; ++c) {
      const Integer& v = rows[r][c];
      if (r == c && v != 1) throw config_error("group element diagonal entry is not 1");
      if (c > r && v != 0) throw config_error("group element has a nonzero entry above the diagonal");
      g.entries_[r * n + c] = v;
    }
  }
  return g;
}

bool GroupElement::is_identity() const { return *this == identity(n_); }

std::vector<std::vector<Integer>> GroupElement::rows() const {
  std::vector<std::vector<Integer>> out(n_, std::vector<Integer>(n_));
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = 0; c < n_; ++c) out[r][c] = at(r, c);
  return out;
}

std::string GroupElement::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < n_; ++r) {
    os << (r ? "; " : "");
    for (std::size_t c = 0; c < n_; ++c) os << (c ? " " : "") << at(r, c);
  }
  os << ']';
  return os.str();
}

std::size_t GroupElement::hash() const {
  std::uint64_t h = 0x9E3779B97F4A7C15ull ^ n_;
  for (std::size_t r = 1; r < n_; ++r)
    for (std::size_t c = 0; c < r; ++c) {
      h ^= low_bits(at(r, c)) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    }
  return static_cast<std::size_t>(h);
}

GroupElement compose(const GroupElement& g, const GroupElement& h) {
  require_same_dimension(g, h, "compose");
  const std::size_t n = g.n_;
  GroupElement out = GroupElement::identity(n);
  // Lower unitriangular: (gh)_{rc} = sum_{c <= k <= r} g_{rk} h_{kc}.
  for (std::size_t r = 1; r < n; ++r)
    for (std::size_t c = 0; c < r; ++c) {
      Integer acc = 0;
      for (std::size_t k = c; k <= r; ++k) acc += g.at(r, k) * h.at(k, c);
      out.entries_[r * n + c] = acc;
    }
  return out;
}

GroupElement invert(const GroupElement& g) {
  // Forward substitution on g * x = I, column by column.
  const std::size_t n = g.dimension();
  std::vector<std::vector<Integer>> inv(n, std::vector<Integer>(n, 0));
  for (std::size_t c = 0; c < n; ++c) {
    inv[c][c] = 1;
    for (std::size_t r = c + 1; r < n; ++r) {
      Integer acc = 0;
      for (std::size_t k = c; k < r; ++k) acc += g.at(r, k) * inv[k][c];
      inv[r][c] = -acc;
    }
  }
  return GroupElement::from_rows(inv);
}

GroupElement commutator(const GroupElement& g, const GroupElement& h) {
  require_same_dimension(g, h, "commutator");
  return compose(compose(invert(g), invert(h)), compose(g, h));
}

GroupElement power(const GroupElement& g, long long exponent) {
  GroupElement base = exponent < 0 ? invert(g) : g;
  unsigned long long e = exponent < 0 ? static_cast<unsigned long long>(-exponent)
                                      : static_cast<unsigned long long>(exponent);
  GroupElement acc = GroupElement::identity(g.dimension());
  while (e) {
    if (e & 1ull) acc = compose(acc, base);
    base = compose(base, base);
    e >>= 1;
  }
  return acc;
}

Word inverse_word(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverted());
  return out;
}

Word commutator_word(const Word& u, const Word& v) {
  Word out = inverse_word(u);
  const Word vi = inverse_word(v);
  out.insert(out.end(), vi.begin(), vi.end());
  out.insert(out.end(), u.begin(), u.end());
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

std::string word_to_string(const Word& w, const std::vector<std::string>& names) {
  if (w.empty()) return "e";
  std::string out;
  for (const Letter& l : w) {
    if (!out.empty()) out += ' ';
    out += l.generator < names.size() ? names[l.generator] : "g" + std::to_string(l.generator);
    if (l.inverse) out += "^-1";
  }
  return out;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::FreeAbelian: return "free_abelian";
    case Family::Heisenberg: return "heisenberg";
    case Family::Unitriangular: return "unitriangular";
    case Family::Subgroup: return "subgroup";
  }
  return "unknown";
}

Family family_from_name(const std::string& name) {
  for (Family f : {Family::FreeAbelian, Family::Heisenberg, Family::Unitriangular, Family::Subgroup})
    if (family_name(f) == name) return f;
  throw config_error("unknown group family '" + name + "'");
}

GroupSpec GroupSpec::free_abelian(std::size_t k) {
  if (k == 0) throw config_error("free abelian rank must be positive");
  GroupSpec s;
  s.family = Family::FreeAbelian;
  s.rank = k;
  s.dimension = k + 1;
  for (std::size_t i = 0; i < k; ++i) {
    s.generators.push_back(GroupElement::elementary(k + 1, i + 2, 1));
    s.generator_names.push_back("t" + std::to_string(i + 1));
  }
  s.lcs_ranks = {k};
  return s;
}

GroupSpec GroupSpec::heisenberg() {
  GroupSpec s;
  s.family = Family::Heisenberg;
  s.rank = 3;
  s.dimension = 3;
  s.generators = {GroupElement::elementary(3, 2, 1), GroupElement::elementary(3, 3, 2)};
  s.generator_names = {"f", "g"};
  s.lcs_ranks = {2, 1};
  return s;
}

GroupSpec GroupSpec::unitriangular(std::size_t n) {
  if (n < 2) throw config_error("unitriangular dimension must be at least 2");
  GroupSpec s;
  s.family = Family::Unitriangular;
  s.rank = n;
  s.dimension = n;
  for (std::size_t i = 1; i < n; ++i) {
    s.generators.push_back(GroupElement::elementary(n, i + 1, i));
    s.generator_names.push_back("x" + std::to_string(i));
  }
  for (std::size_t i = 1; i < n; ++i) s.lcs_ranks.push_back(n - i);
  return s;
}

GroupSpec GroupSpec::subgroup(const GroupSpec& parent, std::vector<GroupElement> gens,
                              std::vector<std::string> names) {
  GroupSpec s;
  s.family = Family::Subgroup;
  s.rank = gens.size();
  s.dimension = parent.dimension;
  s.generators = std::move(gens);
  if (names.empty())
    for (std::size_t i = 0; i < s.generators.size(); ++i) names.push_back("s" + std::to_string(i + 1));
  s.generator_names = std::move(names);
  for (const auto& g : s.generators)
    if (g.dimension() != parent.dimension) throw config_error("subgroup generator has wrong dimension");
  return s;
}

std::vector<Letter> GroupSpec::symmetric_letters() const {
  std::vector<Letter> out;
  std::vector<GroupElement> seen;
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (bool inv : {false, true}) {
      GroupElement e = element({i, inv});
      if (e.is_identity() || std::find(seen.begin(), seen.end(), e) != seen.end()) continue;
      seen.push_back(std::move(e));
      out.push_back({i, inv});
    }
  return out;
}

GroupElement GroupSpec::element(Letter l) const {
  if (l.generator >= generators.size()) throw config_error("letter refers to an unknown generator");
  return l.inverse ? invert(generators[l.generator]) : generators[l.generator];
}

GroupElement GroupSpec::evaluate(const Word& w) const {
  GroupElement acc = GroupElement::identity(dimension);
  for (const Letter& l : w) acc = compose(acc, element(l));
  return acc;
}

std::size_t GroupSpec::generator_index(const std::string& name) const {
  for (std::size_t i = 0; i < generator_names.size(); ++i)
    if (generator_names[i] == name) return i;
  throw config_error("unknown generator '" + name + "'");
}

void GroupSpec::validate() const {
  if (dimension == 0) throw config_error("group dimension must be positive");
  if (generator_names.size() != generators.size())
    throw config_error("generator names do not match generators");
  for (const auto& g : generators) {
    if (g.dimension() != dimension) throw config_error("generator dimension mismatch");
    GroupElement::from_rows(g.rows());
  }
  switch (family) {
    case Family::FreeAbelian:
      if (lcs_ranks != std::vector<std::size_t>{rank}) throw config_error("free abelian lcs_ranks must be [k]");
      break;
    case Family::Heisenberg:
      if (lcs_ranks != std::vector<std::size_t>{2, 1}) throw config_error("heisenberg lcs_ranks must be [2,1]");
      break;
    default:
      break;
  }
}

Budget Budget::from_environment() {
  Budget b;
  if (const char* env = std::getenv("NILSMOOTH_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) b.max_elements = static_cast<std::size_t>(v);
  }
  return b;
}

std::optional<std::size_t> WordBall::norm(const GroupElement& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return norms_[it->second];
}

std::optional<std::size_t> WordBall::index_of(const GroupElement& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Word WordBall::word_at(std::size_t i) const {
  Word w;
  while (i != 0) {
    w.push_back(last_letter_[i]);
    i = parents_[i];
  }
  std::reverse(w.begin(), w.end());
  return w;
}

std::vector<std::size_t> WordBall::sphere_sizes() const {
  std::vector<std::size_t> out(radius_ + 1, 0);
  for (std::size_t n : norms_) ++out[n];
  return out;
}

WordBall ball(const GroupSpec& spec, std::size_t radius, const Budget& budget) {
  WordBall b;
  b.radius_ = radius;
  const auto letters = spec.symmetric_letters();
  std::vector<GroupElement> letter_elems;
  for (const Letter& l : letters) letter_elems.push_back(spec.element(l));

  auto add = [&](GroupElement g, std::size_t norm, std::size_t parent, Letter l) {
    if (b.elements_.size() >= budget.max_elements) {
      std::ostringstream os;
      os << "ball enumeration exceeded budget of " << budget.max_elements
         << " elements while completing radius " << norm << " (radius " << (norm ? norm - 1 : 0)
         << " was complete)";
      throw resource_error(os.str());
    }
    b.index_.emplace(g, b.elements_.size());
    b.elements_.push_back(std::move(g));
    b.norms_.push_back(norm);
    b.parents_.push_back(parent);
    b.last_letter_.push_back(l);
  };

  add(GroupElement::identity(spec.dimension), 0, 0, Letter{});
  std::size_t level_begin = 0;
  for (std::size_t r = 1; r <= radius; ++r) {
    const std::size_t level_end = b.elements_.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (std::size_t k = 0; k < letters.size(); ++k) {
        GroupElement next = compose(b.elements_[i], letter_elems[k]);
        if (b.index_.count(next)) continue;
        add(std::move(next), r, i, letters[k]);
      }
    }
    level_begin = level_end;
    if (level_begin == b.elements_.size()) break;  // finite group exhausted
  }
  return b;
}

std::optional<std::size_t> word_norm(const GroupElement& g, const GroupSpec& spec, std::size_t cap,
                                     const Budget& budget) {
  if (g.dimension() != spec.dimension) throw config_error("word_norm: dimension mismatch");
  if (g.is_identity()) return 0;
  return ball(spec, cap, budget).norm(g);
}

std::size_t growth_function(const GroupSpec& spec, std::size_t n, const Budget& budget) {
  return ball(spec, n, budget).size();
}

std::size_t growth_degree(const GroupSpec& spec) {
  if (spec.lcs_ranks.empty()) throw config_error("growth_degree: lower central series ranks missing");
  std::size_t d = 0;
  for (std::size_t i = 0; i < spec.lcs_ranks.size(); ++i) d += (i + 1) * spec.lcs_ranks[i];
  return d;
}

DistortionResult distortion(const GroupSpec& spec, const GroupSpec& sub, std::size_t n,
                            std::size_t sub_cap, const Budget& budget) {
  if (sub.dimension != spec.dimension) throw config_error("distortion: subgroup dimension mismatch");
  const WordBall ambient = ball(spec, n, budget);
  DistortionResult result;
  if (sub.generators.empty()) {
    result.diameter = 0;
    result.members = 1;
    return result;
  }

  std::size_t radius = std::min<std::size_t>(std::max<std::size_t>(n, 1), sub_cap);
  while (true) {
    const WordBall inner = ball(sub, radius, budget);
    std::vector<std::size_t> members;
    bool shell_hit = false;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (!ambient.norm(inner.elements()[i])) continue;
      members.push_back(i);
      if (inner.norm_at(i) == radius) shell_hit = true;
    }
    const bool exhausted = inner.size() == 0 || inner.sphere_sizes().back() == 0;
    if (shell_hit && !exhausted) {
      if (radius >= sub_cap) {
        result.members = members.size();
        result.sub_radius = radius;
        return result;
      }
      radius = std::min(sub_cap, radius * 2);
      continue;
    }
    // Pairwise distances need up to twice the membership radius.
    const WordBall pair_ball = ball(sub, std::min(sub_cap, 2 * radius), budget);
    std::size_t diam = 0;
    for (std::size_t a : members)
      for (std::size_t b : members) {
        if (b <= a) continue;
        const auto d = pair_ball.norm(compose(invert(inner.elements()[a]), inner.elements()[b]));
        if (!d) {
          result.members = members.size();
          result.sub_radius = pair_ball.radius();
          return result;
        }
        diam = std::max(diam, *d);
      }
    result.diameter = diam;
    result.members = members.size();
    result.sub_radius = radius;
    return result;
  }
}

IndexVector act_on_index(const GroupElement& m, const IndexVector& a) {
  const std::size_t n = m.dimension();
  if (a.dimension() != n) throw config_error("act_on_index: dimension mismatch");
  IndexVector out{std::vector<Integer>(n, 0)};
  for (std::size_t r = 0; r < n; ++r) {
    Integer acc = 0;
    for (std::size_t c = 0; c <= r; ++c) acc += m.at(r, c) * a.coords[c];
    out.coords[r] = acc;
  }
  return out;
}

std::strong_ordering lex_compare(const IndexVector& a, const IndexVector& b) {
  if (a.dimension() != b.dimension()) throw config_error("lex_compare: dimension mismatch");
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    if (a.coords[i] < b.coords[i]) return std::strong_ordering::less;
    if (b.coords[i] < a.coords[i]) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

}  // namespace nilsmooth
