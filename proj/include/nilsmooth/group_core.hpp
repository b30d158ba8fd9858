#pragma once

// Exact arithmetic in lower unitriangular integer matrix groups, word
// metrics, growth and distortion.
//
// Conventions: matrices act on column vectors from the left, and
// compose(g, h) is the matrix product g*h, i.e. "apply h, then g". A word
// [l1, l2, ..., lk] denotes the product l1*l2*...*lk, so its rightmost letter
// acts first.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace nilsmooth {

using Integer = boost::multiprecision::cpp_int;

class GroupElement {
 public:
  GroupElement() = default;

  static GroupElement identity(std::size_t n);
  /// E + value * e_{row,col}, 1-based indices with row > col.
  static GroupElement elementary(std::size_t n, std::size_t row, std::size_t col,
                                 const Integer& value = 1);
  /// Validates the unitriangular shape; throws a config error otherwise.
  static GroupElement from_rows(const std::vector<std::vector<Integer>>& rows);

  std::size_t dimension() const { return n_; }
  const Integer& at(std::size_t row, std::size_t col) const { return entries_[row * n_ + col]; }
  bool is_identity() const;
  std::vector<std::vector<Integer>> rows() const;
  std::string to_string() const;
  std::size_t hash() const;

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.n_ == b.n_ && a.entries_ == b.entries_;
  }

 private:
  friend GroupElement compose(const GroupElement& g, const GroupElement& h);
  std::size_t n_ = 0;
  std::vector<Integer> entries_;  // row-major
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const { return g.hash(); }
};

GroupElement compose(const GroupElement& g, const GroupElement& h);
GroupElement invert(const GroupElement& g);
/// g^-1 h^-1 g h.
GroupElement commutator(const GroupElement& g, const GroupElement& h);
GroupElement power(const GroupElement& g, long long exponent);

/// One letter of a word: a generator or its inverse.
struct Letter {
  std::size_t generator = 0;
  bool inverse = false;

  /// Position in the symmetric generating set: g0, g0^-1, g1, g1^-1, ...
  std::size_t index() const { return 2 * generator + (inverse ? 1 : 0); }
  Letter inverted() const { return {generator, !inverse}; }
  friend auto operator<=>(const Letter& a, const Letter& b) { return a.index() <=> b.index(); }
  friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

Word inverse_word(const Word& w);
Word commutator_word(const Word& u, const Word& v);
std::string word_to_string(const Word& w, const std::vector<std::string>& names);

enum class Family { FreeAbelian, Heisenberg, Unitriangular, Subgroup };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

struct GroupSpec {
  Family family = Family::FreeAbelian;
  /// k for FreeAbelian(k), n for Unitriangular(n), 3 for Heisenberg.
  std::size_t rank = 0;
  std::size_t dimension = 0;
  std::vector<GroupElement> generators;
  std::vector<std::string> generator_names;
  std::vector<std::size_t> lcs_ranks;

  static GroupSpec free_abelian(std::size_t k);
  static GroupSpec heisenberg();
  static GroupSpec unitriangular(std::size_t n);
  /// Subgroup generated by the given elements of `parent`.
  static GroupSpec subgroup(const GroupSpec& parent, std::vector<GroupElement> gens,
                            std::vector<std::string> names = {});

  /// Letters of the symmetric closure, in tie-breaking order.
  std::vector<Letter> symmetric_letters() const;
  GroupElement element(Letter l) const;
  GroupElement evaluate(const Word& w) const;
  std::size_t generator_index(const std::string& name) const;

  /// Throws a config error when an invariant fails.
  void validate() const;
};

struct Budget {
  /// Maximum number of elements a single enumeration may hold.
  std::size_t max_elements = 10'000'000;
  /// Default budget, overridable through NILSMOOTH_BUDGET.
  static Budget from_environment();
};

/// Breadth-first ball around the identity. Element order is BFS order, which
/// is also the lexicographic order of the least minimum-length words.
class WordBall {
 public:
  std::size_t radius() const { return radius_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<GroupElement>& elements() const { return elements_; }
  std::size_t norm_at(std::size_t i) const { return norms_[i]; }
  std::optional<std::size_t> norm(const GroupElement& g) const;
  std::optional<std::size_t> index_of(const GroupElement& g) const;
  /// Lexicographically least word of minimum length for element i.
  Word word_at(std::size_t i) const;
  /// sphere[n] = number of elements of norm exactly n.
  std::vector<std::size_t> sphere_sizes() const;

 private:
  friend WordBall ball(const GroupSpec& spec, std::size_t radius, const Budget& budget);
  std::size_t radius_ = 0;
  std::vector<GroupElement> elements_;
  std::vector<std::size_t> norms_;
  std::vector<std::size_t> parents_;
  std::vector<Letter> last_letter_;
  std::unordered_map<GroupElement, std::size_t, GroupElementHash> index_;
};

WordBall ball(const GroupSpec& spec, std::size_t radius, const Budget& budget = {});

/// |g|_S if at most `cap`, std::nullopt when the norm exceeds the cap.
std::optional<std::size_t> word_norm(const GroupElement& g, const GroupSpec& spec,
                                     std::size_t cap, const Budget& budget = {});

std::size_t growth_function(const GroupSpec& spec, std::size_t n, const Budget& budget = {});

/// Homogeneous dimension sum_i i * r_i.
std::size_t growth_degree(const GroupSpec& spec);

struct DistortionResult {
  /// Diameter in the subgroup word metric; empty when the cap was exceeded.
  std::optional<std::size_t> diameter;
  std::size_t members = 0;     // |B_S(n) ∩ H| found
  std::size_t sub_radius = 0;  // radius of the subgroup ball that was used
};

/// diam_T(B_S(n) ∩ H). The subgroup ball grows until its outermost shell
/// misses B_S(n); if that does not happen by `sub_cap` the result is capped.
DistortionResult distortion(const GroupSpec& spec, const GroupSpec& sub, std::size_t n,
                            std::size_t sub_cap = 256, const Budget& budget = {});

struct IndexVector {
  std::vector<Integer> coords;

  std::size_t dimension() const { return coords.size(); }
  friend bool operator==(const IndexVector&, const IndexVector&) = default;
};

IndexVector act_on_index(const GroupElement& m, const IndexVector& a);
std::strong_ordering lex_compare(const IndexVector& a, const IndexVector& b);

}  // namespace nilsmooth
