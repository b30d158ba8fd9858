#pragma once

// Ordered families of disjoint open intervals on a line, segment or circle,
// plus the length-reassigning homeomorphism between two such families.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace nilsmooth {

/// Opaque interval label: a small integer tuple (an index vector, an orbit
/// index, a (block, slot) pair, ...).
struct Label {
  std::vector<std::int64_t> coords;

  std::string to_string() const;
  static Label parse(const std::string& text);
  friend auto operator<=>(const Label&, const Label&) = default;
  friend bool operator==(const Label&, const Label&) = default;
};

struct LabelHash {
  std::size_t operator()(const Label& l) const;
};

enum class ManifoldKind { Line, Circle, Segment };

std::string manifold_name(ManifoldKind k);
ManifoldKind manifold_from_name(const std::string& name);

struct Interval {
  Label label;
  double position = 0.0;  // left endpoint
  double length = 0.0;

  double right() const { return position + length; }
  double center() const { return position + 0.5 * length; }
  bool contains(double x) const { return x > position && x < right(); }
};

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v);
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// Intervals sorted left to right inside the window [start, end]. On a circle
/// the window is one period [start, start + circumference) and evaluation
/// happens on the universal cover.
///
/// Anything not covered by an item is the complement. For families whose
/// intervals abut, the complement is a set of isolated gap points; otherwise
/// it carries positive measure and a "collapse" coordinate that measures it
/// in units of `complement_unit`.
class IntervalFamily {
 public:
  IntervalFamily() = default;
  IntervalFamily(ManifoldKind manifold, double start, double end, std::vector<Interval> items,
                 double complement_unit = 0.0);

  ManifoldKind manifold() const { return manifold_; }
  double start() const { return start_; }
  double end() const { return end_; }
  double extent() const { return end_ - start_; }
  bool periodic() const { return manifold_ == ManifoldKind::Circle; }
  const std::vector<Interval>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  const Interval& item(std::size_t i) const { return items_[i]; }
  std::optional<std::size_t> find(const Label& label) const;
  std::size_t index_of(const Label& label) const;  // throws if missing

  double total_length() const { return total_length_; }
  double complement_total() const { return extent() - total_length_; }
  double complement_unit() const { return complement_unit_; }

  /// Reduces x to the base period. Returns the deck shift k with x = r + k*extent.
  double reduce(double x, long long& deck) const;
  /// Index of the item whose half-open span [left, right) holds the
  /// (reduced) point, if any.
  std::optional<std::size_t> locate(double reduced_x) const;
  /// Complement measure of [start, x] (x in the base window).
  double complement_before(double reduced_x) const;
  /// Number of items lying entirely left of x (x in the base window).
  std::size_t count_before(double reduced_x) const;
  /// Sum of item lengths lying entirely left of x (x in the base window).
  double items_before(double reduced_x) const { return prefix_lengths_[count_before(reduced_x)]; }
  /// Sum of the lengths of the first k items.
  double prefix_length(std::size_t k) const { return prefix_lengths_[k]; }

  /// Complement measure in collapse units; periodic on circles.
  double collapse(double x) const;
  /// Inverse of collapse on the complement. Points of collapse coordinate
  /// that sit on an interval are sent to its left endpoint.
  double expand(double y) const;

  /// Throws a domain error unless x lies in the window (non-periodic only).
  void require_in_domain(double x) const;

 private:
  ManifoldKind manifold_ = ManifoldKind::Line;
  double start_ = 0.0;
  double end_ = 0.0;
  std::vector<Interval> items_;
  std::vector<double> prefix_lengths_;  // prefix_lengths_[k] = sum of lengths of items < k
  double total_length_ = 0.0;
  double complement_unit_ = 0.0;
  std::unordered_map<Label, std::size_t, LabelHash> index_;
};

struct LengthAssignment {
  std::unordered_map<Label, double, LabelHash> lengths;
  /// Certified bound on the total length of intervals outside the window.
  double tail_bound = 0.0;

  double at(const Label& l) const;
  /// Throws unless every length is finite and positive.
  void validate() const;
};

/// Assignment with every index in [-W, W]^n at length ratio^{|a|_1}. Its tail
/// bound is the exact tail ((1+r)/(1-r))^n - (window sum).
LengthAssignment geometric_index_lengths(std::size_t n, std::int64_t window, double ratio);
LengthAssignment uniform_index_lengths(std::size_t n, std::int64_t window, double length);

/// All index vectors of [-W, W]^n in lexicographic order.
std::vector<Label> lex_window(std::size_t n, std::int64_t window);

/// Intervals indexed by [-W, W]^n placed left to right in lexicographic
/// order, abutting at single gap points, starting at 0.
IntervalFamily build_lex_layout(std::size_t n, std::int64_t window, const LengthAssignment& base);

/// Homeomorphism that is affine on every interval (slope new/old length) and
/// rescales the complement by a constant factor. The target complement
/// measure is the assignment's tail bound; when the source complement is a
/// set of gap points the map is the cumulative-length map.
class LengthHomeo {
 public:
  LengthHomeo() = default;
  LengthHomeo(IntervalFamily source, const LengthAssignment& target_lengths);

  const IntervalFamily& source() const { return source_; }
  const IntervalFamily& target() const { return target_; }
  double complement_scale() const { return complement_scale_; }

  double evaluate(double x) const;
  double invert(double y) const;

 private:
  static double transfer(const IntervalFamily& from, const IntervalFamily& to, double scale, double x);
  IntervalFamily source_;
  IntervalFamily target_;
  double complement_scale_ = 0.0;
};

LengthHomeo length_homeomorphism(const IntervalFamily& family, const LengthAssignment& lengths);

}  // namespace nilsmooth
