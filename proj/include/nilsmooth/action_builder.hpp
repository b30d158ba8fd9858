#pragma once

// Group actions on the line and circle given by piecewise homeomorphisms over
// an interval skeleton, and the example constructions.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nilsmooth/group_core.hpp"
#include "nilsmooth/interval_system.hpp"

namespace nilsmooth {

/// A map between two intervals of the skeleton, or a rule on the complement.
struct LocalMap {
  enum class Kind { Identity, Affine, ArctanTranslate, RigidRotation };

  Kind kind = Kind::Identity;
  double slope = 1.0;   // Affine: y = offset + slope * (x - source_center)
  double offset = 0.0;
  double b = 1.0;       // ArctanTranslate: phi_{b'} T_t phi_b^{-1}, recentered
  double b_target = 1.0;
  double shift = 0.0;
  double source_center = 0.0;
  double target_center = 0.0;
  double angle = 0.0;   // RigidRotation, in collapse units

  static LocalMap identity() { return {}; }
  static LocalMap affine(double slope, double offset);
  /// Orientation-preserving affine map of `from` onto `to`.
  static LocalMap affine_between(const Interval& from, const Interval& to);
  static LocalMap arctan_between(const Interval& from, const Interval& to, double shift);
  static LocalMap rotation(double angle);

  /// Value and derivatives at a point of the source interval.
  double value(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;
  /// The map as offset-from-left-endpoint to offset-from-left-endpoint;
  /// `length` is the source length. Accurate for arbitrarily small intervals.
  double offset_value(double delta, double length) const;
  double offset_derivative(double delta, double length) const;
  double offset_second_derivative(double delta, double length) const;

  LocalMap inverse() const;
};

std::string local_map_kind_name(LocalMap::Kind k);
LocalMap::Kind local_map_kind_from_name(const std::string& name);

struct Piece {
  Label target;
  std::int64_t deck_shift = 0;  // periods added on a circle lift
  LocalMap map;
};

/// Homeomorphism described by where each interval goes plus a complement rule
/// (Identity or RigidRotation). Intervals without a piece have their image
/// outside the realized window; evaluating there is an error.
class PiecewiseHomeo {
 public:
  PiecewiseHomeo() = default;
  PiecewiseHomeo(std::shared_ptr<const IntervalFamily> family, std::vector<std::optional<Piece>> pieces,
                 LocalMap complement = LocalMap::identity());

  const IntervalFamily& family() const { return *family_; }
  const std::shared_ptr<const IntervalFamily>& family_ptr() const { return family_; }
  const std::optional<Piece>& piece(std::size_t i) const { return pieces_[i]; }
  /// Index of the image interval, if it lies in the window.
  std::optional<std::size_t> target_index(std::size_t i) const { return targets_[i]; }
  const LocalMap& complement() const { return complement_; }

  double evaluate(double x) const;
  PiecewiseHomeo inverse() const;
  /// Bijectivity on labels and endpoint matching (relative 1e-12). Throws.
  void validate() const;

 private:
  std::shared_ptr<const IntervalFamily> family_;
  std::vector<std::optional<Piece>> pieces_;
  std::vector<std::optional<std::size_t>> targets_;
  LocalMap complement_;
};

/// Named generators acting on one skeleton. The first `spec.generators.size()`
/// maps realize the group generators in order; further maps are named extras
/// (for instance the central element of the Heisenberg group).
class LineAction {
 public:
  LineAction() = default;
  LineAction(std::string example, GroupSpec spec, std::shared_ptr<const IntervalFamily> family,
             std::vector<std::string> names, std::vector<PiecewiseHomeo> maps,
             std::map<std::string, double> params = {});

  const std::string& example() const { return example_; }
  const GroupSpec& spec() const { return spec_; }
  const IntervalFamily& family() const { return *family_; }
  const std::shared_ptr<const IntervalFamily>& family_ptr() const { return family_; }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t map_count() const { return maps_.size(); }
  std::size_t generator_count() const { return spec_.generators.size(); }
  const PiecewiseHomeo& map(std::size_t i) const { return maps_[i]; }
  const PiecewiseHomeo& map(Letter l) const { return l.inverse ? inverses_[l.generator] : maps_[l.generator]; }
  std::size_t index_of(const std::string& name) const;
  const std::map<std::string, double>& params() const { return params_; }
  /// Letters of the group generators and their inverses (no extras).
  std::vector<Letter> letters() const;

  /// Rightmost letter acts first. Escapes report the applied suffix.
  double evaluate(const Word& w, double x) const;
  /// Word given as names, each optionally suffixed with "^-1".
  double evaluate(const std::vector<std::string>& word, double x) const;
  Word parse_word(const std::vector<std::string>& word) const;
  /// Label-level image of item i under a word, if it stays in the window.
  std::optional<std::size_t> label_image(const Word& w, std::size_t item) const;

 private:
  std::string example_;
  GroupSpec spec_;
  std::shared_ptr<const IntervalFamily> family_;
  std::vector<std::string> names_;
  std::vector<PiecewiseHomeo> maps_;
  std::vector<PiecewiseHomeo> inverses_;
  std::map<std::string, double> params_;
};

/// Sends I_a to I_{Ma} affinely over the lexicographic layout of [-W, W]^n.
/// Without a base assignment, lengths are 2^{-|a|_1}.
LineAction farb_franks_action(const GroupSpec& spec, std::int64_t window,
                              std::optional<LengthAssignment> base = std::nullopt);

struct DenjoyParams {
  double theta = 0.6180339887498949;  // (sqrt 5 - 1) / 2
  /// Gap lengths c / (n^2 + 1); the default makes the full schedule sum to 1.
  double scale = 0.31712325118991574;
  std::int64_t orbit = 64;  // realized intervals, n in [-orbit/2, orbit - orbit/2)
};

/// Circle homeomorphism with a wandering orbit of intervals inserted along
/// the orbit of the rotation by theta, together with the deck translation.
/// The circle has circumference 1 and is evaluated on its lift, so this is
/// the Z^2 action generated by the lifted map "f" and "T".
LineAction denjoy_action(const DenjoyParams& params);
/// Copies of the circle skeleton over the decks [-decks, decks] of the lift,
/// labelled (n, k), as an action on a bounded piece of the line.
LineAction unroll_denjoy(const LineAction& circle, std::int64_t decks);

struct MixedParams {
  std::int64_t window = 4;        // blocks k and slots m range over [-W, W]
  double slot_length = 1.0;
  double block_decay = 0.25;      // minimal piece of block k has length 1/(1 + decay*|k|)
  double central_shift = 1.0;     // translation of h in the arctan frame
  double base_shift = 1.4142135623730951;  // translation of g on block 0
};

/// Heisenberg action with, in each block, Z-indexed slots permuted by g and one
/// minimal piece on which g and h act as conjugated translations; f shifts
/// blocks. Generators f, g plus the extra h = [f, g].
LineAction heisenberg_mixed_action(const MixedParams& params);

/// Translation by one acting on the unit intervals (n, n+1), n in [-W, W].
LineAction z1_action(std::int64_t window);

/// The trivial group acting on a single interval.
LineAction trivial_action();

}  // namespace nilsmooth
