#pragma once

// Fixed sets, rotation and translation numbers, orbit density, and the
// decomposition of an action into permuted trivial intervals and minimal
// pieces.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nilsmooth/action_builder.hpp"

namespace nilsmooth {

/// |g(x) - x| <= kFixedTolerance * (1 + |x|) marks a numerical fixed point.
inline constexpr double kFixedTolerance = 1e-10;

struct FixedPiece {
  double left = 0.0;
  double right = 0.0;  // equal to left for an isolated point
  bool is_point() const { return right == left; }
};

/// Fixed intervals read off identity pieces (and identity complements),
/// plus isolated fixed points bracketed on a grid of `resolution` points per
/// unit length and refined by bisection. Abutting pieces are merged.
std::vector<FixedPiece> fixed_set(const PiecewiseHomeo& g, double resolution = 1e4);

struct CommutatorRegion {
  /// Per item: fixed by every commutator tried, and its whole orbit is too.
  std::vector<bool> fixed_items;
  bool complement_fixed = true;
  std::size_t commutators = 0;
  std::size_t undetermined = 0;  // item checks skipped because a word left the window
};

/// Fixed region of [G, G] within the window: items fixed by all commutators
/// [u, v] of reduced words of length at most cap/2, closed up to the largest
/// G-invariant subset on labels.
CommutatorRegion commutator_fixed_region(const LineAction& action, std::size_t cap = 2);

struct RotationEstimate {
  double value = 0.0;
  std::size_t iterations = 0;
  double residual = 0.0;  // |a_{2N}/2N - a_N/N|
};

RotationEstimate translation_number(const std::function<double(double)>& f, double x0, std::size_t n);
RotationEstimate translation_number(const PiecewiseHomeo& f, double x0, std::size_t n);
/// Rotation number of a circle map evaluated on its lift; value in [0, 1).
RotationEstimate rotation_number(const std::function<double(double)>& lift, double period, double x0,
                                 std::size_t n);
RotationEstimate rotation_number(const PiecewiseHomeo& f, double x0, std::size_t n);

struct MinimalityVerdict {
  bool dense = false;  // consistent with minimal at this budget; never a proof
  double epsilon = 0.0;
  double gap_left = 0.0;  // largest empty gap, relative to the region
  double gap_right = 0.0;
  std::size_t orbit_points = 0;
};

/// Orbit of the region midpoint under the maps and their inverses, explored
/// breadth first and deduplicated on a grid of 1e-10 of the region. Points outside the
/// region are kept for further exploration but do not count towards density;
/// maps that leave the window are skipped.
MinimalityVerdict minimality_test(const std::vector<std::function<double(double)>>& maps, double left,
                                  double right, double epsilon, std::size_t budget);
MinimalityVerdict minimality_test(const LineAction& action, double left, double right, double epsilon = 1e-2,
                                  std::size_t budget = 20000);

enum class ClassKind { Trivial, Minimal };

struct OrbitClass {
  ClassKind kind = ClassKind::Trivial;
  std::size_t id = 0;       // numbered separately per kind, left to right
  std::size_t depth = 0;    // 0 inside Fix([G,G]), 1 after restricting to a stabilizer
  bool complement = false;  // the positive-measure complement, in collapse coordinates
  std::vector<Label> members;  // members[0] is the base interval
  std::vector<Word> carriers;  // carriers[j] sends the base onto members[j]
  std::vector<std::size_t> word_lengths;  // label-graph distance from the base
  std::vector<Word> stabilizer;           // loops at the base (Schreier generators)
  /// Minimal classes: translation of each stabilizer generator in the arctan
  /// frame of the base (for the complement: collapse shift of each generator).
  std::vector<double> translations;
  bool arctan_normal_form = false;
  MinimalityVerdict minimality;
};

struct ResidualPiece {
  Label label;
  std::string reason;
};

struct Decomposition {
  std::vector<OrbitClass> i_classes;
  std::vector<OrbitClass> m_classes;
  std::vector<ResidualPiece> residual;
  double residual_measure = 0.0;
  double window_measure = 0.0;
  std::size_t depth = 0;
  std::size_t depth_limit = 0;
  std::size_t commutators = 0;
};

struct DecomposeOptions {
  std::size_t commutator_cap = 2;
  double epsilon = 1e-2;
  std::size_t orbit_budget = 20000;
  std::optional<std::size_t> depth_limit;  // default: growth degree
};

Decomposition decompose(const LineAction& action, const DecomposeOptions& options = {});

/// Action of the stabilizer of one class member on that single interval.
LineAction restrict_to_member(const LineAction& action, const Decomposition& dec, ClassKind kind,
                              std::size_t class_id, std::size_t member);

struct StructureCheck {
  std::string name;
  bool pass = true;
  std::vector<std::string> failures;
};

struct StructureReport {
  std::vector<StructureCheck> checks;  // disjointness, invariance, trivial, abelian, coverage
  bool all_pass() const;
  std::string text() const;
};

StructureReport check_structure(const Decomposition& dec, const LineAction& action, double tail_bound = 0.0);

}  // namespace nilsmooth
