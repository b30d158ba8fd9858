#pragma once

// The arctan groupoid: phi_a(x) = (a/pi) atan(a x) maps R onto (-a/2, a/2),
// phi_{a,b} = phi_b o phi_a^{-1}, and the conjugated translations
// phi_{b'} o T_t o phi_b^{-1} built from it.

namespace nilsmooth {

struct Jet {
  double value = 0.0;
  double first = 0.0;
  double second = 0.0;
};

double phi(double a, double x);
double phi_derivative(double a, double x);
double phi_second_derivative(double a, double x);
double phi_inverse(double a, double y);

/// phi_{a,b} on (-a/2, a/2), centered coordinates.
Jet phi_ab(double a, double b, double x);

/// phi_{b'} o T_t o phi_b^{-1} on (-b/2, b/2) in centered coordinates.
Jet conjugated_translation(double b, double b_target, double t, double x);

/// Same map in offset coordinates: delta in [0, b] is the distance from the
/// source left endpoint, the value is the distance from the target left
/// endpoint. Within 1e-3*b of an endpoint the tangent is rewritten through
/// tau = tan(pi*dist/b) so nothing overflows and endpoint values stay exact.
Jet conjugated_translation_offset(double b, double b_target, double t, double delta);

/// Window inside which the endpoint reformulation is used, relative to b.
inline constexpr double kEndpointWindow = 1e-3;

}  // namespace nilsmooth
