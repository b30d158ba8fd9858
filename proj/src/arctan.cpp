#include "nilsmooth/arctan.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "nilsmooth/error.hpp"

namespace nilsmooth {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double a, const char* what) {
  if (!(a > 0.0) || !std::isfinite(a)) throw config_error(std::string(what) + " must be finite and positive");
}

}  // namespace

double phi(double a, double x) {
  require_positive(a, "phi scale");
  return a / kPi * std::atan(a * x);
}

double phi_derivative(double a, double x) {
  require_positive(a, "phi scale");
  const double ax = a * x;
  return a * a / (kPi * (1.0 + ax * ax));
}

double phi_second_derivative(double a, double x) {
  require_positive(a, "phi scale");
  const double ax = a * x;
  const double q = 1.0 + ax * ax;
  return -2.0 * a * a * a * ax / (kPi * q * q);
}

double phi_inverse(double a, double y) {
  require_positive(a, "phi scale");
  if (!(std::abs(y) < 0.5 * a)) {
    std::ostringstream os;
    os << "phi_inverse: " << y << " outside (-" << 0.5 * a << ", " << 0.5 * a << ")";
    throw domain_error(os.str());
  }
  return std::tan(kPi * y / a) / a;
}

Jet phi_ab(double a, double b, double x) { return conjugated_translation(a, b, 0.0, x); }

Jet conjugated_translation(double b, double b_target, double t, double x) {
  Jet j = conjugated_translation_offset(b, b_target, t, x + 0.5 * b);
  j.value -= 0.5 * b_target;
  return j;
}

Jet conjugated_translation_offset(double b, double b2, double t, double delta) {
  require_positive(b, "source length");
  require_positive(b2, "target length");
  if (!std::isfinite(t)) throw config_error("translation amount must be finite");
  const double slack = 1e-12 * b;
  if (delta < 0.0 && delta >= -slack) delta = 0.0;
  if (delta > b && delta <= b + slack) delta = b;
  if (!(delta >= 0.0 && delta <= b)) {
    std::ostringstream os;
    os.precision(17);
    os << "conjugated translation: offset " << delta << " outside [0, " << b << "]";
    throw domain_error(os.str());
  }
  const double ratio = b2 / b;             // K'
  const double k = ratio * ratio;          // K
  const double scale2 = 2.0 * kPi * b2 * b2 / (b * b * b);
  const double shift = b2 * t;
  const double left = delta;
  const double right = b - delta;
  Jet out;

  if (std::min(left, right) < kEndpointWindow * b) {
    // tan(pi x / b) = s / tau with tau = tan(pi * dist / b).
    const bool at_left = left <= right;
    const double s = at_left ? -1.0 : 1.0;
    const double tau = std::tan(kPi * (at_left ? left : right) / b);
    const double p = s * ratio + shift * tau;
    const double q = tau * tau + p * p;
    out.value = at_left ? b2 / kPi * std::atan2(tau, -p) : b2 - b2 / kPi * std::atan2(tau, p);
    out.first = k * (1.0 + tau * tau) / q;
    out.second = scale2 * (1.0 + tau * tau) * (s * tau + s * p * shift - p * ratio * tau) / (q * q);
    return out;
  }

  const double tn = std::tan(kPi * (delta - 0.5 * b) / b);
  const double sec2 = 1.0 + tn * tn;
  const double a = ratio * tn + shift;
  const double qa = 1.0 + a * a;
  out.value = 0.5 * b2 + b2 / kPi * std::atan(a);
  out.first = k * sec2 / qa;
  out.second = scale2 * sec2 * (tn * qa - a * ratio * sec2) / (qa * qa);
  return out;
}

}  // namespace nilsmooth
