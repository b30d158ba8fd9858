#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nilsmooth/arctan.hpp"
#include "nilsmooth/error.hpp"

using namespace nilsmooth;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Phi, MapsLineOntoCenteredInterval) {
  EXPECT_DOUBLE_EQ(phi(2.0, 0.0), 0.0);
  EXPECT_NEAR(phi(2.0, 1e12), 1.0, 1e-12);
  EXPECT_NEAR(phi(2.0, -1e12), -1.0, 1e-12);
  for (double x : {-3.0, -0.1, 0.4, 7.0}) {
    EXPECT_NEAR(phi_inverse(0.7, phi(0.7, x)), x, 1e-12 * (1 + std::abs(x)));
    const double h = 1e-6;
    EXPECT_NEAR(phi_derivative(0.7, x), (phi(0.7, x + h) - phi(0.7, x - h)) / (2 * h), 1e-8);
    EXPECT_NEAR(phi_second_derivative(0.7, x),
                (phi_derivative(0.7, x + h) - phi_derivative(0.7, x - h)) / (2 * h), 1e-6);
  }
  EXPECT_THROW(phi_inverse(1.0, 0.5), Error);
}

TEST(PhiAB, IdentityWhenLengthsAgree) {
  for (double x : {-0.49, -0.2, 0.0, 0.3, 0.499}) {
    const Jet j = phi_ab(1.0, 1.0, x);
    EXPECT_NEAR(j.value, x, 1e-15);
    EXPECT_NEAR(j.first, 1.0, 1e-12);
    EXPECT_NEAR(j.second, 0.0, 1e-9);
  }
}

TEST(PhiAB, GroupoidLawOnRandomTriples) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> len(0.01, 3.0), u(-0.4999, 0.4999);
  for (int k = 0; k < 1000; ++k) {
    const double a = len(rng), b = len(rng), c = len(rng), x = u(rng) * a;
    const double via = phi_ab(b, c, phi_ab(a, b, x).value).value;
    EXPECT_NEAR(via, phi_ab(a, c, x).value, 1e-10 * c);
  }
}

TEST(PhiAB, MatchesDefinitionThroughPhi) {
  for (double x : {-0.3, 0.1, 0.45}) EXPECT_NEAR(phi_ab(1.0, 0.5, x).value, phi(0.5, phi_inverse(1.0, x)), 1e-14);
}

TEST(PhiAB, EndpointDerivativeIsOne) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> len(0.01, 3.0);
  for (int k = 0; k < 200; ++k) {
    const double a = len(rng), b = len(rng);
    EXPECT_NEAR(conjugated_translation_offset(a, b, 0.0, 0.0).first, 1.0, 1e-12);
    EXPECT_NEAR(conjugated_translation_offset(a, b, 0.0, a).first, 1.0, 1e-12);
    EXPECT_NEAR(conjugated_translation_offset(a, b, 0.0, 0.0).value, 0.0, 1e-15);
    EXPECT_NEAR(conjugated_translation_offset(a, b, 0.0, a).value, b, 1e-15 * b);
  }
}

TEST(ConjugatedTranslation, CenteredAndOffsetFormsAgree) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> len(0.05, 2.0), shift(-3.0, 3.0), u(0.0005, 0.9995);
  for (int k = 0; k < 1000; ++k) {
    const double b = len(rng), b2 = len(rng), t = shift(rng), d = u(rng) * b;
    const Jet c = conjugated_translation(b, b2, t, d - 0.5 * b);
    const Jet o = conjugated_translation_offset(b, b2, t, d);
    EXPECT_NEAR(o.value, c.value + 0.5 * b2, 1e-12 * b2);
    EXPECT_NEAR(o.first, c.first, 1e-9 * std::abs(c.first));
    EXPECT_NEAR(o.second, c.second, 1e-7 * (std::abs(c.second) + 1.0 / b));
  }
}

TEST(ConjugatedTranslation, MatchesClosedForm) {
  // g(x) = (b'/pi) atan((b'/b) tan(pi x / b) + b' t)
  const double b = 0.8, b2 = 1.3, t = 0.7;
  for (double x : {-0.35, -0.1, 0.0, 0.2, 0.39}) {
    const double expect = b2 / kPi * std::atan(b2 / b * std::tan(kPi * x / b) + b2 * t);
    EXPECT_NEAR(conjugated_translation(b, b2, t, x).value, expect, 1e-14);
  }
}

TEST(ConjugatedTranslation, ConjugatesTranslation) {
  const double b = 0.6, b2 = 0.9, t = 1.7;
  for (double x : {-0.25, 0.0, 0.2}) {
    const double y = conjugated_translation(b, b2, t, x).value;
    EXPECT_NEAR(phi_inverse(b2, y), phi_inverse(b, x) + t, 1e-9);
  }
}

TEST(ConjugatedTranslation, DerivativesMatchFiniteDifferencesEverywhere) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> len(0.01, 2.0), shift(-2.0, 2.0), u(0.0002, 0.9998);
  for (int k = 0; k < 1000; ++k) {
    const double b = len(rng), b2 = len(rng), t = shift(rng), d = u(rng) * b;
    const double h1 = 1e-5 * b, h2 = 1e-4 * b;
    const Jet j = conjugated_translation_offset(b, b2, t, d);
    const double fd1 = (conjugated_translation_offset(b, b2, t, d + h1).value -
                        conjugated_translation_offset(b, b2, t, d - h1).value) / (2 * h1);
    const double fd2 = (conjugated_translation_offset(b, b2, t, d + h2).first -
                        conjugated_translation_offset(b, b2, t, d - h2).first) / (2 * h2);
    EXPECT_LT(std::abs(fd1 - j.first) / std::abs(j.first), 1e-6);
    EXPECT_LT(std::abs(fd2 - j.second) / std::max(std::abs(j.second), 0.01 * kPi / b), 1e-4);
  }
}

TEST(ConjugatedTranslation, TangentToIdentityAtBothEnds) {
  for (double t : {-2.0, 0.0, 0.5, 3.0}) {
    EXPECT_NEAR(conjugated_translation_offset(0.3, 0.2, t, 0.0).first, 1.0, 1e-12);
    EXPECT_NEAR(conjugated_translation_offset(0.3, 0.2, t, 0.3).first, 1.0, 1e-12);
  }
}

TEST(ConjugatedTranslation, TinyIntervalsKeepRelativePrecision) {
  const double b = 1e-40, b2 = 3e-41;
  const Jet j = conjugated_translation_offset(b, b2, 0.0, 0.5 * b);
  EXPECT_NEAR(j.value, 0.5 * b2, 1e-12 * b2);
  EXPECT_NEAR(j.first, (b2 / b) * (b2 / b), 1e-9);
}
