#pragma once

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>

namespace acsim {

/// Quadrature point on the reference triangle in barycentric coordinates;
/// weights sum to 1, so integral ~= area * sum w_q f(x_q).
struct TriQuadPoint {
  double l0, l1, l2;
  double w;
};

/// Midedge rule, exact for degree 2. Used for polynomial integrands.
inline std::span<const TriQuadPoint> tri_rule_deg2() {
  static const std::array<TriQuadPoint, 3> pts = {{
      {0.5, 0.5, 0.0, 1.0 / 3.0},
      {0.0, 0.5, 0.5, 1.0 / 3.0},
      {0.5, 0.0, 0.5, 1.0 / 3.0},
  }};
  return pts;
}

/// 7-point rule, exact for degree 5. Used whenever the integrand carries the
/// rational map coefficients beta or M.
inline std::span<const TriQuadPoint> tri_rule_deg5() {
  static const std::array<TriQuadPoint, 7> pts = [] {
    const double s15 = std::sqrt(15.0);
    const double b1 = (6.0 - s15) / 21.0, a1 = 1.0 - 2.0 * b1;
    const double b2 = (6.0 + s15) / 21.0, a2 = 1.0 - 2.0 * b2;
    const double w1 = (155.0 - s15) / 1200.0;
    const double w2 = (155.0 + s15) / 1200.0;
    return std::array<TriQuadPoint, 7>{{
        {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 9.0 / 40.0},
        {a1, b1, b1, w1},
        {b1, a1, b1, w1},
        {b1, b1, a1, w1},
        {a2, b2, b2, w2},
        {b2, a2, b2, w2},
        {b2, b2, a2, w2},
    }};
  }();
  return pts;
}

/// Gauss-Legendre nodes/weights on [0, 1].
struct GaussPoint {
  double x, w;
};

inline std::span<const GaussPoint> gauss_rule(int n) {
  static const std::array<GaussPoint, 2> g2 = {{
      {0.5 - 0.5 / std::sqrt(3.0), 0.5},
      {0.5 + 0.5 / std::sqrt(3.0), 0.5},
  }};
  static const std::array<GaussPoint, 4> g4 = [] {
    const double a = std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
    const double b = std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
    const double wa = (18.0 + std::sqrt(30.0)) / 72.0;
    const double wb = (18.0 - std::sqrt(30.0)) / 72.0;
    return std::array<GaussPoint, 4>{{{0.5 - 0.5 * a, wa},
                                      {0.5 + 0.5 * a, wa},
                                      {0.5 - 0.5 * b, wb},
                                      {0.5 + 0.5 * b, wb}}};
  }();
  static const std::array<GaussPoint, 5> g5 = [] {
    const double a = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
    const double b = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
    const double wa = (322.0 + 13.0 * std::sqrt(70.0)) / 1800.0;
    const double wb = (322.0 - 13.0 * std::sqrt(70.0)) / 1800.0;
    return std::array<GaussPoint, 5>{{{0.5, 64.0 / 225.0},
                                      {0.5 - 0.5 * a, wa},
                                      {0.5 + 0.5 * a, wa},
                                      {0.5 - 0.5 * b, wb},
                                      {0.5 + 0.5 * b, wb}}};
  }();
  static const std::array<GaussPoint, 7> g7 = [] {
    // Abscissae/weights for n=7 on [-1, 1], mapped to [0, 1].
    const double x[7] = {0.0,
                         0.4058451513773971669066064,
                         -0.4058451513773971669066064,
                         0.7415311855993944398638648,
                         -0.7415311855993944398638648,
                         0.9491079123427585245261897,
                         -0.9491079123427585245261897};
    const double w[7] = {0.4179591836734693877551020, 0.3818300505051189449503698,
                         0.3818300505051189449503698, 0.2797053914892766679014678,
                         0.2797053914892766679014678, 0.1294849661688696932706114,
                         0.1294849661688696932706114};
    std::array<GaussPoint, 7> out{};
    for (int i = 0; i < 7; ++i) out[i] = {0.5 * (1.0 + x[i]), 0.5 * w[i]};
    return out;
  }();
  switch (n) {
    case 2: return g2;
    case 4: return g4;
    case 5: return g5;
    case 7: return g7;
    default: throw std::invalid_argument("gauss_rule: unsupported order");
  }
}

}  // namespace acsim
