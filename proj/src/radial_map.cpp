#include "radial_map.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace acsim {

RadialMap RadialMap::make(double a, double b, double R, int dimension) {
  if (!(a > 0.0) || !(b > a) || !(R >= b))
    throw std::domain_error("RadialMap: need 0 < a < b <= R, got a=" + std::to_string(a) +
                            " b=" + std::to_string(b) + " R=" + std::to_string(R));
  if (dimension != 2 && dimension != 3)
    throw std::domain_error("RadialMap: dimension must be 2 or 3");
  return RadialMap{a, b, R, dimension};
}

RadialMap RadialMap::identity(double b, int dimension) {
  if (!(b > 0.0)) throw std::domain_error("RadialMap::identity: need b > 0");
  return RadialMap{0.5 * b, b, b, dimension};
}

namespace {

constexpr double kRadiusSlack = 1e-12;

double checked_radius(const RadialMap& map, double r, const char* who) {
  if (!(r >= 0.0) || r > map.b * (1.0 + kRadiusSlack))
    throw std::domain_error(std::string(who) + ": radius " + std::to_string(r) +
                            " outside [0, b], b=" + std::to_string(map.b));
  return std::min(r, map.b);
}

}  // namespace

MapValue eval_map(const RadialMap& map, double r) {
  r = checked_radius(map, r, "eval_map");
  if (map.is_identity() || r <= map.a) return {r, 1.0};
  const double a = map.a, b = map.b, R = map.R;
  const double denom = (b - r) * (R - b) + (b - a) * (b - a);
  const double xi = a * a * (R - b) + r * (a * a + (b - 2.0 * a) * R);
  const double num_prime = (R - a) * (R - a) * (b - a) * (b - a);
  return {xi / denom, num_prime / (denom * denom)};
}

double jacobian(const RadialMap& map, double r) {
  if (r < 0.0) throw std::domain_error("jacobian: negative radius");
  if (map.is_identity() || r <= map.a) return 1.0;
  const MapValue m = eval_map(map, r);
  if (map.dimension == 2) return m.zeta * m.zeta_prime / r;
  return m.zeta * m.zeta * m.zeta_prime / (r * r);
}

TransformedCoefficients<2> coefficients_2d(const RadialMap& map, double r, double theta) {
  if (r < 0.0) throw std::domain_error("coefficients_2d: negative radius");
  TransformedCoefficients<2> c;
  const double ct = std::cos(theta), st = std::sin(theta);
  c.Q << ct, -st, st, ct;
  if (map.is_identity() || r <= map.a) return c;  // identity region, exact
  const MapValue m = eval_map(map, r);
  c.beta = m.zeta * m.zeta_prime / r;
  const Eigen::Vector2d md(m.zeta / (r * m.zeta_prime), r * m.zeta_prime / m.zeta);
  const Eigen::Vector2d kd(m.zeta / r, m.zeta_prime);
  c.M = c.Q * md.asDiagonal() * c.Q.transpose();
  c.K = c.Q * kd.asDiagonal() * c.Q.transpose();
  return c;
}

TransformedCoefficients<3> coefficients_3d(const RadialMap& map, double r, double theta,
                                           double phi) {
  if (r < 0.0) throw std::domain_error("coefficients_3d: negative radius");
  TransformedCoefficients<3> c;
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sp = std::sin(phi), cp = std::cos(phi);
  c.Q << st * cp, ct * cp, -sp,  //
      st * sp, ct * sp, cp,      //
      ct, -st, 0.0;
  if (map.is_identity() || r <= map.a) return c;
  const MapValue m = eval_map(map, r);
  const double z2r2 = (m.zeta / r) * (m.zeta / r);
  c.beta = z2r2;
  const Eigen::Vector3d md(z2r2 / m.zeta_prime, m.zeta_prime, m.zeta_prime);
  const double kt = m.zeta * m.zeta_prime / r;
  const Eigen::Vector3d kd(z2r2, kt, kt);
  c.M = c.Q * md.asDiagonal() * c.Q.transpose();
  c.K = c.Q * kd.asDiagonal() * c.Q.transpose();
  return c;
}

TransformedCoefficients<2> coefficients_at(const RadialMap& map, const Eigen::Vector2d& x) {
  return coefficients_2d(map, x.norm(), std::atan2(x.y(), x.x()));
}

namespace {

// v(y) = field at the physical image of the compressed Cartesian point y.
double pulled_back_field(const RadialMap& map,
                         const std::function<double(double, double, double)>& field, int dim,
                         const Eigen::Vector3d& y) {
  const double r = dim == 2 ? std::hypot(y.x(), y.y()) : y.norm();
  const double scale = r > 0.0 ? eval_map(map, r).zeta / r : 1.0;
  return field(scale * y.x(), scale * y.y(), dim == 2 ? 0.0 : scale * y.z());
}

// Central gradient of the pulled-back field in compressed coordinates.
Eigen::Vector3d fd_gradient(const RadialMap& map,
                            const std::function<double(double, double, double)>& field, int dim,
                            const Eigen::Vector3d& y, double h) {
  Eigen::Vector3d g = Eigen::Vector3d::Zero();
  for (int i = 0; i < dim; ++i) {
    Eigen::Vector3d yp = y, ym = y;
    yp[i] += h;
    ym[i] -= h;
    g[i] = (pulled_back_field(map, field, dim, yp) - pulled_back_field(map, field, dim, ym)) /
           (2.0 * h);
  }
  return g;
}

// F(y) = M(y) * grad v(y), the flux whose divergence enters the identity.
Eigen::Vector3d fd_flux(const RadialMap& map,
                        const std::function<double(double, double, double)>& field, int dim,
                        const Eigen::Vector3d& y, double h) {
  const Eigen::Vector3d g = fd_gradient(map, field, dim, y, h);
  if (dim == 2) {
    const auto c = coefficients_2d(map, std::hypot(y.x(), y.y()), std::atan2(y.y(), y.x()));
    const Eigen::Vector2d f = c.M * Eigen::Vector2d(g.x(), g.y());
    return {f.x(), f.y(), 0.0};
  }
  const double r = y.norm();
  const double rxy = std::hypot(y.x(), y.y());
  const auto c = coefficients_3d(map, r, std::atan2(rxy, y.z()), std::atan2(y.y(), y.x()));
  return c.M * g;
}

}  // namespace

double verify_laplacian_pullback(const RadialMap& map,
                                 const std::function<double(double, double, double)>& field,
                                 std::span<const PullbackSample> samples, double h) {
  if (!(h > 0.0)) throw std::domain_error("verify_laplacian_pullback: need h > 0");
  const int dim = map.dimension;
  double max_abs_diff = 0.0, scale = 0.0;
  for (const PullbackSample& s : samples) {
    if (!(s.r > 0.0) || !(s.r < map.b))
      throw std::domain_error("verify_laplacian_pullback: sample radius outside (0, b)");

    Eigen::Vector3d dir;
    if (dim == 2)
      dir = {std::cos(s.theta), std::sin(s.theta), 0.0};
    else
      dir = {std::sin(s.theta) * std::cos(s.phi), std::sin(s.theta) * std::sin(s.phi),
             std::cos(s.theta)};

    // Left side: physical Laplacian at rho = zeta(r), 2nd-order central stencil.
    const Eigen::Vector3d xp = eval_map(map, s.r).zeta * dir;
    double left = 0.0;
    const double u0 = field(xp.x(), xp.y(), xp.z());
    for (int i = 0; i < dim; ++i) {
      Eigen::Vector3d pp = xp, pm = xp;
      pp[i] += h;
      pm[i] -= h;
      left += (field(pp.x(), pp.y(), pp.z()) - 2.0 * u0 + field(pm.x(), pm.y(), pm.z())) / (h * h);
    }

    // Right side: jac^{-1} div(M grad v) in compressed coordinates, nested FD.
    const Eigen::Vector3d xc = s.r * dir;
    double div = 0.0;
    for (int i = 0; i < dim; ++i) {
      Eigen::Vector3d yp = xc, ym = xc;
      yp[i] += h;
      ym[i] -= h;
      div += (fd_flux(map, field, dim, yp, h)[i] - fd_flux(map, field, dim, ym, h)[i]) / (2.0 * h);
    }
    const double right = div / jacobian(map, s.r);

    max_abs_diff = std::max(max_abs_diff, std::abs(left - right));
    scale = std::max({scale, std::abs(left), std::abs(right)});
  }
  return scale > 0.0 ? max_abs_diff / scale : 0.0;
}

}  // namespace acsim
