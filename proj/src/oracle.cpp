#include "oracle.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "quadrature.hpp"
#include "runner.hpp"

namespace acsim {

namespace {

// Deterministic uniform in [0, 1), independent of the standard library's
// distribution implementation.
double rand_u01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

ManufacturedCase make_manufactured(const RadialMap& map, const MaterialParams& params,
                                   const std::string& id, double r_disk, double omega) {
  if (id == "zero") {
    ManufacturedCase mms;
    mms.id = id;
    mms.omega = omega;
    mms.p = [](double, double, double) { return 0.0; };
    mms.dpdt = mms.p;
    mms.f = mms.p;
    mms.g = [](double, double) { return 0.0; };
    mms.h = mms.g;
    return mms;
  }
  if (id != "radial") throw ConfigError("make_manufactured: unknown catalog id '" + id + "'");

  // Physical radial profile P(rho) = (Ro^2 - rho^2)(rho^2 - d^2)^2: vanishes
  // on the outer sphere and has a double zero on the obstacle, so u = 0
  // satisfies both interface conditions exactly.
  const double Ro = map.R, d = r_disk;
  auto profile = [Ro, d](double rho) {
    const double s = rho * rho;
    return (Ro * Ro - s) * (s - d * d) * (s - d * d);
  };
  // 2D Laplacian of P via s = rho^2: lap P = 4 P_s + 4 s P_ss.
  auto profile_lap = [Ro, d](double rho) {
    const double s = rho * rho;
    const double ps = (s - d * d) * (2.0 * Ro * Ro + d * d - 3.0 * s);
    const double pss = 2.0 * Ro * Ro + 4.0 * d * d - 6.0 * s;
    return 4.0 * ps + 4.0 * s * pss;
  };
  // Normalize so max |P| ~ 1 on [d, Ro].
  double pmax = 0.0;
  for (int i = 0; i <= 2000; ++i)
    pmax = std::max(pmax, std::abs(profile(d + (Ro - d) * i / 2000.0)));
  const double scale = pmax > 0.0 ? 1.0 / pmax : 1.0;

  const double c2 = params.c * params.c;
  auto zeta_of = [map](double x, double y) { return eval_map(map, std::hypot(x, y)).zeta; };

  ManufacturedCase mms;
  mms.id = id;
  mms.omega = omega;
  mms.p = [=](double x, double y, double t) {
    return std::sin(omega * t) * scale * profile(zeta_of(x, y));
  };
  mms.dpdt = [=](double x, double y, double t) {
    return omega * std::cos(omega * t) * scale * profile(zeta_of(x, y));
  };
  mms.f = [=](double x, double y, double t) {
    const double r = std::hypot(x, y);
    const double rho = eval_map(map, r).zeta;
    const double bracket = -(omega * omega / c2) * profile(rho) - profile_lap(rho);
    return jacobian(map, r) * scale * bracket * std::sin(omega * t);
  };
  mms.g = [](double, double) { return 0.0; };
  mms.h = [=](double x, double y) { return omega * scale * profile(zeta_of(x, y)); };
  return mms;
}

double fd_div_m_grad(const RadialMap& map, const std::function<double(double, double)>& v,
                     const Eigen::Vector2d& x, double h) {
  auto flux = [&](const Eigen::Vector2d& y) -> Eigen::Vector2d {
    Eigen::Vector2d grad;
    grad.x() = (v(y.x() + h, y.y()) - v(y.x() - h, y.y())) / (2.0 * h);
    grad.y() = (v(y.x(), y.y() + h) - v(y.x(), y.y() - h)) / (2.0 * h);
    return coefficients_at(map, y).M * grad;
  };
  const Eigen::Vector2d ex(h, 0.0), ey(0.0, h);
  return (flux(x + ex).x() - flux(x - ex).x()) / (2.0 * h) +
         (flux(x + ey).y() - flux(x - ey).y()) / (2.0 * h);
}

double manufactured_residual(const ManufacturedCase& mms, const RadialMap& map,
                             const MaterialParams& params, double r_disk, int n_points,
                             unsigned long long seed) {
  std::mt19937_64 rng(seed);
  const double h = 2e-4 * (map.b - r_disk);
  const double c2 = params.c * params.c;
  double worst = 0.0, scale = 0.0;
  int accepted = 0;
  while (accepted < n_points) {
    const double r = r_disk + 3.0 * h + (map.b - r_disk - 6.0 * h) * rand_u01(rng);
    if (std::abs(r - map.a) < 5.0 * h) continue;  // C^1 breakpoint of the map
    const double ang = 2.0 * std::numbers::pi * rand_u01(rng);
    const double t = 0.1 + 0.8 * rand_u01(rng);
    const Eigen::Vector2d x(r * std::cos(ang), r * std::sin(ang));
    ++accepted;

    const double beta = jacobian(map, r);
    const double ptt = -mms.omega * mms.omega * mms.p(x.x(), x.y(), t);
    const double div = fd_div_m_grad(
        map, [&](double xx, double yy) { return mms.p(xx, yy, t); }, x, h);
    const double fval = mms.f(x.x(), x.y(), t);
    const double residual = (beta / c2) * ptt - div - fval;
    worst = std::max(worst, std::abs(residual));
    scale = std::max({scale, std::abs((beta / c2) * ptt), std::abs(div), std::abs(fval)});
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

double reference_integral(const std::function<double(double, double)>& field,
                          IntegralRegion region, double r_disk, double b, int order, int panels) {
  if (order != 5 && order != 7)
    throw std::invalid_argument("reference_integral: order must be 5 or 7");
  if (panels < 1) throw std::invalid_argument("reference_integral: panels must be >= 1");
  const auto rule = gauss_rule(order);
  const double two_pi = 2.0 * std::numbers::pi;

  if (region == IntegralRegion::InterfaceCircle) {
    double sum = 0.0;
    for (int j = 0; j < panels; ++j)
      for (const GaussPoint& q : rule) {
        const double ang = two_pi * (j + q.x) / panels;
        sum += q.w * field(r_disk * std::cos(ang), r_disk * std::sin(ang));
      }
    return sum * (two_pi / panels) * r_disk;
  }

  const double r0 = region == IntegralRegion::Omega ? r_disk : 0.0;
  const double r1 = region == IntegralRegion::Omega ? b : r_disk;
  double sum = 0.0;
  for (int i = 0; i < panels; ++i) {
    for (const GaussPoint& qr : rule) {
      const double r = r0 + (r1 - r0) * (i + qr.x) / panels;
      for (int j = 0; j < panels; ++j) {
        for (const GaussPoint& qa : rule) {
          const double ang = two_pi * (j + qa.x) / panels;
          sum += qr.w * qa.w * r * field(r * std::cos(ang), r * std::sin(ang));
        }
      }
    }
  }
  return sum * ((r1 - r0) / panels) * (two_pi / panels);
}

ProbeSeries direct_big_domain_solve(const ScenarioConfig& compressed_cfg, double dt) {
  const ScenarioConfig& cfg = compressed_cfg;
  const double slack = cfg.kind == ScenarioConfig::Kind::Incident ? cfg.pulse_width : 0.0;
  if (!causal_truncation_ok(cfg.R, cfg.a, cfg.materials.c, cfg.T, slack))
    throw ConfigError("direct_big_domain_solve: R must exceed a + c T + pulse width (R=" +
                      std::to_string(cfg.R) + ")");
  if (cfg.kind == ScenarioConfig::Kind::Manufactured)
    throw ConfigError("direct_big_domain_solve: manufactured sources are map-specific");
  for (const Bump* bump : {&cfg.g, &cfg.h, &cfg.f})
    if (bump->active && bump->center.norm() + bump->radius > cfg.a)
      throw ConfigError("direct_big_domain_solve: raw data must be supported in r <= a");

  ScenarioConfig direct = cfg;
  const double dr = (cfg.b - cfg.r_disk) / cfg.n_radial;
  direct.b = cfg.R;
  direct.n_radial = static_cast<int>(std::lround((cfg.R - cfg.r_disk) / dr));
  direct.grade_outward = true;
  direct.dt = dt;
  direct.snapshot_stride = 0;
  direct.dump_matrices = false;
  direct.validate();

  return run_config(direct).probes;
}

}  // namespace acsim
