#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>

namespace acsim {

/// Radial compression map rho = zeta(r): keeps the ball |x| <= a fixed and
/// sends the thin annulus a <= r <= b onto the large annulus a <= rho <= R,
/// with zeta in C^1[0, b], zeta(a) = a, zeta(b) = R, zeta'(a) = 1, zeta' > 0.
struct RadialMap {
  double a = 0.0;
  double b = 0.0;
  double R = 0.0;
  int dimension = 2;

  /// Validates 0 < a < b <= R (b == R yields the exact identity map).
  static RadialMap make(double a, double b, double R, int dimension = 2);

  /// zeta(r) = r on [0, b]; used for uncompressed (direct) solves.
  static RadialMap identity(double b, int dimension = 2);

  bool is_identity() const { return b == R; }
};

struct MapValue {
  double zeta = 0.0;
  double zeta_prime = 1.0;
};

/// Piecewise map value and derivative. Requires 0 <= r <= b.
MapValue eval_map(const RadialMap& map, double r);

/// Volume Jacobian of the change of variables: zeta*zeta'/r in 2D,
/// zeta^2*zeta'/r^2 in 3D (both -> 1 as r -> 0 and on the identity region).
/// This is the weight in the divergence and Laplacian pullbacks
///   div_rho u = jac^{-1} div_r(K v),   lap_rho u = jac^{-1} div_r(M grad_r v).
double jacobian(const RadialMap& map, double r);

/// Variable coefficients of the transformed wave operator at one point.
/// Q is the local polar/spherical frame (orthonormal), M the symmetric
/// positive definite gradient weight, K the divergence pullback weight,
/// beta the scalar mass weight. On r <= a all reduce to the identity values.
template <int Dim>
struct TransformedCoefficients {
  double beta = 1.0;
  Eigen::Matrix<double, Dim, Dim> M = Eigen::Matrix<double, Dim, Dim>::Identity();
  Eigen::Matrix<double, Dim, Dim> K = Eigen::Matrix<double, Dim, Dim>::Identity();
  Eigen::Matrix<double, Dim, Dim> Q = Eigen::Matrix<double, Dim, Dim>::Identity();
};

/// 2D coefficients: beta = zeta*zeta'/r, M = Q diag(zeta/(r zeta'), r zeta'/zeta) Q^T,
/// K = Q diag(zeta/r, zeta') Q^T, Q the rotation by theta.
TransformedCoefficients<2> coefficients_2d(const RadialMap& map, double r, double theta);

/// 3D coefficients: beta = zeta^2/r^2, M = Q diag(zeta^2/(r^2 zeta'), zeta', zeta') Q^T,
/// K = Q diag(zeta^2/r^2, zeta*zeta'/r, zeta*zeta'/r) Q^T, Q the spherical frame.
/// Never divides by sin(theta); theta in {0, pi} is fine.
TransformedCoefficients<3> coefficients_3d(const RadialMap& map, double r, double theta,
                                           double phi);

/// Convenience: 2D coefficients at a Cartesian point of the compressed domain.
TransformedCoefficients<2> coefficients_at(const RadialMap& map, const Eigen::Vector2d& x);

/// Sample location in compressed polar/spherical coordinates (phi unused in 2D).
struct PullbackSample {
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

/// Finite-difference check of the Laplacian pullback identity
///   lap_rho u |_{rho=zeta(r)} = jac^{-1} div_r(M grad_r v),  v = u(zeta(r)*e_r).
/// Both sides are evaluated by central differences with step h: the left side
/// in physical Cartesian coordinates, the right side by nested differences of
/// F = M grad v in compressed Cartesian coordinates. The field is a scalar
/// function of physical Cartesian coordinates (z ignored in 2D).
///
/// Returns max_i |L_i - R_i| / max_i max(|L_i|, |R_i|), i.e. the largest
/// discrepancy relative to the operator's magnitude over the sample set
/// (0 when the field is constant, where both sides vanish identically).
/// Oracle only; never called in the solver hot path.
double verify_laplacian_pullback(const RadialMap& map,
                                 const std::function<double(double, double, double)>& field,
                                 std::span<const PullbackSample> samples, double h);

}  // namespace acsim
