#pragma once

// Built-in ambient metrics and surface families, addressable by name and a
// parameter map, plus closed-form Kerr reference data used as test oracles.

#include <Eigen/Core>

#include <map>
#include <string>
#include <vector>

#include "subshear/immersion.hpp"
#include "subshear/metric.hpp"

namespace subshear {

using ParamMap = std::map<std::string, double>;

inline constexpr double kKerrRhoMin = 1e-6;
inline constexpr double kThetaMin = 1e-3;

MetricPtr euclidean_metric(int dimension = 4);
/// diag(-1, 1, ..., 1) on (t, x_1, ..., x_{N-1}), time-oriented by d_t.
MetricPtr minkowski_metric(int dimension = 4);
/// Kerr line element in ingoing Kerr coordinates (v, r, theta, phi).
/// Time-oriented by the ingoing null direction -d_r.
MetricPtr kerr_metric(double m, double a, double theta_min = kThetaMin);
/// The a = 0 member, written out independently.
MetricPtr schwarzschild_metric(double m, double theta_min = kThetaMin);
/// Flat R^4 in double polar coordinates (rho1, phi1, rho2, phi2) with an
/// extra cross term 2 c rho1 rho2 dphi1 dphi2; Riemannian for |c| < 1 and
/// curved unless c = 0.
MetricPtr riemannian_test_metric(double c);

/// (theta, phi) -> (v, r, theta, phi).
ImmersionPtr const_vr_surface(double v, double r, double theta_min = kThetaMin);
/// (theta, phi) -> (t, R sin cos, R sin sin, R cos).
ImmersionPtr round_sphere(double radius, double t = 0.0, double theta_min = kThetaMin);
/// (x, y) -> (0, 0, x, y).
ImmersionPtr flat_plane(double extent = 10.0);
/// u -> (h1(u), h2(u), u) with h_k(u) = 1/2 u^T b_k u + c_k . u.
ImmersionPtr graph_surface(const Eigen::MatrixXd& b1, const Eigen::MatrixXd& b2,
                           const Eigen::VectorXd& c1, const Eigen::VectorXd& c2,
                           double extent = 1.0);
/// (u, v) -> (R1 cos u, R1 sin u, R2 cos v, R2 sin v).
ImmersionPtr flat_torus(double r1, double r2);

std::vector<std::string> metric_names();
std::vector<std::string> surface_names();

/// Factories used by the CLI. Names are case-sensitive; '-' and '_' are
/// interchangeable. Throw ConfigError on unknown names, unknown or missing
/// parameters and out-of-range values.
MetricPtr make_named_metric(const std::string& name, const ParamMap& params);
ImmersionPtr make_named_surface(const std::string& family, const ParamMap& params);
/// Whether `key` is a parameter of the named metric / surface family.
bool metric_accepts(const std::string& name, const std::string& key);
bool surface_accepts(const std::string& family, const std::string& key);

// Kerr reference data.

double kerr_r_plus(double m, double a);
double kerr_r_minus(double m, double a);
/// 4 m r^2 + rho^2 (r - m): zero exactly where [M1, M2] = 0.
double kerr_commutator_polynomial(double m, double a, double r, double theta);

struct KerrNormals {
  Eigen::Vector4d xi;   // xi^flat = dr
  Eigen::Vector4d eta;  // eta^flat = dv
};
KerrNormals kerr_xi_eta(double m, double a, double r, double theta);

struct KerrReferenceShapes {
  Eigen::Matrix2d M1;
  Eigen::Matrix2d M2;
  Eigen::Matrix2d A_xi;   // (1,1)-tensors in the basis {d_theta, d_phi}
  Eigen::Matrix2d A_eta;
};
/// Throws DomainError where rho <= kKerrRhoMin or sin(theta) = 0.
KerrReferenceShapes kerr_reference_shapes(double m, double a, double r, double theta);

}  // namespace subshear
