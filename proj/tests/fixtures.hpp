#pragma once

// Synthetic extrinsic states with a known answer to "does an umbilical
// direction exist".

#include <random>

#include "oracles.hpp"
#include "subshear/extrinsic.hpp"

namespace fixture {

struct Built {
  subshear::ExtrinsicState state;
  bool has_direction = false;
  Eigen::Vector2d direction{0, 0};  // frame coefficients of an umbilical normal
};

/// A1 = t1 + S, A2 = t2 + kappa S in a rotated basis: the normal with
/// coefficients (kappa, -1) is umbilical.
inline Built proportional(std::array<int, 2> eps, int n, std::mt19937_64& rng, double kappa) {
  std::uniform_real_distribution<double> u(-2, 2);
  const Eigen::MatrixXd Q = oracle::random_rotation(n, rng);
  Eigen::MatrixXd S = oracle::traceless(oracle::random_symmetric(n, rng));
  S = Q * S * Q.transpose();
  S = 0.5 * (S + S.transpose());
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  Built b{subshear::synthetic_state(eps, u(rng) * I + S, u(rng) * I + kappa * S), true,
          Eigen::Vector2d(kappa, -1)};
  return b;
}

inline Built proportional(std::array<int, 2> eps, int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> k(-3, 3);
  return proportional(eps, n, rng, k(rng));
}

/// Generic shape operators whose shears are far from proportional.
inline Built independent(std::array<int, 2> eps, int n, std::mt19937_64& rng) {
  for (;;) {
    const Eigen::MatrixXd a1 = oracle::random_symmetric(n, rng), a2 = oracle::random_symmetric(n, rng);
    const Eigen::MatrixXd s1 = oracle::traceless(a1), s2 = oracle::traceless(a2);
    const double cs = (s1.array() * s2.array()).sum();
    const double defect = 1 - cs * cs / (s1.squaredNorm() * s2.squaredNorm());
    if (defect < 1e-2) continue;
    return {subshear::synthetic_state(eps, a1, a2), false, {0, 0}};
  }
}

/// Angle between two lines through the origin of the coefficient plane.
inline double line_angle(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  const double c = std::abs(a.dot(b)) / (a.norm() * b.norm());
  const double s = std::abs(a(0) * b(1) - a(1) * b(0)) / (a.norm() * b.norm());
  return std::atan2(s, c);
}

}  // namespace fixture
