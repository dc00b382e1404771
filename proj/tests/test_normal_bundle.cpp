#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "subshear/catalog.hpp"
#include "subshear/errors.hpp"
#include "subshear/linalg.hpp"
#include "subshear/normal_bundle.hpp"

using namespace subshear;

namespace {

const std::array<std::array<int, 2>, 3> kSignatures{{{1, 1}, {-1, 1}, {-1, -1}}};

}  // namespace

TEST_CASE("hodge dual identities on synthetic states") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-2, 2);
  for (const auto eps : kSignatures) {
    for (int trial = 0; trial < 50; ++trial) {
      const int n = 2 + trial % 4;
      const ExtrinsicState st = synthetic_state(eps, oracle::random_symmetric(n, rng), oracle::random_symmetric(n, rng));
      const Eigen::VectorXd nu = st.normal_vector(Eigen::Vector2d(u(rng), u(rng)));
      const Eigen::VectorXd eta = st.normal_vector(Eigen::Vector2d(u(rng), u(rng)));
      const Eigen::VectorXd snu = star(st, nu);
      CHECK((star(st, snu) + eps[0] * eps[1] * nu).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(std::abs(st.dot(snu, eta) + st.dot(nu, star(st, eta))) < 1e-12);
      CHECK(std::abs(st.dot(snu, nu)) < 1e-12);
      CHECK(st.dot(snu, snu) == doctest::Approx(eps[0] * eps[1] * st.dot(nu, nu)).epsilon(1e-12));
    }
  }
}

TEST_CASE("the dual of the mean curvature has vanishing expansion") {
  std::mt19937_64 rng(22);
  for (const auto eps : kSignatures) {
    for (int trial = 0; trial < 30; ++trial) {
      const ExtrinsicState st = synthetic_state(eps, oracle::random_symmetric(3, rng), oracle::random_symmetric(3, rng));
      const StarHResult r = star_H_and_null_expansions(st);
      CHECK(std::abs(r.theta_star_H) < 1e-12);
      CHECK(r.null.has_value() == (eps[0] * eps[1] < 0));
    }
  }
}

TEST_CASE("null frame data") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 3;
    const ExtrinsicState st = synthetic_state({-1, 1}, oracle::random_symmetric(n, rng), oracle::random_symmetric(n, rng));
    const NullData nd = null_data(st);
    const auto& k = nd.frame.first;
    const auto& l = nd.frame.second;
    CHECK(std::abs(st.dot(k, k)) < 1e-14);
    CHECK(std::abs(st.dot(l, l)) < 1e-14);
    CHECK(st.dot(k, l) == doctest::Approx(-1));
    CHECK((star(st, k) + k).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((star(st, l) - l).cwiseAbs().maxCoeff() < 1e-13);
    // B = -{A_k, A_l}, J = -{S_k, S_l}
    CHECK((st.B + anticommutator(nd.A_k, nd.A_l)).norm() < 1e-12);
    CHECK((st.J + anticommutator(nd.S_k, nd.S_l)).norm() < 1e-12);
    // H = -(theta_l k + theta_k l) / n
    const Eigen::VectorXd H = -(nd.theta_l * k + nd.theta_k * l) / n;
    CHECK((H - st.H.components).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("normal bundle errors") {
  const ExtrinsicState riem = synthetic_state({1, 1}, Eigen::Matrix2d::Identity(), Eigen::Matrix2d::Zero());
  CHECK_THROWS_AS(null_data(riem), SignatureError);
  const ExtrinsicState st =
      compute_extrinsic_state(*kerr_metric(1, 0.5), *const_vr_surface(0, 3), Eigen::Vector2d(1, 0));
  CHECK_THROWS_AS(star(st, st.tangent.vectors.col(0)), NotNormalError);
  CHECK_NOTHROW(star(st, st.normal.first));
}
