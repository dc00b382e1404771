#include <doctest.h>

#include <Eigen/Dense>

#include <random>

#include "oracles.hpp"
#include "subshear/catalog.hpp"
#include "subshear/errors.hpp"
#include "subshear/extrinsic.hpp"

using namespace subshear;

namespace {

double max_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("round sphere in euclidean space") {
  const double R = 2.0, th = 0.9;
  const auto metric = euclidean_metric(4);
  const auto sphere = round_sphere(R, 0.5);
  const ExtrinsicState st = compute_extrinsic_state(*metric, *sphere, Eigen::Vector2d(th, 0.4));

  Eigen::Matrix2d expected;
  expected << R * R, 0, 0, R * R * std::sin(th) * std::sin(th);
  CHECK(max_diff(st.induced_metric, expected) < 1e-13);

  const Eigen::VectorXd radial = (st.ambient_point - Eigen::Vector4d(0.5, 0, 0, 0)) / R;
  const Eigen::MatrixXd a_rad = st.shape_along(radial);
  const Eigen::MatrixXd a_t = st.shape_along(Eigen::VectorXd(Eigen::Vector4d(1, 0, 0, 0)));
  CHECK(max_diff(a_rad.cwiseAbs(), Eigen::Matrix2d::Identity() / R) < 1e-12);
  CHECK(std::abs(a_rad(0, 0) - a_rad(1, 1)) < 1e-12);
  CHECK(a_t.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::sqrt(st.H.norm2) == doctest::Approx(1 / R).epsilon(1e-12));
  CHECK(st.sigma[0] < 1e-12);
  CHECK(st.sigma[1] < 1e-12);
}

TEST_CASE("flat plane has vanishing second fundamental form") {
  const ExtrinsicState st =
      compute_extrinsic_state(*minkowski_metric(4), *flat_plane(), Eigen::Vector2d(0.3, -2));
  CHECK(st.shape[0].cwiseAbs().maxCoeff() == 0.0);
  CHECK(st.shape[1].cwiseAbs().maxCoeff() == 0.0);
  CHECK(st.H.norm2 == 0.0);
  CHECK(st.normal.eps[0] == -1);
  CHECK(st.normal.eps[1] == 1);
}

TEST_CASE("graph surface shape operators at the origin") {
  std::mt19937_64 rng(3);
  for (int n : {2, 3, 5}) {
    const Eigen::MatrixXd b1 = oracle::random_symmetric(n, rng), b2 = oracle::random_symmetric(n, rng);
    const auto g = graph_surface(b1, b2, Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n));
    const ExtrinsicState st = compute_extrinsic_state(*euclidean_metric(n + 2), *g, Eigen::VectorXd::Zero(n));
    CHECK(max_diff(st.shape_along(Eigen::VectorXd(Eigen::VectorXd::Unit(n + 2, 0))), -b1) < 1e-13);
    CHECK(max_diff(st.shape_along(Eigen::VectorXd(Eigen::VectorXd::Unit(n + 2, 1))), -b2) < 1e-13);

    GeometryOptions gauss;
    gauss.sign = ShapeSign::gauss;
    const ExtrinsicState sg = compute_extrinsic_state(*euclidean_metric(n + 2), *g, Eigen::VectorXd::Zero(n), gauss);
    CHECK(max_diff(sg.shape_along(Eigen::VectorXd(Eigen::VectorXd::Unit(n + 2, 0))), b1) < 1e-13);
  }
}

TEST_CASE("shape operators agree with a finite-difference oracle away from the origin") {
  std::mt19937_64 rng(8);
  const int n = 3;
  const Eigen::MatrixXd b1 = oracle::random_symmetric(n, rng), b2 = oracle::random_symmetric(n, rng);
  const Eigen::VectorXd c1 = Eigen::Vector3d(0.2, -0.1, 0.3), c2 = Eigen::Vector3d(0.1, 0.4, -0.2);
  const auto g = graph_surface(b1, b2, c1, c2);
  const auto metric = minkowski_metric(5);
  const Eigen::VectorXd u = Eigen::Vector3d(0.15, -0.2, 0.1);
  const ExtrinsicState st = compute_extrinsic_state(*metric, *g, u);
  for (int k = 0; k < 2; ++k) {
    const Eigen::VectorXd nu = k == 0 ? st.normal.first : st.normal.second;
    const Eigen::MatrixXd coord = oracle::coordinate_shape_operator(*metric, *g, u, nu);
    const Eigen::MatrixXd C = st.tangent.coefficients;
    CHECK(max_diff(C * st.shape[k] * C.inverse(), coord) < 1e-6);
  }
}

TEST_CASE("kerr constant-(v,r) surfaces") {
  const double m = 1, a = 0.6, r = 2.7, th = 1.1;
  const auto metric = kerr_metric(m, a);
  const auto surf = const_vr_surface(0.3, r);
  const ExtrinsicState st = compute_extrinsic_state(*metric, *surf, Eigen::Vector2d(th, 0.2));
  const double s = std::sin(th), c = std::cos(th);
  const double rho2 = r * r + a * a * c * c, delta = r * r - 2 * m * r + a * a;
  Eigen::Matrix2d expected;
  expected << rho2, 0, 0, (std::pow(r * r + a * a, 2) - a * a * delta * s * s) * s * s / rho2;
  CHECK(max_diff(st.induced_metric, expected) < 1e-12);
  CHECK(st.normal.eps[0] == -1);

  const Eigen::MatrixXd C = st.tangent.coefficients;
  for (int k = 0; k < 2; ++k) {
    const Eigen::VectorXd nu = k == 0 ? st.normal.first : st.normal.second;
    const Eigen::MatrixXd coord = oracle::coordinate_shape_operator(*metric, *surf, Eigen::Vector2d(th, 0.2), nu);
    CHECK(max_diff(C * st.shape[k] * C.inverse(), coord) < 1e-6);
  }
}

TEST_CASE("frame changes leave invariant quantities unchanged") {
  const ExtrinsicState st =
      compute_extrinsic_state(*kerr_metric(1, 0.8), *const_vr_surface(0, 3.2), Eigen::Vector2d(0.8, 1));
  const Eigen::VectorXd probe = 0.3 * st.normal.first - 1.7 * st.normal.second;
  for (double angle : {-1.3, -0.2, 0.4, 2.0}) {
    const ExtrinsicState rb = rebase_state(st, angle);
    CHECK(max_diff(rb.B, st.B) < 1e-12);
    CHECK(max_diff(rb.J, st.J) < 1e-12);
    CHECK((rb.H.components - st.H.components).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(rb.H.norm2 == doctest::Approx(st.H.norm2).epsilon(1e-12));
    CHECK(max_diff(rb.shape_along(probe), st.shape_along(probe)) < 1e-11);
    CHECK(rb.dot(rb.normal.first, rb.normal.first) == doctest::Approx(-1).epsilon(1e-12));
    CHECK(std::abs(rb.dot(rb.normal.first, rb.normal.second)) < 1e-12);
  }
}

TEST_CASE("state helpers are consistent") {
  std::mt19937_64 rng(4);
  for (auto eps : {std::array<int, 2>{1, 1}, std::array<int, 2>{-1, 1}, std::array<int, 2>{-1, -1}}) {
    const int n = 3;
    const ExtrinsicState st = synthetic_state(eps, oracle::random_symmetric(n, rng), oracle::random_symmetric(n, rng));
    Eigen::VectorXd trace = Eigen::VectorXd::Zero(n + 2);
    for (int i = 0; i < n; ++i) trace += st.second_fundamental(i, i);
    CHECK((trace / n - st.H.components).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(st.dot(st.H.components, st.H.components) == doctest::Approx(st.H.norm2));
    const Eigen::Vector2d c(0.7, -0.4);
    CHECK((st.coefficients(st.normal_vector(c)) - c).norm() < 1e-14);
    CHECK(max_diff(st.shape_along(c), 0.7 * st.shape[0] - 0.4 * st.shape[1]) < 1e-14);
    for (int k = 0; k < 2; ++k) CHECK(std::abs(st.shear[k].trace()) < 1e-14);
    CHECK((st.normal_part(st.H.components) - st.H.components).norm() < 1e-14);
  }
}

TEST_CASE("pipeline errors") {
  const Eigen::VectorXd c1 = Eigen::Vector2d(2.0, 0.0), zero = Eigen::Vector2d::Zero();
  const auto steep = graph_surface(Eigen::Matrix2d::Zero(), Eigen::Matrix2d::Zero(), c1, zero);
  CHECK_THROWS_AS(compute_extrinsic_state(*minkowski_metric(4), *steep, Eigen::Vector2d(0, 0)), NotSpacelikeError);
  CHECK_THROWS_AS(compute_extrinsic_state(*minkowski_metric(5), *round_sphere(1), Eigen::Vector2d(1, 0)),
                  DimensionMismatch);
  CHECK_THROWS_AS(compute_extrinsic_state(*euclidean_metric(4), *round_sphere(1), Eigen::Vector2d(0, 0)),
                  DomainError);
  CHECK_THROWS_AS(compute_extrinsic_state(*euclidean_metric(4), *round_sphere(1), Eigen::Vector3d(1, 0, 0)),
                  DimensionMismatch);
}
