#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "subshear/catalog.hpp"
#include "subshear/classifier.hpp"
#include "subshear/errors.hpp"
#include "subshear/normal_bundle.hpp"

using namespace subshear;

namespace {

const std::array<std::array<int, 2>, 3> kSignatures{{{1, 1}, {-1, 1}, {-1, -1}}};

ExtrinsicState kerr_state(double a, double r, double th) {
  return compute_extrinsic_state(*kerr_metric(1, a), *const_vr_surface(0, r), Eigen::Vector2d(th, 0.3));
}

ExtrinsicState graph_state(const Eigen::MatrixXd& b1, const Eigen::MatrixXd& b2) {
  const int n = static_cast<int>(b1.rows());
  const auto g = graph_surface(b1, b2, Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n));
  return compute_extrinsic_state(*euclidean_metric(n + 2), *g, Eigen::VectorXd::Zero(n));
}

}  // namespace

TEST_CASE("umbilicity along a normal") {
  const ExtrinsicState st = compute_extrinsic_state(*euclidean_metric(4), *round_sphere(2), Eigen::Vector2d(1, 1));
  CHECK(is_umbilical_wrt(st, st.normal.first).value);
  CHECK(is_umbilical_wrt(st, st.normal.second).value);
  CHECK_THROWS_AS(is_umbilical_wrt(st, Eigen::VectorXd::Zero(4)), ZeroVectorError);

  Eigen::Matrix2d b1, b2;
  b1 << 1, 0, 0, 1;
  b2 << 1, 0.5, 0.5, -1;
  const ExtrinsicState g = graph_state(b1, b2);
  CHECK(is_umbilical_wrt(g, Eigen::VectorXd(Eigen::Vector4d(1, 0, 0, 0))).value);
  CHECK_FALSE(is_umbilical_wrt(g, Eigen::VectorXd(Eigen::Vector4d(0, 1, 0, 0))).value);
}

TEST_CASE("direction conditions agree with construction") {
  std::mt19937_64 rng(31);
  for (const auto eps : kSignatures) {
    for (int n = 2; n <= 6; ++n) {
      for (int trial = 0; trial < 20; ++trial) {
        const bool prop = trial % 2 == 0;
        const auto b = prop ? fixture::proportional(eps, n, rng) : fixture::independent(eps, n, rng);
        const DirectionDiagnostics d = direction_exists(b.state);
        CAPTURE(n);
        CAPTURE(prop);
        CHECK(d.exists == b.has_direction);
        CHECK(d.components.value == b.has_direction);
        CHECK(d.scalar_product.value == b.has_direction);
        CHECK(d.reconstruction.value == b.has_direction);
        if (n == 2) CHECK(d.commutator.value == b.has_direction);
        if (b.has_direction) CHECK(d.commutator.value);
        CHECK(d.consistent);
      }
    }
  }
}

TEST_CASE("G, the shear direction and the umbilical normal") {
  std::mt19937_64 rng(32);
  for (const auto eps : kSignatures) {
    for (int trial = 0; trial < 30; ++trial) {
      const int n = 2 + trial % 4;
      const auto b = fixture::proportional(eps, n, rng);
      const ExtrinsicState& st = b.state;
      const DirectionResult r = compute_G_and_direction(st);
      REQUIRE(r.direction.has_value());
      CHECK(operator_inner(r.A_tilde, r.A_tilde) == doctest::Approx(n * n).epsilon(1e-12));
      for (int k = 0; k < 2; ++k) CHECK((st.shear[k] - r.sigma[k] / n * r.A_tilde).norm() < 1e-10);
      CHECK(std::abs(r.sigma[0]) == doctest::Approx(st.sigma[0]).epsilon(1e-10));
      const Eigen::Vector2d c = st.coefficients(r.direction->components);
      CHECK(fixture::line_angle(c, b.direction) < 1e-9);
      CHECK(is_umbilical_wrt(st, r.direction->components).value);
      // *G is the only umbilical line
      for (double phi : {0.3, 1.1, 2.0}) {
        const double ang = std::atan2(c(1), c(0)) + phi;
        CHECK_FALSE(is_umbilical_wrt(st, st.normal_vector(Eigen::Vector2d(std::cos(ang), std::sin(ang)))).value);
      }
      // total shear reconstruction
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          CHECK((st.total_shear_vector(i, j) - r.A_tilde(i, j) * r.G.components).norm() < 1e-9);
      // eigenvalue oracle
      const EigenOracle eo = eigen_direction_oracle(st);
      for (const auto& eta : eo.eta)
        CHECK(fixture::line_angle(st.coefficients(eta), c) < 1e-6);
    }
  }
}

TEST_CASE("missing directions raise") {
  std::mt19937_64 rng(33);
  const auto b = fixture::independent({-1, 1}, 2, rng);
  CHECK_THROWS_AS(compute_G_and_direction(b.state), NoDirectionError);
  CHECK_THROWS_AS(eigen_direction_oracle(b.state), NotCommutingError);
  const UmbilicalVerdict v = classify(b.state);
  CHECK_FALSE(v.direction_exists);
  CHECK(v.causal_character == CausalCharacter::undefined);
}

TEST_CASE("totally umbilical sphere") {
  const ExtrinsicState st = compute_extrinsic_state(*euclidean_metric(4), *round_sphere(2), Eigen::Vector2d(1, 1));
  const DirectionResult r = compute_G_and_direction(st);
  CHECK(r.totally_umbilical);
  CHECK(r.sigma[0] == 0.0);
  CHECK(r.sigma[1] == 0.0);
  const UmbilicalVerdict v = classify(st);
  CHECK(v.totally_umbilical);
  CHECK(v.pseudo_umbilical);
  CHECK(v.ortho_umbilical);
  CHECK(pseudo_ortho_degeneracy(st).degenerate);
}

TEST_CASE("pseudo and ortho umbilicity") {
  Eigen::Matrix2d b1, b2;
  b1 << 1, 0, 0, 1;
  b2 << 1, 0.5, 0.5, -1;
  PseudoOrtho p = classify_pseudo_ortho(graph_state(b1, b2));
  CHECK(p.pseudo.value);
  CHECK(p.pseudo_casorati.value);
  CHECK_FALSE(p.ortho.value);
  CHECK_FALSE(p.ortho_wedge.value);
  CHECK(p.subgeodesic == Tristate::no);

  b1 << 2, 0.3, 0.3, -0.5;
  b2.setZero();
  p = classify_pseudo_ortho(graph_state(b1, b2));
  CHECK_FALSE(p.pseudo.value);
  CHECK(p.ortho.value);
  CHECK(p.ortho_wedge.value);
  CHECK(p.proportional.value);
  CHECK(p.subgeodesic == Tristate::yes);

  p = classify_pseudo_ortho(compute_extrinsic_state(*minkowski_metric(4), *flat_plane(), Eigen::Vector2d(0, 0)));
  CHECK(p.h_vanishes);
  CHECK(p.subgeodesic == Tristate::indeterminate);
}

TEST_CASE("pseudo-ortho degeneracy cross-checks agree") {
  std::mt19937_64 rng(34);
  for (const auto eps : kSignatures) {
    for (int trial = 0; trial < 40; ++trial) {
      const auto b = trial % 2 ? fixture::proportional(eps, 3, rng) : fixture::independent(eps, 3, rng);
      const DegeneracyReport d = pseudo_ortho_degeneracy(b.state);
      CHECK(d.agree);
    }
  }
}

TEST_CASE("causal character of the umbilical direction") {
  std::mt19937_64 rng(35);
  for (int n = 2; n <= 4; ++n) {
    const auto t = fixture::proportional({-1, 1}, n, rng, 2.0);
    CHECK(classify(t.state).causal_character == CausalCharacter::timelike);
    const auto s = fixture::proportional({-1, 1}, n, rng, 0.5);
    CHECK(classify(s.state).causal_character == CausalCharacter::spacelike);
    const auto z = fixture::proportional({-1, 1}, n, rng, 1.0);
    const UmbilicalVerdict vz = classify(z.state);
    CHECK(vz.causal_character == CausalCharacter::null);
    const Eigen::VectorXd d = vz.umbilical_direction->components;
    CHECK(std::abs(z.state.dot(d, d)) < 1e-10);
  }
  const auto riem = fixture::proportional({1, 1}, 3, rng);
  CHECK(classify(riem.state).causal_character == CausalCharacter::undefined);
  const DirectionDiagnostics dd = direction_exists(riem.state);
  CHECK_THROWS_AS(causal_character(riem.state, dd, compute_G_and_direction(riem.state)), SignatureError);
}

TEST_CASE("trapped status on kerr and flat surfaces") {
  const double rp = kerr_r_plus(1, 0.5);
  CHECK(trapped_status(kerr_state(0.5, 0.7, 1.0)).status == TrappedStatus::trapped);
  CHECK(trapped_status(kerr_state(0.5, 3.0, 1.0)).status == TrappedStatus::untrapped);
  CHECK(trapped_status(kerr_state(0.5, rp, 1.0)).status == TrappedStatus::marginally_trapped);
  const TrappedResult tr = trapped_status(kerr_state(0.5, 0.7, 1.0));
  REQUIRE(tr.future_H.has_value());
  CHECK(*tr.future_H);
  CHECK(trapped_status(compute_extrinsic_state(*minkowski_metric(4), *flat_plane(), Eigen::Vector2d(0, 0))).status ==
        TrappedStatus::minimal);
  CHECK(trapped_status(compute_extrinsic_state(*minkowski_metric(4), *round_sphere(1), Eigen::Vector2d(1, 0))).status ==
        TrappedStatus::untrapped);
  CHECK(trapped_status(compute_extrinsic_state(*euclidean_metric(4), *round_sphere(1), Eigen::Vector2d(1, 0))).status ==
        TrappedStatus::not_applicable);
}

TEST_CASE("kerr horizon verdict") {
  const UmbilicalVerdict v = classify(kerr_state(0.5, kerr_r_plus(1, 0.5), 0.9));
  CHECK(v.direction_exists);
  CHECK_FALSE(v.totally_umbilical);
  CHECK(v.pseudo_umbilical);
  CHECK(v.ortho_umbilical);
  CHECK(v.causal_character == CausalCharacter::null);
  CHECK(v.trapped.status == TrappedStatus::marginally_trapped);
  CHECK(v.diagnostics_consistent);
  for (const char* key : {"casorati_identity", "trace_BJ", "theta_star_H", "null_B", "null_J"})
    CHECK(v.residuals.at(key) < 1e-12);
}

TEST_CASE("string forms") {
  CHECK(std::string(to_string(CausalCharacter::null)) == "null");
  CHECK(std::string(to_string(TrappedStatus::marginally_trapped)) == "marginally_trapped");
  CHECK(std::string(to_string(Tristate::indeterminate)) == "indeterminate");
}
