#include <doctest.h>

#include <cstdlib>
#include <cstring>

#include "oracles.hpp"
#include "subshear/errors.hpp"
#include "subshear/report.hpp"
#include "subshear/scan.hpp"

using namespace subshear;

namespace {

ScanConfig kerr_config(double a, double r) {
  ScanConfig c;
  c.metric = "kerr_kerr_coords";
  c.metric_params = {{"m", 1.0}, {"a", a}};
  c.surface = "const_vr";
  c.surface_params = {{"v", 0.0}, {"r", r}};
  return c;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("parameter and grid parsing") {
  const ParamMap p = parse_params("m=1.0, a=0.5,r=-2e-3");
  CHECK(p.at("m") == 1.0);
  CHECK(p.at("a") == 0.5);
  CHECK(p.at("r") == -2e-3);
  CHECK(parse_params("").empty());
  CHECK_THROWS_AS(parse_params("m"), ConfigError);
  CHECK_THROWS_AS(parse_params("m=abc"), ConfigError);
  CHECK_THROWS_AS(parse_params("m=1,m=2"), ConfigError);

  const auto g = parse_grid("theta=0.001:3.1406:64,phi=0:6.283:32");
  REQUIRE(g.size() == 2);
  CHECK(g[0].key == "theta");
  CHECK(g[0].count == 64);
  CHECK(g[1].stop == 6.283);
  const auto v = g[0].values();
  CHECK(v.front() == 0.001);
  CHECK(v.back() == 3.1406);
  CHECK_THROWS_AS(parse_grid("theta=0:1"), ConfigError);
  CHECK_THROWS_AS(parse_grid("theta=0:1:2.5"), ConfigError);
  CHECK_THROWS_AS(parse_grid("theta=0:1:0"), ConfigError);

  ScanConfig c = kerr_config(0.5, 2);
  c.grid = parse_grid("theta=1:0.5:4");
  CHECK_THROWS_AS(validate(c), ConfigError);
  c.grid = parse_grid("theta=1:1:1");
  CHECK_NOTHROW(validate(c));
  c.tol.umb = 0;
  CHECK_THROWS_AS(validate(c), ConfigError);
}

TEST_CASE("tolerance overrides") {
  Tolerances t;
  t.set("umb", 1e-6);
  CHECK(t.umb == 1e-6);
  CHECK_THROWS_AS(t.set("nope", 1), ConfigError);
  CHECK_THROWS_AS(t.set("w", -1), ConfigError);
  setenv("SUBSHEAR_TOL_UMB", "3e-7", 1);
  CHECK(Tolerances::from_environment().umb == 3e-7);
  unsetenv("SUBSHEAR_TOL_UMB");
  CHECK(Tolerances::from_environment().umb == 1e-8);
}

TEST_CASE("horizon scan") {
  ScanConfig c = kerr_config(0.5, kerr_r_plus(1, 0.5));
  c.grid = parse_grid("theta=0.001:3.1405:64");
  const ScanResult r = run_scan(c);
  CHECK(r.exit_code == 0);
  REQUIRE(r.records.size() == 64);
  for (const auto& rec : r.records) {
    REQUIRE(rec.ok());
    CHECK(rec.dir_exists);
    CHECK(rec.pseudo);
    CHECK(rec.ortho);
    CHECK(rec.trapped == TrappedStatus::marginally_trapped);
  }
  CHECK(r.summary.counts.at("direction_exists") == 64);
  CHECK(r.summary.trapped == TrappedStatus::marginally_trapped);

  c.grid = parse_grid("theta=0.001:3.1406:64");
  const ScanResult edge = run_scan(c);
  CHECK(edge.exit_code == 2);
  CHECK(edge.records.back().error_kind == "DomainError");
  CHECK(edge.summary.counts.at("skipped_domain") == 1);
}

TEST_CASE("sphere scan is totally umbilical") {
  ScanConfig c;
  c.metric = "euclidean4";
  c.surface = "round_sphere";
  c.surface_params = {{"R", 2}};
  c.grid = parse_grid("theta=0.2:2.9:7,phi=0:6:5");
  const ScanResult r = run_scan(c);
  CHECK(r.records.size() == 35);
  for (const auto& rec : r.records) CHECK(rec.tot_umb);
  CHECK(r.records[1].coords[0].second == 0.2);
  CHECK(r.records[1].coords[1].second == 1.5);
}

TEST_CASE("scan error handling") {
  ScanConfig c;
  c.metric = "minkowski4";
  c.surface = "graph";
  c.surface_params = {{"c1_0", 2.0}};
  const ScanResult r = run_scan(c);
  CHECK(r.exit_code == 1);
  CHECK(r.records[0].error_kind == "NotSpacelikeError");

  ScanConfig bad = kerr_config(0.5, 2);
  bad.grid = parse_grid("psi=0:1:3");
  CHECK_THROWS_AS(run_scan(bad), ConfigError);
  bad.grid = parse_grid("theta=0.5:1:3");
  bad.workers = 0;
  CHECK_THROWS_AS(run_scan(bad), ConfigError);
}

TEST_CASE("radial scan across the horizon") {
  ScanConfig c = kerr_config(0.5, 1.0);
  c.point = {{"theta", oracle::kPi / 4}};
  c.grid = parse_grid("r=1.5:2.5:21");
  const ScanResult r = run_scan(c);
  for (const auto& rec : r.records) CHECK_FALSE(rec.dir_exists);

  const LocusResult loc = find_umbilical_locus(c, "r", 1.5, 2.5);
  REQUIRE(loc.roots.size() == 1);
  CHECK(std::abs(loc.roots[0] - kerr_r_plus(1, 0.5)) < 1e-9);
  c.grid.clear();
  c.surface_params["r"] = loc.roots[0];
  CHECK(run_scan(c).records[0].dir_exists);
}

TEST_CASE("locus in the interior and degenerate brackets") {
  const double th = oracle::kPi / 2 - 0.3;
  ScanConfig c = kerr_config(0.5, 1.0);
  c.point = {{"theta", th}};
  const LocusResult loc = find_umbilical_locus(c, "r", 0.0, 1.0);
  // independent root of the polynomial
  double lo = 1e-6, hi = 0.1;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (kerr_commutator_polynomial(1, 0.5, mid, th) < 0 ? lo : hi) = mid;
  }
  bool found = false;
  for (double r : loc.roots) found = found || std::abs(r - lo) < 1e-6;
  CHECK(found);

  ScanConfig s = kerr_config(0.0, 3.0);
  s.point = {{"theta", 0.8}};
  CHECK(find_umbilical_locus(s, "r", 2.5, 6.0).degenerate);

  ScanConfig none = kerr_config(0.5, 3.0);
  none.point = {{"theta", 0.8}};
  CHECK_THROWS_AS(find_umbilical_locus(none, "r", 3.0, 5.0), NoRootError);
}

TEST_CASE("gaussian curvature") {
  const auto sphere = round_sphere(2.0);
  const auto euc = euclidean_metric(4);
  CHECK(std::abs(gaussian_curvature_2d(*euc, *sphere, Eigen::Vector2d(0.7, 0.1)) - 0.25) < 1e-9);
  CHECK(std::abs(gaussian_curvature_2d(*minkowski_metric(4), *flat_plane(), Eigen::Vector2d(0.7, 0.1))) < 1e-14);
  CHECK(std::abs(gaussian_curvature_2d(*euc, *flat_torus(1, 2), Eigen::Vector2d(0.7, 0.1))) < 1e-12);
  CHECK(gaussian_curvature_2d(*schwarzschild_metric(1), *const_vr_surface(0, 3), Eigen::Vector2d(1.0, 0)) ==
        doctest::Approx(1.0 / 9).epsilon(1e-12));
  for (double a : {0.3, 0.5, 0.9})
    CHECK(std::abs(gaussian_curvature_2d(*kerr_metric(1, a), *const_vr_surface(0, 0), Eigen::Vector2d(oracle::kPi / 4, 0))) <
          1e-7);
  CHECK_THROWS_AS(gaussian_curvature_2d(*euc, *sphere, Eigen::Vector2d(0, 0)), DomainError);
}

TEST_CASE("mean curvature convention") {
  ScanConfig c;
  c.metric = "euclidean4";
  c.surface = "round_sphere";
  c.surface_params = {{"R", 2}};
  c.point = {{"theta", 1.0}};
  const double averaged = run_scan(c).records[0].gHH;
  c.mean_curvature = MeanCurvatureConvention::physics;
  CHECK(run_scan(c).records[0].gHH == doctest::Approx(4 * averaged));
  CHECK(averaged == doctest::Approx(0.25));
}

TEST_CASE("reports are deterministic and round-trip") {
  ScanConfig c = kerr_config(0.7, 1.3);
  c.grid = parse_grid("theta=0.001:3.1406:16,phi=0:1:3");
  const ScanResult one = run_scan(c);
  c.workers = 4;
  const ScanResult four = run_scan(c);
  const std::string j1 = scan_json(c, one), j4 = scan_json(c, four);
  CHECK(j1 == j4);
  CHECK(j1 == scan_json(c, run_scan(c)));
  CHECK(scan_csv(one) == scan_csv(four));

  const ScanResult back = parse_scan_json(j1);
  CHECK(scan_json(c, back) == j1);
  REQUIRE(back.records.size() == one.records.size());
  for (std::size_t i = 0; i < one.records.size(); ++i) {
    const auto& a = one.records[i];
    const auto& b = back.records[i];
    CHECK(a.error_kind == b.error_kind);
    if (!a.ok()) continue;
    for (auto [x, y] : {std::pair{a.theta1, b.theta1}, {a.sigma2, b.sigma2}, {a.gHH, b.gHH}, {a.trJ, b.trJ},
                        {a.max_residual, b.max_residual}})
      CHECK(same_bits(x, y));
    for (const auto& [k, v] : a.residuals) CHECK(same_bits(v, b.residuals.at(k)));
    for (Eigen::Index k = 0; k < a.H.size(); ++k) CHECK(same_bits(a.H(k), b.H(k)));
  }
  CHECK(back.exit_code == one.exit_code);
}

TEST_CASE("csv layout") {
  ScanConfig c = kerr_config(0.5, 3);
  c.grid = parse_grid("theta=0.5:1:2");
  const std::string csv = scan_csv(run_scan(c));
  const std::string header = csv.substr(0, csv.find('\n'));
  CHECK(header ==
        "theta,theta1,theta2,sigma1,sigma2,gHH,trB,trJ,dir_exists,tot_umb,pseudo,ortho,subgeo,causal,trapped,max_residual");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(parse_report_format("text") == ReportFormat::text);
  CHECK_THROWS_AS(parse_report_format("xml"), ConfigError);
}
