#pragma once

// Grid scans over surface families, umbilical-locus root finding and the
// intrinsic Gaussian curvature of surfaces.

#include <Eigen/Core>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subshear/catalog.hpp"
#include "subshear/classifier.hpp"
#include "subshear/extrinsic.hpp"

namespace subshear {

struct GridAxis {
  std::string key;
  double start = 0.0;
  double stop = 0.0;
  int count = 1;

  std::vector<double> values() const;
};

enum class MeanCurvatureConvention { averaged, physics };

struct ScanConfig {
  std::string metric;
  ParamMap metric_params;
  std::string surface;
  ParamMap surface_params;
  /// Fixed surface coordinates; coordinates neither here nor on the grid
  /// default to 0 clamped into the parameter domain.
  ParamMap point;
  /// Keys are surface coordinates, surface parameters or metric parameters.
  std::vector<GridAxis> grid;
  Tolerances tol = Tolerances::from_environment();
  ShapeSign sign = ShapeSign::kinematic;
  int orientation = +1;
  MeanCurvatureConvention mean_curvature = MeanCurvatureConvention::averaged;
  int workers = 1;
};

/// "m=1,a=0.5" -> {m: 1, a: 0.5}. Throws ConfigError naming the bad field.
ParamMap parse_params(const std::string& text);
/// "theta=0.001:3.14:64,phi=0:6.28:8". Throws ConfigError.
std::vector<GridAxis> parse_grid(const std::string& text);
/// Throws ConfigError on empty names, bad grids or bad tolerances.
void validate(const ScanConfig& config);

/// Everything reported about one grid point.
struct ClassificationRecord {
  std::vector<std::pair<std::string, double>> coords;
  Eigen::VectorXd surface_point;

  // Empty on success; otherwise the error category and message.
  std::string error_kind;
  std::string error;

  double theta1 = 0, theta2 = 0;
  double sigma1 = 0, sigma2 = 0;
  double gHH = 0, trB = 0, trJ = 0;
  double theta_k = 0, theta_l = 0;
  Eigen::VectorXd H;  // ambient components, convention applied
  std::optional<Eigen::VectorXd> direction;
  std::array<int, 2> eps{1, 1};

  bool dir_exists = false;
  bool tot_umb = false;
  bool pseudo = false;
  bool ortho = false;
  bool sigma_signed = false;
  Tristate subgeo = Tristate::indeterminate;
  CausalCharacter causal = CausalCharacter::undefined;
  TrappedStatus trapped = TrappedStatus::not_applicable;
  std::optional<bool> future_H;
  bool consistent = true;

  double max_residual = 0.0;
  std::map<std::string, double> residuals;

  bool ok() const { return error_kind.empty(); }
};

struct ScanSummary {
  std::map<std::string, int> counts;
  std::map<std::string, double> max_residuals;
  /// Aggregate trapped status; "mixed" when points disagree.
  TrappedStatus trapped = TrappedStatus::not_applicable;
};

struct ScanResult {
  std::vector<ClassificationRecord> records;
  ScanSummary summary;
  /// 0 success, 2 when some points were skipped with DomainError only,
  /// 1 when any other error occurred.
  int exit_code = 0;
};

/// Classifies one surface point under the config's options.
ClassificationRecord classify_point(const AmbientMetric& metric, const Immersion& immersion,
                                    const Eigen::VectorXd& u, const ScanConfig& config);

ScanResult run_scan(const ScanConfig& config);

/// Residual names that are identities (expected to vanish at every point).
const std::vector<std::string>& identity_residuals();

struct LocusResult {
  std::string free_param;
  std::vector<double> roots;
  bool degenerate = false;  // residual vanishes on the whole bracket
  std::string surrogate;    // "commutator" or "scalar_product"
  std::vector<std::pair<double, double>> samples;
};

/// Roots of the umbilicity residual along one free parameter with every other
/// value fixed by `config` (grid axes are ignored). For n = 2 the signed
/// commutator entry [A1, A2]_{12} is bisected at each sign change and
/// minimised near double roots; otherwise the normalised scalar-product
/// residual is minimised. Simple roots are bisected to ~1e-13; double roots
/// are only as sharp as the residual's flatness allows.
/// Throws NoRootError when nothing qualifies.
LocusResult find_umbilical_locus(const ScanConfig& config, const std::string& free_param,
                                 double lo, double hi, int samples = 200);

/// Signed commutator entry for n = 2 (unsigned residual otherwise) and its
/// zero threshold at one point.
std::pair<double, double> locus_residual(const AmbientMetric& metric, const Immersion& immersion,
                                         const Eigen::VectorXd& u, const ScanConfig& config);

/// Gaussian curvature of the induced metric of a surface (n = 2) from the
/// Brioschi formula, with all derivatives from nested dual numbers.
double gaussian_curvature_2d(const AmbientMetric& metric, const Immersion& immersion,
                             const Eigen::VectorXd& u);

/// Metric, immersion and surface point for a config with extra overrides
/// (grid values or a free parameter) applied.
struct ResolvedPoint {
  MetricPtr metric;
  ImmersionPtr immersion;
  Eigen::VectorXd u;
};
ResolvedPoint resolve(const ScanConfig& config, const ParamMap& overrides);

}  // namespace subshear
