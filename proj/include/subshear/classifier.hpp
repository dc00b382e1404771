#pragma once

// Pointwise umbilical classification of a co-dimension-2 spacelike
// submanifold from its ExtrinsicState.
//
// Thresholds. With s = state.umbilic_scale(), a linear quantity (shape or
// shear operator along a unit-coefficient normal) counts as zero when it is
// <= tol.umb * s, a quadratic one (commutators, products of shears, B, J,
// g(H,H)) when it is <= tol.umb * s^2.

#include <Eigen/Core>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "subshear/extrinsic.hpp"
#include "subshear/normal_bundle.hpp"

namespace subshear {

enum class CausalCharacter { timelike, spacelike, null, undefined };
enum class TrappedStatus { trapped, marginally_trapped, untrapped, mixed, minimal, not_applicable };
enum class Tristate { no, yes, indeterminate };

const char* to_string(CausalCharacter c);
const char* to_string(TrappedStatus s);
const char* to_string(Tristate t);

struct Check {
  bool value = false;
  double residual = 0.0;
  double threshold = 0.0;
};

/// Umbilicity along nu: |shear along nu| <= tol.umb * s * |c(nu)|, where c are
/// the frame coefficients of nu. Throws ZeroVectorError if |c| <= tol.pd.
Check is_umbilical_wrt(const ExtrinsicState& state, const Eigen::VectorXd& nu,
                       const Tolerances& tol = {});

/// The equivalent conditions for the existence of an umbilical direction,
/// each reduced to a defect with the units of a product of two shears.
struct DirectionDiagnostics {
  Check commutator;       // |[A1, A2]|
  Check components;       // max |S1_ij S2_rs - S2_ij S1_rs|
  Check scalar_product;   // sqrt| <S1,S2>^2 - s1^2 s2^2 |
  Check reconstruction;   // sigma_max * max_k |S_k - (sigma_k/n) A~|
  double scalar_product_normalized = 0.0;  // |<S1,S2>^2 - s1^2 s2^2| / max(1, s1^2 s2^2)
  bool exists = false;
  /// False when conditions disagree and some residual exceeds 10x its threshold.
  bool consistent = true;
};

/// For n = 2 the commutator decides; otherwise conditions (iv) and (v) do.
DirectionDiagnostics direction_exists(const ExtrinsicState& state, const Tolerances& tol = {});

struct DirectionResult {
  bool totally_umbilical = false;
  SymmetricOperator A_tilde;       // <A~, A~> = n^2; empty when totally umbilical
  std::array<double, 2> sigma{};   // signed with A~_k = (sigma_k / n) A~
  NormalVector G;
  std::optional<NormalVector> direction;  // *G
  double reconstruction_residual = 0.0;
};

/// Sign convention: A~ is the normalised larger frame shear, its first
/// non-negligible entry (row-major) made positive. Throws NoDirectionError
/// when no umbilical direction exists.
DirectionResult compute_G_and_direction(const ExtrinsicState& state, const Tolerances& tol = {});

/// Umbilical normals eta_i from a simultaneous eigenbasis of A1 and A2.
/// Throws NotCommutingError if |[A1, A2]| > 10 tol.umb s^2.
struct EigenOracle {
  Eigen::VectorXd lambda, mu;
  std::vector<Eigen::VectorXd> eta;  // ambient components
  double sum_norms = 0.0;            // sum g(eta_i, eta_i)
};
EigenOracle eigen_direction_oracle(const ExtrinsicState& state, const Tolerances& tol = {});

/// Angle in the normal plane, measured on frame coefficients, between the
/// lines spanned by two normal vectors.
double normal_angle(const ExtrinsicState& state, const Eigen::VectorXd& a, const Eigen::VectorXd& b);

struct PseudoOrtho {
  bool h_vanishes = false;  // |H| below the linear threshold
  Check pseudo;             // shear along H/|H|
  Check pseudo_casorati;    // |B - J - A_H|, quadratic
  Check ortho;              // |A_{*H}| along the unit-coefficient *H
  Check ortho_wedge;        // same quantity through ambient one-forms
  Check proportional;       // A1, A2 linearly dependent, quadratic defect
  Tristate subgeodesic = Tristate::indeterminate;
};
PseudoOrtho classify_pseudo_ortho(const ExtrinsicState& state, const Tolerances& tol = {});

struct CausalResult {
  CausalCharacter character = CausalCharacter::undefined;
  double trace_J = 0.0;
  double trace_B_minus_nHH = 0.0;
  bool cross_check = true;
};
/// Throws SignatureError unless the normal signature is (-,+) and
/// NoDirectionError when no umbilical direction exists.
CausalResult causal_character(const ExtrinsicState& state, const DirectionDiagnostics& direction,
                              const DirectionResult& G, const Tolerances& tol = {});

struct TrappedResult {
  TrappedStatus status = TrappedStatus::not_applicable;
  double theta_k = 0.0;
  double theta_l = 0.0;
  /// Whether H points to the future; empty when H is zero or not causal.
  std::optional<bool> future_H;
};
TrappedResult trapped_status(const ExtrinsicState& state, const Tolerances& tol = {});

struct DegeneracyReport {
  bool degenerate = false;  // H = 0 or totally umbilical
  bool b_equals_j = false;
  bool pseudo_and_ortho = false;
  bool b_and_j_vanish = false;
  bool agree = true;
  double gHH = 0.0;
};
DegeneracyReport pseudo_ortho_degeneracy(const ExtrinsicState& state, const Tolerances& tol = {});

struct UmbilicalVerdict {
  bool totally_umbilical = false;
  bool direction_exists = false;
  std::optional<NormalVector> umbilical_direction;
  CausalCharacter causal_character = CausalCharacter::undefined;
  NormalVector G;
  std::optional<SymmetricOperator> A_tilde;
  std::array<double, 2> sigma{};
  bool sigma_signed = false;
  bool pseudo_umbilical = false;
  bool ortho_umbilical = false;
  Tristate subgeodesic = Tristate::indeterminate;
  TrappedResult trapped;
  bool diagnostics_consistent = true;
  std::map<std::string, double> residuals;
};

UmbilicalVerdict classify(const ExtrinsicState& state, const Tolerances& tol = {});

}  // namespace subshear
