#pragma once

#include <string>

namespace subshear {

/// Numerical thresholds shared by every module.
///
/// `umb` is relative: the absolute "zero operator" threshold at a point is
/// `umb * max(1, |A_1| + |A_2|)` (see ExtrinsicState::umbilic_scale).
struct Tolerances {
  double sym = 1e-10;    // symmetry of self-adjoint operators
  double chris = 1e-8;   // Christoffel reassembly residual
  double eig = 1e-12;    // eigen-decomposition residual
  double inv = 1e-12;    // reciprocal condition number floor for the metric
  double w = 1e-9;       // Weingarten / frame / identity residuals
  double umb = 1e-8;     // umbilicity, relative to the extrinsic scale
  double pd = 1e-12;     // positive-definiteness and frame pivots

  /// Defaults with SUBSHEAR_TOL_UMB applied when it is set.
  static Tolerances from_environment();

  /// Sets a field by name; throws ConfigError on unknown keys or values <= 0.
  void set(const std::string& key, double value);
};

}  // namespace subshear
