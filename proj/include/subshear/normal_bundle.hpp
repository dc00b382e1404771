#pragma once

// The Hodge dual on the normal plane of an ExtrinsicState, the dual of the
// mean curvature vector and null-frame data in the Lorentzian case.

#include <Eigen/Core>

#include <optional>

#include "subshear/extrinsic.hpp"
#include "subshear/normal_frame.hpp"

namespace subshear {

/// *nu at the state's point. Throws NotNormalError for non-normal input.
Eigen::VectorXd star(const ExtrinsicState& state, const Eigen::VectorXd& nu,
                     const Tolerances& tol = {});

/// Null frame (k, l) built from the state's orthonormal frame, with the null
/// shape and shear operators and the null expansions.
struct NullData {
  NormalFrame frame;
  SymmetricOperator A_k, A_l;
  SymmetricOperator S_k, S_l;
  double theta_k = 0.0;
  double theta_l = 0.0;
};

/// Throws SignatureError unless the normal signature is (-,+).
NullData null_data(const ExtrinsicState& state);

struct StarHResult {
  NormalVector star_H;
  double theta_star_H = 0.0;  // tr A_{*H}
  std::optional<NullData> null;
};

StarHResult star_H_and_null_expansions(const ExtrinsicState& state, const Tolerances& tol = {});

}  // namespace subshear
