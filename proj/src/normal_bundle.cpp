#include "subshear/normal_bundle.hpp"

#include "subshear/errors.hpp"

namespace subshear {

Eigen::VectorXd star(const ExtrinsicState& state, const Eigen::VectorXd& nu, const Tolerances& tol) {
  return hodge_dual(state.normal, state.ambient_metric, state.tangent.vectors, nu, tol);
}

NullData null_data(const ExtrinsicState& state) {
  NullData out;
  out.frame = to_null_frame(state.normal);
  out.A_k = state.shape_along(out.frame.first);
  out.A_l = state.shape_along(out.frame.second);
  out.S_k = trace_free(out.A_k);
  out.S_l = trace_free(out.A_l);
  out.theta_k = out.A_k.trace();
  out.theta_l = out.A_l.trace();
  return out;
}

StarHResult star_H_and_null_expansions(const ExtrinsicState& state, const Tolerances& tol) {
  StarHResult out;
  out.star_H = state.make_normal(star(state, state.H.components, tol));
  out.theta_star_H = state.shape_along(out.star_H.components).trace();
  if (state.normal.lorentzian()) out.null = null_data(state);
  return out;
}

}  // namespace subshear
