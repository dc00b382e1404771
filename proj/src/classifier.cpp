#include "subshear/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "subshear/errors.hpp"

namespace subshear {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

Check make_check(double residual, double threshold) { return {residual <= threshold, residual, threshold}; }

double linear_threshold(const ExtrinsicState& s, const Tolerances& tol) { return tol.umb * s.umbilic_scale(); }

double quadratic_threshold(const ExtrinsicState& s, const Tolerances& tol) {
  const double scale = s.umbilic_scale();
  return tol.umb * scale * scale;
}

// |b| times the part of a orthogonal to b, with b the larger of the two:
// the area of the parallelogram spanned by a and b, computed without the
// cancellation of |a|^2 |b|^2 - <a,b>^2.
double parallelogram(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const double na = a.norm(), nb = b.norm();
  const Eigen::MatrixXd& big = na >= nb ? a : b;
  const Eigen::MatrixXd& small = na >= nb ? b : a;
  const double nbig = std::max(na, nb);
  if (nbig == 0) return 0.0;
  const Eigen::MatrixXd perp = small - (operator_inner(small, big) / (nbig * nbig)) * big;
  return nbig * perp.norm();
}

Eigen::Vector2d star_coefficients(const NormalFrame& f, const Eigen::Vector2d& c) {
  return {-f.eps[0] * c(1), f.eps[1] * c(0)};
}

}  // namespace

const char* to_string(CausalCharacter c) {
  switch (c) {
    case CausalCharacter::timelike: return "timelike";
    case CausalCharacter::spacelike: return "spacelike";
    case CausalCharacter::null: return "null";
    case CausalCharacter::undefined: return "undefined";
  }
  return "undefined";
}

const char* to_string(TrappedStatus s) {
  switch (s) {
    case TrappedStatus::trapped: return "trapped";
    case TrappedStatus::marginally_trapped: return "marginally_trapped";
    case TrappedStatus::untrapped: return "untrapped";
    case TrappedStatus::mixed: return "mixed";
    case TrappedStatus::minimal: return "minimal";
    case TrappedStatus::not_applicable: return "not_applicable";
  }
  return "not_applicable";
}

const char* to_string(Tristate t) {
  switch (t) {
    case Tristate::no: return "false";
    case Tristate::yes: return "true";
    case Tristate::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

Check is_umbilical_wrt(const ExtrinsicState& state, const Eigen::VectorXd& nu, const Tolerances& tol) {
  const Eigen::Vector2d c = state.coefficients(nu);
  const double size = c.norm();
  if (!(size > tol.pd)) throw ZeroVectorError("is_umbilical_wrt: normal vector is zero");
  return make_check(state.shear_along(c).norm(), linear_threshold(state, tol) * size);
}

DirectionDiagnostics direction_exists(const ExtrinsicState& state, const Tolerances& tol) {
  const double q = quadratic_threshold(state, tol);
  const auto& s1 = state.shear[0];
  const auto& s2 = state.shear[1];
  const int n = state.n;
  DirectionDiagnostics d;

  d.commutator = make_check(commutator(state.shape[0], state.shape[1]).norm(), q);

  double comp = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
          comp = std::max(comp, std::abs(s1(i, j) * s2(r, s) - s2(i, j) * s1(r, s)));
  d.components = make_check(comp, q);

  const double p = operator_inner(s1, s2);
  const double ss = operator_inner(s1, s1) * operator_inner(s2, s2);
  const double gap = std::abs(p * p - ss);
  d.scalar_product_normalized = gap / std::max(1.0, ss);
  // Allow for the rounding of the two products before comparing with q^2.
  const double allowance = std::max(q * q, 64 * kEps * ss);
  d.scalar_product = make_check(std::sqrt(gap), std::sqrt(allowance));

  const double n1 = s1.norm(), n2 = s2.norm();
  const double big = std::max(n1, n2);
  double recon = 0.0;
  if (big > 0) {
    const Eigen::MatrixXd at = (n1 >= n2 ? s1 : s2) / big;
    for (const auto* sk : {&s1, &s2})
      recon = std::max(recon, (*sk - operator_inner(*sk, at) * at).norm());
  }
  d.reconstruction = make_check(big * recon, q);

  d.exists = n == 2 ? d.commutator.value : (d.components.value && d.scalar_product.value);

  bool any_clear_no = false, any_yes = false;
  std::vector<const Check*> checks{&d.components, &d.scalar_product, &d.reconstruction};
  if (n == 2 || d.exists) checks.push_back(&d.commutator);
  for (const Check* c : checks) {
    if (c->value) any_yes = true;
    else if (c->residual > 10 * c->threshold) any_clear_no = true;
  }
  d.consistent = !(any_yes && any_clear_no);
  return d;
}

DirectionResult compute_G_and_direction(const ExtrinsicState& state, const Tolerances& tol) {
  if (!direction_exists(state, tol).exists)
    throw NoDirectionError("no umbilical direction: shear operators are not proportional");
  const int n = state.n;
  const auto& f = state.normal;
  DirectionResult out;
  const int big = state.sigma[0] >= state.sigma[1] ? 0 : 1;
  const double lin = linear_threshold(state, tol);
  if (state.sigma[big] <= lin) {
    out.totally_umbilical = true;
    out.G = state.make_normal(Eigen::VectorXd::Zero(state.ambient_metric.rows()));
    return out;
  }

  out.A_tilde = n * state.shear[big] / state.sigma[big];
  const double cut = tol.umb * n;
  for (int i = 0; i < n * n; ++i) {
    const double x = out.A_tilde(i / n, i % n);
    if (std::abs(x) > cut) {
      if (x < 0) out.A_tilde = -out.A_tilde;
      break;
    }
  }
  for (int k = 0; k < 2; ++k) out.sigma[k] = operator_inner(state.shear[k], out.A_tilde) / n;

  out.G = state.make_normal((f.eps[0] * out.sigma[0] * f.first + f.eps[1] * out.sigma[1] * f.second) / n);
  out.direction = state.make_normal(f.eps[0] * f.eps[1] * (out.sigma[0] * f.second - out.sigma[1] * f.first) / n);
  for (int k = 0; k < 2; ++k)
    out.reconstruction_residual = std::max(
        out.reconstruction_residual, (state.shear[k] - out.sigma[k] / n * out.A_tilde).norm());
  return out;
}

EigenOracle eigen_direction_oracle(const ExtrinsicState& state, const Tolerances& tol) {
  const double comm = commutator(state.shape[0], state.shape[1]).norm();
  if (comm > 10 * quadratic_threshold(state, tol))
    throw NotCommutingError("eigen_direction_oracle: shape operators do not commute (|[A1,A2]| = " +
                            std::to_string(comm) + ")");
  const int n = state.n;
  SymmetricEigen best;
  double best_gap = -1.0;
  for (double w : {0.618, 1.414, -0.35}) {
    const Eigen::MatrixXd m = state.shape[0] + w * state.shape[1];
    SymmetricEigen e = eigen_symmetric(0.5 * (m + m.transpose()), {}, tol.sym);
    double g = std::numeric_limits<double>::infinity();
    for (int i = 1; i < n; ++i) g = std::min(g, e.values(i) - e.values(i - 1));
    if (g > best_gap) {
      best_gap = g;
      best = std::move(e);
    }
  }
  EigenOracle out;
  out.lambda.resize(n);
  out.mu.resize(n);
  const auto& f = state.normal;
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd q = best.vectors.col(i);
    out.lambda(i) = q.dot(state.shape[0] * q);
    out.mu(i) = q.dot(state.shape[1] * q);
    const Eigen::VectorXd eta = (out.mu(i) - state.theta[1] / n) * f.first -
                                (out.lambda(i) - state.theta[0] / n) * f.second;
    out.sum_norms += state.dot(eta, eta);
    out.eta.push_back(eta);
  }
  return out;
}

double normal_angle(const ExtrinsicState& state, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::Vector2d ca = state.coefficients(a);
  const Eigen::Vector2d cb = state.coefficients(b);
  if (ca.norm() == 0 || cb.norm() == 0) return 0.0;
  const double cross = ca(0) * cb(1) - ca(1) * cb(0);
  return std::atan2(std::abs(cross), std::abs(ca.dot(cb)));
}

PseudoOrtho classify_pseudo_ortho(const ExtrinsicState& state, const Tolerances& tol) {
  const double lin = linear_threshold(state, tol);
  const double quad = quadratic_threshold(state, tol);
  const auto& f = state.normal;
  const Eigen::Vector2d ch = state.coefficients(state.H.components);
  const double nh = ch.norm();
  PseudoOrtho out;
  out.h_vanishes = nh <= lin;
  out.pseudo_casorati = make_check((state.B - state.J - state.shape_along(ch)).norm(), quad);
  out.proportional = make_check(parallelogram(state.shape[0], state.shape[1]), quad);

  if (out.h_vanishes) {
    out.pseudo = {true, 0.0, lin};
    out.ortho = {true, 0.0, lin};
    out.ortho_wedge = {true, 0.0, lin};
    out.subgeodesic = Tristate::indeterminate;
    return out;
  }

  const Eigen::Vector2d unit = ch / nh;
  out.pseudo = make_check(state.shear_along(unit).norm(), lin);
  out.ortho = make_check(state.shape_along(star_coefficients(f, unit)).norm(), lin);

  const Eigen::MatrixXd& g = state.ambient_metric;
  const Eigen::VectorXd h_flat = g * state.normal_vector(unit);
  const Eigen::VectorXd x1 = g * f.first, x2 = g * f.second;
  const double unit_area = (x1 * x2.transpose() - x2 * x1.transpose()).norm();
  double sum = 0.0;
  for (int i = 0; i < state.n; ++i)
    for (int j = 0; j < state.n; ++j) {
      const Eigen::VectorXd w = g * state.second_fundamental(i, j);
      sum += (w * h_flat.transpose() - h_flat * w.transpose()).squaredNorm();
    }
  out.ortho_wedge = make_check(std::sqrt(sum) / unit_area, lin);
  out.subgeodesic = out.proportional.value ? Tristate::yes : Tristate::no;
  return out;
}

CausalResult causal_character(const ExtrinsicState& state, const DirectionDiagnostics& direction,
                              const DirectionResult& G, const Tolerances& tol) {
  if (!(state.normal.eps[0] == -1 && state.normal.eps[1] == 1))
    throw SignatureError("causal_character: normal signature must be (-,+)");
  if (!direction.exists) throw NoDirectionError("causal_character: no umbilical direction");
  CausalResult out;
  out.trace_J = state.J.trace();
  out.trace_B_minus_nHH = state.B.trace() - state.n * state.H.norm2;
  const double quad = quadratic_threshold(state, tol);
  const double scale = state.umbilic_scale();
  out.cross_check = std::abs(out.trace_B_minus_nHH - out.trace_J) <= std::max(tol.w, tol.umb) * scale * scale;
  if (G.totally_umbilical) return out;
  if (std::abs(out.trace_J) <= quad) out.character = CausalCharacter::null;
  else out.character = out.trace_J > 0 ? CausalCharacter::timelike : CausalCharacter::spacelike;
  return out;
}

TrappedResult trapped_status(const ExtrinsicState& state, const Tolerances& tol) {
  TrappedResult out;
  if (!(state.normal.eps[0] == -1 && state.normal.eps[1] == 1)) return out;
  const NullData nd = null_data(state);
  out.theta_k = nd.theta_k;
  out.theta_l = nd.theta_l;
  const double lin = linear_threshold(state, tol);
  const bool zk = std::abs(nd.theta_k) <= lin;
  const bool zl = std::abs(nd.theta_l) <= lin;
  const bool h_zero = state.coefficients(state.H.components).norm() <= lin;
  if (h_zero || (zk && zl)) out.status = TrappedStatus::minimal;
  else if (zk != zl) out.status = TrappedStatus::marginally_trapped;
  else out.status = nd.theta_k * nd.theta_l > 0 ? TrappedStatus::trapped : TrappedStatus::untrapped;

  const bool causal = out.status == TrappedStatus::trapped || out.status == TrappedStatus::marginally_trapped;
  if (causal && state.future_reference.size() == state.ambient_metric.rows())
    out.future_H = state.dot(state.H.components, state.future_reference) < 0;
  return out;
}

DegeneracyReport pseudo_ortho_degeneracy(const ExtrinsicState& state, const Tolerances& tol) {
  const double quad = quadratic_threshold(state, tol);
  const PseudoOrtho po = classify_pseudo_ortho(state, tol);
  DegeneracyReport out;
  out.gHH = state.H.norm2;
  out.degenerate = po.h_vanishes || std::max(state.sigma[0], state.sigma[1]) <= linear_threshold(state, tol);
  out.b_equals_j = (state.B - state.J).norm() <= quad;
  out.pseudo_and_ortho = po.pseudo.value && po.ortho.value;
  out.b_and_j_vanish = state.B.norm() <= quad && state.J.norm() <= quad;
  out.agree = out.degenerate || (out.b_equals_j == out.pseudo_and_ortho && out.b_equals_j == out.b_and_j_vanish);
  return out;
}

UmbilicalVerdict classify(const ExtrinsicState& state, const Tolerances& tol) {
  UmbilicalVerdict v;
  const int n = state.n;
  const auto dir = direction_exists(state, tol);
  v.direction_exists = dir.exists;
  v.diagnostics_consistent = dir.consistent;
  v.sigma = state.sigma;
  v.G = state.make_normal(Eigen::VectorXd::Zero(state.ambient_metric.rows()));

  auto& r = v.residuals;
  r["commutator"] = dir.commutator.residual;
  r["components"] = dir.components.residual;
  r["scalar_product"] = dir.scalar_product.residual;
  r["scalar_product_normalized"] = dir.scalar_product_normalized;
  r["reconstruction"] = dir.reconstruction.residual;
  r["total_shear"] = std::hypot(state.sigma[0], state.sigma[1]);

  if (dir.exists) {
    const DirectionResult d = compute_G_and_direction(state, tol);
    v.totally_umbilical = d.totally_umbilical;
    v.G = d.G;
    v.umbilical_direction = d.direction;
    if (!d.totally_umbilical) {
      v.A_tilde = d.A_tilde;
      v.sigma = d.sigma;
      v.sigma_signed = true;
    }
    if (state.normal.eps[0] == -1 && state.normal.eps[1] == 1) {
      const CausalResult c = causal_character(state, dir, d, tol);
      v.causal_character = c.character;
      r["causal_cross_check"] = std::abs(c.trace_B_minus_nHH - c.trace_J);
    }
  }

  const PseudoOrtho po = classify_pseudo_ortho(state, tol);
  v.pseudo_umbilical = po.pseudo.value;
  v.ortho_umbilical = po.ortho.value;
  v.subgeodesic = po.subgeodesic;
  r["pseudo"] = po.pseudo.residual;
  r["pseudo_casorati"] = po.pseudo_casorati.residual;
  r["ortho"] = po.ortho.residual;
  r["ortho_wedge"] = po.ortho_wedge.residual;
  r["proportional"] = po.proportional.residual;

  v.trapped = trapped_status(state, tol);

  const StarHResult sh = star_H_and_null_expansions(state, tol);
  r["theta_star_H"] = std::abs(sh.theta_star_H);
  const Eigen::Vector2d ch = state.coefficients(state.H.components);
  const Eigen::MatrixXd identity = state.B - state.J - 2 * state.shear_along(ch) - state.H.norm2 * state.identity();
  r["casorati_identity"] = identity.norm();
  r["trace_BJ"] = std::abs((state.B - state.J).trace() - n * state.H.norm2);
  if (sh.null) {
    r["null_B"] = (state.B + anticommutator(sh.null->A_k, sh.null->A_l)).norm();
    r["null_J"] = (state.J + anticommutator(sh.null->S_k, sh.null->S_l)).norm();
  }
  return v;
}

}  // namespace subshear
