#include "subshear/immersion.hpp"

#include <sstream>

#include "subshear/errors.hpp"

namespace subshear {

void Immersion::check_domain(const Eigen::VectorXd& u) const {
  if (u.size() != dimension())
    throw DimensionMismatch("immersion '" + name() + "' expects " + std::to_string(dimension()) +
                            " parameters, got " + std::to_string(u.size()));
  const Eigen::VectorXd lo = lower_bounds();
  const Eigen::VectorXd hi = upper_bounds();
  const auto names = coordinate_names();
  for (int i = 0; i < u.size(); ++i) {
    if (!(u(i) >= lo(i) && u(i) <= hi(i))) {
      std::ostringstream os;
      os << "immersion '" << name() << "': " << names[i] << " = " << u(i) << " outside [" << lo(i)
         << ", " << hi(i) << "]";
      throw DomainError(os.str());
    }
  }
}

ImmersionJet immersion_jet(const Immersion& immersion, const Eigen::VectorXd& u) {
  immersion.check_domain(u);
  const int n = immersion.dimension();
  const int dim = immersion.ambient_dimension();
  const auto vars = seed_variables<Dual>(u);
  DenseVector<Dual> ud(n);
  for (int i = 0; i < n; ++i) ud(i) = vars[i];
  const DenseVector<Dual> x = immersion.map(ud);
  if (x.size() != dim) throw DimensionMismatch("immersion '" + immersion.name() + "' has wrong ambient dimension");

  ImmersionJet jet;
  jet.parameters = u;
  jet.point.resize(dim);
  jet.tangents.resize(dim, n);
  jet.second.assign(dim, Eigen::MatrixXd::Zero(n, n));
  for (int a = 0; a < dim; ++a) {
    jet.point(a) = x(a).value();
    for (int i = 0; i < n; ++i) {
      jet.tangents(a, i) = x(a).d(i);
      for (int j = 0; j < n; ++j) jet.second[a](i, j) = x(a).dd(i, j);
    }
  }
  return jet;
}

}  // namespace subshear
