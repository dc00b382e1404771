#include "subshear/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <regex>
#include <set>
#include <sstream>

#include "subshear/errors.hpp"

namespace subshear {

namespace {

using std::cos;
using std::sin;
using std::sqrt;

constexpr double kPi = std::numbers::pi;

void require_size(const std::string& who, const Eigen::VectorXd& x, int dim) {
  if (x.size() != dim)
    throw DimensionMismatch(who + ": expected " + std::to_string(dim) + " coordinates, got " +
                            std::to_string(x.size()));
  for (int i = 0; i < x.size(); ++i)
    if (!std::isfinite(x(i))) throw DomainError(who + ": non-finite coordinate");
}

struct Flat {
  int dim;
  int negative;
  std::string label;

  std::string name() const { return label; }
  int dimension() const { return dim; }
  Signature signature() const { return {negative, dim - negative, 0}; }
  Eigen::VectorXd future_reference(const Eigen::VectorXd&) const {
    if (negative == 0) return {};
    return Eigen::VectorXd::Unit(dim, 0);
  }
  void check_domain(const Eigen::VectorXd& x) const { require_size(label, x, dim); }
  template <class T>
  DenseMatrix<T> evaluate(const DenseVector<T>&) const {
    DenseMatrix<T> g = DenseMatrix<T>::Constant(dim, dim, T(0.0));
    for (int i = 0; i < dim; ++i) g(i, i) = T(i < negative ? -1.0 : 1.0);
    return g;
  }
};

struct KerrDomain {
  std::string label;
  double a;
  double theta_min;

  void check(const Eigen::VectorXd& x) const {
    require_size(label, x, 4);
    const double r = x(1), th = x(2);
    if (th < theta_min || th > kPi - theta_min) {
      std::ostringstream os;
      os << label << ": theta = " << th << " outside [" << theta_min << ", " << kPi - theta_min
         << "]";
      throw DomainError(os.str());
    }
    const double rho = std::sqrt(r * r + a * a * std::cos(th) * std::cos(th));
    if (!(rho > kKerrRhoMin)) {
      std::ostringstream os;
      os << label << ": rho = " << rho << " at r = " << r << ", theta = " << th
         << " lies on the ring singularity";
      throw DomainError(os.str());
    }
  }
};

struct Kerr {
  double m, a, theta_min;

  std::string name() const { return "kerr_kerr_coords"; }
  int dimension() const { return 4; }
  Signature signature() const { return {1, 3, 0}; }
  Eigen::VectorXd future_reference(const Eigen::VectorXd&) const {
    return -Eigen::VectorXd::Unit(4, 1);
  }
  void check_domain(const Eigen::VectorXd& x) const { KerrDomain{name(), a, theta_min}.check(x); }
  template <class T>
  DenseMatrix<T> evaluate(const DenseVector<T>& x) const {
    const T& r = x(1);
    const T& th = x(2);
    const T s = sin(th), c = cos(th);
    const T s2 = s * s;
    const T rho2 = r * r + a * a * c * c;
    const T delta = r * r - 2.0 * m * r + a * a;
    const T ra = r * r + a * a;
    DenseMatrix<T> g = DenseMatrix<T>::Constant(4, 4, T(0.0));
    g(0, 0) = -(1.0 - 2.0 * m * r / rho2);
    g(0, 1) = g(1, 0) = T(1.0);
    g(0, 3) = g(3, 0) = -2.0 * a * m * r * s2 / rho2;
    g(1, 3) = g(3, 1) = -a * s2;
    g(2, 2) = rho2;
    g(3, 3) = (ra * ra - a * a * delta * s2) * s2 / rho2;
    return g;
  }
};

struct Schwarzschild {
  double m, theta_min;

  std::string name() const { return "schwarzschild_kerr_coords"; }
  int dimension() const { return 4; }
  Signature signature() const { return {1, 3, 0}; }
  Eigen::VectorXd future_reference(const Eigen::VectorXd&) const {
    return -Eigen::VectorXd::Unit(4, 1);
  }
  void check_domain(const Eigen::VectorXd& x) const { KerrDomain{name(), 0.0, theta_min}.check(x); }
  template <class T>
  DenseMatrix<T> evaluate(const DenseVector<T>& x) const {
    const T& r = x(1);
    const T s = sin(x(2));
    DenseMatrix<T> g = DenseMatrix<T>::Constant(4, 4, T(0.0));
    g(0, 0) = 2.0 * m / r - 1.0;
    g(0, 1) = g(1, 0) = T(1.0);
    g(2, 2) = r * r;
    g(3, 3) = r * r * s * s;
    return g;
  }
};

struct PolarTest {
  double c;

  std::string name() const { return "riemannian_test"; }
  int dimension() const { return 4; }
  Signature signature() const { return {0, 4, 0}; }
  Eigen::VectorXd future_reference(const Eigen::VectorXd&) const { return {}; }
  void check_domain(const Eigen::VectorXd& x) const {
    require_size(name(), x, 4);
    if (!(x(0) > kKerrRhoMin && x(2) > kKerrRhoMin))
      throw DomainError("riemannian_test: radial coordinates must be positive");
  }
  template <class T>
  DenseMatrix<T> evaluate(const DenseVector<T>& x) const {
    DenseMatrix<T> g = DenseMatrix<T>::Constant(4, 4, T(0.0));
    g(0, 0) = T(1.0);
    g(1, 1) = x(0) * x(0);
    g(2, 2) = T(1.0);
    g(3, 3) = x(2) * x(2);
    g(1, 3) = g(3, 1) = c * x(0) * x(2);
    return g;
  }
};

// Surfaces.

struct ConstVR {
  double v, r, theta_min;

  std::string name() const { return "const_vr_kerr"; }
  int dimension() const { return 2; }
  std::vector<std::string> coordinate_names() const { return {"theta", "phi"}; }
  Eigen::VectorXd lower_bounds() const { return Eigen::Vector2d(theta_min, -4 * kPi); }
  Eigen::VectorXd upper_bounds() const { return Eigen::Vector2d(kPi - theta_min, 4 * kPi); }
  template <class T>
  DenseVector<T> map(const DenseVector<T>& u) const {
    DenseVector<T> x(4);
    x << T(v), T(r), u(0), u(1);
    return x;
  }
};

struct Sphere {
  double radius, t, theta_min;

  std::string name() const { return "round_sphere"; }
  int dimension() const { return 2; }
  std::vector<std::string> coordinate_names() const { return {"theta", "phi"}; }
  Eigen::VectorXd lower_bounds() const { return Eigen::Vector2d(theta_min, -4 * kPi); }
  Eigen::VectorXd upper_bounds() const { return Eigen::Vector2d(kPi - theta_min, 4 * kPi); }
  template <class T>
  DenseVector<T> map(const DenseVector<T>& u) const {
    const T st = sin(u(0));
    DenseVector<T> x(4);
    x << T(t), radius * st * cos(u(1)), radius * st * sin(u(1)), radius * cos(u(0));
    return x;
  }
};

struct Plane {
  double extent;

  std::string name() const { return "flat_plane"; }
  int dimension() const { return 2; }
  std::vector<std::string> coordinate_names() const { return {"x", "y"}; }
  Eigen::VectorXd lower_bounds() const { return Eigen::Vector2d::Constant(-extent); }
  Eigen::VectorXd upper_bounds() const { return Eigen::Vector2d::Constant(extent); }
  template <class T>
  DenseVector<T> map(const DenseVector<T>& u) const {
    DenseVector<T> x(4);
    x << T(0.0), T(0.0), u(0), u(1);
    return x;
  }
};

struct Graph {
  std::array<Eigen::MatrixXd, 2> b;
  std::array<Eigen::VectorXd, 2> c;
  double extent;

  std::string name() const { return "graph"; }
  int dimension() const { return static_cast<int>(b[0].rows()); }
  std::vector<std::string> coordinate_names() const {
    std::vector<std::string> out;
    for (int i = 0; i < dimension(); ++i) out.push_back("u" + std::to_string(i));
    return out;
  }
  Eigen::VectorXd lower_bounds() const { return Eigen::VectorXd::Constant(dimension(), -extent); }
  Eigen::VectorXd upper_bounds() const { return Eigen::VectorXd::Constant(dimension(), extent); }
  template <class T>
  DenseVector<T> map(const DenseVector<T>& u) const {
    const int n = dimension();
    DenseVector<T> x(n + 2);
    for (int k = 0; k < 2; ++k) {
      T h(0.0);
      for (int i = 0; i < n; ++i) {
        h += c[k](i) * u(i);
        for (int j = 0; j < n; ++j) h += 0.5 * b[k](i, j) * u(i) * u(j);
      }
      x(k) = h;
    }
    for (int i = 0; i < n; ++i) x(i + 2) = u(i);
    return x;
  }
};

struct Torus {
  double r1, r2;

  std::string name() const { return "torus_flat_ambient"; }
  int dimension() const { return 2; }
  std::vector<std::string> coordinate_names() const { return {"u", "v"}; }
  Eigen::VectorXd lower_bounds() const { return Eigen::Vector2d::Constant(-4 * kPi); }
  Eigen::VectorXd upper_bounds() const { return Eigen::Vector2d::Constant(4 * kPi); }
  template <class T>
  DenseVector<T> map(const DenseVector<T>& u) const {
    DenseVector<T> x(4);
    x << r1 * cos(u(0)), r1 * sin(u(0)), r2 * cos(u(1)), r2 * sin(u(1));
    return x;
  }
};

std::string normalize(std::string s) {
  std::replace(s.begin(), s.end(), '-', '_');
  return s;
}

class ParamReader {
 public:
  ParamReader(std::string owner, const ParamMap& params) : owner_(std::move(owner)), params_(params) {}

  double get(const std::string& key, double fallback) {
    used_.insert(key);
    auto it = params_.find(key);
    return it == params_.end() ? fallback : it->second;
  }
  double require(const std::string& key) {
    used_.insert(key);
    auto it = params_.find(key);
    if (it == params_.end()) throw ConfigError(owner_ + ": missing parameter '" + key + "'");
    return it->second;
  }
  bool has(const std::string& key) const { return params_.count(key) > 0; }
  void mark(const std::string& key) { used_.insert(key); }
  void finish() const {
    for (const auto& [k, v] : params_)
      if (!used_.count(k)) throw ConfigError(owner_ + ": unknown parameter '" + k + "'");
  }

 private:
  std::string owner_;
  const ParamMap& params_;
  std::set<std::string> used_;
};

void check_theta_min(double theta_min) {
  if (!(theta_min > 0 && theta_min < kPi / 2)) throw ConfigError("theta_min must lie in (0, pi/2)");
}

}  // namespace

MetricPtr euclidean_metric(int dimension) {
  if (dimension < 3 || dimension > kMaxChartDim)
    throw ConfigError("euclidean dimension must lie in [3, " + std::to_string(kMaxChartDim) + "]");
  return make_metric(Flat{dimension, 0, dimension == 4 ? "euclidean4" : "euclideanN"});
}

MetricPtr minkowski_metric(int dimension) {
  if (dimension < 3 || dimension > kMaxChartDim)
    throw ConfigError("minkowski dimension must lie in [3, " + std::to_string(kMaxChartDim) + "]");
  return make_metric(Flat{dimension, 1, dimension == 4 ? "minkowski4" : "minkowskiN"});
}

MetricPtr kerr_metric(double m, double a, double theta_min) {
  if (!(m > 0)) throw ConfigError("kerr: mass m must be positive");
  check_theta_min(theta_min);
  return make_metric(Kerr{m, a, theta_min});
}

MetricPtr schwarzschild_metric(double m, double theta_min) {
  if (!(m > 0)) throw ConfigError("schwarzschild: mass m must be positive");
  check_theta_min(theta_min);
  return make_metric(Schwarzschild{m, theta_min});
}

MetricPtr riemannian_test_metric(double c) {
  if (!(std::abs(c) < 1)) throw ConfigError("riemannian_test: |c| must be < 1");
  return make_metric(PolarTest{c});
}

ImmersionPtr const_vr_surface(double v, double r, double theta_min) {
  check_theta_min(theta_min);
  return make_immersion(ConstVR{v, r, theta_min});
}

ImmersionPtr round_sphere(double radius, double t, double theta_min) {
  if (!(radius > 0)) throw ConfigError("round_sphere: radius R must be positive");
  check_theta_min(theta_min);
  return make_immersion(Sphere{radius, t, theta_min});
}

ImmersionPtr flat_plane(double extent) {
  if (!(extent > 0)) throw ConfigError("flat_plane: extent must be positive");
  return make_immersion(Plane{extent});
}

ImmersionPtr graph_surface(const Eigen::MatrixXd& b1, const Eigen::MatrixXd& b2,
                           const Eigen::VectorXd& c1, const Eigen::VectorXd& c2, double extent) {
  const auto n = b1.rows();
  if (n < 1 || n + 2 > kMaxChartDim || b1.cols() != n || b2.rows() != n || b2.cols() != n ||
      c1.size() != n || c2.size() != n)
    throw ConfigError("graph: coefficient shapes are inconsistent");
  if (!(extent > 0)) throw ConfigError("graph: extent must be positive");
  Graph g;
  g.b = {0.5 * (b1 + b1.transpose()), 0.5 * (b2 + b2.transpose())};
  g.c = {c1, c2};
  g.extent = extent;
  return make_immersion(std::move(g));
}

ImmersionPtr flat_torus(double r1, double r2) {
  if (!(r1 > 0 && r2 > 0)) throw ConfigError("torus: radii must be positive");
  return make_immersion(Torus{r1, r2});
}

std::vector<std::string> metric_names() {
  return {"euclidean4",        "minkowski4",       "minkowskiN", "schwarzschild_kerr_coords",
          "kerr_kerr_coords", "riemannian_test"};
}

std::vector<std::string> surface_names() {
  return {"const_vr_kerr", "round_sphere", "flat_plane", "graph", "torus_flat_ambient"};
}

MetricPtr make_named_metric(const std::string& raw, const ParamMap& params) {
  const std::string name = normalize(raw);
  ParamReader p(name, params);
  MetricPtr out;
  if (name == "euclidean4") {
    out = euclidean_metric(4);
  } else if (name == "minkowski4") {
    out = minkowski_metric(4);
  } else if (name == "minkowskiN") {
    const double n = p.require("N");
    if (n != std::floor(n)) throw ConfigError("minkowskiN: N must be an integer");
    out = minkowski_metric(static_cast<int>(n));
  } else if (name == "schwarzschild_kerr_coords" || name == "schwarzschild") {
    out = schwarzschild_metric(p.require("m"), p.get("theta_min", kThetaMin));
  } else if (name == "kerr_kerr_coords" || name == "kerr") {
    out = kerr_metric(p.require("m"), p.get("a", 0.0), p.get("theta_min", kThetaMin));
  } else if (name == "riemannian_test") {
    out = riemannian_test_metric(p.get("c", 0.0));
  } else {
    throw ConfigError("unknown metric '" + raw + "'");
  }
  p.finish();
  return out;
}

ImmersionPtr make_named_surface(const std::string& raw, const ParamMap& params) {
  const std::string name = normalize(raw);
  ParamReader p(name, params);
  ImmersionPtr out;
  if (name == "const_vr_kerr" || name == "const_vr") {
    out = const_vr_surface(p.get("v", 0.0), p.require("r"), p.get("theta_min", kThetaMin));
  } else if (name == "round_sphere" || name == "sphere") {
    out = round_sphere(p.require("R"), p.get("t", 0.0), p.get("theta_min", kThetaMin));
  } else if (name == "flat_plane" || name == "plane") {
    out = flat_plane(p.get("extent", 10.0));
  } else if (name == "graph") {
    const double nd = p.get("n", 2.0);
    if (nd != std::floor(nd) || nd < 1 || nd + 2 > kMaxChartDim)
      throw ConfigError("graph: n must be an integer in [1, " + std::to_string(kMaxChartDim - 2) + "]");
    const int n = static_cast<int>(nd);
    Eigen::MatrixXd b1 = Eigen::MatrixXd::Zero(n, n), b2 = b1;
    Eigen::VectorXd c1 = Eigen::VectorXd::Zero(n), c2 = c1;
    for (int i = 0; i < n; ++i) {
      const std::string si = std::to_string(i);
      c1(i) = p.get("c1_" + si, 0.0);
      c2(i) = p.get("c2_" + si, 0.0);
      for (int j = 0; j < n; ++j) {
        const std::string sij = si + std::to_string(j);
        if (p.has("b1_" + sij)) b1(i, j) = b1(j, i) = p.get("b1_" + sij, 0.0);
        if (p.has("b2_" + sij)) b2(i, j) = b2(j, i) = p.get("b2_" + sij, 0.0);
      }
    }
    out = graph_surface(b1, b2, c1, c2, p.get("extent", 1.0));
  } else if (name == "torus_flat_ambient" || name == "torus") {
    out = flat_torus(p.require("R1"), p.require("R2"));
  } else {
    throw ConfigError("unknown surface family '" + raw + "'");
  }
  p.finish();
  return out;
}

bool metric_accepts(const std::string& raw, const std::string& key) {
  const std::string name = normalize(raw);
  if (name == "minkowskiN") return key == "N";
  if (name == "schwarzschild_kerr_coords" || name == "schwarzschild") return key == "m" || key == "theta_min";
  if (name == "kerr_kerr_coords" || name == "kerr") return key == "m" || key == "a" || key == "theta_min";
  if (name == "riemannian_test") return key == "c";
  return false;
}

bool surface_accepts(const std::string& raw, const std::string& key) {
  const std::string name = normalize(raw);
  if (name == "const_vr_kerr" || name == "const_vr") return key == "v" || key == "r" || key == "theta_min";
  if (name == "round_sphere" || name == "sphere") return key == "R" || key == "t" || key == "theta_min";
  if (name == "flat_plane" || name == "plane") return key == "extent";
  if (name == "torus_flat_ambient" || name == "torus") return key == "R1" || key == "R2";
  if (name == "graph") {
    static const std::regex coeff("(b[12]_[0-9][0-9])|(c[12]_[0-9])");
    return key == "n" || key == "extent" || std::regex_match(key, coeff);
  }
  return false;
}

double kerr_r_plus(double m, double a) {
  if (a * a > m * m) throw DomainError("kerr: no horizons for a^2 > m^2");
  return m + std::sqrt(m * m - a * a);
}

double kerr_r_minus(double m, double a) {
  if (a * a > m * m) throw DomainError("kerr: no horizons for a^2 > m^2");
  return m - std::sqrt(m * m - a * a);
}

double kerr_commutator_polynomial(double m, double a, double r, double theta) {
  const double c = std::cos(theta);
  return 4 * m * r * r + (r * r + a * a * c * c) * (r - m);
}

KerrNormals kerr_xi_eta(double m, double a, double r, double theta) {
  const double s = std::sin(theta), c = std::cos(theta);
  const double rho2 = r * r + a * a * c * c;
  if (!(std::sqrt(rho2) > kKerrRhoMin)) throw DomainError("kerr_xi_eta: rho = 0");
  const double delta = r * r - 2 * m * r + a * a;
  KerrNormals out;
  out.xi = Eigen::Vector4d(r * r + a * a, delta, 0, a) / rho2;
  out.eta = Eigen::Vector4d(a * a * s * s, r * r + a * a, 0, a) / rho2;
  return out;
}

KerrReferenceShapes kerr_reference_shapes(double m, double a, double r, double theta) {
  const double s = std::sin(theta), c = std::cos(theta);
  const double rho2 = r * r + a * a * c * c;
  if (!(std::sqrt(rho2) > kKerrRhoMin)) throw DomainError("kerr_reference_shapes: rho = 0");
  if (s == 0) throw DomainError("kerr_reference_shapes: on the axis");
  const double delta = r * r - 2 * m * r + a * a;
  const double ra = r * r + a * a;
  const double big = ra * ra - a * a * delta * s * s;

  KerrReferenceShapes out;
  out.M1 << r / rho2, 0, 0, rho2 * (r + m / (rho2 * rho2) * a * a * (a * a * c * c - r * r) * s * s) / big;
  out.M2 << 0, 1 / rho2, rho2 / (big * s * s), 0;
  out.A_xi = delta / rho2 * out.M1;
  out.A_eta = (ra * out.M1 - 2 * m / rho2 * r * a * a * a * s * s * s * c * out.M2) / rho2;
  return out;
}

}  // namespace subshear
