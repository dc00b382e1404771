#include "subshear/scan.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <thread>

#include "subshear/errors.hpp"

namespace subshear {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

double parse_number(const std::string& field, const std::string& text) {
  double v = 0.0;
  const char* b = text.data();
  const char* e = b + text.size();
  if (!text.empty() && *b == '+') ++b;
  const auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e || !std::isfinite(v))
    throw ConfigError("field '" + field + "': '" + text + "' is not a finite number");
  return v;
}

std::string error_kind(const Error& e) {
  if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
  if (dynamic_cast<const SignatureError*>(&e)) return "SignatureError";
  if (dynamic_cast<const SingularMetricError*>(&e)) return "SingularMetricError";
  if (dynamic_cast<const DimensionMismatch*>(&e)) return "DimensionMismatch";
  if (dynamic_cast<const NotSpacelikeError*>(&e)) return "NotSpacelikeError";
  if (dynamic_cast<const DegenerateFrameError*>(&e)) return "DegenerateFrameError";
  if (dynamic_cast<const DegenerateNormalError*>(&e)) return "DegenerateNormalError";
  if (dynamic_cast<const ConfigError*>(&e)) return "ConfigError";
  return "Error";
}

GeometryOptions options_of(const ScanConfig& c) { return {c.tol, c.sign, c.orientation}; }

}  // namespace

std::vector<double> GridAxis::values() const {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = start;
    return out;
  }
  for (int i = 0; i < count; ++i) out[i] = start + (stop - start) * i / (count - 1);
  out.back() = stop;
  return out;
}

ParamMap parse_params(const std::string& text) {
  ParamMap out;
  if (trim(text).empty()) return out;
  for (const auto& item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigError("parameter '" + item + "': expected key=value");
    const std::string key = trim(item.substr(0, eq));
    if (out.count(key)) throw ConfigError("parameter '" + key + "' given twice");
    out[key] = parse_number(key, trim(item.substr(eq + 1)));
  }
  return out;
}

std::vector<GridAxis> parse_grid(const std::string& text) {
  std::vector<GridAxis> out;
  if (trim(text).empty()) return out;
  std::set<std::string> seen;
  for (const auto& item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigError("grid '" + item + "': expected key=start:stop:count");
    GridAxis ax;
    ax.key = trim(item.substr(0, eq));
    if (!seen.insert(ax.key).second) throw ConfigError("grid key '" + ax.key + "' given twice");
    const auto parts = split(item.substr(eq + 1), ':');
    if (parts.size() != 3) throw ConfigError("grid '" + ax.key + "': expected start:stop:count");
    ax.start = parse_number(ax.key + ".start", parts[0]);
    ax.stop = parse_number(ax.key + ".stop", parts[1]);
    const double count = parse_number(ax.key + ".count", parts[2]);
    if (count != std::floor(count) || count < 1 || count > 1e7)
      throw ConfigError("grid '" + ax.key + "': count must be a positive integer");
    ax.count = static_cast<int>(count);
    out.push_back(ax);
  }
  return out;
}

void validate(const ScanConfig& c) {
  if (c.metric.empty()) throw ConfigError("metric: name is required");
  if (c.surface.empty()) throw ConfigError("surface: family is required");
  for (const auto& ax : c.grid) {
    if (ax.count < 1) throw ConfigError("grid '" + ax.key + "': count must be >= 1");
    if (ax.count == 1 ? ax.start > ax.stop : !(ax.start < ax.stop))
      throw ConfigError("grid '" + ax.key + "': start must be below stop");
  }
  for (double t : {c.tol.sym, c.tol.chris, c.tol.eig, c.tol.inv, c.tol.w, c.tol.umb, c.tol.pd})
    if (!(t > 0)) throw ConfigError("tolerances must be positive");
  if (c.orientation != 1 && c.orientation != -1) throw ConfigError("orientation must be + or -");
  if (c.workers < 1) throw ConfigError("workers must be >= 1");
}

ResolvedPoint resolve(const ScanConfig& config, const ParamMap& overrides) {
  ParamMap mp = config.metric_params, sp = config.surface_params, pt = config.point;
  for (const auto& [k, v] : overrides) {
    if (surface_accepts(config.surface, k)) sp[k] = v;
    else if (metric_accepts(config.metric, k)) mp[k] = v;
    else pt[k] = v;
  }
  ResolvedPoint out;
  out.metric = make_named_metric(config.metric, mp);
  out.immersion = make_named_surface(config.surface, sp);
  const auto names = out.immersion->coordinate_names();
  for (const auto& [k, v] : pt)
    if (std::find(names.begin(), names.end(), k) == names.end())
      throw ConfigError("'" + k + "' is neither a coordinate nor a parameter of " + config.surface +
                        " / " + config.metric);
  const Eigen::VectorXd lo = out.immersion->lower_bounds(), hi = out.immersion->upper_bounds();
  out.u.resize(static_cast<Eigen::Index>(names.size()));
  for (std::size_t i = 0; i < names.size(); ++i) {
    auto it = pt.find(names[i]);
    out.u(i) = it != pt.end() ? it->second : std::clamp(0.0, lo(i), hi(i));
  }
  return out;
}

const std::vector<std::string>& identity_residuals() {
  static const std::vector<std::string> names{"casorati_identity", "trace_BJ", "theta_star_H",
                                              "null_B",   "null_J",   "causal_cross_check"};
  return names;
}

ClassificationRecord classify_point(const AmbientMetric& metric, const Immersion& immersion,
                                    const Eigen::VectorXd& u, const ScanConfig& config) {
  ClassificationRecord rec;
  rec.surface_point = u;
  try {
    const ExtrinsicState st = compute_extrinsic_state(metric, immersion, u, options_of(config));
    const UmbilicalVerdict v = classify(st, config.tol);
    const double f = config.mean_curvature == MeanCurvatureConvention::physics ? st.n : 1.0;
    rec.theta1 = st.theta[0];
    rec.theta2 = st.theta[1];
    rec.sigma1 = v.sigma[0];
    rec.sigma2 = v.sigma[1];
    rec.sigma_signed = v.sigma_signed;
    rec.gHH = f * f * st.H.norm2;
    rec.H = f * st.H.components;
    rec.trB = st.B.trace();
    rec.trJ = st.J.trace();
    rec.theta_k = v.trapped.theta_k;
    rec.theta_l = v.trapped.theta_l;
    rec.eps = st.normal.eps;
    if (v.umbilical_direction) rec.direction = v.umbilical_direction->components;
    rec.dir_exists = v.direction_exists;
    rec.tot_umb = v.totally_umbilical;
    rec.pseudo = v.pseudo_umbilical;
    rec.ortho = v.ortho_umbilical;
    rec.subgeo = v.subgeodesic;
    rec.causal = v.causal_character;
    rec.trapped = v.trapped.status;
    rec.future_H = v.trapped.future_H;
    rec.consistent = v.diagnostics_consistent;
    rec.residuals = v.residuals;
    for (const auto& name : identity_residuals()) {
      auto it = v.residuals.find(name);
      if (it != v.residuals.end()) rec.max_residual = std::max(rec.max_residual, it->second);
    }
  } catch (const Error& e) {
    rec.error_kind = error_kind(e);
    rec.error = e.what();
  }
  return rec;
}

ScanResult run_scan(const ScanConfig& config) {
  validate(config);
  std::vector<std::vector<double>> axes;
  std::size_t total = 1;
  for (const auto& ax : config.grid) {
    axes.push_back(ax.values());
    total *= axes.back().size();
  }

  auto overrides_at = [&](std::size_t index) {
    std::vector<std::pair<std::string, double>> coords(config.grid.size());
    for (std::size_t a = config.grid.size(); a-- > 0;) {
      const std::size_t len = axes[a].size();
      coords[a] = {config.grid[a].key, axes[a][index % len]};
      index /= len;
    }
    return coords;
  };

  // Surfaces configuration errors before any work is scheduled.
  {
    ParamMap first;
    for (const auto& [k, v] : overrides_at(0)) first[k] = v;
    resolve(config, first);
  }

  ScanResult result;
  result.records.resize(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      const auto coords = overrides_at(i);
      ParamMap ov(coords.begin(), coords.end());
      ClassificationRecord rec;
      try {
        const ResolvedPoint p = resolve(config, ov);
        rec = classify_point(*p.metric, *p.immersion, p.u, config);
      } catch (const Error& e) {
        rec.error_kind = error_kind(e);
        rec.error = e.what();
      }
      rec.coords = coords;
      result.records[i] = std::move(rec);
    }
  };
  const int nthreads = static_cast<int>(std::min<std::size_t>(config.workers, std::max<std::size_t>(total, 1)));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  auto& s = result.summary;
  auto& counts = s.counts;
  for (const char* key : {"records", "ok", "skipped_domain", "errors", "direction_exists",
                          "totally_umbilical", "pseudo_umbilical", "ortho_umbilical",
                          "inconsistent_diagnostics"})
    counts[key] = 0;
  std::set<TrappedStatus> statuses;
  bool domain_skip = false, hard = false;
  for (const auto& r : result.records) {
    ++counts["records"];
    if (!r.ok()) {
      if (r.error_kind == "DomainError") {
        ++counts["skipped_domain"];
        domain_skip = true;
      } else {
        ++counts["errors"];
        hard = true;
      }
      continue;
    }
    ++counts["ok"];
    counts["direction_exists"] += r.dir_exists;
    counts["totally_umbilical"] += r.tot_umb;
    counts["pseudo_umbilical"] += r.pseudo;
    counts["ortho_umbilical"] += r.ortho;
    counts["inconsistent_diagnostics"] += !r.consistent;
    ++counts[std::string("subgeodesic_") + to_string(r.subgeo)];
    ++counts[std::string("causal_") + to_string(r.causal)];
    ++counts[std::string("trapped_") + to_string(r.trapped)];
    if (r.trapped != TrappedStatus::not_applicable) statuses.insert(r.trapped);
    for (const auto& [k, v] : r.residuals) {
      auto [it, inserted] = s.max_residuals.emplace(k, v);
      if (!inserted) it->second = std::max(it->second, v);
    }
  }
  if (statuses.size() == 1) s.trapped = *statuses.begin();
  else if (statuses.size() > 1) s.trapped = TrappedStatus::mixed;
  result.exit_code = hard ? 1 : domain_skip ? 2 : 0;
  return result;
}

std::pair<double, double> locus_residual(const AmbientMetric& metric, const Immersion& immersion,
                                         const Eigen::VectorXd& u, const ScanConfig& config) {
  const ExtrinsicState st = compute_extrinsic_state(metric, immersion, u, options_of(config));
  const double scale = st.umbilic_scale();
  if (st.n == 2)
    return {commutator(st.shape[0], st.shape[1])(0, 1), config.tol.umb * scale * scale};
  return {direction_exists(st, config.tol).scalar_product_normalized, config.tol.umb};
}

LocusResult find_umbilical_locus(const ScanConfig& config, const std::string& free_param, double lo,
                                 double hi, int samples) {
  if (!(lo < hi)) throw ConfigError("bracket: lower end must be below upper end");
  if (samples < 3) throw ConfigError("samples must be >= 3");
  LocusResult out;
  out.free_param = free_param;

  struct Sample {
    double x, f, t;
    bool ok;
  };
  auto eval = [&](double x) -> Sample {
    try {
      const ResolvedPoint p = resolve(config, {{free_param, x}});
      const auto [f, t] = locus_residual(*p.metric, *p.immersion, p.u, config);
      return {x, f, t, true};
    } catch (const DomainError&) {
      return {x, 0.0, 0.0, false};
    }
  };

  const ResolvedPoint base = resolve(config, {{free_param, lo}});
  const bool signed_surrogate = base.immersion->dimension() == 2;
  out.surrogate = signed_surrogate ? "commutator" : "scalar_product";

  std::vector<Sample> s;
  for (int i = 0; i < samples; ++i) s.push_back(eval(lo + (hi - lo) * i / (samples - 1)));
  for (const auto& p : s)
    if (p.ok) out.samples.emplace_back(p.x, p.f);
  if (out.samples.empty()) throw NoRootError("locus: the residual could not be evaluated in the bracket");

  const bool all_zero = std::all_of(s.begin(), s.end(), [](const Sample& p) { return !p.ok || std::abs(p.f) <= p.t; });
  if (all_zero) {
    out.degenerate = true;
    return out;
  }

  std::vector<double> roots;
  auto add_root = [&](double x) {
    for (double r : roots)
      if (std::abs(r - x) <= 1e-7 * std::max(1.0, std::abs(x))) return;
    roots.push_back(x);
  };

  if (signed_surrogate) {
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      if (!s[i].ok || !s[i + 1].ok || !(s[i].f * s[i + 1].f < 0)) continue;
      double a = s[i].x, b = s[i + 1].x, fa = s[i].f;
      for (int it = 0; it < 200 && b - a > 1e-13 * std::max(1.0, std::abs(a)); ++it) {
        const Sample m = eval(0.5 * (a + b));
        if (!m.ok) break;
        if (m.f == 0) {
          a = b = m.x;
          break;
        }
        if ((m.f < 0) == (fa < 0)) {
          a = m.x;
          fa = m.f;
        } else {
          b = m.x;
        }
      }
      add_root(0.5 * (a + b));
    }
  }

  // Roots without a sign change (double roots, or any root of an unsigned
  // residual): golden-section search on |f| around sampled local minima.
  const double inv_phi = (std::sqrt(5.0) - 1) / 2;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!s[i].ok) continue;
    const bool left = i == 0 || !s[i - 1].ok || std::abs(s[i].f) <= std::abs(s[i - 1].f);
    const bool right = i + 1 == s.size() || !s[i + 1].ok || std::abs(s[i].f) <= std::abs(s[i + 1].f);
    if (!left || !right) continue;
    double a = i == 0 ? s[i].x : s[i - 1].x;
    double b = i + 1 == s.size() ? s[i].x : s[i + 1].x;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    Sample fc = eval(c), fd = eval(d);
    for (int it = 0; it < 200 && b - a > 1e-13 * std::max(1.0, std::abs(a)); ++it) {
      const double vc = fc.ok ? std::abs(fc.f) : INFINITY;
      const double vd = fd.ok ? std::abs(fd.f) : INFINITY;
      if (vc <= vd) {
        b = d;
        d = c;
        fd = fc;
        c = b - inv_phi * (b - a);
        fc = eval(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + inv_phi * (b - a);
        fd = eval(d);
      }
    }
    const Sample best = eval(0.5 * (a + b));
    if (best.ok && std::abs(best.f) <= best.t) add_root(best.x);
  }

  if (roots.empty())
    throw NoRootError("locus: no root of the umbilicity residual in [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  std::sort(roots.begin(), roots.end());
  out.roots = std::move(roots);
  return out;
}

double gaussian_curvature_2d(const AmbientMetric& metric, const Immersion& immersion,
                             const Eigen::VectorXd& u) {
  if (immersion.dimension() != 2)
    throw DimensionMismatch("gaussian_curvature_2d: surface must be two-dimensional");
  immersion.check_domain(u);
  const int dim = immersion.ambient_dimension();

  DenseVector<SurfaceDual2> uu(2);
  for (int i = 0; i < 2; ++i)
    uu(i) = SurfaceDual2::variable(SurfaceDual::variable(u(i), i, 2), i, 2);
  const DenseVector<SurfaceDual2> phi = immersion.map(uu);

  DenseVector<SurfaceDual> x(dim);
  Eigen::VectorXd xv(dim);
  std::array<DenseVector<SurfaceDual>, 2> d;
  for (int i = 0; i < 2; ++i) d[i].resize(dim);
  for (int a = 0; a < dim; ++a) {
    x(a) = phi(a).value();
    xv(a) = x(a).value();
    for (int i = 0; i < 2; ++i) d[i](a) = phi(a).d(i);
  }
  metric.check_domain(xv);
  const DenseMatrix<SurfaceDual> g = metric.components(x);

  auto pull = [&](int i, int j) {
    SurfaceDual acc(0.0);
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) acc += g(a, b) * d[i](a) * d[j](b);
    return acc;
  };
  const SurfaceDual E = pull(0, 0), F = pull(0, 1), G = pull(1, 1);

  const double e = E.value(), f = F.value(), gg = G.value();
  const double det = e * gg - f * f;
  if (!(det > 0)) throw NotSpacelikeError("gaussian_curvature_2d: induced metric is not positive definite");

  Eigen::Matrix3d m1, m2;
  m1 << -0.5 * E.dd(1, 1) + F.dd(0, 1) - 0.5 * G.dd(0, 0), 0.5 * E.d(0), F.d(0) - 0.5 * E.d(1),
      F.d(1) - 0.5 * G.d(0), e, f,
      0.5 * G.d(1), f, gg;
  m2 << 0, 0.5 * E.d(1), 0.5 * G.d(0),
      0.5 * E.d(1), e, f,
      0.5 * G.d(0), f, gg;
  return (m1.determinant() - m2.determinant()) / (det * det);
}

}  // namespace subshear
