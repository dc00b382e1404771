#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "subshear/errors.hpp"
#include "subshear/report.hpp"
#include "subshear/scan.hpp"

using namespace subshear;

namespace {

struct Options {
  std::string metric = "kerr_kerr_coords";
  std::string params;
  std::string surface = "const_vr";
  std::string sparams;
  std::string grid;
  std::string point;
  std::vector<std::string> tol;
  std::string report = "json";
  std::string out;
  std::string orientation = "+";
  std::string convention = "paper";
  std::string shape_sign = "kinematic";
  int workers = 1;

  std::string free_param = "r";
  std::string bracket;
  int samples = 200;
};

void add_common(CLI::App* app, Options& o, bool with_grid) {
  app->add_option("--metric", o.metric, "ambient metric name")->capture_default_str();
  app->add_option("--param", o.params, "metric parameters, e.g. m=1.0,a=0.5");
  app->add_option("--surface", o.surface, "surface family")->capture_default_str();
  app->add_option("--sparam", o.sparams, "surface parameters, e.g. v=0,r=1.866");
  app->add_option("--point", o.point, "fixed surface coordinates, e.g. theta=0.7");
  if (with_grid) app->add_option("--grid", o.grid, "grid axes key=start:stop:count[,...]");
  app->add_option("--tol", o.tol, "tolerance overrides key=value")->allow_extra_args(false);
  app->add_option("--report", o.report, "json|csv|text")->capture_default_str();
  app->add_option("--out", o.out, "output path (default stdout)");
  app->add_option("--orientation", o.orientation, "+|-")->capture_default_str();
  app->add_option("--mean-curvature-convention", o.convention, "paper|physics")->capture_default_str();
  app->add_option("--shape-sign", o.shape_sign, "kinematic|gauss")->capture_default_str();
  app->add_option("--workers", o.workers, "worker threads")->capture_default_str();
}

ScanConfig make_config(const Options& o) {
  ScanConfig c;
  c.metric = o.metric;
  c.metric_params = parse_params(o.params);
  c.surface = o.surface;
  c.surface_params = parse_params(o.sparams);
  c.point = parse_params(o.point);
  c.grid = parse_grid(o.grid);
  for (const auto& item : o.tol)
    for (const auto& [k, v] : parse_params(item)) c.tol.set(k, v);
  if (o.orientation == "+" || o.orientation == "+1") c.orientation = 1;
  else if (o.orientation == "-" || o.orientation == "-1") c.orientation = -1;
  else throw ConfigError("orientation: expected + or -");
  if (o.convention == "paper") c.mean_curvature = MeanCurvatureConvention::averaged;
  else if (o.convention == "physics") c.mean_curvature = MeanCurvatureConvention::physics;
  else throw ConfigError("mean-curvature-convention: expected paper or physics");
  if (o.shape_sign == "kinematic") c.sign = ShapeSign::kinematic;
  else if (o.shape_sign == "gauss") c.sign = ShapeSign::gauss;
  else throw ConfigError("shape-sign: expected kinematic or gauss");
  c.workers = o.workers;
  validate(c);
  return c;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw ConfigError("out: cannot open '" + o.out + "'");
  f << text;
}

std::pair<double, double> parse_bracket(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError("bracket: expected lo:hi");
  const auto lo = parse_params("lo=" + text.substr(0, colon)).at("lo");
  const auto hi = parse_params("hi=" + text.substr(colon + 1)).at("hi");
  return {lo, hi};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Umbilical classification of spacelike co-dimension-2 surfaces"};
  app.require_subcommand(1);
  Options o;

  auto* classify_cmd = app.add_subcommand("classify", "classify a single surface point");
  add_common(classify_cmd, o, false);
  auto* scan_cmd = app.add_subcommand("scan", "classify every point of a grid");
  add_common(scan_cmd, o, true);
  auto* locus_cmd = app.add_subcommand("locus", "roots of the umbilicity residual along one parameter");
  add_common(locus_cmd, o, false);
  locus_cmd->add_option("--free", o.free_param, "free parameter")->capture_default_str();
  locus_cmd->add_option("--bracket", o.bracket, "lo:hi")->required();
  locus_cmd->add_option("--samples", o.samples, "initial samples")->capture_default_str();
  auto* curv_cmd = app.add_subcommand("curvature", "Gaussian curvature of a 2-surface");
  add_common(curv_cmd, o, false);
  auto* list_cmd = app.add_subcommand("list", "list metrics and surface families");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (list_cmd->parsed()) {
      std::cout << "metrics:";
      for (const auto& n : metric_names()) std::cout << " " << n;
      std::cout << "\nsurfaces:";
      for (const auto& n : surface_names()) std::cout << " " << n;
      std::cout << "\n";
      return 0;
    }
    const ScanConfig config = make_config(o);
    const ReportFormat format = parse_report_format(o.report);

    if (classify_cmd->parsed() || scan_cmd->parsed()) {
      const ScanResult result = run_scan(config);
      emit(o, format_scan(format, config, result));
      return result.exit_code;
    }
    if (locus_cmd->parsed()) {
      const auto [lo, hi] = parse_bracket(o.bracket);
      const LocusResult locus = find_umbilical_locus(config, o.free_param, lo, hi, o.samples);
      emit(o, format == ReportFormat::json ? locus_json(config, locus) : locus_text(locus));
      return 0;
    }
    if (curv_cmd->parsed()) {
      const ResolvedPoint p = resolve(config, {});
      const double k = gaussian_curvature_2d(*p.metric, *p.immersion, p.u);
      std::ostringstream os;
      os.precision(17);
      os << k << "\n";
      emit(o, os.str());
      return 0;
    }
  } catch (const DomainError& e) {
    std::cerr << "DomainError: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "ConfigError: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
