#include "subshear/report.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "subshear/errors.hpp"

namespace subshear {

namespace {

using Json = nlohmann::ordered_json;

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double read_number(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

Json vector_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number(v(i)));
  return a;
}

Eigen::VectorXd read_vector(const Json& j) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = read_number(j[i]);
  return v;
}

Json params_json(const ParamMap& p) {
  Json o = Json::object();
  for (const auto& [k, v] : p) o[k] = number(v);
  return o;
}

template <class Enum, std::size_t N>
Enum enum_from(const std::string& s, const Enum (&all)[N]) {
  for (Enum e : all)
    if (s == to_string(e)) return e;
  throw ConfigError("unknown value '" + s + "' in report");
}

CausalCharacter causal_from(const std::string& s) {
  static const CausalCharacter all[] = {CausalCharacter::timelike, CausalCharacter::spacelike,
                                        CausalCharacter::null, CausalCharacter::undefined};
  return enum_from(s, all);
}

TrappedStatus trapped_from(const std::string& s) {
  static const TrappedStatus all[] = {TrappedStatus::trapped,   TrappedStatus::marginally_trapped,
                                      TrappedStatus::untrapped, TrappedStatus::mixed,
                                      TrappedStatus::minimal,   TrappedStatus::not_applicable};
  return enum_from(s, all);
}

Tristate tristate_from(const std::string& s) {
  static const Tristate all[] = {Tristate::no, Tristate::yes, Tristate::indeterminate};
  return enum_from(s, all);
}

const char* sign_name(ShapeSign s) { return s == ShapeSign::kinematic ? "kinematic" : "gauss"; }

Json config_json(const ScanConfig& c) {
  Json j;
  j["metric"] = c.metric;
  j["metric_params"] = params_json(c.metric_params);
  j["surface"] = c.surface;
  j["surface_params"] = params_json(c.surface_params);
  j["point"] = params_json(c.point);
  Json grid = Json::array();
  for (const auto& ax : c.grid) {
    Json a;
    a["key"] = ax.key;
    a["start"] = number(ax.start);
    a["stop"] = number(ax.stop);
    a["count"] = ax.count;
    grid.push_back(a);
  }
  j["grid"] = grid;
  Json tol;
  tol["sym"] = c.tol.sym;
  tol["chris"] = c.tol.chris;
  tol["eig"] = c.tol.eig;
  tol["inv"] = c.tol.inv;
  tol["w"] = c.tol.w;
  tol["umb"] = c.tol.umb;
  tol["pd"] = c.tol.pd;
  j["tolerances"] = tol;
  j["shape_sign"] = sign_name(c.sign);
  j["orientation"] = c.orientation > 0 ? "+" : "-";
  j["mean_curvature_convention"] = c.mean_curvature == MeanCurvatureConvention::averaged ? "paper" : "physics";
  return j;
}

Json record_json(const ClassificationRecord& r) {
  Json j;
  Json coords = Json::object();
  for (const auto& [k, v] : r.coords) coords[k] = number(v);
  j["coords"] = coords;
  j["surface_point"] = vector_json(r.surface_point);
  if (!r.ok()) {
    j["error_kind"] = r.error_kind;
    j["error"] = r.error;
    return j;
  }
  j["theta1"] = number(r.theta1);
  j["theta2"] = number(r.theta2);
  j["sigma1"] = number(r.sigma1);
  j["sigma2"] = number(r.sigma2);
  j["sigma_signed"] = r.sigma_signed;
  j["gHH"] = number(r.gHH);
  j["trB"] = number(r.trB);
  j["trJ"] = number(r.trJ);
  j["theta_k"] = number(r.theta_k);
  j["theta_l"] = number(r.theta_l);
  j["eps"] = {r.eps[0], r.eps[1]};
  j["H"] = vector_json(r.H);
  j["dir_exists"] = r.dir_exists;
  j["direction"] = r.direction ? vector_json(*r.direction) : Json(nullptr);
  j["tot_umb"] = r.tot_umb;
  j["pseudo"] = r.pseudo;
  j["ortho"] = r.ortho;
  j["subgeo"] = to_string(r.subgeo);
  j["causal"] = to_string(r.causal);
  j["trapped"] = to_string(r.trapped);
  j["future_H"] = r.future_H ? Json(*r.future_H) : Json(nullptr);
  j["consistent"] = r.consistent;
  j["max_residual"] = number(r.max_residual);
  j["residuals"] = params_json(ParamMap(r.residuals.begin(), r.residuals.end()));
  return j;
}

ClassificationRecord record_from(const Json& j) {
  ClassificationRecord r;
  for (const auto& [k, v] : j.at("coords").items()) r.coords.emplace_back(k, read_number(v));
  r.surface_point = read_vector(j.at("surface_point"));
  if (j.contains("error_kind")) {
    r.error_kind = j.at("error_kind").get<std::string>();
    r.error = j.at("error").get<std::string>();
    return r;
  }
  r.theta1 = read_number(j.at("theta1"));
  r.theta2 = read_number(j.at("theta2"));
  r.sigma1 = read_number(j.at("sigma1"));
  r.sigma2 = read_number(j.at("sigma2"));
  r.sigma_signed = j.at("sigma_signed").get<bool>();
  r.gHH = read_number(j.at("gHH"));
  r.trB = read_number(j.at("trB"));
  r.trJ = read_number(j.at("trJ"));
  r.theta_k = read_number(j.at("theta_k"));
  r.theta_l = read_number(j.at("theta_l"));
  r.eps = {j.at("eps")[0].get<int>(), j.at("eps")[1].get<int>()};
  r.H = read_vector(j.at("H"));
  r.dir_exists = j.at("dir_exists").get<bool>();
  if (!j.at("direction").is_null()) r.direction = read_vector(j.at("direction"));
  r.tot_umb = j.at("tot_umb").get<bool>();
  r.pseudo = j.at("pseudo").get<bool>();
  r.ortho = j.at("ortho").get<bool>();
  r.subgeo = tristate_from(j.at("subgeo").get<std::string>());
  r.causal = causal_from(j.at("causal").get<std::string>());
  r.trapped = trapped_from(j.at("trapped").get<std::string>());
  if (!j.at("future_H").is_null()) r.future_H = j.at("future_H").get<bool>();
  r.consistent = j.at("consistent").get<bool>();
  r.max_residual = read_number(j.at("max_residual"));
  for (const auto& [k, v] : j.at("residuals").items()) r.residuals[k] = read_number(v);
  return r;
}

std::string shortest(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

ReportFormat parse_report_format(const std::string& name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  if (name == "text") return ReportFormat::text;
  throw ConfigError("report: unknown format '" + name + "' (json, csv, text)");
}

std::string scan_json(const ScanConfig& config, const ScanResult& result) {
  Json j;
  j["config"] = config_json(config);
  Json records = Json::array();
  for (const auto& r : result.records) records.push_back(record_json(r));
  j["records"] = std::move(records);
  Json summary;
  Json counts = Json::object();
  for (const auto& [k, v] : result.summary.counts) counts[k] = v;
  summary["counts"] = counts;
  summary["max_residuals"] =
      params_json(ParamMap(result.summary.max_residuals.begin(), result.summary.max_residuals.end()));
  summary["trapped"] = to_string(result.summary.trapped);
  summary["exit_code"] = result.exit_code;
  j["summary"] = summary;
  return j.dump(2) + "\n";
}

ScanResult parse_scan_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("report: ") + e.what());
  }
  ScanResult out;
  for (const auto& r : j.at("records")) out.records.push_back(record_from(r));
  const Json& s = j.at("summary");
  for (const auto& [k, v] : s.at("counts").items()) out.summary.counts[k] = v.get<int>();
  for (const auto& [k, v] : s.at("max_residuals").items()) out.summary.max_residuals[k] = read_number(v);
  out.summary.trapped = trapped_from(s.at("trapped").get<std::string>());
  out.exit_code = s.at("exit_code").get<int>();
  return out;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{"theta1", "theta2", "sigma1", "sigma2", "gHH",
                                             "trB",    "trJ",    "dir_exists", "tot_umb",
                                             "pseudo", "ortho",  "subgeo", "causal", "trapped",
                                             "max_residual"};
  return cols;
}

std::string scan_csv(const ScanResult& result) {
  std::ostringstream os;
  std::vector<std::string> coord_names;
  if (!result.records.empty())
    for (const auto& [k, v] : result.records.front().coords) coord_names.push_back(k);
  bool first = true;
  for (const auto& k : coord_names) {
    os << (first ? "" : ",") << k;
    first = false;
  }
  for (const auto& c : csv_columns()) {
    os << (first ? "" : ",") << c;
    first = false;
  }
  os << "\n";
  for (const auto& r : result.records) {
    std::vector<std::string> cells;
    for (const auto& [k, v] : r.coords) cells.push_back(shortest(v));
    if (r.ok()) {
      for (double v : {r.theta1, r.theta2, r.sigma1, r.sigma2, r.gHH, r.trB, r.trJ})
        cells.push_back(shortest(v));
      for (bool b : {r.dir_exists, r.tot_umb, r.pseudo, r.ortho}) cells.push_back(b ? "true" : "false");
      cells.push_back(to_string(r.subgeo));
      cells.push_back(to_string(r.causal));
      cells.push_back(to_string(r.trapped));
      cells.push_back(shortest(r.max_residual));
    } else {
      cells.resize(cells.size() + csv_columns().size());
      cells[coord_names.size() + 13] = r.error_kind;
    }
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << "\n";
  }
  return os.str();
}

std::string scan_text(const ScanConfig& config, const ScanResult& result) {
  std::ostringstream os;
  os.precision(10);
  os << "metric " << config.metric << ", surface " << config.surface << ", " << result.records.size()
     << " point(s)\n";
  for (const auto& r : result.records) {
    for (const auto& [k, v] : r.coords) os << k << "=" << v << " ";
    if (!r.ok()) {
      os << r.error_kind << ": " << r.error << "\n";
      continue;
    }
    os << "dir_exists=" << r.dir_exists << " tot_umb=" << r.tot_umb << " pseudo=" << r.pseudo
       << " ortho=" << r.ortho << " subgeo=" << to_string(r.subgeo) << " causal=" << to_string(r.causal)
       << " trapped=" << to_string(r.trapped) << " gHH=" << r.gHH << " trB=" << r.trB
       << " trJ=" << r.trJ << " max_residual=" << r.max_residual << "\n";
  }
  os << "summary:";
  for (const auto& [k, v] : result.summary.counts) os << " " << k << "=" << v;
  os << "\ntrapped: " << to_string(result.summary.trapped) << "\nmax residuals:";
  for (const auto& [k, v] : result.summary.max_residuals) os << " " << k << "=" << v;
  os << "\n";
  return os.str();
}

std::string format_scan(ReportFormat format, const ScanConfig& config, const ScanResult& result) {
  switch (format) {
    case ReportFormat::json: return scan_json(config, result);
    case ReportFormat::csv: return scan_csv(result);
    case ReportFormat::text: return scan_text(config, result);
  }
  return {};
}

std::string locus_json(const ScanConfig& config, const LocusResult& locus) {
  Json j;
  j["config"] = config_json(config);
  j["free_param"] = locus.free_param;
  j["surrogate"] = locus.surrogate;
  j["degenerate"] = locus.degenerate;
  Json roots = Json::array();
  for (double r : locus.roots) roots.push_back(number(r));
  j["roots"] = roots;
  return j.dump(2) + "\n";
}

std::string locus_text(const LocusResult& locus) {
  std::ostringstream os;
  os.precision(15);
  os << "free parameter " << locus.free_param << " (" << locus.surrogate << " residual)\n";
  if (locus.degenerate) os << "degenerate: residual vanishes on the whole bracket\n";
  for (double r : locus.roots) os << "root " << r << "\n";
  return os.str();
}

}  // namespace subshear
