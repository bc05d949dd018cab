#include "hullsolve/report.hpp"

#include <cmath>
#include <limits>

#include "json.hpp"

namespace hullsolve::io {

namespace {

using nlohmann::json;

// JSON has no inf/nan; those travel as strings.
json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double number(const json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  throw std::runtime_error("report: bad number '" + s + "'");
}

json numbers(const std::vector<double>& v) {
  json a = json::array();
  for (double d : v) a.push_back(number(d));
  return a;
}

std::vector<double> numbers(const json& a) {
  std::vector<double> v;
  for (const json& e : a) v.push_back(number(e));
  return v;
}

json number_map(const std::map<std::string, double>& m) {
  json o = json::object();
  for (const auto& [k, v] : m) o[k] = number(v);
  return o;
}

std::map<std::string, double> number_map(const json& o) {
  std::map<std::string, double> m;
  for (const auto& [k, v] : o.items()) m[k] = number(v);
  return m;
}

}  // namespace

std::string serialize_report(const RunReport& r) {
  json j;
  j["format"] = "hullsolve-report/1";
  j["command"] = r.command;
  j["subcommand"] = r.subcommand;
  j["config"] = r.config;
  j["status"] = r.status;
  j["exit_code"] = r.exit_code;
  j["message"] = r.message;
  j["x"] = numbers(r.x);
  j["diagnostics"] = number_map(r.diagnostics);
  j["witness_margins"] = numbers(r.witness_margins);
  json trace = json::array();
  for (const TraceRow& t : r.trace) {
    trace.push_back({{"iter", t.iter},
                     {"t", number(t.t)},
                     {"gap_or_E", number(t.gap_or_e)},
                     {"alpha_b", t.alpha_b ? number(*t.alpha_b) : json(nullptr)},
                     {"pivot", t.pivot},
                     {"witness", t.witness}});
  }
  j["trace"] = std::move(trace);
  json inst = json::array();
  for (const auto& m : r.instances) inst.push_back(number_map(m));
  j["instances"] = std::move(inst);
  j["wall_time_s"] = number(r.wall_time_s);
  return j.dump(2) + "\n";
}

RunReport parse_report(const std::string& text) {
  const json j = json::parse(text);
  RunReport r;
  r.command = j.at("command").get<std::vector<std::string>>();
  r.subcommand = j.at("subcommand").get<std::string>();
  r.config = j.at("config").get<std::map<std::string, std::string>>();
  r.status = j.at("status").get<std::string>();
  r.exit_code = j.at("exit_code").get<int>();
  r.message = j.at("message").get<std::string>();
  r.x = numbers(j.at("x"));
  r.diagnostics = number_map(j.at("diagnostics"));
  r.witness_margins = numbers(j.at("witness_margins"));
  for (const json& t : j.at("trace")) {
    TraceRow row;
    row.iter = t.at("iter").get<std::size_t>();
    row.t = number(t.at("t"));
    row.gap_or_e = number(t.at("gap_or_E"));
    if (!t.at("alpha_b").is_null()) row.alpha_b = number(t.at("alpha_b"));
    row.pivot = t.at("pivot").get<long>();
    row.witness = t.at("witness").get<bool>();
    r.trace.push_back(row);
  }
  for (const json& m : j.at("instances")) r.instances.push_back(number_map(m));
  r.wall_time_s = number(j.at("wall_time_s"));
  return r;
}

}  // namespace hullsolve::io
