// SPDX-License-Identifier: Apache-2.0

#include "specfilter/report.hpp"

#include <cmath>
#include <cstdio>

namespace specfilter::report {

namespace {

std::string opt_number(const std::optional<double>& v, int precision) {
  return v ? format_number(*v, precision) : std::string();
}

std::string json_number(double v, int precision) {
  if (std::isnan(v)) return "null";
  return format_number(v, precision);
}

std::string json_opt(const std::optional<double>& v, int precision) {
  return v ? json_number(*v, precision) : std::string("null");
}

std::string json_array(const std::vector<double>& v, int precision) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += json_number(v[i], precision);
  }
  return s + "]";
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

const char* kSweepHeader =
    "refinement,dim_window,sigma_P,d_selected,gamma_est,ritz_values,"
    "pollution_flag,dist_to_reference,delta_gap,delta_a_gap\n";

std::string sweep_record_csv(const SweepRecord& r, int precision) {
  std::string line = r.tag;
  line += "," + std::to_string(r.dim_window);
  line += "," + join_values(r.sigma_p, precision);
  line += "," + std::to_string(r.d_selected);
  line += "," + (std::isnan(r.gamma_est) ? std::string() : format_number(r.gamma_est, precision));
  line += "," + join_values(r.ritz, precision);
  line += std::string(",") + (r.pollution_flag ? "true" : "false");
  line += "," + opt_number(r.dist_to_reference, precision);
  line += "," + opt_number(r.delta_gap, precision);
  line += "," + opt_number(r.delta_a_gap, precision);
  return line + "\n";
}

std::string sweep_record_json(const SweepRecord& r, int precision) {
  std::string s = "{";
  s += "\"refinement\":" + json_string(r.tag);
  s += ",\"dim_window\":" + std::to_string(r.dim_window);
  s += ",\"sigma_P\":" + json_array(r.sigma_p, precision);
  s += ",\"d_selected\":" + std::to_string(r.d_selected);
  s += ",\"gamma_est\":" + json_number(r.gamma_est, precision);
  s += ",\"ritz_values\":" + json_array(r.ritz, precision);
  s += std::string(",\"pollution_flag\":") + (r.pollution_flag ? "true" : "false");
  s += ",\"dist_to_reference\":" + json_opt(r.dist_to_reference, precision);
  s += ",\"delta_gap\":" + json_opt(r.delta_gap, precision);
  s += ",\"delta_a_gap\":" + json_opt(r.delta_a_gap, precision);
  return s + "}";
}

}  // namespace

std::string format_number(double v, int precision) {
  if (std::isnan(v)) return "";
  char buf[512];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  return buf;
}

std::string join_values(const std::vector<double>& v, int precision) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ";";
    s += format_number(v[i], precision);
  }
  return s;
}

std::string solve_csv(const SolveRecord& r, int precision) {
  std::string out =
      "refinement,status,dim_window,galerkin_in_delta,sigma_P,d_selected,gamma_est,"
      "ritz_values,pollution_flag,dist_to_reference,delta_gap,delta_a_gap\n";
  out += r.refinement;
  out += "," + r.status;
  out += "," + std::to_string(r.dim_window);
  out += "," + join_values(r.galerkin_in_delta, precision);
  out += "," + join_values(r.sigma_p, precision);
  out += "," + std::to_string(r.d_selected);
  out += "," + (std::isnan(r.gamma_est) ? std::string() : format_number(r.gamma_est, precision));
  out += "," + join_values(r.ritz, precision);
  out += std::string(",") + (r.pollution_flag ? "true" : "false");
  out += "," + opt_number(r.dist_to_reference, precision);
  out += "," + opt_number(r.delta_gap, precision);
  out += "," + opt_number(r.delta_a_gap, precision);
  return out + "\n";
}

std::string solve_json(const SolveRecord& r, int precision) {
  std::string s = "{";
  s += "\"refinement\":" + json_string(r.refinement);
  s += ",\"status\":" + json_string(r.status);
  s += ",\"dim_window\":" + std::to_string(r.dim_window);
  s += ",\"galerkin_in_delta\":" + json_array(r.galerkin_in_delta, precision);
  s += ",\"sigma_P\":" + json_array(r.sigma_p, precision);
  s += ",\"d_selected\":" + std::to_string(r.d_selected);
  s += ",\"gamma_est\":" + json_number(r.gamma_est, precision);
  s += ",\"ritz_values\":" + json_array(r.ritz, precision);
  s += std::string(",\"pollution_flag\":") + (r.pollution_flag ? "true" : "false");
  s += ",\"dist_to_reference\":" + json_opt(r.dist_to_reference, precision);
  s += ",\"delta_gap\":" + json_opt(r.delta_gap, precision);
  s += ",\"delta_a_gap\":" + json_opt(r.delta_a_gap, precision);
  return s + "}\n";
}

std::string sweep_csv(const SweepReport& r, int precision) {
  std::string out = kSweepHeader;
  for (const SweepRecord& rec : r.records) out += sweep_record_csv(rec, precision);
  return out;
}

std::string sweep_json(const SweepReport& r, int precision) {
  std::string s = "{";
  s += "\"status\":";
  s += r.status == SweepReport::Status::Stabilized ? json_string("stabilized")
                                                   : json_string("undetermined");
  s += ",\"stabilized_head_count\":" + std::to_string(r.stabilized_head_count);
  s += ",\"escalations\":[";
  for (std::size_t i = 0; i < r.escalations.size(); ++i) {
    if (i) s += ",";
    s += json_string(r.escalations[i]);
  }
  s += "],\"records\":[";
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    if (i) s += ",";
    s += sweep_record_json(r.records[i], precision);
  }
  return s + "]}\n";
}

std::string xy_csv(const std::string& x_name, const std::string& y_name,
                   const std::vector<XYRow>& rows, int precision) {
  std::string out = x_name + "," + y_name + "\n";
  for (const XYRow& r : rows) out += r.x + "," + format_number(r.y, precision) + "\n";
  return out;
}

std::string table_csv(const std::vector<TableRow>& rows, int precision) {
  const bool with_galerkin_ref =
      !rows.empty() && rows.front().published_galerkin.has_value();
  std::string out = "refinement,filtered,galerkin,published_filtered";
  if (with_galerkin_ref) out += ",published_galerkin";
  out += ",diff_filtered";
  if (with_galerkin_ref) out += ",diff_galerkin";
  out += "\n";
  for (const TableRow& r : rows) {
    out += r.refinement;
    out += "," + format_number(r.filtered, precision);
    out += "," + format_number(r.galerkin, precision);
    out += "," + format_number(r.published_filtered, precision);
    if (with_galerkin_ref) out += "," + opt_number(r.published_galerkin, precision);
    out += "," + format_number(std::abs(r.filtered - r.published_filtered), precision);
    if (with_galerkin_ref)
      out += "," + format_number(std::abs(r.galerkin - *r.published_galerkin), precision);
    out += "\n";
  }
  return out;
}

}  // namespace specfilter::report
