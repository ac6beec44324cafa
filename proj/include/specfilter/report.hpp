// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specfilter/filter.hpp"

namespace specfilter::report {

// Fixed-point formatting with a configurable number of decimal places keeps
// CSV and JSON renderings digit-identical and runs byte-reproducible.
std::string format_number(double v, int precision);
std::string join_values(const std::vector<double>& v, int precision);

struct SolveRecord {
  std::string refinement;
  std::string status;  // "ok" | "empty-window" | "empty-selection"
  std::size_t dim_window = 0;
  std::vector<double> galerkin_in_delta;
  std::vector<double> sigma_p;
  int d_selected = 0;
  double gamma_est = 0.0;
  std::vector<double> ritz;
  bool pollution_flag = false;
  std::optional<double> dist_to_reference;
  std::optional<double> delta_gap;
  std::optional<double> delta_a_gap;
};

std::string solve_csv(const SolveRecord& r, int precision);
std::string solve_json(const SolveRecord& r, int precision);

std::string sweep_csv(const SweepReport& r, int precision);
std::string sweep_json(const SweepReport& r, int precision);

// Two-column scatter data for the figure subcommand.
struct XYRow {
  std::string x;
  double y;
};
std::string xy_csv(const std::string& x_name, const std::string& y_name,
                   const std::vector<XYRow>& rows, int precision);

struct TableRow {
  std::string refinement;
  double filtered = 0.0;
  double galerkin = 0.0;
  double published_filtered = 0.0;
  std::optional<double> published_galerkin;
};
std::string table_csv(const std::vector<TableRow>& rows, int precision);

}  // namespace specfilter::report
