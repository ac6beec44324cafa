// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "specfilter/models.hpp"
#include "specfilter/report.hpp"

namespace specfilter::benchmarks {

// A published benchmark column: the filtered eigenvalue approximation of a
// single target eigenvalue across a refinement schedule, with the values
// reported in the literature for cross-checking.
struct TableSpec {
  std::string name;
  models::ModelId model;
  std::vector<int> schedule;  // mesh parameters (1/h)
  Interval delta;
  int ref_param;
  SelectionPolicy policy;
  std::vector<double> published_filtered;
  std::vector<double> published_galerkin;  // empty when not published
};

const TableSpec& table_spec(const std::string& name);  // table1 | table2 | table3

// Runs the pipeline for the first `rows` schedule entries (all by default)
// and extracts per row the Ritz value and the window Galerkin value closest
// to the published one.
std::vector<report::TableRow> compute_table(const TableSpec& spec,
                                            std::size_t rows = static_cast<std::size_t>(-1));

// Scatter/error data behind the figures. fig3 carries only the filtered
// error curve (the non-self-adjoint comparator curve is not computed here).
std::vector<report::XYRow> figure_data(const std::string& which);
std::string figure_y_name(const std::string& which);
std::string figure_x_name(const std::string& which);

}  // namespace specfilter::benchmarks
