// SPDX-License-Identifier: Apache-2.0

#include "specfilter/benchmarks.hpp"

#include <cmath>
#include <numbers>

namespace specfilter::benchmarks {

namespace {

constexpr double kPi = std::numbers::pi;

using models::ModelId;

const std::vector<int> kMeshSchedule = {8, 16, 32, 64, 128, 256, 512, 1024};
const std::vector<int> kFigMeshSchedule = {8, 16, 32, 64, 128, 256};
const std::vector<int> kFourierSchedule = {8, 32, 128, 512};  // n = 17..1025

TableSpec make_table1() {
  return TableSpec{
      "table1",
      ModelId::Model2,
      kMeshSchedule,
      Interval(1.001, 12.0),
      2,
      SelectionPolicy::expected_dim(2),
      {11.05969611, 10.97328312, 10.97490592, 10.96960440, 10.97002620, 10.96991628,
       10.96991153, 10.96990927},
      {11.08334840, 10.99818000, 10.97696913, 10.97167162, 10.97034757, 10.97001658,
       10.96993383, 10.96991314}};
}

TableSpec make_table2() {
  return TableSpec{"table2",
                   ModelId::Model3,
                   kMeshSchedule,
                   Interval(0.25 + 0.001, 0.375 - 0.001),
                   2,
                   SelectionPolicy::expected_dim(1),
                   {0.28037548, 0.27982165, 0.27931501, 0.27912106, 0.27905636, 0.27903778,
                    0.27903279, 0.27903149},
                   {}};
}

TableSpec make_table3() {
  return TableSpec{"table3",
                   ModelId::Model3,
                   kMeshSchedule,
                   Interval(0.875 + 0.001, 3.0),
                   2,
                   SelectionPolicy::expected_dim(1),
                   {1.73461704, 1.73463871, 1.73463393, 1.73463291, 1.73463343, 1.73463339,
                    1.73463368, 1.73463384},
                   {}};
}

Pencil assemble(ModelId id, int param) {
  switch (id) {
    case ModelId::Model1:
      return models::model1_assemble(param);
    case ModelId::Model2:
      return models::model2_assemble(param);
    case ModelId::Model3:
      return models::model3_assemble(param);
  }
  throw Error("benchmarks: bad model");
}

double closest(const std::vector<double>& values, double target) {
  double best = values.front();
  for (double v : values)
    if (std::abs(v - target) < std::abs(best - target)) best = v;
  return best;
}

std::vector<report::XYRow> sigma_rows(ModelId id, const std::vector<int>& schedule,
                                      const Interval& delta, int ref_param) {
  std::vector<report::XYRow> rows;
  for (int p : schedule) {
    const Pencil pencil = assemble(id, p);
    const ReferenceSubspace ref = models::make_model_reference(id, ref_param, p);
    const FilteredSolveResult fs =
        filtered_solve(pencil, delta, ref, SelectionPolicy::auto_gap());
    const std::string x =
        id == ModelId::Model1 ? std::to_string(2 * p + 1) : "1/" + std::to_string(p);
    for (double s : fs.selection.sigma_p) rows.push_back({x, s});
  }
  return rows;
}

std::vector<report::XYRow> galerkin_rows(ModelId id, const std::vector<int>& schedule,
                                         const Interval& display) {
  std::vector<report::XYRow> rows;
  for (int p : schedule) {
    const Pencil pencil = assemble(id, p);
    const EigDecomposition spec = solve_galerkin(pencil);
    const std::string x =
        id == ModelId::Model1 ? std::to_string(2 * p + 1) : "1/" + std::to_string(p);
    for (double mu : spec.values)
      if (display.contains(mu)) rows.push_back({x, mu});
  }
  return rows;
}

}  // namespace

const TableSpec& table_spec(const std::string& name) {
  static const TableSpec t1 = make_table1();
  static const TableSpec t2 = make_table2();
  static const TableSpec t3 = make_table3();
  if (name == "table1") return t1;
  if (name == "table2") return t2;
  if (name == "table3") return t3;
  throw Error("unknown table: " + name);
}

std::vector<report::TableRow> compute_table(const TableSpec& spec, std::size_t rows) {
  std::vector<report::TableRow> out;
  const std::size_t count = std::min(rows, spec.schedule.size());
  for (std::size_t i = 0; i < count; ++i) {
    const int p = spec.schedule[i];
    const Pencil pencil = assemble(spec.model, p);
    const ReferenceSubspace ref = models::make_model_reference(spec.model, spec.ref_param, p);
    const FilteredSolveResult fs = filtered_solve(pencil, spec.delta, ref, spec.policy);
    if (!fs.ritz) throw Error(spec.name + ": pipeline returned no Ritz values at row " +
                              std::to_string(i));
    report::TableRow row;
    row.refinement = models::refinement_tag(spec.model, p);
    row.published_filtered = spec.published_filtered[i];
    if (!spec.published_galerkin.empty()) row.published_galerkin = spec.published_galerkin[i];
    row.filtered = closest(fs.ritz->values, row.published_filtered);
    row.galerkin = closest(fs.window.mu, row.published_filtered);
    out.push_back(row);
  }
  return out;
}

std::vector<report::XYRow> figure_data(const std::string& which) {
  const Interval delta1(-kPi + 0.001, kPi - 0.001);
  if (which == "fig1")
    return galerkin_rows(ModelId::Model1, kFourierSchedule, Interval(-kPi, kPi));
  if (which == "fig2") return sigma_rows(ModelId::Model1, kFourierSchedule, delta1, 0);
  if (which == "fig3-self") {
    std::vector<report::XYRow> rows;
    const double lambda1 = models::reference_spectrum(ModelId::Model1)
                               .known_eigenvalues.front()
                               .value;
    for (int k : kFourierSchedule) {
      const Pencil pencil = models::model1_assemble(k);
      const ReferenceSubspace ref = models::make_model_reference(ModelId::Model1, 0, k);
      const FilteredSolveResult fs =
          filtered_solve(pencil, delta1, ref, SelectionPolicy::auto_gap());
      if (!fs.ritz) continue;
      rows.push_back({std::to_string(2 * k + 1),
                      std::abs(closest(fs.ritz->values, lambda1) - lambda1)});
    }
    return rows;
  }
  if (which == "fig4")
    return galerkin_rows(ModelId::Model2, kFigMeshSchedule, Interval(1.0, 2.5));
  if (which == "fig5")
    return sigma_rows(ModelId::Model2, kFigMeshSchedule, Interval(1.001, 12.0), 2);
  if (which == "fig7")
    return galerkin_rows(ModelId::Model3, kFigMeshSchedule, table_spec("table2").delta);
  if (which == "fig8")
    return sigma_rows(ModelId::Model3, kFigMeshSchedule, table_spec("table2").delta, 2);
  if (which == "fig9")
    return galerkin_rows(ModelId::Model3, kFigMeshSchedule, table_spec("table3").delta);
  if (which == "fig10")
    return sigma_rows(ModelId::Model3, kFigMeshSchedule, table_spec("table3").delta, 2);
  throw Error("unknown figure: " + which);
}

std::string figure_x_name(const std::string& which) {
  return which == "fig1" || which == "fig2" || which == "fig3-self" ? "n" : "h";
}

std::string figure_y_name(const std::string& which) {
  if (which == "fig1" || which == "fig4" || which == "fig7" || which == "fig9")
    return "galerkin_eigenvalue";
  if (which == "fig3-self") return "ritz_error";
  return "sigma_p";
}

}  // namespace specfilter::benchmarks
