// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: single filtered solves, refinement sweeps, and
// reproduction of the benchmark tables and figure data as CSV/JSON.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "specfilter/benchmarks.hpp"
#include "specfilter/filter.hpp"
#include "specfilter/kernels.hpp"
#include "specfilter/metrics.hpp"
#include "specfilter/models.hpp"
#include "specfilter/report.hpp"

namespace {

using namespace specfilter;
using models::ModelId;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUndetermined = 2;
constexpr int kExitUsage = 64;

// Configuration problems map to the usage exit code, runtime failures to 1.
struct UsageError : Error {
  using Error::Error;
};

int parse_mesh(const std::string& s) {
  std::string t = s;
  if (t.rfind("1/", 0) == 0) t = t.substr(2);
  try {
    std::size_t pos = 0;
    const int v = std::stoi(t, &pos);
    if (pos != t.size() || v < 2) throw Error("bad mesh");
    return v;
  } catch (...) {
    throw UsageError("cannot parse mesh parameter '" + s + "' (expected e.g. 1/64)");
  }
}

SelectionPolicy parse_policy(const std::string& s) {
  if (s == "auto") return SelectionPolicy::auto_gap();
  if (s.rfind("dim=", 0) == 0) return SelectionPolicy::expected_dim(std::stoi(s.substr(4)));
  if (s.rfind("threshold=", 0) == 0)
    return SelectionPolicy::threshold(std::stod(s.substr(10)));
  throw UsageError("cannot parse policy '" + s + "' (expected auto | dim=D | threshold=T)");
}

std::vector<int> parse_schedule(ModelId id, const std::string& s) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = s.find(',', pos);
    const std::string item =
        s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!item.empty()) {
      if (id == ModelId::Model1) {
        const int n = std::stoi(item);
        if (n < 1 || n % 2 == 0)
          throw UsageError("model1 schedule entries are odd dimensions n = 2k+1, got " + item);
        out.push_back((n - 1) / 2);
      } else {
        out.push_back(parse_mesh(item));
      }
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw UsageError("empty schedule");
  return out;
}

void apply_kernels(const std::string& which) {
  if (which == "auto")
    kernels::set_backend(kernels::Backend::Auto);
  else if (which == "scalar")
    kernels::set_backend(kernels::Backend::Scalar);
  else if (which == "avx2")
    kernels::set_backend(kernels::Backend::Avx2);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open output file: " + path);
  f << text;
}

struct CommonArgs {
  std::string format = "csv";
  std::string out = "-";
  int precision = 8;
  bool diagnostics = false;
  std::string kernels_choice = "auto";
};

void add_common(CLI::App* cmd, CommonArgs& c) {
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", c.out, "Output path ('-' for stdout)");
  cmd->add_option("--precision", c.precision, "Decimal places for serialized numbers")
      ->check(CLI::Range(1, 17));
  cmd->add_flag("--diagnostics", c.diagnostics,
                "Include gap diagnostics and reference distances");
  cmd->add_option("--kernels", c.kernels_choice, "Kernel backend")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
}

struct ProblemArgs {
  std::string model;
  int k = -1;
  std::string h;
  std::vector<double> interval;
  int ref_k = 0;
  std::string ref_h = "1/2";
};

void add_problem(CLI::App* cmd, ProblemArgs& p, bool need_interval) {
  cmd->set_help_flag("--help", "Print help");  // frees -h for the mesh flag
  cmd->add_option("--model", p.model, "model1 | model2 | model3")->required();
  cmd->add_option("--k", p.k, "model1 mode parameter (n = 2k+1)");
  cmd->add_option("--h", p.h, "mesh size as 1/N (models 2 and 3)");
  auto* iv = cmd->add_option("--interval", p.interval, "Window interval a b")->expected(2);
  if (need_interval) iv->required();
  cmd->add_option("--ref-k", p.ref_k, "reference space parameter for model1");
  cmd->add_option("--ref-h", p.ref_h, "reference mesh size for models 2 and 3");
}

Pencil assemble_for(ModelId id, int param) {
  switch (id) {
    case ModelId::Model1:
      return models::model1_assemble(param);
    case ModelId::Model2:
      return models::model2_assemble(param);
    case ModelId::Model3:
      return models::model3_assemble(param);
  }
  throw Error("bad model");
}

int run_solve(const ProblemArgs& pa, const CommonArgs& ca, const std::string& policy_str) {
  ModelId id;
  try {
    id = models::parse_model_id(pa.model);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (id == ModelId::Model1 && pa.k < 0) throw UsageError("model1 requires --k");
  if (id != ModelId::Model1 && pa.h.empty()) throw UsageError("models 2/3 require --h");
  const int param = id == ModelId::Model1 ? pa.k : parse_mesh(pa.h);
  const int ref_param = id == ModelId::Model1 ? pa.ref_k : parse_mesh(pa.ref_h);

  const Interval delta(pa.interval[0], pa.interval[1]);
  const SelectionPolicy policy = parse_policy(policy_str);
  const Pencil pencil = assemble_for(id, param);
  const ReferenceSubspace ref = models::make_model_reference(id, ref_param, param);
  const FilteredSolveResult fs = filtered_solve(pencil, delta, ref, policy);

  report::SolveRecord rec;
  rec.refinement = models::refinement_tag(id, param);
  rec.status = fs.status == FilteredSolveResult::Status::Ok          ? "ok"
               : fs.status == FilteredSolveResult::Status::EmptyWindow ? "empty-window"
                                                                       : "empty-selection";
  rec.dim_window = fs.window.dim_window();
  rec.galerkin_in_delta = fs.window.mu;
  rec.sigma_p = fs.selection.sigma_p;
  rec.d_selected = fs.selection.d;
  rec.gamma_est = fs.selection.gamma_est;
  if (fs.ritz) rec.ritz = fs.ritz->values;
  rec.pollution_flag = fs.window.dim_window() > static_cast<std::size_t>(fs.selection.d);
  if (ca.diagnostics && !rec.ritz.empty()) {
    std::vector<double> refs;
    for (const auto& kv : models::reference_spectrum(id).known_eigenvalues)
      if (delta.contains(kv.value)) refs.push_back(kv.value);
    if (!refs.empty()) rec.dist_to_reference = hausdorff_distance(rec.ritz, refs);
  }

  write_output(ca.out, ca.format == "csv" ? report::solve_csv(rec, ca.precision)
                                          : report::solve_json(rec, ca.precision));
  return fs.status == FilteredSolveResult::Status::Ok ? kExitOk : kExitUndetermined;
}

int run_sweep(const ProblemArgs& pa, const CommonArgs& ca, const std::string& policy_str,
              const std::string& schedule_str, const std::string& ref_policy,
              const std::string& ref_max_str) {
  ModelId id;
  try {
    id = models::parse_model_id(pa.model);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const std::vector<int> schedule = parse_schedule(id, schedule_str);
  const int ref_start = id == ModelId::Model1 ? pa.ref_k : parse_mesh(pa.ref_h);
  int ref_max = ref_start;
  if (!ref_max_str.empty())
    ref_max = id == ModelId::Model1 ? std::stoi(ref_max_str) : parse_mesh(ref_max_str);

  const Interval delta(pa.interval[0], pa.interval[1]);
  SweepOptions opts;
  opts.policy = parse_policy(policy_str);
  opts.escalate = ref_policy == "escalate";
  opts.diagnostics = ca.diagnostics;

  const SweepProblem problem = models::make_sweep_problem(id, schedule, ref_start, ref_max);
  const SweepReport rep = sweep(problem, delta, opts);

  write_output(ca.out, ca.format == "csv" ? report::sweep_csv(rep, ca.precision)
                                          : report::sweep_json(rep, ca.precision));
  return rep.status == SweepReport::Status::Stabilized ? kExitOk : kExitUndetermined;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pollution-free eigenvalue approximation for self-adjoint pencils"};
  app.require_subcommand(1);

  CommonArgs ca_solve, ca_sweep, ca_table, ca_fig;
  ProblemArgs pa_solve, pa_sweep;
  std::string policy_solve = "auto", policy_sweep = "auto";
  std::string schedule_str, ref_policy = "fixed", ref_max_str;
  std::string table_name, figure_name;
  std::size_t table_rows = static_cast<std::size_t>(-1);

  CLI::App* solve = app.add_subcommand("solve", "Filtered solve at one refinement");
  add_problem(solve, pa_solve, true);
  solve->add_option("--policy", policy_solve, "auto | dim=D | threshold=T");
  add_common(solve, ca_solve);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Filtered solves over a refinement schedule");
  add_problem(sweep_cmd, pa_sweep, true);
  sweep_cmd->add_option("--schedule", schedule_str, "Comma list: n values (model1) or 1/N meshes")
      ->required();
  sweep_cmd->add_option("--policy", policy_sweep, "auto | dim=D | threshold=T");
  sweep_cmd->add_option("--ref-policy", ref_policy, "fixed | escalate")
      ->check(CLI::IsMember({"fixed", "escalate"}));
  sweep_cmd->add_option("--ref-max", ref_max_str, "Escalation cap for the reference space");
  add_common(sweep_cmd, ca_sweep);

  CLI::App* table = app.add_subcommand("table", "Reproduce a published benchmark table");
  table->add_option("name", table_name, "table1 | table2 | table3")->required();
  table->add_option("--rows", table_rows, "Limit to the first N schedule rows");
  add_common(table, ca_table);

  CLI::App* figure = app.add_subcommand("figure-data", "Emit plottable figure data");
  figure
      ->add_option("name", figure_name,
                   "fig1 | fig2 | fig3-self | fig4 | fig5 | fig7 | fig8 | fig9 | fig10")
      ->required();
  add_common(figure, ca_fig);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve->parsed()) {
      apply_kernels(ca_solve.kernels_choice);
      return run_solve(pa_solve, ca_solve, policy_solve);
    }
    if (sweep_cmd->parsed()) {
      apply_kernels(ca_sweep.kernels_choice);
      return run_sweep(pa_sweep, ca_sweep, policy_sweep, schedule_str, ref_policy, ref_max_str);
    }
    if (table->parsed()) {
      apply_kernels(ca_table.kernels_choice);
      const auto rows = benchmarks::compute_table(benchmarks::table_spec(table_name), table_rows);
      write_output(ca_table.out, report::table_csv(rows, ca_table.precision));
      return kExitOk;
    }
    if (figure->parsed()) {
      apply_kernels(ca_fig.kernels_choice);
      const auto rows = benchmarks::figure_data(figure_name);
      write_output(ca_fig.out,
                   report::xy_csv(benchmarks::figure_x_name(figure_name),
                                  benchmarks::figure_y_name(figure_name), rows,
                                  ca_fig.precision));
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}
