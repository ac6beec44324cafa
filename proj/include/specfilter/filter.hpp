// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "specfilter/galerkin.hpp"
#include "specfilter/matrix.hpp"

namespace specfilter {

// A fixed reference subspace expressed in a fine trial basis: row p of t
// holds the fine-basis coefficients of the p-th reference vector, and g_ll
// is the Gram of the reference basis in the ambient inner product. Only
// nested constructions are supported, for which t is real and
// g_ll = t * M_n * adjoint(t) holds exactly.
struct ReferenceSubspace {
  Matrix t;
  HermitianMatrix g_ll;
  std::string label;

  std::size_t dim_ref() const { return t.rows(); }
};

// Build a reference subspace from its inclusion rows, computing the Gram
// from the fine mass matrix.
ReferenceSubspace make_reference(Matrix t, const HermitianMatrix& m_n, std::string label);

struct SelectionPolicy {
  enum class Kind { Threshold, ExpectedDim, AutoGap };
  Kind kind = Kind::AutoGap;
  double threshold_value = 0.0;
  int expected = 0;

  static SelectionPolicy auto_gap() { return {}; }
  static SelectionPolicy threshold(double t) { return {Kind::Threshold, t, 0}; }
  static SelectionPolicy expected_dim(int d) { return {Kind::ExpectedDim, 0.0, d}; }
  std::string name() const;
};

struct FilterOptions {
  // Eigenvalues of the filter matrix below this are treated as the zero
  // cluster (the essential part of the limiting operator).
  double zero_floor = 1e-8;
  // auto_gap splits the descending spectrum at the largest consecutive
  // ratio within the nonzero head, but only when that ratio is at least
  // this factor; otherwise the whole nonzero head is kept.
  double min_gap_ratio = 10.0;
};

struct FilterSelection {
  std::vector<double> sigma_p;  // eigenvalues of S, descending, clamped to [0,1]
  Matrix w;                     // d_n x d selected (orthonormal) columns
  int d = 0;
  double gamma_est = 0.0;  // smallest kept value; NaN when d == 0
  SelectionPolicy policy;
  // auto_gap kept every window direction and saw no zero cluster: evidence
  // that the window dimension meets or exceeds the reference dimension.
  bool degenerate_all_selected = false;
};

struct RitzResult {
  std::vector<double> values;  // ascending, contained in [min mu, max mu]
  Matrix vectors;              // fine-basis coefficients, M_n-orthonormal columns
};

// Matrix of the compressed projection Q_n P restricted to the window, in
// the window's M-orthonormal eigenbasis: S = adjoint(C) G_LL^-1 C with
// C = conj(T) M_n U. Hermitian, PSD, eigenvalues in [0,1], rank <= dim_L.
// Throws "reference basis degenerate" when G_LL is not positive definite.
HermitianMatrix projection_matrix(const GalerkinWindow& w, const ReferenceSubspace& ref,
                                  const HermitianMatrix& m_n);

FilterSelection filter_eigs(const HermitianMatrix& s, const SelectionPolicy& policy,
                            const FilterOptions& opts = {});

// Rayleigh-Ritz values of the form on the filtered subspace spanned by the
// selected window combinations. Requires sel.d >= 1.
RitzResult ritz_values(const GalerkinWindow& w, const FilterSelection& sel);

struct FilteredSolveResult {
  enum class Status { Ok, EmptyWindow, EmptySelection };
  Status status = Status::Ok;
  std::vector<double> galerkin_values;  // full pencil spectrum
  GalerkinWindow window;
  FilterSelection selection;            // empty defaults when EmptyWindow
  std::optional<RitzResult> ritz;       // set when status == Ok

  bool empty_window() const { return status == Status::EmptyWindow; }
};

// solve_galerkin -> spectral_window -> projection_matrix -> filter_eigs ->
// ritz_values, returning all intermediates. An empty window or an empty
// selection is a structured outcome, not an error.
FilteredSolveResult filtered_solve(const Pencil& p, const Interval& delta,
                                   const ReferenceSubspace& ref, const SelectionPolicy& policy,
                                   const FilterOptions& opts = {});

// A refinement family driven by sweep(): schedule entries are strictly
// refining and every reference level is nested in every entry.
struct SweepProblem {
  std::vector<std::string> tags;
  std::function<Pencil(std::size_t idx)> pencil_at;
  std::function<ReferenceSubspace(int level, std::size_t idx)> reference_at;
  std::function<std::size_t(int level)> reference_dim;
  int level_start = 0;
  int level_max = 0;  // inclusive; == level_start means no escalation room
  // Optional: map coefficient columns from entry `from` into entry `to`.
  std::function<Matrix(std::size_t from, std::size_t to, const Matrix&)> prolong;
  // Optional: known eigenvalues for distance diagnostics.
  std::vector<double> reference_values;
};

struct SweepOptions {
  SelectionPolicy policy;
  FilterOptions filter;
  // Two consecutive records stabilize when their selected head counts agree
  // and the head values differ by less than this (absolute).
  double stabilization_tol = 0.01;
  bool escalate = false;
  bool diagnostics = false;
};

struct SweepRecord {
  std::string tag;
  std::string ref_label;
  std::size_t dim = 0;
  std::size_t dim_window = 0;
  std::vector<double> sigma_p;
  int d_selected = 0;
  double gamma_est = 0.0;
  std::vector<double> ritz;
  bool degenerate_all_selected = false;
  bool stable_with_previous = false;
  bool pollution_flag = false;
  std::optional<double> dist_to_reference;
  std::optional<double> delta_gap;
  std::optional<double> delta_a_gap;
};

struct SweepReport {
  enum class Status { Stabilized, Undetermined };
  std::vector<SweepRecord> records;  // all passes, execution order
  std::vector<std::string> escalations;
  Status status = Status::Undetermined;
  int stabilized_head_count = -1;
};

SweepReport sweep(const SweepProblem& problem, const Interval& delta, const SweepOptions& opts);

// Flags records whose window dimension exceeds the reference dimension.
// Throws for d_reference <= 0.
std::vector<bool> pollution_flags(const SweepReport& report, int d_reference);

}  // namespace specfilter
