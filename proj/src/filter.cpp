// SPDX-License-Identifier: Apache-2.0

#include "specfilter/filter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "specfilter/metrics.hpp"

namespace specfilter {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

Matrix conj_matrix(const Matrix& a) {
  Matrix c = a;
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) c(i, j) = std::conj(c(i, j));
  return c;
}

}  // namespace

std::string SelectionPolicy::name() const {
  switch (kind) {
    case Kind::Threshold:
      return "threshold=" + std::to_string(threshold_value);
    case Kind::ExpectedDim:
      return "dim=" + std::to_string(expected);
    case Kind::AutoGap:
      return "auto_gap";
  }
  return "?";
}

ReferenceSubspace make_reference(Matrix t, const HermitianMatrix& m_n, std::string label) {
  if (t.cols() != m_n.dim()) throw Error("make_reference: dimension mismatch");
  const Matrix b = transpose(t);  // columns = reference vectors
  Matrix gram = mul_adjoint_left(b, mul(m_n.matrix(), b));
  return ReferenceSubspace{std::move(t), HermitianMatrix(std::move(gram)), std::move(label)};
}

HermitianMatrix projection_matrix(const GalerkinWindow& w, const ReferenceSubspace& ref,
                                  const HermitianMatrix& m_n) {
  if (w.empty()) throw Error("projection_matrix: empty window");
  if (ref.t.cols() != m_n.dim() || w.u.rows() != m_n.dim())
    throw Error("projection_matrix: dimension mismatch");

  Matrix r;
  try {
    r = cholesky(ref.g_ll);
  } catch (const Error&) {
    throw Error("reference basis degenerate");
  }

  // C(p, i) = <P-basis_p, u_i> in the ambient inner product.
  Matrix c = mul(conj_matrix(ref.t), mul(m_n.matrix(), w.u));
  // S = adjoint(C) G_LL^-1 C = adjoint(Z) Z with Z = R^-1 C.
  solve_lower_left_inplace(r, c);
  return HermitianMatrix(mul_adjoint_left(c, c));
}

FilterSelection filter_eigs(const HermitianMatrix& s, const SelectionPolicy& policy,
                            const FilterOptions& opts) {
  const EigDecomposition dec = hermitian_eig(s);
  const std::size_t k = dec.values.size();

  FilterSelection sel;
  sel.policy = policy;
  sel.sigma_p.resize(k);
  std::vector<std::size_t> order(k);  // descending
  for (std::size_t j = 0; j < k; ++j) order[j] = k - 1 - j;
  for (std::size_t j = 0; j < k; ++j)
    sel.sigma_p[j] = std::clamp(dec.values[order[j]], 0.0, 1.0);

  std::size_t keep = 0;
  switch (policy.kind) {
    case SelectionPolicy::Kind::Threshold: {
      while (keep < k && sel.sigma_p[keep] >= policy.threshold_value) ++keep;
      break;
    }
    case SelectionPolicy::Kind::ExpectedDim: {
      if (policy.expected < 0 || static_cast<std::size_t>(policy.expected) > k)
        throw Error("window smaller than requested dimension");
      keep = static_cast<std::size_t>(policy.expected);
      break;
    }
    case SelectionPolicy::Kind::AutoGap: {
      std::size_t head = 0;  // values at or above the zero-cluster floor
      while (head < k && sel.sigma_p[head] >= opts.zero_floor) ++head;
      if (head <= 1) {
        keep = head;
      } else {
        std::size_t split = 0;
        double best = 0.0;
        for (std::size_t i = 0; i + 1 < head; ++i) {
          const double ratio = sel.sigma_p[i] / sel.sigma_p[i + 1];
          if (ratio > best) {
            best = ratio;
            split = i + 1;
          }
        }
        keep = best >= opts.min_gap_ratio ? split : head;
      }
      sel.degenerate_all_selected = (keep == k && k > 0);
      break;
    }
  }

  sel.d = static_cast<int>(keep);
  sel.gamma_est = keep > 0 ? sel.sigma_p[keep - 1] : kNan;
  std::vector<std::size_t> cols(order.begin(), order.begin() + keep);
  sel.w = select_columns(dec.vectors, cols);
  return sel;
}

RitzResult ritz_values(const GalerkinWindow& w, const FilterSelection& sel) {
  if (sel.d < 1) throw Error("empty filtered subspace");
  const std::size_t dn = w.mu.size();
  const std::size_t d = static_cast<std::size_t>(sel.d);
  if (sel.w.rows() != dn) throw Error("ritz_values: selection/window mismatch");

  // The window basis U diagonalizes the form with M-orthonormal columns, so
  // the compressed matrix is adjoint(W) diag(mu) W.
  Matrix dw = sel.w;
  for (std::size_t i = 0; i < dn; ++i)
    for (std::size_t j = 0; j < d; ++j) dw(i, j) *= w.mu[i];
  const HermitianMatrix h(mul_adjoint_left(sel.w, dw));
  EigDecomposition dec = hermitian_eig(h);

  RitzResult out;
  out.values = std::move(dec.values);
  out.vectors = mul(w.u, mul(sel.w, dec.vectors));
  return out;
}

FilteredSolveResult filtered_solve(const Pencil& p, const Interval& delta,
                                   const ReferenceSubspace& ref, const SelectionPolicy& policy,
                                   const FilterOptions& opts) {
  FilteredSolveResult res;
  const EigDecomposition spec = solve_galerkin(p);
  res.galerkin_values = spec.values;
  res.window = spectral_window(spec, p, delta);
  if (res.window.empty()) {
    res.status = FilteredSolveResult::Status::EmptyWindow;
    res.selection.policy = policy;
    res.selection.gamma_est = kNan;
    return res;
  }
  const HermitianMatrix s = projection_matrix(res.window, ref, p.m);
  res.selection = filter_eigs(s, policy, opts);
  if (res.selection.d == 0) {
    res.status = FilteredSolveResult::Status::EmptySelection;
    return res;
  }
  res.status = FilteredSolveResult::Status::Ok;
  res.ritz = ritz_values(res.window, res.selection);
  return res;
}

namespace {

// Head-count and head-value stabilization between consecutive records.
bool stable_pair(const SweepRecord& prev, const SweepRecord& cur, double tol) {
  if (prev.d_selected != cur.d_selected) return false;
  for (int j = 0; j < cur.d_selected; ++j)
    if (std::abs(prev.sigma_p[j] - cur.sigma_p[j]) >= tol) return false;
  return true;
}

}  // namespace

SweepReport sweep(const SweepProblem& problem, const Interval& delta, const SweepOptions& opts) {
  if (problem.tags.empty()) throw Error("sweep: empty schedule");
  SweepReport report;

  int level = problem.level_start;
  while (true) {
    const std::size_t pass_begin = report.records.size();
    bool any_degenerate = false;
    std::optional<RitzResult> prev_ritz;

    for (std::size_t idx = 0; idx < problem.tags.size(); ++idx) {
      const Pencil pencil = problem.pencil_at(idx);
      const ReferenceSubspace ref = problem.reference_at(level, idx);
      const FilteredSolveResult fs =
          filtered_solve(pencil, delta, ref, opts.policy, opts.filter);

      SweepRecord rec;
      rec.tag = problem.tags[idx];
      rec.ref_label = ref.label;
      rec.dim = pencil.dim();
      rec.dim_window = fs.window.dim_window();
      rec.sigma_p = fs.selection.sigma_p;
      rec.d_selected = fs.selection.d;
      rec.gamma_est = fs.selection.gamma_est;
      if (fs.ritz) rec.ritz = fs.ritz->values;
      rec.degenerate_all_selected = fs.selection.degenerate_all_selected;
      any_degenerate = any_degenerate || rec.degenerate_all_selected;

      if (opts.diagnostics) {
        if (!problem.reference_values.empty() && !rec.ritz.empty()) {
          std::vector<double> refs_in;
          for (double v : problem.reference_values)
            if (delta.contains(v)) refs_in.push_back(v);
          if (!refs_in.empty())
            rec.dist_to_reference = hausdorff_distance(rec.ritz, refs_in);
        }
        if (idx > 0 && problem.prolong && fs.ritz && prev_ritz &&
            prev_ritz->vectors.cols() > 0) {
          const Matrix prev_here = problem.prolong(idx - 1, idx, prev_ritz->vectors);
          const Matrix& cur = fs.ritz->vectors;
          rec.delta_gap = std::max(subspace_gap(cur, prev_here, pencil.m),
                                   subspace_gap(prev_here, cur, pencil.m));
          // Energy Gram with the discrete shift: min Galerkin value - 1.
          const double shift = fs.galerkin_values.front() - 1.0;
          const HermitianMatrix ag(pencil.a.matrix() +
                                   cplx(1.0 - shift, 0.0) * pencil.m.matrix());
          rec.delta_a_gap = std::max(subspace_gap(cur, prev_here, ag),
                                     subspace_gap(prev_here, cur, ag));
        }
      }

      if (report.records.size() > pass_begin)
        rec.stable_with_previous =
            stable_pair(report.records.back(), rec, opts.stabilization_tol);
      prev_ritz = fs.ritz;
      report.records.push_back(std::move(rec));
    }

    const SweepRecord& last = report.records.back();
    const bool pass_stabilized =
        report.records.size() - pass_begin >= 2 && last.stable_with_previous;
    const int head = last.d_selected;

    if (!opts.escalate) {
      report.status = pass_stabilized ? SweepReport::Status::Stabilized
                                      : SweepReport::Status::Undetermined;
      report.stabilized_head_count = pass_stabilized ? head : -1;
      break;
    }

    const std::size_t dim_ref = problem.reference_dim(level);
    if (pass_stabilized && head > 0 && static_cast<std::size_t>(head) < dim_ref) {
      report.status = SweepReport::Status::Stabilized;
      report.stabilized_head_count = head;
      break;
    }

    // The pass did not settle below the reference dimension: a full head
    // suggests dim L(Delta) >= dim L, a collapsed head suggests the
    // reference is (numerically) orthogonal to the target eigenspace.
    std::string reason;
    if (pass_stabilized && head == 0)
      reason = "head collapsed to zero";
    else if (pass_stabilized)
      reason = "stabilized head count reached reference dimension";
    else if (any_degenerate)
      reason = "selection kept every window direction";
    else
      reason = "no stabilization";

    if (level >= problem.level_max) {
      report.status = SweepReport::Status::Undetermined;
      report.stabilized_head_count = -1;
      break;
    }
    ++level;
    report.escalations.push_back("escalated reference space to level " +
                                 std::to_string(level) + " (" + reason + ")");
  }

  if (report.status == SweepReport::Status::Stabilized && report.stabilized_head_count > 0) {
    const std::vector<bool> flags = pollution_flags(report, report.stabilized_head_count);
    for (std::size_t i = 0; i < report.records.size(); ++i)
      report.records[i].pollution_flag = flags[i];
  }
  return report;
}

std::vector<bool> pollution_flags(const SweepReport& report, int d_reference) {
  if (d_reference <= 0) throw Error("pollution_flags: d_reference must be positive");
  std::vector<bool> flags;
  flags.reserve(report.records.size());
  for (const SweepRecord& r : report.records)
    flags.push_back(r.dim_window > static_cast<std::size_t>(d_reference));
  return flags;
}

}  // namespace specfilter
