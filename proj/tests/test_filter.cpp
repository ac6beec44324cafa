// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "specfilter/filter.hpp"
#include "specfilter/models.hpp"
#include "test_helpers.hpp"

using namespace specfilter;

namespace {

Pencil diag_pencil(std::initializer_list<double> values) {
  const std::size_t n = values.size();
  Matrix a(n, n);
  std::size_t i = 0;
  for (double v : values) a(i, i) = v, ++i;
  return Pencil(HermitianMatrix(std::move(a)), HermitianMatrix(Matrix::identity(n)), "diag");
}

// Independent oracle for the filter matrix: build the projector onto the
// reference span explicitly, P = B (B* G B)^-1 B* G in coordinates, and
// evaluate <P u_j, u_i> entrywise. Shares no code path with
// projection_matrix beyond the matrix product helpers.
Matrix oracle_projection(const GalerkinWindow& w, const Matrix& t, const Matrix& g) {
  const Matrix b = transpose(t);
  const Matrix gram = mul_adjoint_left(b, mul(g, b));
  const Matrix grami = testutil::gauss_jordan_inverse(gram);
  const Matrix p = mul(b, mul(grami, mul(adjoint(b), g)));  // n x n projector
  const Matrix pu = mul(p, w.u);
  const Matrix gpu = mul(g, pu);
  const std::size_t d = w.dim_window();
  Matrix s(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      cplx acc(0.0, 0.0);
      for (std::size_t r = 0; r < w.u.rows(); ++r) acc += std::conj(w.u(r, i)) * gpu(r, j);
      s(i, j) = acc;
    }
  return s;
}

HermitianMatrix diag_s(std::initializer_list<double> values) {
  const std::size_t n = values.size();
  Matrix m(n, n);
  std::size_t i = 0;
  for (double v : values) m(i, i) = v, ++i;
  return HermitianMatrix(std::move(m));
}

GalerkinWindow fake_window(std::vector<double> mu) {
  GalerkinWindow w;
  w.mu = std::move(mu);
  w.u = Matrix::identity(w.mu.size());
  return w;
}

}  // namespace

TEST_CASE("projection_matrix limit cases") {
  const Pencil p = diag_pencil({1, 2, 3});
  const EigDecomposition spec = solve_galerkin(p);

  SUBCASE("reference spanning the window gives the identity") {
    const GalerkinWindow w = spectral_window(spec, p, Interval(0.5, 2.5));  // e1, e2
    Matrix t(2, 3);
    t(0, 0) = 1;
    t(1, 1) = 1;
    const HermitianMatrix s = projection_matrix(w, make_reference(t, p.m, "span"), p.m);
    CHECK(max_abs(s.matrix() - Matrix::identity(2)) <= 1e-12);
  }
  SUBCASE("reference orthogonal to the window gives zero") {
    const GalerkinWindow w = spectral_window(spec, p, Interval(0.5, 1.5));  // e1
    Matrix t(1, 3);
    t(0, 2) = 1;
    const HermitianMatrix s = projection_matrix(w, make_reference(t, p.m, "orth"), p.m);
    CHECK(max_abs(s.matrix()) <= 1e-13);
  }
  SUBCASE("rank-one overlap value 1/3") {
    const GalerkinWindow w = spectral_window(spec, p, Interval(1.5, 2.5));  // e2
    Matrix t(1, 3);
    const double c = 1.0 / std::sqrt(3.0);
    t(0, 0) = c;
    t(0, 1) = c;
    t(0, 2) = c;
    const HermitianMatrix s = projection_matrix(w, make_reference(t, p.m, "mix"), p.m);
    REQUIRE(s.dim() == 1);
    CHECK(s(0, 0).real() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }
  SUBCASE("degenerate reference basis is reported") {
    const GalerkinWindow w = spectral_window(spec, p, Interval(1.5, 2.5));
    Matrix t(2, 3);
    t(0, 0) = 1;
    t(1, 0) = 1;  // repeated vector
    CHECK(testutil::throws_with(
        [&] {
          ReferenceSubspace ref{t, HermitianMatrix(mul(t, adjoint(t))), "degenerate"};
          projection_matrix(w, ref, p.m);
        },
        "reference basis degenerate"));
  }
}

TEST_CASE("projection_matrix agrees with the explicit projector oracle") {
  std::mt19937 rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 4 + trial % 5;
    const Matrix a = testutil::random_hermitian(n, rng);
    const Matrix m = testutil::random_hpd(n, rng);
    const Pencil p(HermitianMatrix(a), HermitianMatrix(m), "rand");
    const EigDecomposition spec = solve_galerkin(p);
    const GalerkinWindow w =
        spectral_window(spec, p, Interval(spec.values.front() - 1.0, spec.values[n / 2]));
    REQUIRE(!w.empty());
    const std::size_t dim_l = 1 + trial % 3;
    const Matrix t = testutil::random_real(dim_l, n, rng);
    const ReferenceSubspace ref = make_reference(t, p.m, "rand-ref");
    const HermitianMatrix s = projection_matrix(w, ref, p.m);
    const Matrix s_oracle = oracle_projection(w, t, m);
    CHECK(max_abs(s.matrix() - s_oracle) <= 1e-10);
  }
}

TEST_CASE("filter matrix spectral properties") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t n = 5 + trial;
    const Matrix a = testutil::random_hermitian(n, rng);
    const Matrix m = testutil::random_hpd(n, rng);
    const Pencil p(HermitianMatrix(a), HermitianMatrix(m), "rand");
    const EigDecomposition spec = solve_galerkin(p);
    const GalerkinWindow w =
        spectral_window(spec, p, Interval(spec.values.front() - 1.0, spec.values.back() + 1.0));
    const std::size_t dim_l = 1 + trial % 4;
    const ReferenceSubspace ref =
        make_reference(testutil::random_real(dim_l, n, rng), p.m, "ref");
    const HermitianMatrix s = projection_matrix(w, ref, p.m);
    const FilterSelection sel = filter_eigs(s, SelectionPolicy::auto_gap());

    for (double v : sel.sigma_p) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0 + 1e-10);
    }
    std::size_t rank = 0;
    for (double v : sel.sigma_p)
      if (v > 1e-8) ++rank;
    CHECK(rank <= dim_l);
    // selected columns orthonormal
    if (sel.d > 0) {
      const Matrix ww = mul_adjoint_left(sel.w, sel.w);
      CHECK(max_abs(ww - Matrix::identity(sel.d)) <= 1e-10);
    }
  }
}

TEST_CASE("filter_eigs selection policies") {
  SUBCASE("auto_gap splits before the zero cluster") {
    const FilterSelection sel = filter_eigs(diag_s({1.0, 0.4, 1e-12}),
                                            SelectionPolicy::auto_gap());
    CHECK(sel.d == 2);
    CHECK(sel.sigma_p[0] == doctest::Approx(1.0));
    CHECK(sel.sigma_p[1] == doctest::Approx(0.4));
    CHECK(sel.gamma_est == doctest::Approx(0.4));
    CHECK(!sel.degenerate_all_selected);
  }
  SUBCASE("expected_dim keeps the head") {
    const FilterSelection sel = filter_eigs(diag_s({1.0, 0.4, 1e-12}),
                                            SelectionPolicy::expected_dim(1));
    CHECK(sel.d == 1);
    CHECK(sel.gamma_est == doctest::Approx(1.0));
  }
  SUBCASE("expected_dim larger than the window fails") {
    CHECK(testutil::throws_with(
        [] { filter_eigs(diag_s({1.0, 0.5}), SelectionPolicy::expected_dim(3)); },
        "window smaller than requested dimension"));
  }
  SUBCASE("threshold keeps values at or above") {
    const FilterSelection sel = filter_eigs(diag_s({0.9, 0.5, 0.1}),
                                            SelectionPolicy::threshold(0.5));
    CHECK(sel.d == 2);
  }
  SUBCASE("all below floor yields an empty selection") {
    const FilterSelection sel = filter_eigs(diag_s({1e-9, 1e-10, 0.0}),
                                            SelectionPolicy::auto_gap());
    CHECK(sel.d == 0);
    CHECK(std::isnan(sel.gamma_est));
  }
  SUBCASE("no significant internal gap keeps the whole head") {
    const FilterSelection sel = filter_eigs(diag_s({1.0, 1.0, 1.0, 1.0}),
                                            SelectionPolicy::auto_gap());
    CHECK(sel.d == 4);
    CHECK(sel.degenerate_all_selected);
  }
}

TEST_CASE("ritz_values") {
  SUBCASE("identity selection returns the window values") {
    const GalerkinWindow w = fake_window({1.5, 2.5, 3.5});
    FilterSelection sel;
    sel.d = 3;
    sel.w = Matrix::identity(3);
    const RitzResult r = ritz_values(w, sel);
    CHECK(r.values[0] == doctest::Approx(1.5));
    CHECK(r.values[1] == doctest::Approx(2.5));
    CHECK(r.values[2] == doctest::Approx(3.5));
  }
  SUBCASE("continuation of the 1/3 example") {
    const Pencil p = diag_pencil({1, 2, 3});
    const EigDecomposition spec = solve_galerkin(p);
    const GalerkinWindow w = spectral_window(spec, p, Interval(1.5, 2.5));
    Matrix t(1, 3);
    const double c = 1.0 / std::sqrt(3.0);
    t(0, 0) = c;
    t(0, 1) = c;
    t(0, 2) = c;
    const HermitianMatrix s = projection_matrix(w, make_reference(t, p.m, "mix"), p.m);
    const FilterSelection sel = filter_eigs(s, SelectionPolicy::expected_dim(1));
    const RitzResult r = ritz_values(w, sel);
    REQUIRE(r.values.size() == 1);
    CHECK(r.values[0] == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("constant window spectrum is reproduced by any selection") {
    const GalerkinWindow w = fake_window({4.0, 4.0, 4.0});
    FilterSelection sel;
    sel.d = 2;
    Matrix m(3, 2);
    m(0, 0) = 0.6;
    m(1, 0) = 0.8;
    m(2, 1) = 1.0;
    sel.w = m;
    const RitzResult r = ritz_values(w, sel);
    for (double v : r.values) CHECK(v == doctest::Approx(4.0).epsilon(1e-13));
  }
  SUBCASE("empty selection is an error") {
    const GalerkinWindow w = fake_window({1.0});
    FilterSelection sel;
    sel.d = 0;
    CHECK(testutil::throws_with([&] { ritz_values(w, sel); }, "empty filtered subspace"));
  }
  SUBCASE("containment in the window hull on random problems") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 8; ++trial) {
      const std::size_t n = 6 + trial % 3;
      const Pencil p(HermitianMatrix(testutil::random_hermitian(n, rng)),
                     HermitianMatrix(testutil::random_hpd(n, rng)), "rand");
      const EigDecomposition spec = solve_galerkin(p);
      const GalerkinWindow w =
          spectral_window(spec, p, Interval(spec.values[1], spec.values[n - 2]));
      if (w.empty()) continue;
      const ReferenceSubspace ref =
          make_reference(testutil::random_real(2, n, rng), p.m, "ref");
      const FilteredSolveResult fs =
          filtered_solve(p, Interval(spec.values[1], spec.values[n - 2]), ref,
                         SelectionPolicy::auto_gap());
      if (!fs.ritz) continue;
      const double lo = *std::min_element(w.mu.begin(), w.mu.end());
      const double hi = *std::max_element(w.mu.begin(), w.mu.end());
      for (double v : fs.ritz->values) {
        CHECK(v >= lo - 1e-10);
        CHECK(v <= hi + 1e-10);
      }
      // Ritz vectors stay M-orthonormal in the fine basis
      const Matrix g =
          mul_adjoint_left(fs.ritz->vectors, mul(p.m.matrix(), fs.ritz->vectors));
      CHECK(max_abs(g - Matrix::identity(fs.ritz->values.size())) <= 1e-10);
    }
  }
}

TEST_CASE("filtered_solve structured outcomes") {
  const Pencil p = diag_pencil({1, 2, 3});
  Matrix t(1, 3);
  t(0, 0) = 1;
  const ReferenceSubspace ref = make_reference(t, p.m, "e1");

  SUBCASE("empty window is not an error") {
    const FilteredSolveResult fs =
        filtered_solve(p, Interval(10.0, 20.0), ref, SelectionPolicy::auto_gap());
    CHECK(fs.status == FilteredSolveResult::Status::EmptyWindow);
    CHECK(!fs.ritz.has_value());
    CHECK(fs.window.dim_window() == 0);
  }
  SUBCASE("orthogonal reference yields an empty selection") {
    const FilteredSolveResult fs =
        filtered_solve(p, Interval(1.5, 3.5), ref, SelectionPolicy::auto_gap());
    CHECK(fs.status == FilteredSolveResult::Status::EmptySelection);
    CHECK(!fs.ritz.has_value());
  }
}

TEST_CASE("galerkin equivalence on a pollution-free problem") {
  // Full window plus a reference containing the whole eigenspace: the
  // filtered values must equal the Galerkin values in the interval.
  const Pencil p = diag_pencil({1, 2, 3, 4, 5, 6});
  const Interval delta(0.5, 6.5);
  const ReferenceSubspace ref = make_reference(Matrix::identity(6), p.m, "full");
  const FilteredSolveResult fs = filtered_solve(p, delta, ref, SelectionPolicy::auto_gap());
  REQUIRE(fs.ritz.has_value());
  REQUIRE(fs.ritz->values.size() == 6);
  for (std::size_t i = 0; i < 6; ++i)
    CHECK(fs.ritz->values[i] == doctest::Approx(static_cast<double>(i + 1)).epsilon(1e-9));
}

TEST_CASE("single-eigenvalue relaxation with a multiplicity-two target") {
  // Eigenvalue 3 has multiplicity two inside the interval; a rank-one
  // reference still pins a one-dimensional filtered subspace on it.
  const Pencil p = diag_pencil({3, 3, 7});
  Matrix t(1, 3);
  t(0, 0) = 1.0 / std::sqrt(2.0);
  t(0, 1) = 1.0 / std::sqrt(2.0);
  const ReferenceSubspace ref = make_reference(t, p.m, "diag-mix");
  const FilteredSolveResult fs =
      filtered_solve(p, Interval(2.0, 4.0), ref, SelectionPolicy::auto_gap());
  REQUIRE(fs.ritz.has_value());
  CHECK(fs.selection.d == 1);
  CHECK(fs.ritz->values[0] == doctest::Approx(3.0).epsilon(1e-9));
}

namespace {

// A toy refinement family: diagonal pencils growing by one dimension, the
// target eigenvector fixed at e1.
SweepProblem toy_problem(bool reference_misses_target) {
  SweepProblem prob;
  prob.tags = {"n=4", "n=5", "n=6"};
  prob.pencil_at = [](std::size_t idx) {
    const std::size_t n = 4 + idx;
    Matrix a(n, n);
    a(0, 0) = 1.0;
    for (std::size_t i = 1; i < n; ++i) a(i, i) = 5.0 + static_cast<double>(i);
    return Pencil(HermitianMatrix(std::move(a)), HermitianMatrix(Matrix::identity(n)), "toy");
  };
  prob.reference_at = [reference_misses_target](int level, std::size_t idx) {
    const std::size_t n = 4 + idx;
    const std::size_t dim_l = 1 + static_cast<std::size_t>(level);
    Matrix t(dim_l, n);
    for (std::size_t r = 0; r < dim_l; ++r) {
      // level 0 spans e2 only (misses e1); level 1 adds e1
      const std::size_t coord = reference_misses_target ? (r == 0 ? 1 : 0) : r;
      t(r, coord) = 1.0;
    }
    const HermitianMatrix m(Matrix::identity(n));
    return make_reference(t, m, "toy-ref-l" + std::to_string(level));
  };
  prob.reference_dim = [](int level) { return static_cast<std::size_t>(level + 1); };
  prob.level_start = 0;
  prob.level_max = 1;
  return prob;
}

}  // namespace

TEST_CASE("sweep stabilization and escalation") {
  SUBCASE("reference containing the target stabilizes at head one") {
    SweepOptions opts;
    opts.escalate = false;
    const SweepReport rep = sweep(toy_problem(false), Interval(0.5, 1.5), opts);
    CHECK(rep.status == SweepReport::Status::Stabilized);
    CHECK(rep.stabilized_head_count == 1);
    CHECK(rep.escalations.empty());
    for (const auto& r : rep.records) CHECK(!r.pollution_flag);  // d_n == 1 == head
  }
  SUBCASE("orthogonal reference collapses and escalation recovers") {
    SweepOptions opts;
    opts.escalate = true;
    const SweepReport rep = sweep(toy_problem(true), Interval(0.5, 1.5), opts);
    CHECK(rep.status == SweepReport::Status::Stabilized);
    CHECK(rep.stabilized_head_count == 1);
    REQUIRE(rep.escalations.size() == 1);
    CHECK(rep.records.size() == 6);  // two passes over the schedule
    // first pass selections are empty
    for (std::size_t i = 0; i < 3; ++i) CHECK(rep.records[i].d_selected == 0);
  }
  SUBCASE("escalation exhausted reports undetermined") {
    SweepProblem prob = toy_problem(true);
    prob.level_max = 0;  // nowhere to go
    SweepOptions opts;
    opts.escalate = true;
    const SweepReport rep = sweep(prob, Interval(0.5, 1.5), opts);
    CHECK(rep.status == SweepReport::Status::Undetermined);
    CHECK(rep.stabilized_head_count == -1);
  }
}

TEST_CASE("pollution_flags") {
  SweepReport rep;
  SweepRecord a, b;
  a.dim_window = 1;
  b.dim_window = 4;
  rep.records = {a, b};
  const auto flags = pollution_flags(rep, 1);
  CHECK(!flags[0]);
  CHECK(flags[1]);
  CHECK(testutil::throws_with([&] { pollution_flags(rep, 0); }, "must be positive"));
}
