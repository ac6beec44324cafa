// SPDX-License-Identifier: Apache-2.0

#include "specfilter/models.hpp"

#include <cmath>
#include <numbers>

namespace specfilter::models {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_power_of_two(int n) { return n >= 1 && (n & (n - 1)) == 0; }

void require_mesh(int n_mesh) {
  if (n_mesh < 2 || !is_power_of_two(n_mesh))
    throw Error("mesh parameter must be a power of two >= 2");
}

// Map element-local node a of element e to a dof index, or -1 for a
// constrained node.
int dof_index(int node, int n_mesh, bool dirichlet) {
  if (!dirichlet) return node;
  if (node <= 0 || node >= n_mesh) return -1;
  return node - 1;
}

std::size_t space_dim(int n_mesh, bool dirichlet) {
  return dirichlet ? static_cast<std::size_t>(n_mesh - 1)
                   : static_cast<std::size_t>(n_mesh + 1);
}

}  // namespace

ModelId parse_model_id(const std::string& name) {
  if (name == "model1") return ModelId::Model1;
  if (name == "model2") return ModelId::Model2;
  if (name == "model3") return ModelId::Model3;
  throw Error("unknown model: " + name);
}

std::string model_name(ModelId id) {
  switch (id) {
    case ModelId::Model1:
      return "model1";
    case ModelId::Model2:
      return "model2";
    case ModelId::Model3:
      return "model3";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// P1 assembly on a uniform mesh of [0,1]

namespace {

struct ElementQuad {
  // Two-point Gauss rule on the element, exact for cubics: enough for a
  // linear coefficient times a product of two linear basis functions.
  double x[2];
  double w[2];
  double lambda0[2];
  double lambda1[2];
};

ElementQuad element_quad(double x0, double h) {
  ElementQuad q;
  const double half = 0.5 * h;
  const double off = half / std::sqrt(3.0);
  q.x[0] = x0 + half - off;
  q.x[1] = x0 + half + off;
  q.w[0] = q.w[1] = half;
  for (int g = 0; g < 2; ++g) {
    const double t = (q.x[g] - x0) / h;
    q.lambda0[g] = 1.0 - t;
    q.lambda1[g] = t;
  }
  return q;
}

enum class Term { Mass, Stiffness, Convection };

Matrix assemble_p1(int n_mesh, bool test_dir, bool trial_dir, const CoefFn& c, Term term) {
  require_mesh(n_mesh);
  const double h = 1.0 / n_mesh;
  Matrix out(space_dim(n_mesh, test_dir), space_dim(n_mesh, trial_dir));

  for (int e = 0; e < n_mesh; ++e) {
    const double x0 = e * h;
    double local[2][2];  // (test a, trial b)

    if (!c) {
      // Constant-coefficient integrals in closed form.
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          switch (term) {
            case Term::Mass:
              local[a][b] = (a == b) ? h / 3.0 : h / 6.0;
              break;
            case Term::Stiffness:
              local[a][b] = (a == b ? 1.0 : -1.0) / h;
              break;
            case Term::Convection:
              // integral of trial_b * test_a' = slope_a * integral(trial_b)
              local[a][b] = (a == 0 ? -1.0 : 1.0) * 0.5;
              break;
          }
        }
      }
    } else {
      const ElementQuad q = element_quad(x0, h);
      const double slope[2] = {-1.0 / h, 1.0 / h};
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          double acc = 0.0;
          for (int g = 0; g < 2; ++g) {
            const double lam[2] = {q.lambda0[g], q.lambda1[g]};
            double f = 0.0;
            switch (term) {
              case Term::Mass:
                f = lam[a] * lam[b];
                break;
              case Term::Stiffness:
                f = slope[a] * slope[b];
                break;
              case Term::Convection:
                f = slope[a] * lam[b];
                break;
            }
            acc += q.w[g] * c(q.x[g]) * f;
          }
          local[a][b] = acc;
        }
      }
    }

    for (int a = 0; a < 2; ++a) {
      const int j = dof_index(e + a, n_mesh, test_dir);
      if (j < 0) continue;
      for (int b = 0; b < 2; ++b) {
        const int l = dof_index(e + b, n_mesh, trial_dir);
        if (l < 0) continue;
        out(j, l) += local[a][b];
      }
    }
  }
  return out;
}

}  // namespace

Matrix p1_mass(int n_mesh, bool test_dir, bool trial_dir, const CoefFn& c) {
  return assemble_p1(n_mesh, test_dir, trial_dir, c, Term::Mass);
}

Matrix p1_stiffness(int n_mesh, bool test_dir, bool trial_dir, const CoefFn& c) {
  return assemble_p1(n_mesh, test_dir, trial_dir, c, Term::Stiffness);
}

Matrix p1_convection(int n_mesh, bool test_dir, bool trial_dir, const CoefFn& c) {
  return assemble_p1(n_mesh, test_dir, trial_dir, c, Term::Convection);
}

Matrix p1_prolongation(int n_coarse, int n_fine, bool dirichlet) {
  require_mesh(n_coarse);
  require_mesh(n_fine);
  if (n_fine % n_coarse != 0 || !is_power_of_two(n_fine / n_coarse))
    throw Error("inclusion_matrix: spaces not nested");

  auto one_level = [&](int nc, bool dir) {
    const int nf = 2 * nc;
    Matrix t(space_dim(nc, dir), space_dim(nf, dir));
    const int lo = dir ? 1 : 0;
    const int hi = dir ? nc - 1 : nc;
    for (int i = lo; i <= hi; ++i) {
      const int row = dir ? i - 1 : i;
      t(row, dof_index(2 * i, nf, dir)) = 1.0;
      for (int off : {-1, 1}) {
        const int node = 2 * i + off;
        if (node < 0 || node > nf) continue;
        const int col = dof_index(node, nf, dir);
        if (col >= 0) t(row, col) = 0.5;
      }
    }
    return t;
  };

  Matrix t = Matrix::identity(space_dim(n_coarse, dirichlet));
  for (int nc = n_coarse; nc < n_fine; nc *= 2) t = mul(t, one_level(nc, dirichlet));
  return t;
}

// ---------------------------------------------------------------------------
// model 1

cplx model1_symbol_coefficient(long m) {
  if (m == 0) return {0.0, 0.0};
  const bool odd = (std::labs(m) % 2) == 1;
  return {0.0, (odd ? 3.0 : 1.0) / static_cast<double>(m)};
}

Pencil model1_assemble(int k) {
  if (k < 0) throw Error("model1_assemble: k must be >= 0");
  const std::size_t n = 2 * static_cast<std::size_t>(k) + 1;
  Matrix a(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = 0; l < n; ++l)
      a(j, l) = model1_symbol_coefficient(static_cast<long>(j) - static_cast<long>(l));
  a(k, k) += 10.0;  // rank-one term at the zero mode
  return Pencil(HermitianMatrix(std::move(a)),
                HermitianMatrix(Matrix::identity(n)),
                "model1 " + refinement_tag(ModelId::Model1, k));
}

// ---------------------------------------------------------------------------
// model 2

Pencil model2_assemble(int n_mesh) {
  require_mesh(n_mesh);
  const std::size_t n1 = space_dim(n_mesh, true);
  const std::size_t n2 = space_dim(n_mesh, false);
  const std::size_t n = n1 + n2;

  const Matrix k11 = p1_stiffness(n_mesh, true, true);
  const Matrix b12 = p1_convection(n_mesh, true, false);  // trial in 2nd comp
  const Matrix mf = p1_mass(n_mesh, false, false);
  const Matrix md = p1_mass(n_mesh, true, true);

  Matrix a(n, n);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n1; ++j) {
      a(i, j) = k11(i, j);
      m(i, j) = md(i, j);
    }
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j) {
      a(i, n1 + j) = b12(i, j);
      a(n1 + j, i) = b12(i, j);
    }
  for (std::size_t i = 0; i < n2; ++i)
    for (std::size_t j = 0; j < n2; ++j) {
      a(n1 + i, n1 + j) = 2.0 * mf(i, j);
      m(n1 + i, n1 + j) = mf(i, j);
    }
  return Pencil(HermitianMatrix(std::move(a)), HermitianMatrix(std::move(m)),
                "model2 " + refinement_tag(ModelId::Model2, n_mesh));
}

double model2_lambda(int k, int sign) {
  const double kk = static_cast<double>(k) * kPi;
  const double s = kk * kk;
  const double disc = std::sqrt((s + 2.0) * (s + 2.0) - 4.0 * s);
  return 0.5 * (2.0 + s + (sign >= 0 ? disc : -disc));
}

// ---------------------------------------------------------------------------
// model 3

namespace {

double va2(double x) { return 7.0 / 8.0 - 0.5 * x; }
double vs2(double x) { return 1.0 / 8.0 + 0.5 * x; }
double va2_plus_vs2(double x) { return va2(x) + vs2(x); }
double wave_coef(double x) { return 2.0 * va2(x) + vs2(x); }

}  // namespace

Pencil model3_assemble(int n_mesh) {
  require_mesh(n_mesh);
  const std::size_t n1 = space_dim(n_mesh, true);
  const std::size_t n2 = space_dim(n_mesh, false);
  const std::size_t n = n1 + 2 * n2;
  const cplx iu(0.0, 1.0);

  // transverse and parallel wave numbers are both 1, so k^2 = 2
  const Matrix a11 = p1_stiffness(n_mesh, true, true, va2_plus_vs2) +
                     cplx(2.0, 0.0) * p1_mass(n_mesh, true, true, va2);
  const Matrix a12 = p1_convection(n_mesh, true, false, va2_plus_vs2) +
                     p1_mass(n_mesh, true, false);
  const Matrix a13 = p1_convection(n_mesh, true, false, vs2) + p1_mass(n_mesh, true, false);
  const Matrix a22 = p1_mass(n_mesh, false, false, wave_coef);
  const Matrix a23 = p1_mass(n_mesh, false, false, vs2);
  const Matrix a33 = p1_mass(n_mesh, false, false, vs2);
  const Matrix md = p1_mass(n_mesh, true, true);
  const Matrix mf = p1_mass(n_mesh, false, false);

  Matrix a(n, n);
  Matrix m(n, n);
  auto put_block = [&a](std::size_t r0, std::size_t c0, const Matrix& blk, cplx scale) {
    for (std::size_t i = 0; i < blk.rows(); ++i)
      for (std::size_t j = 0; j < blk.cols(); ++j) a(r0 + i, c0 + j) += scale * blk(i, j);
  };
  put_block(0, 0, a11, 1.0);
  put_block(0, n1, a12, iu);
  put_block(0, n1 + n2, a13, iu);
  put_block(n1, n1, a22, 1.0);
  put_block(n1, n1 + n2, a23, 1.0);
  put_block(n1 + n2, n1 + n2, a33, 1.0);
  // Hermitian mirror of the off-diagonal blocks.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(j, i) = std::conj(a(i, j));

  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n1; ++j) m(i, j) = md(i, j);
  for (std::size_t c = 0; c < 2; ++c) {
    const std::size_t off = n1 + c * n2;
    for (std::size_t i = 0; i < n2; ++i)
      for (std::size_t j = 0; j < n2; ++j) m(off + i, off + j) = mf(i, j);
  }
  return Pencil(HermitianMatrix(std::move(a)), HermitianMatrix(std::move(m)),
                "model3 " + refinement_tag(ModelId::Model3, n_mesh));
}

// ---------------------------------------------------------------------------

ReferenceData reference_spectrum(ModelId id) {
  ReferenceData d;
  switch (id) {
    case ModelId::Model1:
      d.essential_intervals = {Interval(-2.0 * kPi, -kPi), Interval(kPi, 2.0 * kPi)};
      d.known_eigenvalues = {{-1.64834270, "literature", false},
                             {11.97518502, "literature", false}};
      break;
    case ModelId::Model2: {
      d.essential_points = {1.0};
      d.known_eigenvalues.push_back({2.0, "exact eigenvector (0,1)", false});
      for (int k = 1; k <= 10; ++k) {
        d.known_eigenvalues.push_back({model2_lambda(k, +1), "dispersion formula", false});
        d.known_eigenvalues.push_back({model2_lambda(k, -1), "dispersion formula", false});
      }
      break;
    }
    case ModelId::Model3:
      d.essential_intervals = {Interval(7.0 / 64.0, 0.25), Interval(3.0 / 8.0, 7.0 / 8.0)};
      d.known_eigenvalues = {{0.279, "literature", true}, {1.734, "literature", true}};
      break;
  }
  return d;
}

Matrix inclusion_matrix(ModelId id, int coarse_param, int fine_param) {
  if (id == ModelId::Model1) {
    const int kc = coarse_param, kf = fine_param;
    if (kc < 0 || kf < kc) throw Error("inclusion_matrix: spaces not nested");
    const std::size_t nc = 2 * static_cast<std::size_t>(kc) + 1;
    const std::size_t nf = 2 * static_cast<std::size_t>(kf) + 1;
    Matrix t(nc, nf);
    const std::size_t off = static_cast<std::size_t>(kf - kc);
    for (std::size_t p = 0; p < nc; ++p) t(p, p + off) = 1.0;
    return t;
  }

  const Matrix td = p1_prolongation(coarse_param, fine_param, true);
  const Matrix tf = p1_prolongation(coarse_param, fine_param, false);
  const int comps = id == ModelId::Model2 ? 2 : 3;
  const std::size_t rc = td.rows() + (comps - 1) * tf.rows();
  const std::size_t cc = td.cols() + (comps - 1) * tf.cols();
  Matrix t(rc, cc);
  std::size_t r0 = 0, c0 = 0;
  auto place = [&](const Matrix& blk) {
    for (std::size_t i = 0; i < blk.rows(); ++i)
      for (std::size_t j = 0; j < blk.cols(); ++j) t(r0 + i, c0 + j) = blk(i, j);
    r0 += blk.rows();
    c0 += blk.cols();
  };
  place(td);
  for (int c = 1; c < comps; ++c) place(tf);
  return t;
}

ReferenceSubspace make_model_reference(ModelId id, int ref_param, int fine_param) {
  Matrix t = inclusion_matrix(id, ref_param, fine_param);
  HermitianMatrix g_ll = [&]() {
    if (id == ModelId::Model1)
      return HermitianMatrix(Matrix::identity(t.rows()));
    const Pencil coarse =
        id == ModelId::Model2 ? model2_assemble(ref_param) : model3_assemble(ref_param);
    return coarse.m;
  }();
  return ReferenceSubspace{std::move(t), std::move(g_ll), reference_label(id, ref_param)};
}

std::size_t trial_dimension(ModelId id, int param) {
  switch (id) {
    case ModelId::Model1:
      return 2 * static_cast<std::size_t>(param) + 1;
    case ModelId::Model2:
      return 2 * static_cast<std::size_t>(param);
    case ModelId::Model3:
      return 3 * static_cast<std::size_t>(param) + 1;
  }
  return 0;
}

std::string refinement_tag(ModelId id, int param) {
  if (id == ModelId::Model1) return "n=" + std::to_string(2 * param + 1);
  return "h=1/" + std::to_string(param);
}

std::string reference_label(ModelId id, int param) {
  if (id == ModelId::Model1) return "L(n=" + std::to_string(2 * param + 1) + ")";
  return "L(h=1/" + std::to_string(param) + ")";
}

SweepProblem make_sweep_problem(ModelId id, const std::vector<int>& schedule, int ref_start,
                                int ref_max) {
  if (schedule.empty()) throw Error("make_sweep_problem: empty schedule");
  for (std::size_t i = 1; i < schedule.size(); ++i)
    if (schedule[i] <= schedule[i - 1])
      throw Error("make_sweep_problem: schedule must be strictly refining");

  SweepProblem p;
  for (int s : schedule) p.tags.push_back(refinement_tag(id, s));
  p.pencil_at = [id, schedule](std::size_t idx) {
    switch (id) {
      case ModelId::Model1:
        return model1_assemble(schedule[idx]);
      case ModelId::Model2:
        return model2_assemble(schedule[idx]);
      case ModelId::Model3:
        return model3_assemble(schedule[idx]);
    }
    throw Error("make_sweep_problem: bad model");
  };

  auto level_param = [id, ref_start](int level) {
    return id == ModelId::Model1 ? ref_start + level : ref_start << level;
  };
  const int levels = [&]() {
    if (ref_max < ref_start) return 0;
    if (id == ModelId::Model1) return ref_max - ref_start;
    int l = 0;
    while (ref_start << (l + 1) <= ref_max) ++l;
    return l;
  }();
  p.level_start = 0;
  p.level_max = levels;
  p.reference_at = [id, schedule, level_param](int level, std::size_t idx) {
    return make_model_reference(id, level_param(level), schedule[idx]);
  };
  p.reference_dim = [id, level_param](int level) {
    return trial_dimension(id, level_param(level));
  };
  p.prolong = [id, schedule](std::size_t from, std::size_t to, const Matrix& coeffs) {
    const Matrix t = inclusion_matrix(id, schedule[from], schedule[to]);
    return mul(transpose(t), coeffs);
  };
  for (const KnownEigenvalue& kv : reference_spectrum(id).known_eigenvalues)
    p.reference_values.push_back(kv.value);
  return p;
}

}  // namespace specfilter::models
