// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "specfilter/filter.hpp"
#include "specfilter/galerkin.hpp"

namespace specfilter::models {

enum class ModelId { Model1, Model2, Model3 };

ModelId parse_model_id(const std::string& name);  // "model1" | "model2" | "model3"
std::string model_name(ModelId id);

struct KnownEigenvalue {
  double value;
  std::string source;
  bool approximate = false;
};

struct ReferenceData {
  std::vector<Interval> essential_intervals;
  std::vector<double> essential_points;  // degenerate parts (single points)
  std::vector<KnownEigenvalue> known_eigenvalues;
};

// --- model 1: multiplication by a sawtooth plus a rank-one term on the
// Fourier basis of L^2(-pi, pi). The matrix is Hermitian Toeplitz plus a
// rank-one correction at the zero mode; entries come from the closed-form
// Fourier coefficients of the sawtooth.
cplx model1_symbol_coefficient(long m);
Pencil model1_assemble(int k);  // modes -k..k, dim 2k+1, M = I

// --- models 2 and 3: block operators discretized with P1 elements on a
// uniform mesh of [0,1]; first component with homogeneous Dirichlet
// conditions, remaining components free. n_mesh is the number of elements
// (a power of two so that the spaces nest).
Pencil model2_assemble(int n_mesh);  // dim 2N
Pencil model3_assemble(int n_mesh);  // dim 3N+1

// Closed dispersion formula for the second model's eigenvalue branches.
double model2_lambda(int k, int sign);

ReferenceData reference_spectrum(ModelId id);

// Inclusion rows T with (coarse basis) = T (fine basis). Fourier spaces
// nest by mode selection; P1 spaces by the (1/2, 1, 1/2) refinement
// stencil composed across levels and blocked per component.
Matrix inclusion_matrix(ModelId id, int coarse_param, int fine_param);

// Reference subspace for the coarse trial space, with the Gram assembled
// exactly on the coarse mesh.
ReferenceSubspace make_model_reference(ModelId id, int ref_param, int fine_param);

std::size_t trial_dimension(ModelId id, int param);
std::string refinement_tag(ModelId id, int param);     // "n=17" or "h=1/8"
std::string reference_label(ModelId id, int param);

// Sweep driver plumbing for a model family: schedule of refinement
// parameters plus an escalation ladder of reference parameters.
SweepProblem make_sweep_problem(ModelId id, const std::vector<int>& schedule,
                                int ref_start, int ref_max);

// --- P1 building blocks (exposed for reuse and for independent checks).
// Entries are (test j, trial l); integrals are exact: closed element forms
// for constant coefficients, two-point Gauss for linear coefficients.
using CoefFn = std::function<double(double)>;
Matrix p1_mass(int n_mesh, bool test_dirichlet, bool trial_dirichlet, const CoefFn& c = {});
Matrix p1_stiffness(int n_mesh, bool test_dirichlet, bool trial_dirichlet,
                    const CoefFn& c = {});
// integral of c * trial * (d test / dx)
Matrix p1_convection(int n_mesh, bool test_dirichlet, bool trial_dirichlet,
                     const CoefFn& c = {});
Matrix p1_prolongation(int n_coarse, int n_fine, bool dirichlet);

}  // namespace specfilter::models
