// SPDX-License-Identifier: Apache-2.0

#include "specfilter/galerkin.hpp"

namespace specfilter {

Pencil::Pencil(HermitianMatrix a_in, HermitianMatrix m_in, std::string label_in)
    : a(std::move(a_in)), m(std::move(m_in)), label(std::move(label_in)) {
  if (a.dim() != m.dim()) throw Error("Pencil: A and M must share dimension");
  cholesky(m);  // positive definiteness check
}

EigDecomposition solve_galerkin(const Pencil& p) { return generalized_eig(p.a, p.m); }

GalerkinWindow spectral_window(const EigDecomposition& spec, const Pencil& p,
                               const Interval& delta) {
  GalerkinWindow w;
  w.parent = p.label;
  w.delta_a = delta.a;
  w.delta_b = delta.b;
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < spec.values.size(); ++j)
    if (delta.contains(spec.values[j])) {
      w.mu.push_back(spec.values[j]);
      keep.push_back(j);
    }
  w.u = select_columns(spec.vectors, keep);
  return w;
}

HermitianMatrix a_gram(const Pencil& p, double m_shift) {
  const EigDecomposition spec = solve_galerkin(p);
  if (!(m_shift <= spec.values.front()))
    throw Error("a_gram: m_shift exceeds the minimal Galerkin eigenvalue");
  Matrix g = p.a.matrix() + cplx(1.0 - m_shift, 0.0) * p.m.matrix();
  return HermitianMatrix(std::move(g));
}

}  // namespace specfilter
