// SPDX-License-Identifier: Apache-2.0
//
// Backend equivalence: the elementwise kernels must agree bit-for-bit
// between scalar and AVX2; the dot reductions agree to roundoff.

#include <doctest.h>

#include <random>

#include "specfilter/kernels.hpp"
#include "test_helpers.hpp"

using namespace specfilter;
namespace k = specfilter::kernels;

namespace {

// Sizes straddling the vector widths, including remainders and empty.
const std::size_t kSizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 13, 16, 17, 31, 100, 1001};

}  // namespace

TEST_CASE("scalar and avx2 kernels agree") {
  const k::Ops& scalar = k::scalar_ops();
  const k::Ops* avx2 = k::avx2_ops();
  if (avx2 == nullptr) {
    MESSAGE("avx2 backend not available on this machine; skipping equivalence");
    return;
  }

  std::mt19937 rng(7);
  for (std::size_t n : kSizes) {
    CAPTURE(n);
    const auto x = testutil::random_cvec(n, rng);
    const auto y = testutil::random_cvec(n, rng);
    const cplx a(0.37, -1.21);

    SUBCASE("dot products within roundoff") {
      const cplx du_s = scalar.dotu(x.data(), y.data(), n);
      const cplx du_v = avx2->dotu(x.data(), y.data(), n);
      const cplx dc_s = scalar.dotc(x.data(), y.data(), n);
      const cplx dc_v = avx2->dotc(x.data(), y.data(), n);
      const double tol = 1e-14 * (1.0 + static_cast<double>(n));
      CHECK(std::abs(du_s - du_v) <= tol);
      CHECK(std::abs(dc_s - dc_v) <= tol);
    }

    SUBCASE("axpy family bit-identical") {
      auto ys = y, yv = y;
      scalar.axpy(a, x.data(), ys.data(), n);
      avx2->axpy(a, x.data(), yv.data(), n);
      CHECK(ys == yv);

      ys = y;
      yv = y;
      scalar.axpy_conj(a, x.data(), ys.data(), n);
      avx2->axpy_conj(a, x.data(), yv.data(), n);
      CHECK(ys == yv);
    }

    SUBCASE("rotation bit-identical") {
      auto xs = x, xv = x, ys = y, yv = y;
      scalar.rot(0.8, -0.6, xs.data(), ys.data(), n);
      avx2->rot(0.8, -0.6, xv.data(), yv.data(), n);
      CHECK(xs == xv);
      CHECK(ys == yv);
    }
  }
}

TEST_CASE("kernel reference values") {
  const k::Ops& ops = k::scalar_ops();
  const cplx x[2] = {{1.0, 2.0}, {3.0, -1.0}};
  const cplx y[2] = {{0.5, 0.0}, {0.0, 2.0}};
  // dotu = sum x*y = (1+2i)(0.5) + (3-i)(2i) = 0.5+i + 2+6i = 2.5+7i
  CHECK(ops.dotu(x, y, 2) == cplx(2.5, 7.0));
  // dotc = sum conj(x)*y = (1-2i)(0.5) + (3+i)(2i) = 0.5-i + -2+6i = -1.5+5i
  CHECK(ops.dotc(x, y, 2) == cplx(-1.5, 5.0));

  cplx z[2] = {{1.0, 0.0}, {0.0, 0.0}};
  ops.axpy(cplx(0.0, 1.0), x, z, 2);  // z += i*x
  CHECK(z[0] == cplx(-1.0, 1.0));
  CHECK(z[1] == cplx(1.0, 3.0));
}

TEST_CASE("backend selection") {
  k::set_backend(k::Backend::Scalar);
  CHECK(k::active_name() == "scalar");
  k::set_backend(k::Backend::Auto);
  if (k::avx2_ops() != nullptr)
    CHECK(k::active_name() == "avx2");
  else
    CHECK(k::active_name() == "scalar");
}
