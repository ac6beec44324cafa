// SPDX-License-Identifier: Apache-2.0

#include "specfilter/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace specfilter::kernels {

namespace {

const Ops* resolve(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return &scalar_ops();
    case Backend::Avx2:
      return avx2_ops();  // may be null; caller falls back
    case Backend::Auto:
      break;
  }
  if (const Ops* v = avx2_ops()) return v;
  return &scalar_ops();
}

Backend env_backend() {
  const char* e = std::getenv("SPECFILTER_KERNELS");
  if (e == nullptr) return Backend::Auto;
  if (std::strcmp(e, "scalar") == 0) return Backend::Scalar;
  if (std::strcmp(e, "avx2") == 0) return Backend::Avx2;
  return Backend::Auto;
}

const Ops*& current() {
  static const Ops* ops = resolve(env_backend());
  return ops;
}

}  // namespace

void set_backend(Backend b) {
  const Ops* r = resolve(b);
  current() = r != nullptr ? r : &scalar_ops();
}

const Ops& active() { return *current(); }

std::string active_name() { return active().name; }

}  // namespace specfilter::kernels
