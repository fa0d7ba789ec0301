#pragma once

// Dense-vector kernels behind the eigensolver and the many-body propagator.
// Each routine has a scalar reference implementation; on x86-64 an AVX2+FMA
// variant is compiled alongside and selected at runtime when the CPU supports
// it. The BECGRAPH_KERNELS environment variable ("scalar", "avx2", "auto")
// pins the choice, e.g. for bit-reproducible runs or A/B testing.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace becgraph::kernels {

struct Ops {
  const char* name;

  // Plane rotation of two equal-length rows: x' = c*x - s*y, y' = s*x + c*y.
  // x and y must not alias.
  void (*rotate_pair)(double* x, double* y, std::size_t n, double c, double s);

  double (*dot)(const double* x, const double* y, std::size_t n);

  // y += a * x
  void (*axpy)(double* y, const double* x, double a, std::size_t n);

  // sum of re[i]^2 + im[i]^2
  double (*abs2_sum)(const double* re, const double* im, std::size_t n);

  // elementwise in-place complex multiply: (are + i aim) *= (bre + i bim)
  void (*cmul_inplace)(double* are, double* aim, const double* bre,
                       const double* bim, std::size_t n);
};

const Ops& scalar_ops();

// nullptr when AVX2 support is missing at build or run time.
const Ops* avx2_ops();

// Currently selected table. First use resolves BECGRAPH_KERNELS (default
// "auto": fastest available backend).
const Ops& active();

// "scalar" | "avx2" | "auto"; throws std::invalid_argument on unknown or
// unavailable backends.
void select(std::string_view name);

std::vector<std::string> available();

}  // namespace becgraph::kernels
