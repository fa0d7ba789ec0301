#include "becgraph/kernels.hpp"

// Reference kernels. Plain loops with straight left-to-right accumulation;
// the SIMD variants are validated against these.

namespace becgraph::kernels {
namespace {

void rotate_pair_scalar(double* x, double* y, std::size_t n, double c,
                        double s) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void axpy_scalar(double* y, const double* x, double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double abs2_sum_scalar(const double* re, const double* im, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += re[i] * re[i] + im[i] * im[i];
  return acc;
}

void cmul_inplace_scalar(double* are, double* aim, const double* bre,
                         const double* bim, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double r = are[i] * bre[i] - aim[i] * bim[i];
    const double j = are[i] * bim[i] + aim[i] * bre[i];
    are[i] = r;
    aim[i] = j;
  }
}

constexpr Ops kScalarOps{
    "scalar",        rotate_pair_scalar, dot_scalar,
    axpy_scalar,     abs2_sum_scalar,    cmul_inplace_scalar,
};

}  // namespace

const Ops& scalar_ops() { return kScalarOps; }

}  // namespace becgraph::kernels
