#include <algorithm>
#include <cmath>

#include "gesture/kernels.hpp"

namespace gesture::kernels {
namespace {

void dtw_row_scalar(double a, const double* b, const double* prev, double left, double* cur,
                    std::size_t width) {
  for (std::size_t k = 0; k < width; ++k) {
    const double cost = std::fabs(a - b[k]);
    const double best = std::min(std::min(prev[k + 1], prev[k]), left);
    left = cost + best;
    cur[k] = left;
  }
}

void correlate_scalar(const double* padded, const double* weights, std::size_t taps, double* out,
                      std::size_t n) {
  for (std::size_t t = 0; t < n; ++t) {
    double acc = 0.0;
    for (std::size_t k = 0; k < taps; ++k) acc += weights[k] * padded[t + k];
    out[t] = acc;
  }
}

void subtract_scalar(double* data, std::size_t n, double value) {
  for (std::size_t t = 0; t < n; ++t) data[t] -= value;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", &dtw_row_scalar, &correlate_scalar, &subtract_scalar};
  return table;
}

}  // namespace gesture::kernels
