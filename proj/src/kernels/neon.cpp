#include "tables.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)

#include <arm_neon.h>

#include <algorithm>
#include <cmath>

namespace gesture::kernels::detail {
namespace {

void dtw_row_neon(double a, const double* b, const double* prev, double left, double* cur,
                  std::size_t width) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t k = 0;
  for (; k + 2 <= width; k += 2) {
    const float64x2_t cost = vabdq_f64(va, vld1q_f64(b + k));
    const float64x2_t best = vminq_f64(vld1q_f64(prev + k + 1), vld1q_f64(prev + k));
    left = vgetq_lane_f64(cost, 0) + std::min(vgetq_lane_f64(best, 0), left);
    cur[k] = left;
    left = vgetq_lane_f64(cost, 1) + std::min(vgetq_lane_f64(best, 1), left);
    cur[k + 1] = left;
  }
  for (; k < width; ++k) {
    left = std::fabs(a - b[k]) + std::min(std::min(prev[k + 1], prev[k]), left);
    cur[k] = left;
  }
}

void correlate_neon(const double* padded, const double* weights, std::size_t taps, double* out,
                    std::size_t n) {
  std::size_t t = 0;
  for (; t + 2 <= n; t += 2) {
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t k = 0; k < taps; ++k) {
      // vmulq + vaddq, not vfmaq: the scalar reference rounds twice.
      acc = vaddq_f64(acc, vmulq_f64(vdupq_n_f64(weights[k]), vld1q_f64(padded + t + k)));
    }
    vst1q_f64(out + t, acc);
  }
  for (; t < n; ++t) {
    double acc = 0.0;
    for (std::size_t k = 0; k < taps; ++k) acc += weights[k] * padded[t + k];
    out[t] = acc;
  }
}

void subtract_neon(double* data, std::size_t n, double value) {
  const float64x2_t v = vdupq_n_f64(value);
  std::size_t t = 0;
  for (; t + 2 <= n; t += 2) vst1q_f64(data + t, vsubq_f64(vld1q_f64(data + t), v));
  for (; t < n; ++t) data[t] -= value;
}

}  // namespace

const KernelTable* neon_table_if_built() {
  static const KernelTable table{"neon", &dtw_row_neon, &correlate_neon, &subtract_neon};
  return &table;
}

}  // namespace gesture::kernels::detail

#else

namespace gesture::kernels::detail {
const KernelTable* neon_table_if_built() { return nullptr; }
}  // namespace gesture::kernels::detail

#endif
