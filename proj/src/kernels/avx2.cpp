#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "tables.hpp"

namespace gesture::kernels::detail {
namespace {

inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

void dtw_row_avx2(double a, const double* b, const double* prev, double left, double* cur,
                  std::size_t width) {
  // Vector pass: cur[k] = |a - b[k]| and the best of the two cells in the
  // previous row. The left neighbour is a true recurrence and stays serial.
  alignas(32) double best_above[4];
  const __m256d va = _mm256_set1_pd(a);
  std::size_t k = 0;
  for (; k + 4 <= width; k += 4) {
    const __m256d cost = abs_pd(_mm256_sub_pd(va, _mm256_loadu_pd(b + k)));
    const __m256d up = _mm256_loadu_pd(prev + k + 1);
    const __m256d diag = _mm256_loadu_pd(prev + k);
    _mm256_store_pd(best_above, _mm256_min_pd(up, diag));
    alignas(32) double costs[4];
    _mm256_store_pd(costs, cost);
    for (int lane = 0; lane < 4; ++lane) {
      left = costs[lane] + std::min(best_above[lane], left);
      cur[k + lane] = left;
    }
  }
  for (; k < width; ++k) {
    const double cost = std::fabs(a - b[k]);
    left = cost + std::min(std::min(prev[k + 1], prev[k]), left);
    cur[k] = left;
  }
}

void correlate_avx2(const double* padded, const double* weights, std::size_t taps, double* out,
                    std::size_t n) {
  std::size_t t = 0;
  for (; t + 4 <= n; t += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t k = 0; k < taps; ++k) {
      const __m256d w = _mm256_set1_pd(weights[k]);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(w, _mm256_loadu_pd(padded + t + k)));
    }
    _mm256_storeu_pd(out + t, acc);
  }
  for (; t < n; ++t) {
    double acc = 0.0;
    for (std::size_t k = 0; k < taps; ++k) acc += weights[k] * padded[t + k];
    out[t] = acc;
  }
}

void subtract_avx2(double* data, std::size_t n, double value) {
  const __m256d v = _mm256_set1_pd(value);
  std::size_t t = 0;
  for (; t + 4 <= n; t += 4) {
    _mm256_storeu_pd(data + t, _mm256_sub_pd(_mm256_loadu_pd(data + t), v));
  }
  for (; t < n; ++t) data[t] -= value;
}

}  // namespace

const KernelTable* avx2_table_if_built() {
  static const KernelTable table{"avx2", &dtw_row_avx2, &correlate_avx2, &subtract_avx2};
  return &table;
}

}  // namespace gesture::kernels::detail
