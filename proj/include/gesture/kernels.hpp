#pragma once

// Data-parallel inner loops with a scalar reference and SIMD variants.
//
// Every variant must produce results bit-identical to the scalar table: the
// vector code only reorders independent lanes, never a reduction, and the
// build disables floating-point contraction.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace gesture::kernels {

struct KernelTable {
  std::string_view name;

  // One row of the warping dynamic program over `width` columns.
  //   cur[k] = |a - b[k]| + min(prev[k + 1], prev[k], cur[k - 1])
  // `prev` holds width + 1 entries aligned so prev[k + 1] is the cell above
  // cur[k] and prev[k] the diagonal. cur[-1] is taken as `left`.
  void (*dtw_row)(double a, const double* b, const double* prev, double left, double* cur,
                  std::size_t width);

  // out[t] = sum_{k < taps} weights[k] * padded[t + k], accumulated in k order.
  void (*correlate)(const double* padded, const double* weights, std::size_t taps, double* out,
                    std::size_t n);

  // data[t] -= value
  void (*subtract)(double* data, std::size_t n, double value);
};

const KernelTable& scalar_table();

// nullptr when the variant was not compiled in or the CPU lacks the feature.
const KernelTable* avx2_table();
const KernelTable* neon_table();

/// Every table usable on this machine; the scalar table is always first.
std::vector<const KernelTable*> available_tables();

/// The table used by the library. Picks the widest supported variant unless
/// the GESTURE_KERNELS environment variable names another one
/// (scalar, avx2, neon).
const KernelTable& active();

/// Overrides the active table; returns false if `name` is unavailable.
bool select(std::string_view name);

// Span conveniences over the active table.
void dtw_row(double a, std::span<const double> b, std::span<const double> prev, double left,
             std::span<double> cur);
void correlate(std::span<const double> padded, std::span<const double> weights,
               std::span<double> out);
void subtract(std::span<double> data, double value);

}  // namespace gesture::kernels
