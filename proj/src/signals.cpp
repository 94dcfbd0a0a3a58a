#include "gesture/signals.hpp"

#include <algorithm>
#include <cmath>

#include "gesture/error.hpp"
#include "gesture/kernels.hpp"

namespace gesture {

std::string dimension_name(std::size_t dim) {
  return std::string(part_name(dim / 2)) + (dim % 2 == 0 ? ".x" : ".y");
}

std::vector<std::size_t> DimensionSet::indices() const {
  std::vector<std::size_t> out;
  out.reserve(size());
  for (std::size_t d = 0; d < kNumDimensions; ++d) {
    if (bits_.test(d)) out.push_back(d);
  }
  return out;
}

SignalMatrix to_signal_matrix(const NormalizedSequence& sequence) {
  SignalMatrix m(sequence.length());
  for (std::size_t t = 0; t < sequence.length(); ++t) {
    for (std::size_t k = 0; k < kNumKeypoints; ++k) {
      const Point2& p = sequence.frames[t].coords[k];
      m(dimension(k, Axis::X), t) = p.x;
      m(dimension(k, Axis::Y), t) = p.y;
    }
  }
  return m;
}

std::vector<double> median_filter(std::span<const double> signal, std::size_t radius) {
  const std::size_t n = signal.size();
  std::vector<double> out(n);
  std::vector<double> window;
  window.reserve(2 * radius + 1);
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t lo = t >= radius ? t - radius : 0;
    const std::size_t hi = std::min(n - 1, t + radius);
    window.assign(signal.begin() + lo, signal.begin() + hi + 1);
    const std::size_t mid = window.size() / 2;
    std::nth_element(window.begin(), window.begin() + mid, window.end());
    const double upper = window[mid];
    if (window.size() % 2 == 1) {
      out[t] = upper;
    } else {
      const double lower = *std::max_element(window.begin(), window.begin() + mid);
      out[t] = lower + (upper - lower) / 2.0;
    }
  }
  return out;
}

std::vector<double> gaussian_kernel(double sigma) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma must be positive");
  const auto radius = static_cast<std::ptrdiff_t>(std::ceil(3.0 * sigma));
  std::vector<double> weights;
  weights.reserve(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (std::ptrdiff_t i = -radius; i <= radius; ++i) {
    const double x = static_cast<double>(i) / sigma;
    weights.push_back(std::exp(-0.5 * x * x));
    sum += weights.back();
  }
  for (double& w : weights) w /= sum;
  return weights;
}

std::vector<double> gaussian_filter(std::span<const double> signal, double sigma) {
  const std::vector<double> weights = gaussian_kernel(sigma);
  const std::size_t n = signal.size();
  if (n == 0) return {};
  const auto radius = static_cast<std::ptrdiff_t>(weights.size() / 2);
  const auto period = static_cast<std::ptrdiff_t>(2 * n);

  std::vector<double> padded(n + 2 * static_cast<std::size_t>(radius));
  for (std::size_t p = 0; p < padded.size(); ++p) {
    std::ptrdiff_t u = (static_cast<std::ptrdiff_t>(p) - radius) % period;
    if (u < 0) u += period;
    const std::ptrdiff_t src = u < static_cast<std::ptrdiff_t>(n) ? u : period - 1 - u;
    padded[p] = signal[static_cast<std::size_t>(src)];
  }

  std::vector<double> out(n);
  kernels::correlate(padded, weights, out);
  return out;
}

double mean(std::span<const double> values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return values.empty() ? 0.0 : sum / static_cast<double>(values.size());
}

double population_variance(std::span<const double> values) {
  if (values.empty()) return 0.0;
  const double mu = mean(values);
  double acc = 0.0;
  for (double v : values) acc += (v - mu) * (v - mu);
  return acc / static_cast<double>(values.size());
}

VarianceProfile compute_variance_profile(const SignalMatrix& matrix, std::size_t median_radius) {
  VarianceProfile profile{};
  for (std::size_t d = 0; d < kNumDimensions; ++d) {
    profile[d] = population_variance(median_filter(matrix.row(d), median_radius));
  }
  return profile;
}

PreparedSequence prepare(const NormalizedSequence& sequence, const FilterParams& params) {
  if (sequence.length() < 2) {
    throw Error(ErrorCode::TooShort, sequence.source_id + ": at least 2 frames are required");
  }
  if (params.median_radius < 1) {
    throw Error(ErrorCode::InvalidArgument, "median radius must be at least 1");
  }

  const SignalMatrix raw = to_signal_matrix(sequence);
  PreparedSequence out;
  out.profile = compute_variance_profile(raw, params.median_radius);
  out.smoothed = SignalMatrix(raw.length());
  for (std::size_t d = 0; d < kNumDimensions; ++d) {
    const std::vector<double> smooth = gaussian_filter(raw.row(d), params.sigma);
    std::span<double> row = out.smoothed.row(d);
    std::copy(smooth.begin(), smooth.end(), row.begin());
    kernels::subtract(row, mean(row));
  }
  out.source_id = sequence.source_id;
  out.label = sequence.label;
  out.params = params;
  out.source = std::make_shared<const NormalizedSequence>(sequence);
  return out;
}

DimensionSet salient_dimensions(const VarianceProfile& profile, double t_var) {
  DimensionSet dims;
  for (std::size_t d = 0; d < kNumDimensions; ++d) {
    if (profile[d] > t_var) dims.insert(d);
  }
  return dims;
}

DimensionSet select_dimensions(const PreparedSequence& query, const PreparedSequence& reference,
                               double t_var) {
  return salient_dimensions(query.profile, t_var) | salient_dimensions(reference.profile, t_var);
}

}  // namespace gesture
