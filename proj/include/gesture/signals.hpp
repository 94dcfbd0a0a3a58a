#pragma once

#include <array>
#include <bitset>
#include <memory>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gesture/normalize.hpp"

namespace gesture {

/// One signal per keypoint coordinate: 18 keypoints x (x, y).
inline constexpr std::size_t kNumDimensions = 2 * kNumKeypoints;

enum class Axis : std::size_t { X = 0, Y = 1 };

constexpr std::size_t dimension(std::size_t keypoint, Axis axis) {
  return 2 * keypoint + static_cast<std::size_t>(axis);
}
constexpr std::size_t dimension(CocoPart part, Axis axis) { return dimension(index(part), axis); }

/// "RWrist.x" style label for a dimension index.
std::string dimension_name(std::size_t dim);

/// D x T matrix of signals, row-major, D fixed at 36.
class SignalMatrix {
 public:
  SignalMatrix() = default;
  explicit SignalMatrix(std::size_t length) : length_(length), data_(kNumDimensions * length, 0.0) {}

  std::size_t length() const { return length_; }

  std::span<const double> row(std::size_t dim) const {
    return {data_.data() + dim * length_, length_};
  }
  std::span<double> row(std::size_t dim) { return {data_.data() + dim * length_, length_}; }

  double operator()(std::size_t dim, std::size_t t) const { return data_[dim * length_ + t]; }
  double& operator()(std::size_t dim, std::size_t t) { return data_[dim * length_ + t]; }

  friend bool operator==(const SignalMatrix&, const SignalMatrix&) = default;

 private:
  std::size_t length_ = 0;
  std::vector<double> data_;
};

/// Population variance of each median-filtered dimension.
using VarianceProfile = std::array<double, kNumDimensions>;

/// Set of dimension indices; iteration is always in ascending order.
class DimensionSet {
 public:
  DimensionSet() = default;
  DimensionSet(std::initializer_list<std::size_t> dims) {
    for (std::size_t d : dims) insert(d);
  }

  void insert(std::size_t dim) { bits_.set(dim); }
  bool contains(std::size_t dim) const { return dim < kNumDimensions && bits_.test(dim); }
  bool empty() const { return bits_.none(); }
  std::size_t size() const { return bits_.count(); }
  std::vector<std::size_t> indices() const;

  bool is_subset_of(const DimensionSet& other) const { return (bits_ & ~other.bits_).none(); }
  DimensionSet operator|(const DimensionSet& other) const {
    DimensionSet out;
    out.bits_ = bits_ | other.bits_;
    return out;
  }
  friend bool operator==(const DimensionSet&, const DimensionSet&) = default;

 private:
  std::bitset<kNumDimensions> bits_;
};

struct FilterParams {
  std::size_t median_radius = 3;
  double sigma = 1.0;
  friend bool operator==(const FilterParams&, const FilterParams&) = default;
};

/// A sequence ready for warping: Gaussian-smoothed, zero-mean rows plus the
/// variance profile that drives dimension selection.
struct PreparedSequence {
  SignalMatrix smoothed;
  VarianceProfile profile{};
  std::string source_id;
  std::optional<std::string> label;
  FilterParams params;
  std::shared_ptr<const NormalizedSequence> source;  // kept for serialization
};

/// data[2k + 0][t] = x of keypoint k in frame t, data[2k + 1][t] = y.
SignalMatrix to_signal_matrix(const NormalizedSequence& sequence);

/// Running median over [t - radius, t + radius], clipped at the ends so the
/// window shrinks instead of padding. Even-sized windows average the two
/// middle values.
std::vector<double> median_filter(std::span<const double> signal, std::size_t radius);

/// Sampled Gaussian over [-ceil(3 sigma), ceil(3 sigma)], normalized to sum 1.
std::vector<double> gaussian_kernel(double sigma);

/// Convolution with gaussian_kernel(sigma) using half-sample symmetric
/// reflection (d c b a | a b c d | d c b a) at both ends.
std::vector<double> gaussian_filter(std::span<const double> signal, double sigma);

/// Divides by n, not n - 1.
double population_variance(std::span<const double> values);
double mean(std::span<const double> values);

VarianceProfile compute_variance_profile(const SignalMatrix& matrix, std::size_t median_radius);

/// Variance profile from the median-filtered signals; smoothed rows from the
/// Gaussian filter applied to the unfiltered signals, then mean-centered.
PreparedSequence prepare(const NormalizedSequence& sequence, const FilterParams& params = {});

/// Dimensions whose variance strictly exceeds t_var.
DimensionSet salient_dimensions(const VarianceProfile& profile, double t_var);

/// Union of the salient dimensions of both sequences.
DimensionSet select_dimensions(const PreparedSequence& query, const PreparedSequence& reference,
                               double t_var);

}  // namespace gesture
