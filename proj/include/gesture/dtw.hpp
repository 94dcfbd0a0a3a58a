#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "gesture/signals.hpp"

namespace gesture {

struct PathStep {
  std::size_t i = 0;  // index into the first series
  std::size_t j = 0;  // index into the second series
  friend bool operator==(const PathStep&, const PathStep&) = default;
};

/// Monotone alignment from (0, 0) to (|a| - 1, |b| - 1).
using WarpingPath = std::vector<PathStep>;

/// Cells of the cost matrix the dynamic program may visit, as one inclusive
/// column range per row.
class Window {
 public:
  Window() = default;
  Window(std::size_t cols, std::vector<std::pair<std::size_t, std::size_t>> ranges)
      : cols_(cols), ranges_(std::move(ranges)) {}

  static Window full(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return ranges_.size(); }
  std::size_t cols() const { return cols_; }
  std::size_t lo(std::size_t row) const { return ranges_[row].first; }
  std::size_t hi(std::size_t row) const { return ranges_[row].second; }
  bool contains(std::size_t i, std::size_t j) const {
    return i < rows() && j >= lo(i) && j <= hi(i);
  }
  std::size_t cell_count() const;

  /// Ranges are non-empty, cover both corners and each row overlaps or touches
  /// the previous one so a monotone path exists.
  bool is_connected() const;

 private:
  std::size_t cols_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> ranges_;
};

struct Alignment {
  double distance = 0.0;
  WarpingPath path;
};

/// Full O(|a| |b|) dynamic program with local cost |a_i - b_j| and unweighted
/// steps (1,0), (0,1), (1,1). Throws EmptySeries.
Alignment dtw_exact(std::span<const double> a, std::span<const double> b);

/// Same recurrence restricted to `window`. Cells outside count as unreachable.
Alignment dtw_windowed(std::span<const double> a, std::span<const double> b, const Window& window);

/// Halves the resolution by averaging adjacent pairs; an odd trailing element
/// is carried over unchanged.
std::vector<double> coarsen(std::span<const double> series);

/// Expands each coarse path cell to its 2x2 block at the finer resolution,
/// then grows the result by `radius` cells in every direction.
Window project_window(const WarpingPath& coarse_path, std::size_t rows, std::size_t cols,
                      std::size_t radius);

/// Multi-resolution approximation of DTW (coarsen, recurse, project, refine).
/// Falls back to dtw_exact once the shorter series has at most radius + 2
/// points. Never below dtw_exact; equal when the window covers everything.
Alignment fast_dtw(std::span<const double> a, std::span<const double> b, std::size_t radius);

/// Sum of |a_i - b_j| along `path`, accumulated from the start.
double path_cost(std::span<const double> a, std::span<const double> b, const WarpingPath& path);
bool is_valid_path(const WarpingPath& path, std::size_t rows, std::size_t cols);

enum class DtwMethod { Exact, Fast };

std::string_view to_string(DtwMethod method);
DtwMethod parse_dtw_method(std::string_view text);

struct DtwOptions {
  DtwMethod method = DtwMethod::Fast;
  std::size_t radius = 1;
};

double warp_distance(std::span<const double> a, std::span<const double> b,
                     const DtwOptions& options);

/// Per-dimension warping distances between two prepared sequences.
struct WarpingResult {
  std::map<std::size_t, double> per_dimension;
  double aggregate = 0.0;  // sum over per_dimension, ascending dimension order
  DimensionSet dimensions_used;
};

/// Warps every dimension in `dims` independently and sums the distances.
/// Throws NoDimensionsSelected when `dims` is empty.
WarpingResult multi_dim_distance(const PreparedSequence& query, const PreparedSequence& reference,
                                 const DimensionSet& dims, const DtwOptions& options);

}  // namespace gesture
