#include "gesture/dtw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gesture/error.hpp"
#include "gesture/kernels.hpp"

namespace gesture {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_non_empty(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) {
    throw Error(ErrorCode::EmptySeries, "warping needs two non-empty series");
  }
}

// Accumulated costs for the cells of a window, stored row by row.
class CostTable {
 public:
  explicit CostTable(const Window& window) : window_(window), offsets_(window.rows() + 1, 0) {
    for (std::size_t i = 0; i < window.rows(); ++i) {
      offsets_[i + 1] = offsets_[i] + (window.hi(i) - window.lo(i) + 1);
    }
    cells_.assign(offsets_.back(), kInf);
  }

  std::span<double> row(std::size_t i) {
    return {cells_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }

  double at(std::size_t i, std::size_t j) const {
    if (!window_.contains(i, j)) return kInf;
    return cells_[offsets_[i] + (j - window_.lo(i))];
  }

 private:
  const Window& window_;
  std::vector<std::size_t> offsets_;
  std::vector<double> cells_;
};

}  // namespace

Window Window::full(std::size_t rows, std::size_t cols) {
  return Window(cols, std::vector<std::pair<std::size_t, std::size_t>>(rows, {0, cols - 1}));
}

std::size_t Window::cell_count() const {
  std::size_t total = 0;
  for (const auto& [lo, hi] : ranges_) total += hi - lo + 1;
  return total;
}

bool Window::is_connected() const {
  if (ranges_.empty() || cols_ == 0) return false;
  if (lo(0) != 0 || hi(rows() - 1) != cols_ - 1) return false;
  for (std::size_t i = 0; i < rows(); ++i) {
    if (lo(i) > hi(i) || hi(i) >= cols_) return false;
    if (i > 0 && (lo(i) > hi(i - 1) + 1 || lo(i) < lo(i - 1))) return false;
  }
  return true;
}

Alignment dtw_windowed(std::span<const double> a, std::span<const double> b, const Window& window) {
  require_non_empty(a, b);
  if (window.rows() != a.size() || window.cols() != b.size()) {
    throw Error(ErrorCode::InvalidArgument, "window shape does not match the series");
  }

  CostTable table(window);
  std::vector<double> above;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::size_t lo = window.lo(i);
    const std::size_t width = window.hi(i) - lo + 1;

    // above[k] is the previous-row cell at column lo - 1 + k.
    above.assign(width + 1, kInf);
    if (i > 0) {
      for (std::size_t k = 0; k <= width; ++k) {
        if (lo + k >= 1) above[k] = table.at(i - 1, lo + k - 1);
      }
    }
    const double left = (i == 0 && lo == 0) ? 0.0 : kInf;
    kernels::dtw_row(a[i], b.subspan(lo, width), above, left, table.row(i));
  }

  Alignment result;
  result.distance = table.at(a.size() - 1, b.size() - 1);
  if (!std::isfinite(result.distance)) {
    throw Error(ErrorCode::InvalidArgument, "window admits no warping path");
  }

  std::size_t i = a.size() - 1;
  std::size_t j = b.size() - 1;
  result.path.push_back({i, j});
  while (i > 0 || j > 0) {
    if (i == 0) {
      --j;
    } else if (j == 0) {
      --i;
    } else {
      const double diag = table.at(i - 1, j - 1);
      const double up = table.at(i - 1, j);
      const double left = table.at(i, j - 1);
      if (diag <= up && diag <= left) {
        --i;
        --j;
      } else if (up <= left) {
        --i;
      } else {
        --j;
      }
    }
    result.path.push_back({i, j});
  }
  std::reverse(result.path.begin(), result.path.end());
  return result;
}

Alignment dtw_exact(std::span<const double> a, std::span<const double> b) {
  require_non_empty(a, b);
  return dtw_windowed(a, b, Window::full(a.size(), b.size()));
}

std::vector<double> coarsen(std::span<const double> series) {
  std::vector<double> out;
  out.reserve((series.size() + 1) / 2);
  std::size_t t = 0;
  for (; t + 1 < series.size(); t += 2) out.push_back((series[t] + series[t + 1]) / 2.0);
  if (t < series.size()) out.push_back(series[t]);
  return out;
}

Window project_window(const WarpingPath& coarse_path, std::size_t rows, std::size_t cols,
                      std::size_t radius) {
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::pair<std::size_t, std::size_t>> ranges(rows, {kUnset, 0});

  auto mark = [&](std::size_t i, std::size_t j) {
    const std::size_t row_lo = i >= radius ? i - radius : 0;
    const std::size_t row_hi = std::min(rows - 1, i + radius);
    const std::size_t col_lo = j >= radius ? j - radius : 0;
    const std::size_t col_hi = std::min(cols - 1, j + radius);
    for (std::size_t r = row_lo; r <= row_hi; ++r) {
      ranges[r].first = std::min(ranges[r].first, col_lo);
      ranges[r].second = std::max(ranges[r].second, col_hi);
    }
  };

  for (const PathStep& step : coarse_path) {
    for (std::size_t di = 0; di < 2; ++di) {
      for (std::size_t dj = 0; dj < 2; ++dj) {
        const std::size_t i = 2 * step.i + di;
        const std::size_t j = 2 * step.j + dj;
        if (i < rows && j < cols) mark(i, j);
      }
    }
  }
  return Window(cols, std::move(ranges));
}

Alignment fast_dtw(std::span<const double> a, std::span<const double> b, std::size_t radius) {
  require_non_empty(a, b);
  if (std::min(a.size(), b.size()) <= radius + 2) return dtw_exact(a, b);

  const std::vector<double> coarse_a = coarsen(a);
  const std::vector<double> coarse_b = coarsen(b);
  const Alignment coarse = fast_dtw(coarse_a, coarse_b, radius);
  const Window window = project_window(coarse.path, a.size(), b.size(), radius);
  return dtw_windowed(a, b, window);
}

double path_cost(std::span<const double> a, std::span<const double> b, const WarpingPath& path) {
  double total = 0.0;
  for (const PathStep& step : path) total += std::fabs(a[step.i] - b[step.j]);
  return total;
}

bool is_valid_path(const WarpingPath& path, std::size_t rows, std::size_t cols) {
  if (path.empty() || rows == 0 || cols == 0) return false;
  if (path.front() != PathStep{0, 0} || path.back() != PathStep{rows - 1, cols - 1}) return false;
  for (std::size_t s = 1; s < path.size(); ++s) {
    const std::size_t di = path[s].i - path[s - 1].i;
    const std::size_t dj = path[s].j - path[s - 1].j;
    if (path[s].i < path[s - 1].i || path[s].j < path[s - 1].j) return false;
    if (di > 1 || dj > 1 || di + dj == 0) return false;
  }
  return true;
}

std::string_view to_string(DtwMethod method) {
  return method == DtwMethod::Exact ? "exact" : "fast";
}

DtwMethod parse_dtw_method(std::string_view text) {
  if (text == "exact") return DtwMethod::Exact;
  if (text == "fast") return DtwMethod::Fast;
  throw Error(ErrorCode::InvalidArgument, "unknown DTW method '" + std::string(text) + "'");
}

double warp_distance(std::span<const double> a, std::span<const double> b,
                     const DtwOptions& options) {
  return options.method == DtwMethod::Exact ? dtw_exact(a, b).distance
                                            : fast_dtw(a, b, options.radius).distance;
}

WarpingResult multi_dim_distance(const PreparedSequence& query, const PreparedSequence& reference,
                                 const DimensionSet& dims, const DtwOptions& options) {
  if (dims.empty()) {
    throw Error(ErrorCode::NoDimensionsSelected,
                "no salient dimension between '" + query.source_id + "' and '" +
                    reference.source_id + "'");
  }
  WarpingResult result;
  result.dimensions_used = dims;
  for (std::size_t d : dims.indices()) {
    const double distance = warp_distance(query.smoothed.row(d), reference.smoothed.row(d), options);
    result.per_dimension.emplace(d, distance);
    result.aggregate += distance;
  }
  return result;
}

}  // namespace gesture
