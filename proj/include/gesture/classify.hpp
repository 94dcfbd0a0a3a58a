#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gesture/dtw.hpp"
#include "gesture/signals.hpp"

namespace gesture {

/// How per-dimension warping distances become one nearest-neighbor score.
enum class Reduction { Sum, Mean, Max };

std::string_view to_string(Reduction reduction);
Reduction parse_reduction(std::string_view text);
double reduce(const WarpingResult& result, Reduction reduction);

struct PipelineParams {
  std::size_t median_radius = 3;
  double sigma = 1.0;
  double t_var = 0.10;
  std::size_t dtw_radius = 1;
  DtwMethod dtw_method = DtwMethod::Fast;
  std::optional<double> reject_threshold;
  Reduction reduction = Reduction::Sum;

  FilterParams filter() const { return {median_radius, sigma}; }
  DtwOptions dtw() const { return {dtw_method, dtw_radius}; }

  /// Throws InvalidArgument on out-of-range values.
  void validate() const;

  friend bool operator==(const PipelineParams&, const PipelineParams&) = default;
};

struct GestureTemplate {
  PreparedSequence prepared;
  std::string gesture_id;
  double selection_total = 0.0;  // summed distance to the other candidates
};

/// One template per gesture, all prepared with the same parameters.
class TemplateSet {
 public:
  TemplateSet(PipelineParams params, std::vector<GestureTemplate> templates);

  const PipelineParams& params() const { return params_; }
  const std::map<std::string, GestureTemplate>& templates() const { return templates_; }
  std::size_t size() const { return templates_.size(); }

  /// Same templates, different classification-time settings. Preparation
  /// parameters (median radius, sigma) must not change.
  TemplateSet with_params(const PipelineParams& params) const;

 private:
  PipelineParams params_;
  std::map<std::string, GestureTemplate> templates_;
};

inline constexpr std::string_view kRejected = "REJECTED";

struct RankEntry {
  std::string gesture_id;
  double distance = 0.0;
  std::size_t dimensions_used = 0;
};

struct ClassificationOutcome {
  std::string predicted;            // a gesture id or kRejected
  std::vector<RankEntry> ranking;   // ascending distance, ties by gesture id
  std::vector<std::string> failed;  // templates with no salient dimension
  std::string query_id;

  bool rejected() const { return predicted == kRejected; }
};

/// Picks the candidate with the smallest summed distance to all other
/// candidates (ties: lowest source_id). Throws EmptyCandidates.
GestureTemplate select_template(std::span<const PreparedSequence> candidates,
                                const PipelineParams& params);

/// One-nearest-neighbor over the template set with optional rejection.
/// Throws ClassificationFailed when no template shares a salient dimension
/// with the query.
ClassificationOutcome classify(const PreparedSequence& query, const TemplateSet& set);

}  // namespace gesture
