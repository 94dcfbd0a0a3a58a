#include "gesture/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gesture/error.hpp"
#include "gesture/parallel.hpp"

namespace gesture {

std::string_view to_string(Reduction reduction) {
  switch (reduction) {
    case Reduction::Sum: return "sum";
    case Reduction::Mean: return "mean";
    case Reduction::Max: return "max";
  }
  return "sum";
}

Reduction parse_reduction(std::string_view text) {
  if (text == "sum") return Reduction::Sum;
  if (text == "mean") return Reduction::Mean;
  if (text == "max") return Reduction::Max;
  throw Error(ErrorCode::InvalidArgument, "unknown reduction '" + std::string(text) + "'");
}

double reduce(const WarpingResult& result, Reduction reduction) {
  switch (reduction) {
    case Reduction::Sum:
      return result.aggregate;
    case Reduction::Mean:
      return result.per_dimension.empty()
                 ? 0.0
                 : result.aggregate / static_cast<double>(result.per_dimension.size());
    case Reduction::Max: {
      double best = 0.0;
      for (const auto& [dim, distance] : result.per_dimension) best = std::max(best, distance);
      return best;
    }
  }
  return result.aggregate;
}

void PipelineParams::validate() const {
  if (median_radius < 1) throw Error(ErrorCode::InvalidArgument, "median radius must be >= 1");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::InvalidArgument, "sigma must be positive");
  }
  if (!(t_var >= 0.0)) throw Error(ErrorCode::InvalidArgument, "t_var must be non-negative");
  if (reject_threshold && !(*reject_threshold >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "reject threshold must be non-negative");
  }
}

TemplateSet::TemplateSet(PipelineParams params, std::vector<GestureTemplate> templates)
    : params_(params) {
  params_.validate();
  if (templates.empty()) throw Error(ErrorCode::InvalidArgument, "template set is empty");
  for (GestureTemplate& t : templates) {
    if (t.gesture_id.empty()) throw Error(ErrorCode::InvalidArgument, "template without gesture id");
    if (t.prepared.params != params_.filter()) {
      throw Error(ErrorCode::InvalidArgument,
                  "template '" + t.gesture_id + "' was prepared with different filter parameters");
    }
    const std::string id = t.gesture_id;
    if (!templates_.emplace(id, std::move(t)).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate template for gesture '" + id + "'");
    }
  }
}

TemplateSet TemplateSet::with_params(const PipelineParams& params) const {
  if (params.filter() != params_.filter()) {
    throw Error(ErrorCode::InvalidArgument,
                "median radius and sigma are fixed by the prepared templates");
  }
  std::vector<GestureTemplate> copies;
  copies.reserve(templates_.size());
  for (const auto& [id, t] : templates_) copies.push_back(t);
  return TemplateSet(params, std::move(copies));
}

GestureTemplate select_template(std::span<const PreparedSequence> candidates,
                                const PipelineParams& params) {
  if (candidates.empty()) throw Error(ErrorCode::EmptyCandidates, "no candidate sequences");
  const std::optional<std::string>& label = candidates.front().label;
  if (!label || label->empty()) {
    throw Error(ErrorCode::InvalidArgument, "template candidates need a label");
  }
  for (const PreparedSequence& c : candidates) {
    if (c.label != label) {
      throw Error(ErrorCode::InvalidArgument, "template candidates carry different labels");
    }
    if (c.params != params.filter()) {
      throw Error(ErrorCode::InvalidArgument, "candidate '" + c.source_id + "' prepared differently");
    }
  }

  const std::size_t n = candidates.size();
  std::vector<double> totals(n, 0.0);
  parallel_for(n, [&](std::size_t c) {
    double total = 0.0;
    for (std::size_t o = 0; o < n; ++o) {
      if (o == c) continue;
      const DimensionSet dims = select_dimensions(candidates[c], candidates[o], params.t_var);
      // Two motionless candidates have nothing to warp and count as identical.
      if (dims.empty()) continue;
      total += reduce(multi_dim_distance(candidates[c], candidates[o], dims, params.dtw()),
                      params.reduction);
    }
    totals[c] = total;
  });

  std::size_t best = 0;
  for (std::size_t c = 1; c < n; ++c) {
    if (totals[c] < totals[best] ||
        (totals[c] == totals[best] && candidates[c].source_id < candidates[best].source_id)) {
      best = c;
    }
  }
  return GestureTemplate{candidates[best], *label, totals[best]};
}

ClassificationOutcome classify(const PreparedSequence& query, const TemplateSet& set) {
  const PipelineParams& params = set.params();
  if (query.params != params.filter()) {
    throw Error(ErrorCode::InvalidArgument,
                "query '" + query.source_id + "' was prepared with different filter parameters");
  }

  std::vector<const GestureTemplate*> templates;
  for (const auto& [id, t] : set.templates()) templates.push_back(&t);

  struct Slot {
    std::optional<RankEntry> entry;
  };
  std::vector<Slot> slots(templates.size());
  parallel_for(templates.size(), [&](std::size_t k) {
    const GestureTemplate& t = *templates[k];
    const DimensionSet dims = select_dimensions(query, t.prepared, params.t_var);
    if (dims.empty()) return;
    const WarpingResult result = multi_dim_distance(query, t.prepared, dims, params.dtw());
    slots[k].entry = RankEntry{t.gesture_id, reduce(result, params.reduction), dims.size()};
  });

  ClassificationOutcome outcome;
  outcome.query_id = query.source_id;
  for (std::size_t k = 0; k < slots.size(); ++k) {
    if (slots[k].entry) {
      outcome.ranking.push_back(*slots[k].entry);
    } else {
      outcome.failed.push_back(templates[k]->gesture_id);
    }
  }
  if (outcome.ranking.empty()) {
    throw Error(ErrorCode::ClassificationFailed,
                "no template shares a dimension with variance above t_var=" +
                    std::to_string(params.t_var) + " with '" + query.source_id + "'");
  }

  std::sort(outcome.ranking.begin(), outcome.ranking.end(),
            [](const RankEntry& a, const RankEntry& b) {
              if (a.distance != b.distance) return a.distance < b.distance;
              return a.gesture_id < b.gesture_id;
            });

  const RankEntry& nearest = outcome.ranking.front();
  if (params.reject_threshold && nearest.distance > *params.reject_threshold) {
    outcome.predicted = std::string(kRejected);
  } else {
    outcome.predicted = nearest.gesture_id;
  }
  return outcome;
}

}  // namespace gesture
