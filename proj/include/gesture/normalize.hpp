#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gesture/keypoints.hpp"

namespace gesture {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

/// Keypoints in shoulder-width units with the neck at the origin.
struct NormalizedFrame {
  std::array<Point2, kNumKeypoints> coords{};

  const Point2& operator[](CocoPart part) const { return coords[index(part)]; }
  friend bool operator==(const NormalizedFrame&, const NormalizedFrame&) = default;
};

struct NormalizedSequence {
  std::vector<NormalizedFrame> frames;
  std::string source_id;
  std::optional<std::string> label;
  std::optional<double> fps;

  std::size_t length() const { return frames.size(); }
  friend bool operator==(const NormalizedSequence&, const NormalizedSequence&) = default;
};

/// Shoulder distances at or below this many pixels are treated as a failed
/// (profile-view) detection.
inline constexpr double kDefaultShoulderEpsilon = 1e-6;

/// out_k = (raw_k - raw_neck) / |raw_LShoulder - raw_RShoulder|.
/// Throws DegenerateShoulders when the shoulder distance is <= epsilon.
NormalizedFrame normalize_frame(const PoseFrame& frame,
                                double shoulder_epsilon = kDefaultShoulderEpsilon);

/// Normalizes every frame with its own shoulder scale. Errors name the frame.
NormalizedSequence normalize_sequence(const RawSequence& sequence,
                                      double shoulder_epsilon = kDefaultShoulderEpsilon);

}  // namespace gesture
