#include "gesture/normalize.hpp"

#include <cmath>

#include "gesture/error.hpp"

namespace gesture {

NormalizedFrame normalize_frame(const PoseFrame& frame, double shoulder_epsilon) {
  const Keypoint& neck = frame[CocoPart::Neck];
  const Keypoint& right = frame[CocoPart::RShoulder];
  const Keypoint& left = frame[CocoPart::LShoulder];

  const double scale = std::hypot(left.x - right.x, left.y - right.y);
  if (!(scale > shoulder_epsilon)) {
    throw Error(ErrorCode::DegenerateShoulders,
                "shoulder distance " + std::to_string(scale) + " px is too small to normalize");
  }

  NormalizedFrame out;
  for (std::size_t k = 0; k < kNumKeypoints; ++k) {
    const Keypoint& kp = frame.keypoints[k];
    out.coords[k] = Point2{(kp.x - neck.x) / scale, (kp.y - neck.y) / scale};
  }
  return out;
}

NormalizedSequence normalize_sequence(const RawSequence& sequence, double shoulder_epsilon) {
  NormalizedSequence out;
  out.source_id = sequence.source_id;
  out.frames.reserve(sequence.frames.size());
  for (std::size_t t = 0; t < sequence.frames.size(); ++t) {
    try {
      out.frames.push_back(normalize_frame(sequence.frames[t], shoulder_epsilon));
    } catch (const Error& e) {
      throw Error(e.code(), "frame " + std::to_string(t) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace gesture
