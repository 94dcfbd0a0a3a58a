#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace gesture {

inline constexpr std::size_t kNumKeypoints = 18;

// COCO-18 body-part indices as emitted by OpenPose's COCO model.
enum class CocoPart : std::size_t {
  Nose = 0,
  Neck = 1,
  RShoulder = 2,
  RElbow = 3,
  RWrist = 4,
  LShoulder = 5,
  LElbow = 6,
  LWrist = 7,
  RHip = 8,
  RKnee = 9,
  RAnkle = 10,
  LHip = 11,
  LKnee = 12,
  LAnkle = 13,
  REye = 14,
  LEye = 15,
  REar = 16,
  LEar = 17,
};

constexpr std::size_t index(CocoPart part) { return static_cast<std::size_t>(part); }

std::string_view part_name(std::size_t keypoint);

/// One 2D keypoint in image pixels. Confidence 0 marks the point as missing;
/// x and y are then meaningless.
struct Keypoint {
  double x = 0.0;
  double y = 0.0;
  double confidence = 0.0;

  bool missing() const { return confidence == 0.0; }
  friend bool operator==(const Keypoint&, const Keypoint&) = default;
};

struct PoseFrame {
  std::array<Keypoint, kNumKeypoints> keypoints{};
  std::size_t frame_index = 0;

  const Keypoint& operator[](CocoPart part) const { return keypoints[index(part)]; }
  Keypoint& operator[](CocoPart part) { return keypoints[index(part)]; }
  friend bool operator==(const PoseFrame&, const PoseFrame&) = default;
};

/// Ordered frames of one recording; frame_index runs 0..T-1.
struct RawSequence {
  std::vector<PoseFrame> frames;
  std::string source_id;

  std::size_t length() const { return frames.size(); }
  friend bool operator==(const RawSequence&, const RawSequence&) = default;
};

/// Parses one OpenPose `--write_json` document and returns the first person.
/// Throws MalformedJson, SchemaViolation or NoPersonDetected.
PoseFrame parse_frame_file(std::string_view json);

/// Writes a frame back out in the OpenPose per-frame schema (single person).
std::string serialize_frame(const PoseFrame& frame);

/// Loads every `*.json` file in `directory`, ordered by filename.
RawSequence load_sequence(const std::filesystem::path& directory);

/// Fills missing keypoints by linear interpolation in time, extending the
/// nearest observed value across leading and trailing gaps. Repaired points
/// keep confidence 0. Throws KeypointNeverSeen if a part is never observed.
RawSequence repair_missing(const RawSequence& sequence);

}  // namespace gesture
