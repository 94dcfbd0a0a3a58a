#include "gesture/keypoints.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gesture/error.hpp"
#include "json.hpp"

namespace gesture {

using nlohmann::json;

std::string_view part_name(std::size_t keypoint) {
  static constexpr std::array<std::string_view, kNumKeypoints> kNames = {
      "Nose",  "Neck",  "RShoulder", "RElbow", "RWrist", "LShoulder",
      "LElbow", "LWrist", "RHip",    "RKnee",  "RAnkle", "LHip",
      "LKnee", "LAnkle", "REye",     "LEye",   "REar",   "LEar"};
  return keypoint < kNumKeypoints ? kNames[keypoint] : "Unknown";
}

PoseFrame parse_frame_file(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::MalformedJson, e.what());
  }

  if (!doc.is_object() || !doc.contains("people") || !doc["people"].is_array()) {
    throw Error(ErrorCode::SchemaViolation, "expected an object with a 'people' array");
  }
  const json& people = doc["people"];
  if (people.empty()) {
    throw Error(ErrorCode::NoPersonDetected, "'people' array is empty");
  }
  if (people.size() > 1) {
    warn(std::to_string(people.size()) + " people detected; using the first entry");
  }

  const json& person = people.front();
  if (!person.is_object() || !person.contains("pose_keypoints_2d") ||
      !person["pose_keypoints_2d"].is_array()) {
    throw Error(ErrorCode::SchemaViolation, "person entry lacks 'pose_keypoints_2d'");
  }
  const json& flat = person["pose_keypoints_2d"];
  if (flat.size() != 3 * kNumKeypoints) {
    throw Error(ErrorCode::SchemaViolation,
                "expected " + std::to_string(3 * kNumKeypoints) + " values (COCO-18), got " +
                    std::to_string(flat.size()));
  }

  PoseFrame frame;
  for (std::size_t k = 0; k < kNumKeypoints; ++k) {
    std::array<double, 3> triple{};
    for (std::size_t c = 0; c < 3; ++c) {
      const json& v = flat[3 * k + c];
      if (!v.is_number()) {
        throw Error(ErrorCode::SchemaViolation, "non-numeric value at keypoint " + std::to_string(k));
      }
      triple[c] = v.get<double>();
      if (!std::isfinite(triple[c])) {
        throw Error(ErrorCode::SchemaViolation, "non-finite value at keypoint " + std::to_string(k));
      }
    }
    if (triple[2] < 0.0 || triple[2] > 1.0) {
      throw Error(ErrorCode::SchemaViolation,
                  "confidence outside [0, 1] at keypoint " + std::to_string(k));
    }
    frame.keypoints[k] = Keypoint{triple[0], triple[1], triple[2]};
  }
  return frame;
}

std::string serialize_frame(const PoseFrame& frame) {
  json flat = json::array();
  for (const Keypoint& kp : frame.keypoints) {
    flat.push_back(kp.x);
    flat.push_back(kp.y);
    flat.push_back(kp.confidence);
  }
  json doc = {{"version", 1.3}, {"people", json::array({json{{"pose_keypoints_2d", flat}}})}};
  return doc.dump();
}

RawSequence load_sequence(const std::filesystem::path& directory) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(directory, ec)) {
    throw Error(ErrorCode::IoError, "not a directory: " + directory.string());
  }

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });

  if (files.size() < 2) {
    throw Error(ErrorCode::TooShort, directory.string() + " holds " + std::to_string(files.size()) +
                                         " frame file(s); at least 2 are required");
  }

  RawSequence seq;
  seq.source_id = fs::absolute(directory).lexically_normal().filename().string();
  if (seq.source_id.empty()) {
    seq.source_id = fs::absolute(directory).lexically_normal().parent_path().filename().string();
  }
  seq.frames.reserve(files.size());
  for (const fs::path& file : files) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read " + file.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
      PoseFrame frame = parse_frame_file(buffer.str());
      frame.frame_index = seq.frames.size();
      seq.frames.push_back(frame);
    } catch (const Error& e) {
      throw Error(e.code(), file.filename().string() + ": " + e.what());
    }
  }
  return seq;
}

RawSequence repair_missing(const RawSequence& sequence) {
  RawSequence out = sequence;
  const std::size_t length = sequence.frames.size();

  for (std::size_t k = 0; k < kNumKeypoints; ++k) {
    std::vector<std::size_t> present;
    for (std::size_t t = 0; t < length; ++t) {
      if (!sequence.frames[t].keypoints[k].missing()) present.push_back(t);
    }
    if (present.empty()) {
      throw Error(ErrorCode::KeypointNeverSeen,
                  "keypoint " + std::to_string(k) + " (" + std::string(part_name(k)) +
                      ") is missing in every frame");
    }
    if (present.size() == length) continue;

    std::size_t next = 0;  // index into `present` of the first anchor at or after t
    for (std::size_t t = 0; t < length; ++t) {
      while (next < present.size() && present[next] < t) ++next;
      Keypoint& kp = out.frames[t].keypoints[k];
      if (!sequence.frames[t].keypoints[k].missing()) continue;

      if (next == 0) {
        const Keypoint& anchor = sequence.frames[present.front()].keypoints[k];
        kp = Keypoint{anchor.x, anchor.y, 0.0};
      } else if (next == present.size()) {
        const Keypoint& anchor = sequence.frames[present.back()].keypoints[k];
        kp = Keypoint{anchor.x, anchor.y, 0.0};
      } else {
        const std::size_t t0 = present[next - 1];
        const std::size_t t1 = present[next];
        const Keypoint& a = sequence.frames[t0].keypoints[k];
        const Keypoint& b = sequence.frames[t1].keypoints[k];
        const double w = static_cast<double>(t - t0) / static_cast<double>(t1 - t0);
        kp = Keypoint{a.x + w * (b.x - a.x), a.y + w * (b.y - a.y), 0.0};
      }
    }
  }
  return out;
}

}  // namespace gesture
