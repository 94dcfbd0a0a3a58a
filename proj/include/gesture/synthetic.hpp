#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gesture/eval.hpp"
#include "gesture/keypoints.hpp"

namespace gesture {

/// Parametric limb motions on a frontal stick figure. The first six move
/// disjoint sets of keypoints; RightArmSwipeLoop retraces RightArmSwipe with
/// a small added loop and is meant to be hard to tell apart from it.
enum class Motion {
  RightArmSwipe,
  LeftArmSwipe,
  RightLegLift,
  LeftLegLift,
  HeadNod,
  HipSway,
  RightArmSwipeLoop,
};

std::string_view motion_name(Motion motion);

struct SyntheticSpec {
  std::vector<Motion> motions;
  std::size_t subjects = 8;
  std::size_t trials = 4;
  std::size_t min_frames = 40;  // nominal length range per (subject, gesture)
  std::size_t max_frames = 60;
  double noise_px = 1.5;         // additive Gaussian noise on every coordinate
  double time_jitter = 0.25;     // per-trial length scaling in [1 - j, 1 + j]
  double style_jitter = 0.10;    // per-subject and per-trial amplitude variation
  double spike_probability = 0.25;
  double spike_px = 8.0;         // single-frame upward neck displacement
  double shoulder_px = 80.0;     // nominal shoulder width before random scaling

  /// The six disjoint-limb motions.
  static SyntheticSpec separable();
  /// separable() plus RightArmSwipeLoop.
  static SyntheticSpec with_confusable();

  /// Throws InvalidSpec.
  void validate() const;
};

struct RawCorpusEntry {
  RawSequence raw;
  std::string label;
  std::string subject;  // "1".."S"
  int trial = 0;        // 1..R
};

/// Pixel-space sequences with random translation, scale, noise, time scaling
/// and occasional neck spikes. Deterministic for a given seed.
std::vector<RawCorpusEntry> generate_synthetic_raw(const SyntheticSpec& spec, std::uint64_t seed);

/// Repairs and normalizes raw entries into a labeled corpus.
LabeledCorpus to_corpus(const std::vector<RawCorpusEntry>& raw);

LabeledCorpus generate_synthetic_corpus(const SyntheticSpec& spec, std::uint64_t seed);

}  // namespace gesture
