#include "gesture/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "gesture/error.hpp"
#include "gesture/normalize.hpp"

namespace gesture {

std::string_view motion_name(Motion motion) {
  switch (motion) {
    case Motion::RightArmSwipe: return "right_arm_swipe";
    case Motion::LeftArmSwipe: return "left_arm_swipe";
    case Motion::RightLegLift: return "right_leg_lift";
    case Motion::LeftLegLift: return "left_leg_lift";
    case Motion::HeadNod: return "head_nod";
    case Motion::HipSway: return "hip_sway";
    case Motion::RightArmSwipeLoop: return "right_arm_swipe_loop";
  }
  return "unknown";
}

SyntheticSpec SyntheticSpec::separable() {
  SyntheticSpec spec;
  spec.motions = {Motion::RightArmSwipe, Motion::LeftArmSwipe, Motion::RightLegLift,
                  Motion::LeftLegLift,   Motion::HeadNod,      Motion::HipSway};
  return spec;
}

SyntheticSpec SyntheticSpec::with_confusable() {
  SyntheticSpec spec = separable();
  spec.motions.push_back(Motion::RightArmSwipeLoop);
  return spec;
}

void SyntheticSpec::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidSpec, what); };
  if (motions.size() < 2) fail("at least two gesture classes are required");
  for (std::size_t a = 0; a < motions.size(); ++a) {
    for (std::size_t b = a + 1; b < motions.size(); ++b) {
      if (motions[a] == motions[b]) fail("gesture classes must be distinct");
    }
  }
  if (subjects < 1 || trials < 1) fail("subjects and trials must be positive");
  if (min_frames < 2 || max_frames < min_frames) fail("frame range must satisfy 2 <= min <= max");
  if (!(noise_px >= 0.0) || !(spike_px >= 0.0)) fail("noise amplitudes must be non-negative");
  if (!(time_jitter >= 0.0 && time_jitter < 1.0)) fail("time jitter must lie in [0, 1)");
  if (!(style_jitter >= 0.0 && style_jitter < 1.0)) fail("style jitter must lie in [0, 1)");
  if (!(spike_probability >= 0.0 && spike_probability <= 1.0)) fail("spike probability outside [0, 1]");
  if (!(shoulder_px > 0.0)) fail("shoulder width must be positive");
}

namespace {

using Pose = std::array<Point2, kNumKeypoints>;

// Rest pose in shoulder widths relative to the neck; image y points down and
// the subject faces the camera, so the right side is at negative x.
constexpr Pose kRestPose = {{
    {0.0, -0.5},    // Nose
    {0.0, 0.0},     // Neck
    {-0.5, 0.0},    // RShoulder
    {-0.6, 0.6},    // RElbow
    {-0.65, 1.2},   // RWrist
    {0.5, 0.0},     // LShoulder
    {0.6, 0.6},     // LElbow
    {0.65, 1.2},    // LWrist
    {-0.3, 1.6},    // RHip
    {-0.3, 2.4},    // RKnee
    {-0.3, 3.2},    // RAnkle
    {0.3, 1.6},     // LHip
    {0.3, 2.4},     // LKnee
    {0.3, 3.2},     // LAnkle
    {-0.1, -0.6},   // REye
    {0.1, -0.6},    // LEye
    {-0.2, -0.55},  // REar
    {0.2, -0.55},   // LEar
}};

void shift(Pose& pose, CocoPart part, double dx, double dy) {
  pose[index(part)].x += dx;
  pose[index(part)].y += dy;
}

// Pose at phase u in [0, 1] with amplitude factor `amp`.
Pose pose_at(Motion motion, double u, double amp) {
  constexpr double pi = std::numbers::pi;
  const double bell = std::sin(pi * u);
  const double wave = std::sin(2.0 * pi * u);
  Pose pose = kRestPose;
  switch (motion) {
    case Motion::RightArmSwipe:
      shift(pose, CocoPart::RWrist, 1.6 * amp * bell, -1.6 * amp * bell);
      shift(pose, CocoPart::RElbow, 0.6 * amp * bell, -0.6 * amp * bell);
      break;
    case Motion::RightArmSwipeLoop:
      shift(pose, CocoPart::RWrist, 1.6 * amp * bell + 0.15 * amp * wave,
            -1.6 * amp * bell + 0.15 * amp * (1.0 - std::cos(2.0 * pi * u)) / 2.0);
      shift(pose, CocoPart::RElbow, 0.6 * amp * bell, -0.6 * amp * bell);
      break;
    case Motion::LeftArmSwipe:
      shift(pose, CocoPart::LWrist, -1.6 * amp * bell, -1.6 * amp * bell);
      shift(pose, CocoPart::LElbow, -0.6 * amp * bell, -0.6 * amp * bell);
      break;
    case Motion::RightLegLift:
      shift(pose, CocoPart::RKnee, -0.4 * amp * bell, -0.9 * amp * bell);
      shift(pose, CocoPart::RAnkle, -0.6 * amp * bell, -1.2 * amp * bell);
      break;
    case Motion::LeftLegLift:
      shift(pose, CocoPart::LKnee, 0.4 * amp * bell, -0.9 * amp * bell);
      shift(pose, CocoPart::LAnkle, 0.6 * amp * bell, -1.2 * amp * bell);
      break;
    case Motion::HeadNod:
      for (CocoPart p : {CocoPart::Nose, CocoPart::REye, CocoPart::LEye, CocoPart::REar,
                         CocoPart::LEar}) {
        shift(pose, p, 0.0, 0.7 * amp * wave);
      }
      break;
    case Motion::HipSway:
      for (CocoPart p : {CocoPart::RHip, CocoPart::LHip, CocoPart::RKnee, CocoPart::LKnee,
                         CocoPart::RAnkle, CocoPart::LAnkle}) {
        shift(pose, p, 0.8 * amp * wave, 0.0);
      }
      break;
  }
  return pose;
}

}  // namespace

std::vector<RawCorpusEntry> generate_synthetic_raw(const SyntheticSpec& spec, std::uint64_t seed) {
  spec.validate();
  std::mt19937_64 rng(seed);
  auto uniform = [&rng](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  std::normal_distribution<double> noise(0.0, 1.0);

  std::vector<RawCorpusEntry> out;
  out.reserve(spec.motions.size() * spec.subjects * spec.trials);
  for (std::size_t s = 0; s < spec.subjects; ++s) {
    const double subject_amp = 1.0 + uniform(-spec.style_jitter, spec.style_jitter);
    for (Motion motion : spec.motions) {
      const auto nominal = std::uniform_int_distribution<std::size_t>(spec.min_frames, spec.max_frames)(rng);
      for (std::size_t r = 0; r < spec.trials; ++r) {
        const double stretch = 1.0 + uniform(-spec.time_jitter, spec.time_jitter);
        const std::size_t length =
            std::max<std::size_t>(2, static_cast<std::size_t>(std::lround(nominal * stretch)));
        const double amp = subject_amp * (1.0 + uniform(-spec.style_jitter, spec.style_jitter) / 2.0);
        const double width = spec.shoulder_px * uniform(0.75, 1.25);
        const double origin_x = 320.0 + uniform(-60.0, 60.0);
        const double origin_y = 160.0 + uniform(-40.0, 40.0);
        const bool spike = uniform(0.0, 1.0) < spec.spike_probability;
        const std::size_t spike_frame =
            spike ? std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(1, length - 2))(rng)
                  : 0;

        RawCorpusEntry entry;
        entry.label = std::string(motion_name(motion));
        entry.subject = std::to_string(s + 1);
        entry.trial = static_cast<int>(r + 1);
        entry.raw.source_id = entry.label + "_s" + entry.subject + "_t" + std::to_string(entry.trial);
        entry.raw.frames.resize(length);
        for (std::size_t t = 0; t < length; ++t) {
          const double u = static_cast<double>(t) / static_cast<double>(length - 1);
          const Pose pose = pose_at(motion, u, amp);
          PoseFrame& frame = entry.raw.frames[t];
          frame.frame_index = t;
          for (std::size_t k = 0; k < kNumKeypoints; ++k) {
            double x = origin_x + width * pose[k].x;
            double y = origin_y + width * pose[k].y;
            if (spec.noise_px > 0.0) {
              x += spec.noise_px * noise(rng);
              y += spec.noise_px * noise(rng);
            }
            frame.keypoints[k] = Keypoint{x, y, 1.0};
          }
          if (spike && t == spike_frame) frame[CocoPart::Neck].y -= spec.spike_px;
        }
        out.push_back(std::move(entry));
      }
    }
  }
  return out;
}

LabeledCorpus to_corpus(const std::vector<RawCorpusEntry>& raw) {
  LabeledCorpus corpus;
  for (const RawCorpusEntry& e : raw) {
    CorpusEntry entry;
    entry.sequence = normalize_sequence(repair_missing(e.raw));
    entry.sequence.label = e.label;
    entry.subject = e.subject;
    entry.trial = e.trial;
    if (std::find(corpus.gesture_ids.begin(), corpus.gesture_ids.end(), e.label) ==
        corpus.gesture_ids.end()) {
      corpus.gesture_ids.push_back(e.label);
    }
    corpus.entries.push_back(std::move(entry));
  }
  corpus.validate();
  return corpus;
}

LabeledCorpus generate_synthetic_corpus(const SyntheticSpec& spec, std::uint64_t seed) {
  return to_corpus(generate_synthetic_raw(spec, seed));
}

}  // namespace gesture
