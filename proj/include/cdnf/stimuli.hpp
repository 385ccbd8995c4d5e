#pragma once

#include <cstdint>
#include <optional>

#include "cdnf/contrast.hpp"

namespace cdnf {

enum class StimulusKind { looming, receding, translating };
enum class Polarity { dark_on_light, light_on_dark };

// Growth law for the looming square's half-width. `linear` interpolates the
// half-width directly; `hyperbolic` follows a constant approach speed, so the
// image expands like 1/(t_c - t) and most of the growth lands near the end of
// the clip, the way an approaching object actually looks.
enum class Expansion { linear, hyperbolic };

struct StimulusSpec {
  StimulusKind kind = StimulusKind::looming;
  Polarity polarity = Polarity::dark_on_light;
  std::size_t rows = 200;
  std::size_t cols = 200;
  double fps = 30.0;
  int duration = 91;              // frames
  double size_start = 10.0 / 3.0; // object half-width, pixels
  double size_end = 90.0;
  Expansion expansion = Expansion::hyperbolic;
  std::uint64_t seed = 0;

  void validate() const;
};

// Spec with the size schedule scaled to the resolution: the square grows from
// min_dim/60 to 45% of the smaller dimension, so clips keep the same relative
// geometry at any resolution. duration = 91 keeps the translating bar at a
// uniform integer step (2 px/frame at 200 columns).
StimulusSpec default_spec(StimulusKind kind, Polarity polarity, std::size_t rows,
                          std::size_t cols, int duration = 91);

struct RainParams {
  int droplets_per_frame = 500;
  int length_px = 8;
  int width_px = 1;
  double angle_jitter = 0.1;  // radians, uniform in +-angle_jitter
  double gray_value = 0.7;
  double blur_sigma = 0.8;    // 3x3 Gaussian support
  double blend_weight = 0.5;
  std::uint64_t seed = 0;

  void validate() const;
};

double object_value(Polarity p);
double background_value(Polarity p);

// Single frame of the coherent clip; gen_coherent loops this. Receding is the
// exact frame-reversal of the corresponding looming clip, translating is a
// full-height bar (width 10% of the frame) crossing at constant speed.
FieldGrid render_frame(const StimulusSpec& spec, int k);

FrameSequence gen_coherent(const StimulusSpec& spec);

struct DegradedClip {
  FrameSequence frames;
  std::optional<int> jump_frame;  // set when the clip had to jump to its final frame
};

// Incoherent variant of the coherent clip. Each frame the newly object-colored
// pixels are split: a `degree`% fraction stays in place, the rest lands on
// uniformly sampled unoccupied background cells. Assignments persist until the
// source pixel leaves the coherent object, so every frame changes exactly as
// many pixels as the coherent clip does. If the background cannot absorb the
// displaced pixels, the clip jumps to its final frame and reports it.
DegradedClip degrade_coherence(const StimulusSpec& spec, double degree_percent,
                               std::uint64_t seed);

// Same procedure over an arbitrary two-level clip whose object pixels carry
// `object_value` (every other pixel is treated as background).
DegradedClip degrade_coherence(const FrameSequence& coherent, double object_value,
                               double degree_percent, std::uint64_t seed);

// Rain streaks on a blank layer (start uniform over the frame, extending
// length_px downward with a slight angular deviation), Gaussian-blurred, then
// additively blended and clamped to [0,1].
FieldGrid overlay_rain(const FieldGrid& frame, const RainParams& params,
                       std::uint64_t frame_seed);

// Whole-clip overlay; per-frame seeds are derived from params.seed.
FrameSequence overlay_rain(const FrameSequence& clip, const RainParams& params);

// 10*log10(sum clean^2 / sum (noisy-clean)^2) over all pixels and frames, in
// dB. Identical sequences report +infinity.
double compute_snr(const FrameSequence& clean, const FrameSequence& noisy);

}  // namespace cdnf
