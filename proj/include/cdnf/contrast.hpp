#pragma once

#include <cstdint>
#include <span>

#include "cdnf/grid.hpp"

namespace cdnf {

enum class PixelLayout { gray8, rgb8_interleaved };

// Ordered grayscale frames in [0,1] at a fixed resolution and frame rate.
struct FrameSequence {
  std::size_t rows = 0;
  std::size_t cols = 0;
  double fps = 30.0;
  std::vector<FieldGrid> frames;

  void append(FieldGrid frame) {
    if (frames.empty() && rows == 0) {
      rows = frame.rows();
      cols = frame.cols();
    }
    if (frame.rows() != rows || frame.cols() != cols)
      throw std::invalid_argument("FrameSequence: resolution drift");
    frames.push_back(std::move(frame));
  }
  std::size_t size() const { return frames.size(); }
};

// 8-bit buffers are divided by 255; color uses BT.601 luma (0.299, 0.587,
// 0.114). Output pixels always land in [0,1].
FieldGrid to_grayscale(std::span<const std::uint8_t> raw, std::size_t rows, std::size_t cols,
                       PixelLayout layout);

// Float input already normalized to [0,1] passes through; anything outside
// that range is rejected.
FieldGrid to_grayscale(const FieldGrid& normalized);

// P = curr - prev, pointwise; in [-1,1] for valid frames.
FieldGrid luminance_change(const FieldGrid& curr, const FieldGrid& prev);
void luminance_change_into(const FieldGrid& curr, const FieldGrid& prev, FieldGrid& dst);

struct ContrastPair {
  FieldGrid on;
  FieldGrid off;
};

// Half-wave rectification: on = max(p,0), off = -min(p,0). Exactly satisfies
// on - off == p and on * off == 0.
ContrastPair rectify(const FieldGrid& p);
void rectify_into(const FieldGrid& p, FieldGrid& on, FieldGrid& off);

}  // namespace cdnf
