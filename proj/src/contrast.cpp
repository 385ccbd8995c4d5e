#include "cdnf/contrast.hpp"

#include <algorithm>

namespace cdnf {

FieldGrid to_grayscale(std::span<const std::uint8_t> raw, std::size_t rows, std::size_t cols,
                       PixelLayout layout) {
  const std::size_t px = rows * cols;
  FieldGrid out(rows, cols);
  double* d = out.data();
  switch (layout) {
    case PixelLayout::gray8: {
      if (raw.size() != px) throw std::invalid_argument("to_grayscale: gray8 buffer size mismatch");
      for (std::size_t i = 0; i < px; ++i) d[i] = raw[i] / 255.0;
      return out;
    }
    case PixelLayout::rgb8_interleaved: {
      if (raw.size() != 3 * px) throw std::invalid_argument("to_grayscale: rgb8 buffer size mismatch");
      for (std::size_t i = 0; i < px; ++i) {
        const double luma =
            0.299 * raw[3 * i] + 0.587 * raw[3 * i + 1] + 0.114 * raw[3 * i + 2];
        d[i] = std::clamp(luma / 255.0, 0.0, 1.0);
      }
      return out;
    }
  }
  throw std::invalid_argument("to_grayscale: unsupported pixel layout");
}

FieldGrid to_grayscale(const FieldGrid& normalized) {
  for (double v : normalized.values())
    if (!(v >= 0.0 && v <= 1.0))
      throw std::invalid_argument("to_grayscale: float pixels must lie in [0,1]");
  return normalized;
}

void luminance_change_into(const FieldGrid& curr, const FieldGrid& prev, FieldGrid& dst) {
  require_same_shape(curr, prev, "luminance_change");
  require_same_shape(curr, dst, "luminance_change");
  const double* c = curr.data();
  const double* p = prev.data();
  double* d = dst.data();
  for (std::size_t i = 0; i < curr.size(); ++i) d[i] = c[i] - p[i];
}

FieldGrid luminance_change(const FieldGrid& curr, const FieldGrid& prev) {
  FieldGrid out(curr.rows(), curr.cols());
  luminance_change_into(curr, prev, out);
  return out;
}

void rectify_into(const FieldGrid& p, FieldGrid& on, FieldGrid& off) {
  require_same_shape(p, on, "rectify");
  require_same_shape(p, off, "rectify");
  const double* s = p.data();
  double* a = on.data();
  double* b = off.data();
  for (std::size_t i = 0; i < p.size(); ++i) {
    a[i] = std::max(s[i], 0.0);
    b[i] = -std::min(s[i], 0.0);
  }
}

ContrastPair rectify(const FieldGrid& p) {
  ContrastPair out{FieldGrid(p.rows(), p.cols()), FieldGrid(p.rows(), p.cols())};
  rectify_into(p, out.on, out.off);
  return out;
}

}  // namespace cdnf
