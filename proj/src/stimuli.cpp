#include "cdnf/stimuli.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cdnf/rng.hpp"
#include "cdnf/solver.hpp"

namespace cdnf {

double object_value(Polarity p) { return p == Polarity::dark_on_light ? 0.0 : 1.0; }
double background_value(Polarity p) { return p == Polarity::dark_on_light ? 1.0 : 0.0; }

void StimulusSpec::validate() const {
  if (rows == 0 || cols == 0) throw std::invalid_argument("StimulusSpec: empty resolution");
  if (duration < 2) throw std::invalid_argument("StimulusSpec: need at least two frames");
  if (!(fps > 0.0)) throw std::invalid_argument("StimulusSpec: fps must be > 0");
  if (kind != StimulusKind::translating) {
    if (!(size_start > 0.0) || !(size_start < size_end))
      throw std::invalid_argument("StimulusSpec: need 0 < size_start < size_end");
    const double max_hw = (static_cast<double>(std::min(rows, cols)) - 1.0) / 2.0;
    if (size_end > max_hw)
      throw std::invalid_argument("StimulusSpec: object exceeds frame bounds");
  }
}

namespace {

double half_width_at(const StimulusSpec& spec, int k) {
  const double s0 = spec.size_start;
  const double s1 = spec.size_end;
  const double last = static_cast<double>(spec.duration - 1);
  if (spec.expansion == Expansion::linear) return s0 + (s1 - s0) * k / last;
  // constant approach speed: hw(t) = C / (t_c - t) pinned at both endpoints
  const double tc = s1 * last / (s1 - s0);
  return s0 * tc / (tc - k);
}

void paint_square(FieldGrid& f, double hw, double obj) {
  const double cy = (static_cast<double>(f.rows()) - 1.0) / 2.0;
  const double cx = (static_cast<double>(f.cols()) - 1.0) / 2.0;
  const int r0 = static_cast<int>(std::ceil(cy - hw));
  const int r1 = static_cast<int>(std::floor(cy + hw));
  const int c0 = static_cast<int>(std::ceil(cx - hw));
  const int c1 = static_cast<int>(std::floor(cx + hw));
  for (int r = r0; r <= r1; ++r)
    for (int c = c0; c <= c1; ++c) f(r, c) = obj;
}

void paint_bar(FieldGrid& f, int k, int duration, double obj) {
  const int n = static_cast<int>(f.cols());
  const int w = std::max(1, static_cast<int>(std::lround(0.10 * n)));
  const int left = static_cast<int>(
      std::lround(k * static_cast<double>(n - w) / (duration - 1.0)));
  for (std::size_t r = 0; r < f.rows(); ++r)
    for (int c = left; c < left + w && c < n; ++c) f(r, c) = obj;
}

}  // namespace

FieldGrid render_frame(const StimulusSpec& spec, int k) {
  spec.validate();
  if (k < 0 || k >= spec.duration)
    throw std::invalid_argument("render_frame: frame index out of range");
  FieldGrid f(spec.rows, spec.cols, background_value(spec.polarity));
  const double obj = object_value(spec.polarity);
  switch (spec.kind) {
    case StimulusKind::looming:
      paint_square(f, half_width_at(spec, k), obj);
      break;
    case StimulusKind::receding: {
      StimulusSpec loom = spec;
      loom.kind = StimulusKind::looming;
      paint_square(f, half_width_at(loom, spec.duration - 1 - k), obj);
      break;
    }
    case StimulusKind::translating:
      paint_bar(f, k, spec.duration, obj);
      break;
  }
  return f;
}

FrameSequence gen_coherent(const StimulusSpec& spec) {
  spec.validate();
  FrameSequence seq;
  seq.rows = spec.rows;
  seq.cols = spec.cols;
  seq.fps = spec.fps;
  seq.frames.reserve(spec.duration);
  for (int k = 0; k < spec.duration; ++k) seq.frames.push_back(render_frame(spec, k));
  return seq;
}

StimulusSpec default_spec(StimulusKind kind, Polarity polarity, std::size_t rows,
                          std::size_t cols, int duration) {
  StimulusSpec s;
  s.kind = kind;
  s.polarity = polarity;
  s.rows = rows;
  s.cols = cols;
  s.duration = duration;
  const double min_dim = static_cast<double>(std::min(rows, cols));
  s.size_start = min_dim / 60.0;
  s.size_end = 0.45 * min_dim;
  return s;
}

namespace {

// Unoccupied background cells with O(1) uniform sampling and removal.
class FreeCells {
 public:
  explicit FreeCells(std::size_t n) : pos_(n), cells_(n) {
    for (std::size_t i = 0; i < n; ++i) {
      cells_[i] = static_cast<int>(i);
      pos_[i] = static_cast<int>(i);
    }
  }
  std::size_t size() const { return cells_.size(); }
  bool contains(int cell) const { return pos_[cell] >= 0; }
  void remove(int cell) {
    const int j = pos_[cell];
    const int last = cells_.back();
    cells_[j] = last;
    pos_[last] = j;
    cells_.pop_back();
    pos_[cell] = -1;
  }
  void insert(int cell) {
    pos_[cell] = static_cast<int>(cells_.size());
    cells_.push_back(cell);
  }
  int sample_and_remove(SeededRng& rng) {
    const int cell = cells_[rng.next_index(cells_.size())];
    remove(cell);
    return cell;
  }

 private:
  std::vector<int> pos_;
  std::vector<int> cells_;
};

}  // namespace

DegradedClip degrade_coherence(const StimulusSpec& spec, double degree_percent,
                               std::uint64_t seed) {
  return degrade_coherence(gen_coherent(spec), object_value(spec.polarity), degree_percent,
                           seed);
}

DegradedClip degrade_coherence(const FrameSequence& coherent, double obj,
                               double degree_percent, std::uint64_t seed) {
  if (!(degree_percent > 0.0 && degree_percent <= 100.0))
    throw std::invalid_argument("degrade_coherence: degree must be in (0, 100]");
  if (coherent.size() == 0) throw std::invalid_argument("degrade_coherence: empty clip");
  const std::size_t cells = coherent.rows * coherent.cols;
  double bg = obj == 0.0 ? 1.0 : 0.0;
  for (double v : coherent.frames.front().values())
    if (v != obj) {
      bg = v;
      break;
    }
  const double keep_frac = degree_percent / 100.0;
  SeededRng rng(seed);

  std::vector<char> occupied(cells, 0);
  std::vector<int> mapped(cells, -1);  // coherent cell -> rendered cell
  FreeCells free_cells(cells);
  std::vector<char> prev_mask(cells, 0), cur_mask(cells, 0);
  std::vector<int> added, scatter, cooling;

  DegradedClip out;
  out.frames.rows = coherent.rows;
  out.frames.cols = coherent.cols;
  out.frames.fps = coherent.fps;
  out.frames.frames.reserve(coherent.size());

  auto render = [&]() {
    FieldGrid f(coherent.rows, coherent.cols, bg);
    double* d = f.data();
    for (std::size_t i = 0; i < cells; ++i)
      if (occupied[i]) d[i] = obj;
    return f;
  };

  auto place_added = [&](std::vector<int>& add_list, bool allow_partial) {
    const std::size_t n_keep = std::min<std::size_t>(
        add_list.size(),
        static_cast<std::size_t>(std::llround(keep_frac * static_cast<double>(add_list.size()))));
    rng.partial_shuffle(add_list, n_keep);
    scatter.clear();
    for (std::size_t j = 0; j < add_list.size(); ++j) {
      const int p = add_list[j];
      if (j < n_keep && free_cells.contains(p)) {
        free_cells.remove(p);
        occupied[p] = 1;
        mapped[p] = p;
      } else {
        scatter.push_back(p);
      }
    }
    if (!allow_partial && scatter.size() > free_cells.size()) return false;
    for (int p : scatter) {
      if (free_cells.size() == 0) break;  // unreachable unless the object fills the frame
      const int cell = free_cells.sample_and_remove(rng);
      occupied[cell] = 1;
      mapped[p] = cell;
    }
    return true;
  };

  for (std::size_t k = 0; k < coherent.size(); ++k) {
    const double* src = coherent.frames[k].data();
    for (std::size_t i = 0; i < cells; ++i) cur_mask[i] = (src[i] == obj) ? 1 : 0;

    // Cells freed this frame stay out of the pool until the frame ends;
    // re-using them would cancel a removal against an addition and break the
    // per-frame changed-pixel count.
    cooling.clear();
    added.clear();
    for (std::size_t i = 0; i < cells; ++i) {
      if (prev_mask[i] && !cur_mask[i]) {
        const int cell = mapped[i];
        occupied[cell] = 0;
        mapped[i] = -1;
        cooling.push_back(cell);
      } else if (cur_mask[i] && !prev_mask[i]) {
        added.push_back(static_cast<int>(i));
      }
    }

    if (!place_added(added, /*allow_partial=*/false)) {
      // background exhausted: jump to the final frame, keeping the layout
      out.jump_frame = static_cast<int>(k);
      for (int cell : cooling) free_cells.insert(cell);
      const double* last = coherent.frames.back().data();
      for (std::size_t i = 0; i < cells; ++i) cur_mask[i] = (last[i] == obj) ? 1 : 0;
      added.clear();
      for (std::size_t i = 0; i < cells; ++i) {
        if (mapped[i] >= 0 && !cur_mask[i]) {
          free_cells.insert(mapped[i]);
          occupied[mapped[i]] = 0;
          mapped[i] = -1;
        }
      }
      for (std::size_t i = 0; i < cells; ++i)
        if (cur_mask[i] && mapped[i] < 0) added.push_back(static_cast<int>(i));
      place_added(added, /*allow_partial=*/true);
      const FieldGrid final_frame = render();
      for (std::size_t j = k; j < coherent.size(); ++j) out.frames.frames.push_back(final_frame);
      return out;
    }

    for (int cell : cooling) free_cells.insert(cell);
    out.frames.frames.push_back(render());
    prev_mask.swap(cur_mask);
  }
  return out;
}

void RainParams::validate() const {
  if (droplets_per_frame < 0) throw std::invalid_argument("RainParams: negative droplet count");
  if (length_px < 1 || width_px < 1) throw std::invalid_argument("RainParams: droplet geometry");
  if (!(blend_weight >= 0.0 && blend_weight <= 1.0))
    throw std::invalid_argument("RainParams: blend_weight must be in [0,1]");
  if (!(gray_value >= 0.0 && gray_value <= 1.0))
    throw std::invalid_argument("RainParams: gray_value must be in [0,1]");
  if (!(blur_sigma > 0.0)) throw std::invalid_argument("RainParams: blur_sigma must be > 0");
  if (angle_jitter < 0.0) throw std::invalid_argument("RainParams: negative angle jitter");
}

FieldGrid overlay_rain(const FieldGrid& frame, const RainParams& params,
                       std::uint64_t frame_seed) {
  params.validate();
  SeededRng rng(frame_seed);
  const int m = static_cast<int>(frame.rows());
  const int n = static_cast<int>(frame.cols());
  FieldGrid layer(frame.rows(), frame.cols(), 0.0);
  for (int d = 0; d < params.droplets_per_frame; ++d) {
    const double r0 = rng.next_real(0.0, static_cast<double>(m));
    const double c0 = rng.next_real(0.0, static_cast<double>(n));
    const double ang = rng.next_real(-params.angle_jitter, params.angle_jitter);
    const double dr = std::cos(ang);
    const double dc = std::sin(ang);
    for (int s = 0; s < params.length_px; ++s) {
      const int rr = static_cast<int>(std::lround(r0 + s * dr));
      const int cc = static_cast<int>(std::lround(c0 + s * dc));
      if (rr < 0 || rr >= m) continue;
      for (int w = 0; w < params.width_px; ++w) {
        const int c = cc + w;
        if (c >= 0 && c < n) layer(rr, c) = params.gray_value;
      }
    }
  }
  const Kernel3x3 blur = build_gaussian3x3(params.blur_sigma);
  const FieldGrid blurred = convolve(layer, blur);
  FieldGrid out(frame.rows(), frame.cols());
  const double* f = frame.data();
  const double* b = blurred.data();
  double* o = out.data();
  for (std::size_t i = 0; i < frame.size(); ++i)
    o[i] = std::clamp(f[i] + params.blend_weight * b[i], 0.0, 1.0);
  return out;
}

FrameSequence overlay_rain(const FrameSequence& clip, const RainParams& params) {
  FrameSequence out;
  out.rows = clip.rows;
  out.cols = clip.cols;
  out.fps = clip.fps;
  out.frames.reserve(clip.size());
  for (std::size_t k = 0; k < clip.size(); ++k)
    out.frames.push_back(overlay_rain(clip.frames[k], params, mix_seed(params.seed, k)));
  return out;
}

double compute_snr(const FrameSequence& clean, const FrameSequence& noisy) {
  if (clean.size() != noisy.size() || clean.size() == 0)
    throw std::invalid_argument("compute_snr: sequence length mismatch");
  if (clean.rows != noisy.rows || clean.cols != noisy.cols)
    throw std::invalid_argument("compute_snr: resolution mismatch");
  double signal = 0.0, noise = 0.0;
  for (std::size_t k = 0; k < clean.size(); ++k) {
    const double* c = clean.frames[k].data();
    const double* x = noisy.frames[k].data();
    for (std::size_t i = 0; i < clean.frames[k].size(); ++i) {
      signal += c[i] * c[i];
      const double e = x[i] - c[i];
      noise += e * e;
    }
  }
  if (noise == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(signal / noise);
}

}  // namespace cdnf
