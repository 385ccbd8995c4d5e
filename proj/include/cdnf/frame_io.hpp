#pragma once

#include <filesystem>

#include "cdnf/contrast.hpp"
#include "cdnf/model.hpp"

namespace cdnf {

// 8-bit binary PGM (P5, maxval 255). Pixels quantize as round(v*255).
void write_pgm(const std::filesystem::path& path, const FieldGrid& frame);
FieldGrid read_pgm(const std::filesystem::path& path);

// Raw planar gray8 clip: 16-byte header (magic "GRY8", u32le rows, cols,
// frame count) followed by row-major frames, one byte per pixel.
void write_gry8(const std::filesystem::path& path, const FrameSequence& seq);
FrameSequence read_gry8(const std::filesystem::path& path);

// Numbered PGM files (frame_00000.pgm, ...) in `dir`.
void write_frames_pgm_dir(const std::filesystem::path& dir, const FrameSequence& seq);

// Directory of .pgm files in lexicographic order, or a single .gry8 file.
FrameSequence load_frames(const std::filesystem::path& path);

// Trace CSV with header `t,iv,spike`; i_v printed with 17 significant digits
// so re-parsing reproduces the doubles exactly.
void write_trace_csv(const std::filesystem::path& path, const RunTrace& trace);
RunTrace read_trace_csv(const std::filesystem::path& path);

}  // namespace cdnf
