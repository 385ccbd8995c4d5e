#include "cdnf/frame_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace cdnf {

namespace {

std::uint8_t quantize(double v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

void put_u32le(std::ofstream& out, std::uint32_t v) {
  const char bytes[4] = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
                         static_cast<char>((v >> 16) & 0xFF), static_cast<char>((v >> 24) & 0xFF)};
  out.write(bytes, 4);
}

std::uint32_t get_u32le(std::ifstream& in, const char* what) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) throw std::runtime_error(std::string(what) + ": truncated");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

// PGM token reader: skips whitespace and '#' comments.
std::string next_pgm_token(std::ifstream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {}
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) return tok;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  return tok;
}

}  // namespace

void write_pgm(const std::filesystem::path& path, const FieldGrid& frame) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_pgm: cannot open " + path.string());
  out << "P5\n" << frame.cols() << ' ' << frame.rows() << "\n255\n";
  std::vector<std::uint8_t> row(frame.cols());
  for (std::size_t r = 0; r < frame.rows(); ++r) {
    const double* s = frame.row(r);
    for (std::size_t c = 0; c < frame.cols(); ++c) row[c] = quantize(s[c]);
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
  }
  if (!out) throw std::runtime_error("write_pgm: write failed for " + path.string());
}

FieldGrid read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_pgm: cannot open " + path.string());
  if (next_pgm_token(in) != "P5")
    throw std::runtime_error("read_pgm: not a binary PGM: " + path.string());
  const std::size_t cols = std::stoul(next_pgm_token(in));
  const std::size_t rows = std::stoul(next_pgm_token(in));
  const unsigned long maxval = std::stoul(next_pgm_token(in));
  if (maxval != 255)
    throw std::runtime_error("read_pgm: unsupported maxval in " + path.string());
  std::vector<std::uint8_t> bytes(rows * cols);
  if (!in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size())))
    throw std::runtime_error("read_pgm: truncated pixel data in " + path.string());
  FieldGrid out(rows, cols);
  double* d = out.data();
  for (std::size_t i = 0; i < bytes.size(); ++i) d[i] = bytes[i] / 255.0;
  return out;
}

void write_gry8(const std::filesystem::path& path, const FrameSequence& seq) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_gry8: cannot open " + path.string());
  out.write("GRY8", 4);
  put_u32le(out, static_cast<std::uint32_t>(seq.rows));
  put_u32le(out, static_cast<std::uint32_t>(seq.cols));
  put_u32le(out, static_cast<std::uint32_t>(seq.size()));
  std::vector<std::uint8_t> buf(seq.rows * seq.cols);
  for (const FieldGrid& f : seq.frames) {
    const double* s = f.data();
    for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = quantize(s[i]);
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  }
  if (!out) throw std::runtime_error("write_gry8: write failed for " + path.string());
}

FrameSequence read_gry8(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_gry8: cannot open " + path.string());
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "GRY8", 4) != 0)
    throw std::runtime_error("read_gry8: bad magic in " + path.string());
  FrameSequence seq;
  seq.rows = get_u32le(in, "read_gry8");
  seq.cols = get_u32le(in, "read_gry8");
  const std::uint32_t count = get_u32le(in, "read_gry8");
  if (seq.rows == 0 || seq.cols == 0)
    throw std::runtime_error("read_gry8: empty resolution in " + path.string());
  std::vector<std::uint8_t> buf(seq.rows * seq.cols);
  for (std::uint32_t k = 0; k < count; ++k) {
    if (!in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size())))
      throw std::runtime_error("read_gry8: truncated frame data in " + path.string());
    FieldGrid f(seq.rows, seq.cols);
    double* d = f.data();
    for (std::size_t i = 0; i < buf.size(); ++i) d[i] = buf[i] / 255.0;
    seq.frames.push_back(std::move(f));
  }
  return seq;
}

void write_frames_pgm_dir(const std::filesystem::path& dir, const FrameSequence& seq) {
  std::filesystem::create_directories(dir);
  char name[32];
  for (std::size_t k = 0; k < seq.size(); ++k) {
    std::snprintf(name, sizeof(name), "frame_%05zu.pgm", k);
    write_pgm(dir / name, seq.frames[k]);
  }
}

FrameSequence load_frames(const std::filesystem::path& path) {
  if (std::filesystem::is_directory(path)) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(path))
      if (entry.is_regular_file() && entry.path().extension() == ".pgm")
        files.push_back(entry.path());
    if (files.empty())
      throw std::runtime_error("load_frames: no .pgm files in " + path.string());
    std::sort(files.begin(), files.end(),
              [](const auto& a, const auto& b) { return a.filename() < b.filename(); });
    FrameSequence seq;
    for (const auto& f : files) seq.append(read_pgm(f));
    return seq;
  }
  if (path.extension() == ".gry8") return read_gry8(path);
  throw std::runtime_error("load_frames: expected a directory of .pgm files or a .gry8 file: " +
                           path.string());
}

void write_trace_csv(const std::filesystem::path& path, const RunTrace& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_trace_csv: cannot open " + path.string());
  out << "t,iv,spike\n";
  char buf[64];
  for (const FrameRecord& r : trace.records) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%d\n", r.t, r.i_v, r.spike ? 1 : 0);
    out << buf;
  }
  if (!out) throw std::runtime_error("write_trace_csv: write failed for " + path.string());
}

RunTrace read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_trace_csv: cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,iv,spike", 0) != 0)
    throw std::runtime_error("read_trace_csv: missing header in " + path.string());
  RunTrace trace;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    FrameRecord rec;
    char* end = nullptr;
    rec.t = static_cast<int>(std::strtol(line.c_str(), &end, 10));
    if (!end || *end != ',') throw std::runtime_error("read_trace_csv: bad row: " + line);
    rec.i_v = std::strtod(end + 1, &end);
    if (!end || *end != ',') throw std::runtime_error("read_trace_csv: bad row: " + line);
    rec.spike = std::strtol(end + 1, nullptr, 10) != 0;
    if (rec.spike && !trace.first_spike) trace.first_spike = rec.t;
    trace.records.push_back(rec);
  }
  return trace;
}

}  // namespace cdnf
