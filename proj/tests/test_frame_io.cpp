#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "cdnf/frame_io.hpp"
#include "cdnf/rng.hpp"

using namespace cdnf;
namespace fs = std::filesystem;

namespace {

fs::path test_dir() {
  const fs::path dir = fs::temp_directory_path() / "cdnf_io_test";
  fs::create_directories(dir);
  return dir;
}

FieldGrid quantized_random(std::size_t m, std::size_t n, std::uint64_t seed) {
  SeededRng rng(seed);
  FieldGrid g(m, n);
  for (double& v : g.values()) v = static_cast<double>(rng.next_index(256)) / 255.0;
  return g;
}

}  // namespace

TEST_CASE("pgm round trip is exact at 8-bit values") {
  const FieldGrid f = quantized_random(13, 9, 5);
  const fs::path p = test_dir() / "roundtrip.pgm";
  write_pgm(p, f);
  CHECK(read_pgm(p) == f);
}

TEST_CASE("pgm reader handles comments and rejects foreign files") {
  const fs::path dir = test_dir();
  {
    std::ofstream out(dir / "commented.pgm", std::ios::binary);
    out << "P5\n# a comment\n2 1\n255\n";
    out.put(static_cast<char>(0));
    out.put(static_cast<char>(255));
  }
  const FieldGrid g = read_pgm(dir / "commented.pgm");
  CHECK(g(0, 0) == 0.0);
  CHECK(g(0, 1) == 1.0);

  {
    std::ofstream out(dir / "ascii.pgm");
    out << "P2\n2 1\n255\n0 255\n";
  }
  CHECK_THROWS_AS(read_pgm(dir / "ascii.pgm"), std::runtime_error);

  {
    std::ofstream out(dir / "deep.pgm", std::ios::binary);
    out << "P5\n2 1\n65535\n";
    out.write("\0\0\0\0", 4);
  }
  CHECK_THROWS_AS(read_pgm(dir / "deep.pgm"), std::runtime_error);
  CHECK_THROWS_AS(read_pgm(dir / "nothere.pgm"), std::runtime_error);
}

TEST_CASE("gry8 round trip preserves geometry and pixels") {
  FrameSequence seq;
  for (int k = 0; k < 4; ++k) seq.append(quantized_random(6, 11, 40 + k));
  seq.fps = 30.0;
  const fs::path p = test_dir() / "clip.gry8";
  write_gry8(p, seq);
  const FrameSequence back = read_gry8(p);
  CHECK(back.rows == 6);
  CHECK(back.cols == 11);
  REQUIRE(back.size() == 4);
  for (int k = 0; k < 4; ++k) CHECK(back.frames[k] == seq.frames[k]);
}

TEST_CASE("gry8 rejects corrupt files") {
  const fs::path dir = test_dir();
  {
    std::ofstream out(dir / "bad_magic.gry8", std::ios::binary);
    out << "NOPE" << std::string(12, '\0');
  }
  CHECK_THROWS_AS(read_gry8(dir / "bad_magic.gry8"), std::runtime_error);

  {
    FrameSequence seq;
    seq.append(FieldGrid(4, 4, 0.5));
    write_gry8(dir / "trunc.gry8", seq);
    fs::resize_file(dir / "trunc.gry8", 20);  // header + 4 pixels only
  }
  CHECK_THROWS_AS(read_gry8(dir / "trunc.gry8"), std::runtime_error);
}

TEST_CASE("directories load in lexicographic order") {
  const fs::path dir = test_dir() / "clipdir";
  fs::remove_all(dir);
  fs::create_directories(dir);
  // written out of order on purpose
  write_pgm(dir / "frame_00002.pgm", FieldGrid(3, 3, 1.0));
  write_pgm(dir / "frame_00000.pgm", FieldGrid(3, 3, 0.0));
  write_pgm(dir / "frame_00001.pgm", FieldGrid(3, 3, 102.0 / 255.0));
  const FrameSequence seq = load_frames(dir);
  REQUIRE(seq.size() == 3);
  CHECK(seq.frames[0](0, 0) == 0.0);
  CHECK(seq.frames[1](0, 0) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(seq.frames[2](0, 0) == 1.0);
}

TEST_CASE("resolution drift inside a directory is an error") {
  const fs::path dir = test_dir() / "driftdir";
  fs::remove_all(dir);
  fs::create_directories(dir);
  write_pgm(dir / "a.pgm", FieldGrid(3, 3, 0.0));
  write_pgm(dir / "b.pgm", FieldGrid(3, 4, 0.0));
  CHECK_THROWS_AS(load_frames(dir), std::invalid_argument);
  CHECK_THROWS_AS(load_frames(test_dir() / "not_a_clip.txt"), std::runtime_error);
}

TEST_CASE("write_frames_pgm_dir emits numbered frames") {
  const fs::path dir = test_dir() / "numbered";
  fs::remove_all(dir);
  FrameSequence seq;
  for (int k = 0; k < 3; ++k) seq.append(FieldGrid(4, 4, k / 3.0));
  write_frames_pgm_dir(dir, seq);
  CHECK(fs::exists(dir / "frame_00000.pgm"));
  CHECK(fs::exists(dir / "frame_00002.pgm"));
  const FrameSequence back = load_frames(dir);
  CHECK(back.size() == 3);
}

TEST_CASE("trace csv round trips the records exactly") {
  RunTrace trace;
  SeededRng rng(77);
  for (int k = 0; k < 25; ++k) {
    FrameRecord r;
    r.t = k;
    r.i_v = 0.5 + 0.5 * rng.next_unit();
    r.spike = r.i_v > 0.506;
    trace.records.push_back(r);
    if (r.spike && !trace.first_spike) trace.first_spike = k;
  }
  const fs::path p = test_dir() / "trace.csv";
  write_trace_csv(p, trace);
  const RunTrace back = read_trace_csv(p);
  REQUIRE(back.records.size() == trace.records.size());
  for (std::size_t k = 0; k < trace.records.size(); ++k) {
    CHECK(back.records[k].t == trace.records[k].t);
    CHECK(back.records[k].i_v == trace.records[k].i_v);  // bitwise via 17 digits
    CHECK(back.records[k].spike == trace.records[k].spike);
  }
  CHECK(back.first_spike == trace.first_spike);
}

TEST_CASE("trace csv header is validated") {
  const fs::path p = test_dir() / "badtrace.csv";
  {
    std::ofstream out(p);
    out << "time,value\n0,0.5\n";
  }
  CHECK_THROWS_AS(read_trace_csv(p), std::runtime_error);
}
