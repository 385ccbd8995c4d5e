#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cdnf/eval.hpp"

using namespace cdnf;

namespace {

// Trace with the given length whose spikes sit exactly at `spike_frames`.
RunTrace make_trace(int length, std::initializer_list<int> spike_frames) {
  RunTrace t;
  for (int k = 0; k < length; ++k) {
    FrameRecord r;
    r.t = k;
    r.i_v = 0.5;
    t.records.push_back(r);
  }
  for (int s : spike_frames) {
    t.records[s].spike = true;
    t.records[s].i_v = 0.52;
    if (!t.first_spike || s < *t.first_spike) t.first_spike = s;
  }
  return t;
}

ClipLabel collision(const std::string& id, int ws, int we) {
  return ClipLabel{id, true, ws, we};
}
ClipLabel clear_road(const std::string& id) { return ClipLabel{id, false, -1, -1}; }

}  // namespace

TEST_CASE("classification covers the four outcomes") {
  CHECK(classify_run(make_trace(20, {5}), collision("a", 5, 10)) == Outcome::TP);
  CHECK(classify_run(make_trace(20, {10}), collision("a", 5, 10)) == Outcome::TP);
  CHECK(classify_run(make_trace(20, {}), collision("a", 5, 10)) == Outcome::FN);
  CHECK(classify_run(make_trace(20, {3}), collision("a", 5, 10)) == Outcome::FN);  // early alert
  CHECK(classify_run(make_trace(20, {12}), collision("a", 5, 10)) == Outcome::FN);
  CHECK(classify_run(make_trace(20, {2}), clear_road("b")) == Outcome::FP);
  CHECK(classify_run(make_trace(20, {}), clear_road("b")) == Outcome::TN);
}

TEST_CASE("window outside the trace is rejected") {
  CHECK_THROWS_AS(classify_run(make_trace(8, {}), collision("a", 5, 10)), std::invalid_argument);
  CHECK_THROWS_AS(classify_run(make_trace(8, {}), collision("a", -1, 5)), std::invalid_argument);
}

TEST_CASE("accuracy is the exact ratio") {
  CHECK(accuracy({2, 1, 1, 0}) == doctest::Approx(75.0).epsilon(1e-12));
  CHECK(accuracy({20, 4, 7, 4}) == doctest::Approx(100.0 * 27.0 / 35.0).epsilon(1e-12));
  CHECK(accuracy({0, 5, 0, 5}) == 0.0);
  CHECK_THROWS_AS(accuracy({0, 0, 0, 0}), std::invalid_argument);
}

TEST_CASE("dataset scoring matches the engineered fixture") {
  std::map<std::string, RunTrace> traces;
  std::vector<ClipLabel> labels;
  // three true positives, two misses, one false alarm, one quiet negative
  traces["tp1"] = make_trace(30, {7});
  labels.push_back(collision("tp1", 5, 10));
  traces["tp2"] = make_trace(30, {5});
  labels.push_back(collision("tp2", 5, 10));
  traces["tp3"] = make_trace(30, {10, 14});
  labels.push_back(collision("tp3", 5, 10));
  traces["fn1"] = make_trace(30, {});
  labels.push_back(collision("fn1", 5, 10));
  traces["fn2"] = make_trace(30, {3});
  labels.push_back(collision("fn2", 5, 10));
  traces["fp1"] = make_trace(30, {2});
  labels.push_back(clear_road("fp1"));
  traces["tn1"] = make_trace(30, {});
  labels.push_back(clear_road("tn1"));

  const DatasetScore score = score_dataset(traces, labels);
  CHECK(score.counts.tp == 3);
  CHECK(score.counts.tn == 1);
  CHECK(score.counts.fp == 1);
  CHECK(score.counts.fn == 2);
  CHECK(score.counts.total() == 7);
  CHECK(score.accuracy_percent == doctest::Approx(100.0 * 4.0 / 7.0).epsilon(1e-12));

  char rounded[16];
  std::snprintf(rounded, sizeof(rounded), "%.2f", score.accuracy_percent);
  CHECK(std::string(rounded) == "57.14");

  REQUIRE(score.clips.size() == 7);
  CHECK(score.clips[4].first_spike == 3);  // early alert exposed in the report
  CHECK(score.clips[4].outcome == Outcome::FN);
}

TEST_CASE("every scored clip lands in exactly one bucket") {
  std::map<std::string, RunTrace> traces;
  std::vector<ClipLabel> labels;
  for (int i = 0; i < 16; ++i) {
    const std::string id = "c" + std::to_string(i);
    traces[id] = make_trace(12, (i % 3 == 0) ? std::initializer_list<int>{i % 12}
                                             : std::initializer_list<int>{});
    if (i % 2 == 0)
      labels.push_back(collision(id, 2, 9));
    else
      labels.push_back(clear_road(id));
  }
  const DatasetScore score = score_dataset(traces, labels);
  CHECK(score.counts.total() == 16);
}

TEST_CASE("singleton datasets") {
  std::map<std::string, RunTrace> traces;
  traces["only"] = make_trace(10, {4});
  const DatasetScore tp = score_dataset(traces, {collision("only", 3, 6)});
  CHECK(tp.counts.tp == 1);
  CHECK(tp.accuracy_percent == 100.0);

  std::map<std::string, RunTrace> quiet;
  std::vector<ClipLabel> labels;
  for (int i = 0; i < 4; ++i) {
    quiet["q" + std::to_string(i)] = make_trace(10, {});
    labels.push_back(clear_road("q" + std::to_string(i)));
  }
  CHECK(score_dataset(quiet, labels).accuracy_percent == 100.0);
}

TEST_CASE("missing traces are an error") {
  std::map<std::string, RunTrace> traces;
  CHECK_THROWS_AS(score_dataset(traces, {clear_road("ghost")}), std::invalid_argument);
}

TEST_CASE("labels file round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "cdnf_eval_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "labels.csv";
  {
    std::ofstream out(path);
    out << "clip_id,collision,window_start,window_end\n";
    out << "# comment line\n";
    out << "clip_a,1,10,30\n";
    out << "clip_b,0,,\n";
    out << "clip_c,true,5,5\n";
  }
  const auto labels = load_labels(path);
  REQUIRE(labels.size() == 3);
  CHECK(labels[0].clip_id == "clip_a");
  CHECK(labels[0].is_collision);
  CHECK(labels[0].window_start == 10);
  CHECK(labels[0].window_end == 30);
  CHECK_FALSE(labels[1].is_collision);
  CHECK(labels[2].window_start == 5);

  {
    std::ofstream out(path);
    out << "clip_a,1,,\n";  // collision without a window
  }
  CHECK_THROWS_AS(load_labels(path), std::runtime_error);
  CHECK_THROWS_AS(load_labels(dir / "missing.csv"), std::runtime_error);
}

TEST_CASE("report csv lists one row per clip") {
  std::map<std::string, RunTrace> traces;
  traces["x"] = make_trace(10, {4});
  traces["y"] = make_trace(10, {});
  const DatasetScore score =
      score_dataset(traces, {collision("x", 3, 6), clear_road("y")});
  const auto dir = std::filesystem::temp_directory_path() / "cdnf_eval_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "report.csv";
  write_report_csv(path, score);

  std::ifstream in(path);
  std::string line;
  int rows = 0;
  REQUIRE(std::getline(in, line));
  CHECK(line.rfind("clip_id,", 0) == 0);
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 2);
}
