#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "cdnf/model.hpp"

namespace cdnf {

// Ground truth for one clip. Collision clips carry the frame window inside
// which a first alert counts as a true positive.
struct ClipLabel {
  std::string clip_id;
  bool is_collision = false;
  int window_start = -1;
  int window_end = -1;
};

struct ConfusionCounts {
  int tp = 0, fp = 0, tn = 0, fn = 0;
  int total() const { return tp + fp + tn + fn; }
};

enum class Outcome { TP, FP, TN, FN };

const char* to_string(Outcome o);

// Collision clip: TP iff the first alert lands inside the window; no alert or
// an alert outside the window counts as FN, so FP keeps meaning "alert on a
// non-collision clip". Non-collision clip: any alert is FP, silence is TN.
Outcome classify_run(const RunTrace& trace, const ClipLabel& label);

// (TP+TN)/(TP+TN+FP+FN) * 100.
double accuracy(const ConfusionCounts& counts);

struct ClipReport {
  std::string clip_id;
  bool is_collision = false;
  int window_start = -1;
  int window_end = -1;
  int first_spike = -1;  // -1 when the clip never alerted
  int n_spikes = 0;
  Outcome outcome = Outcome::TN;
};

struct DatasetScore {
  ConfusionCounts counts;
  double accuracy_percent = 0.0;
  std::vector<ClipReport> clips;
};

DatasetScore score_dataset(const std::map<std::string, RunTrace>& traces,
                           const std::vector<ClipLabel>& labels);

// One record per line: clip_id,collision,window_start,window_end. Window
// fields may be empty for non-collision clips; '#' starts a comment.
std::vector<ClipLabel> load_labels(const std::filesystem::path& path);

void write_report_csv(const std::filesystem::path& path, const DatasetScore& score);
std::string format_summary(const DatasetScore& score);

}  // namespace cdnf
