#include "cdnf/eval.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace cdnf {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::TP: return "TP";
    case Outcome::FP: return "FP";
    case Outcome::TN: return "TN";
    case Outcome::FN: return "FN";
  }
  return "?";
}

Outcome classify_run(const RunTrace& trace, const ClipLabel& label) {
  const int len = static_cast<int>(trace.records.size());
  if (label.is_collision) {
    if (!(label.window_start >= 0 && label.window_start <= label.window_end &&
          label.window_end < len))
      throw std::invalid_argument("classify_run: collision window outside trace for clip " +
                                  label.clip_id);
    if (trace.first_spike && *trace.first_spike >= label.window_start &&
        *trace.first_spike <= label.window_end)
      return Outcome::TP;
    return Outcome::FN;
  }
  return trace.first_spike ? Outcome::FP : Outcome::TN;
}

double accuracy(const ConfusionCounts& counts) {
  if (counts.total() <= 0) throw std::invalid_argument("accuracy: no scored clips");
  return 100.0 * static_cast<double>(counts.tp + counts.tn) /
         static_cast<double>(counts.total());
}

DatasetScore score_dataset(const std::map<std::string, RunTrace>& traces,
                           const std::vector<ClipLabel>& labels) {
  DatasetScore score;
  for (const ClipLabel& label : labels) {
    const auto it = traces.find(label.clip_id);
    if (it == traces.end())
      throw std::invalid_argument("score_dataset: missing trace for clip " + label.clip_id);
    const RunTrace& trace = it->second;
    const Outcome outcome = classify_run(trace, label);
    switch (outcome) {
      case Outcome::TP: ++score.counts.tp; break;
      case Outcome::FP: ++score.counts.fp; break;
      case Outcome::TN: ++score.counts.tn; break;
      case Outcome::FN: ++score.counts.fn; break;
    }
    ClipReport rep;
    rep.clip_id = label.clip_id;
    rep.is_collision = label.is_collision;
    rep.window_start = label.window_start;
    rep.window_end = label.window_end;
    rep.first_spike = trace.first_spike.value_or(-1);
    for (const FrameRecord& r : trace.records)
      if (r.spike) ++rep.n_spikes;
    rep.outcome = outcome;
    score.clips.push_back(std::move(rep));
  }
  score.accuracy_percent = accuracy(score.counts);
  return score;
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

bool parse_bool(const std::string& s, const std::string& where) {
  if (s == "1" || s == "true") return true;
  if (s == "0" || s == "false") return false;
  throw std::runtime_error("labels: bad boolean '" + s + "' in " + where);
}

}  // namespace

std::vector<ClipLabel> load_labels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("labels: cannot open " + path.string());
  std::vector<ClipLabel> labels;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (lineno == 1 && t.rfind("clip_id", 0) == 0) continue;  // header
    std::stringstream ss(t);
    std::string id, coll, ws, we;
    std::getline(ss, id, ',');
    std::getline(ss, coll, ',');
    std::getline(ss, ws, ',');
    std::getline(ss, we, ',');
    ClipLabel label;
    label.clip_id = trim(id);
    if (label.clip_id.empty())
      throw std::runtime_error("labels: empty clip id at line " + std::to_string(lineno));
    label.is_collision = parse_bool(trim(coll), path.string());
    if (label.is_collision) {
      if (trim(ws).empty() || trim(we).empty())
        throw std::runtime_error("labels: collision clip without window at line " +
                                 std::to_string(lineno));
      label.window_start = std::stoi(trim(ws));
      label.window_end = std::stoi(trim(we));
      if (label.window_start < 0 || label.window_end < label.window_start)
        throw std::runtime_error("labels: bad window at line " + std::to_string(lineno));
    }
    labels.push_back(std::move(label));
  }
  return labels;
}

void write_report_csv(const std::filesystem::path& path, const DatasetScore& score) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("report: cannot open " + path.string());
  out << "clip_id,collision,window_start,window_end,first_spike,n_spikes,outcome\n";
  for (const ClipReport& c : score.clips) {
    out << c.clip_id << ',' << (c.is_collision ? 1 : 0) << ',';
    if (c.is_collision) out << c.window_start;
    out << ',';
    if (c.is_collision) out << c.window_end;
    out << ',' << c.first_spike << ',' << c.n_spikes << ',' << to_string(c.outcome) << '\n';
  }
  if (!out) throw std::runtime_error("report: write failed for " + path.string());
}

std::string format_summary(const DatasetScore& score) {
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "clips=%d tp=%d fp=%d tn=%d fn=%d accuracy=%.2f%%",
                score.counts.total(), score.counts.tp, score.counts.fp, score.counts.tn,
                score.counts.fn, score.accuracy_percent);
  return buf;
}

}  // namespace cdnf
