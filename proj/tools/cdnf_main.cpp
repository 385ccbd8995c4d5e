// Command-line frontend: synthesize stimuli, run the model over frame
// sequences, score labeled datasets, and sweep coherence degrees.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <json.hpp>

#include "cdnf/eval.hpp"
#include "cdnf/frame_io.hpp"
#include "cdnf/model.hpp"
#include "cdnf/rng.hpp"
#include "cdnf/stimuli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct ModelOptions {
  cdnf::ModelParams params;
  bool cold_start = false;

  cdnf::ModelParams resolve() const {
    cdnf::ModelParams p = params;
    p.solver.warm_start = !cold_start;
    p.validate();
    return p;
  }
};

void add_model_flags(CLI::App* app, ModelOptions& opt) {
  app->add_option("--resting-h", opt.params.h, "Resting level");
  app->add_option("--sigma-c", opt.params.sigma_c, "Contrast-field Gaussian spread");
  app->add_option("--alpha-on", opt.params.alpha_on, "ON contrast coefficient");
  app->add_option("--alpha-off", opt.params.alpha_off, "OFF contrast coefficient");
  app->add_option("--sigma1", opt.params.sigma1, "Excitatory DoG scale");
  app->add_option("--dog-radius", opt.params.dog_radius, "DoG truncation radius");
  app->add_option("--epsilon", opt.params.epsilon, "Alert margin above the 0.5 baseline");
  app->add_option("--tol", opt.params.solver.tol, "Fixed-point stopping tolerance");
  app->add_option("--max-iters", opt.params.solver.max_iters, "Fixed-point iteration cap");
  app->add_flag("--cold-start", opt.cold_start, "Solve every frame from a zero field");
  std::map<std::string, cdnf::IntegrationGate> gates{
      {"positive", cdnf::IntegrationGate::positive},
      {"above_h", cdnf::IntegrationGate::above_h}};
  app->add_option("--gate", opt.params.gate, "Integration gate")
      ->transform(CLI::CheckedTransformer(gates, CLI::ignore_case));
}

struct StimulusOptions {
  std::string kind = "looming";
  std::string polarity = "dark";
  std::size_t rows = 200, cols = 200;
  int frames = 91;
  double fps = 30.0;
  double size_start = -1.0;  // <0: resolution-scaled default
  double size_end = -1.0;
  std::string expansion = "hyperbolic";
  std::uint64_t seed = 0;

  cdnf::StimulusSpec resolve() const {
    cdnf::StimulusSpec s = cdnf::default_spec(parse_kind(kind), parse_polarity(polarity),
                                              rows, cols, frames);
    s.fps = fps;
    if (size_start > 0.0) s.size_start = size_start;
    if (size_end > 0.0) s.size_end = size_end;
    s.expansion = expansion == "linear" ? cdnf::Expansion::linear : cdnf::Expansion::hyperbolic;
    s.seed = seed;
    s.validate();
    return s;
  }

  static cdnf::StimulusKind parse_kind(const std::string& k) {
    if (k == "looming") return cdnf::StimulusKind::looming;
    if (k == "receding") return cdnf::StimulusKind::receding;
    if (k == "translating") return cdnf::StimulusKind::translating;
    throw CLI::ValidationError("--kind", "expected looming|receding|translating");
  }
  static cdnf::Polarity parse_polarity(const std::string& p) {
    if (p == "dark") return cdnf::Polarity::dark_on_light;
    if (p == "light") return cdnf::Polarity::light_on_dark;
    throw CLI::ValidationError("--polarity", "expected dark|light");
  }
};

void add_stimulus_flags(CLI::App* app, StimulusOptions& opt) {
  app->add_option("--kind", opt.kind, "looming|receding|translating");
  app->add_option("--polarity", opt.polarity, "dark|light");
  app->add_option("--rows", opt.rows, "Frame rows");
  app->add_option("--cols", opt.cols, "Frame columns");
  app->add_option_function<std::string>(
         "--res",
         [&opt](const std::string& wh) {
           const auto x = wh.find('x');
           try {
             if (x == std::string::npos || x == 0 || x + 1 == wh.size()) throw std::exception();
             std::size_t wend = 0, hend = 0;
             const std::string w = wh.substr(0, x), h = wh.substr(x + 1);
             opt.cols = std::stoul(w, &wend);
             opt.rows = std::stoul(h, &hend);
             if (wend != w.size() || hend != h.size()) throw std::exception();
           } catch (const std::exception&) {
             throw CLI::ValidationError("--res", "expected WIDTHxHEIGHT, e.g. 200x200");
           }
         },
         "Resolution as WIDTHxHEIGHT (alias for --cols/--rows)");
  app->add_option("--frames", opt.frames, "Clip length in frames");
  app->add_option("--fps", opt.fps, "Frame rate (metadata)");
  app->add_option("--size-start", opt.size_start, "Initial object half-width, px");
  app->add_option("--size-end", opt.size_end, "Final object half-width, px");
  app->add_option("--expansion", opt.expansion, "linear|hyperbolic half-width growth")
      ->check(CLI::IsMember({"linear", "hyperbolic"}));
  app->add_option("--seed", opt.seed, "Root seed for all randomness");
}

void add_rain_flags(CLI::App* app, cdnf::RainParams& rain) {
  app->add_option("--rain-droplets", rain.droplets_per_frame, "Droplets per frame");
  app->add_option("--rain-length", rain.length_px, "Streak length, px");
  app->add_option("--rain-width", rain.width_px, "Streak width, px");
  app->add_option("--rain-angle-jitter", rain.angle_jitter, "Angular deviation, rad");
  app->add_option("--rain-gray", rain.gray_value, "Streak gray value");
  app->add_option("--rain-blur-sigma", rain.blur_sigma, "Blur Gaussian sigma");
  app->add_option("--rain-blend", rain.blend_weight, "Rain layer blend weight");
}

std::string json_spec(const cdnf::StimulusSpec& s, double degree) {
  json j;
  j["kind"] = s.kind == cdnf::StimulusKind::looming
                  ? "looming"
                  : (s.kind == cdnf::StimulusKind::receding ? "receding" : "translating");
  j["polarity"] = s.polarity == cdnf::Polarity::dark_on_light ? "dark" : "light";
  j["rows"] = s.rows;
  j["cols"] = s.cols;
  j["fps"] = s.fps;
  j["frames"] = s.duration;
  j["size_start"] = s.size_start;
  j["size_end"] = s.size_end;
  j["expansion"] = s.expansion == cdnf::Expansion::linear ? "linear" : "hyperbolic";
  j["seed"] = s.seed;
  j["coherence_degree"] = degree;
  return j.dump();
}

int cmd_synth(const StimulusOptions& stim, double degree, bool rain,
              cdnf::RainParams rain_params, const std::string& format, const fs::path& out) {
  const cdnf::StimulusSpec spec = stim.resolve();
  cdnf::FrameSequence clip;
  std::optional<int> jump;
  if (degree >= 100.0) {
    clip = cdnf::gen_coherent(spec);
  } else {
    cdnf::DegradedClip d = cdnf::degrade_coherence(spec, degree, cdnf::mix_seed(spec.seed, 1));
    clip = std::move(d.frames);
    jump = d.jump_frame;
  }

  json meta = json::parse(json_spec(spec, degree));
  if (jump) meta["jump_frame"] = *jump;
  meta["format"] = format;

  fs::create_directories(out);
  if (rain) {
    rain_params.seed = cdnf::mix_seed(spec.seed, 2);
    const cdnf::FrameSequence rained = cdnf::overlay_rain(clip, rain_params);
    const double snr = cdnf::compute_snr(clip, rained);
    meta["rain"] = {{"droplets_per_frame", rain_params.droplets_per_frame},
                    {"length_px", rain_params.length_px},
                    {"width_px", rain_params.width_px},
                    {"angle_jitter", rain_params.angle_jitter},
                    {"gray_value", rain_params.gray_value},
                    {"blur_sigma", rain_params.blur_sigma},
                    {"blend_weight", rain_params.blend_weight},
                    {"seed", rain_params.seed}};
    meta["snr_db"] = snr;
    if (format == "gry8") {
      cdnf::write_gry8(out / "clip.gry8", rained);
      cdnf::write_gry8(out / "clip_clean.gry8", clip);
    } else {
      cdnf::write_frames_pgm_dir(out / "frames", rained);
      cdnf::write_frames_pgm_dir(out / "clean", clip);
    }
    std::printf("snr_db=%.4f\n", snr);
  } else {
    if (format == "gry8")
      cdnf::write_gry8(out / "clip.gry8", clip);
    else
      cdnf::write_frames_pgm_dir(out / "frames", clip);
  }

  std::ofstream mf(out / "metadata.json");
  mf << meta.dump(2) << '\n';
  if (!mf) throw std::runtime_error("synth: cannot write metadata");
  std::printf("wrote %zu frames to %s\n", clip.size(), out.string().c_str());
  return 0;
}

// Per-frame PGM dumps of the three fields, mapped from [-2.2, 2.2] to 8 bits.
void write_snapshots(const fs::path& dir, const cdnf::RunTrace& trace) {
  fs::create_directories(dir);
  const double lo = -2.2, hi = 2.2;
  auto dump = [&](const cdnf::FieldGrid& g, const char* name, std::size_t t) {
    cdnf::FieldGrid scaled(g.rows(), g.cols());
    for (std::size_t i = 0; i < g.size(); ++i)
      scaled.data()[i] = (g.data()[i] - lo) / (hi - lo);
    char fn[64];
    std::snprintf(fn, sizeof(fn), "%s_%05zu.pgm", name, t);
    cdnf::write_pgm(dir / fn, scaled);
  };
  for (std::size_t t = 0; t < trace.snapshots.size(); ++t) {
    dump(trace.snapshots[t].u_on, "u_on", t);
    dump(trace.snapshots[t].u_off, "u_off", t);
    dump(trace.snapshots[t].v_s, "v_s", t);
  }
}

int cmd_run(const fs::path& input, const ModelOptions& model_opt, bool snapshots,
            const fs::path& out) {
  const cdnf::FrameSequence frames = cdnf::load_frames(input);
  const cdnf::ModelParams params = model_opt.resolve();
  const auto t0 = std::chrono::steady_clock::now();
  const cdnf::RunTrace trace = cdnf::run_sequence(frames, params, snapshots);
  const auto t1 = std::chrono::steady_clock::now();
  const double wall_s = std::chrono::duration<double>(t1 - t0).count();

  fs::create_directories(out);
  cdnf::write_trace_csv(out / "trace.csv", trace);
  if (snapshots) write_snapshots(out / "snapshots", trace);

  std::ofstream sf(out / "summary.txt");
  sf << "frames=" << trace.records.size() << '\n';
  sf << "first_spike=" << (trace.first_spike ? std::to_string(*trace.first_spike) : "none")
     << '\n';
  sf << "non_converged_frames=";
  for (std::size_t i = 0; i < trace.non_converged_frames.size(); ++i)
    sf << (i ? "," : "") << trace.non_converged_frames[i];
  sf << '\n';
  sf << "wall_time_s=" << wall_s << '\n';
  if (!sf) throw std::runtime_error("run: cannot write summary");
  std::printf("frames=%zu first_spike=%s wall_time=%.2fs\n", trace.records.size(),
              trace.first_spike ? std::to_string(*trace.first_spike).c_str() : "none", wall_s);
  return 0;
}

int cmd_eval(const fs::path& traces_dir, const fs::path& labels_file, const fs::path& out) {
  const std::vector<cdnf::ClipLabel> labels = cdnf::load_labels(labels_file);
  std::map<std::string, cdnf::RunTrace> traces;
  for (const cdnf::ClipLabel& label : labels) {
    const fs::path p = traces_dir / (label.clip_id + ".csv");
    if (!fs::exists(p)) throw std::runtime_error("eval: missing trace " + p.string());
    traces[label.clip_id] = cdnf::read_trace_csv(p);
  }
  const cdnf::DatasetScore score = cdnf::score_dataset(traces, labels);
  fs::create_directories(out);
  cdnf::write_report_csv(out / "report.csv", score);
  const std::string summary = cdnf::format_summary(score);
  std::ofstream sf(out / "summary.txt");
  sf << summary << '\n';
  std::puts(summary.c_str());
  return 0;
}

int cmd_sweep(const StimulusOptions& stim, const std::vector<std::string>& kinds,
              const std::vector<std::string>& polarities, std::vector<double> degrees,
              const ModelOptions& model_opt, const fs::path& out) {
  const cdnf::ModelParams params = model_opt.resolve();
  for (double d : degrees)
    if (!(d > 0.0 && d <= 100.0))
      throw std::runtime_error("sweep: degrees must lie in (0, 100]");

  struct Cell {
    std::string row;
    double degree;
    bool spiked;
    int first_spike;
    int jump_frame;
  };
  std::vector<Cell> cells;
  std::uint64_t stream = 0;
  for (const std::string& kind : kinds)
    for (const std::string& pol : polarities) {
      StimulusOptions s = stim;
      s.kind = kind;
      s.polarity = pol;
      const cdnf::StimulusSpec spec = s.resolve();
      for (double degree : degrees) {
        cdnf::FrameSequence clip;
        int jump = -1;
        if (degree >= 100.0) {
          clip = cdnf::gen_coherent(spec);
        } else {
          cdnf::DegradedClip dc =
              cdnf::degrade_coherence(spec, degree, cdnf::mix_seed(spec.seed, ++stream));
          clip = std::move(dc.frames);
          jump = dc.jump_frame.value_or(-1);
        }
        const cdnf::RunTrace trace = cdnf::run_sequence(clip, params);
        cells.push_back({kind + "_" + pol, degree, trace.first_spike.has_value(),
                         trace.first_spike.value_or(-1), jump});
        std::printf("%-24s degree=%6.2f spike=%d first=%d\n", cells.back().row.c_str(), degree,
                    cells.back().spiked ? 1 : 0, cells.back().first_spike);
      }
    }

  fs::create_directories(out);
  {
    std::ofstream lf(out / "sweep_long.csv");
    lf << "kind_polarity,degree,spiked,first_spike,jump_frame\n";
    for (const Cell& c : cells)
      lf << c.row << ',' << c.degree << ',' << (c.spiked ? 1 : 0) << ',' << c.first_spike << ','
         << c.jump_frame << '\n';
  }
  {
    std::ofstream mf(out / "sweep_matrix.csv");
    mf << "kind_polarity";
    for (double d : degrees) mf << ',' << d;
    mf << '\n';
    for (std::size_t i = 0; i < cells.size(); i += degrees.size()) {
      mf << cells[i].row;
      for (std::size_t j = 0; j < degrees.size(); ++j) {
        const Cell& c = cells[i + j];
        mf << ',';
        if (c.spiked)
          mf << "1@" << c.first_spike;
        else
          mf << '0';
      }
      mf << '\n';
    }
    if (!mf) throw std::runtime_error("sweep: cannot write matrix");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"C-DNF looming perception: stimulus synthesis, model runs, evaluation"};
  app.require_subcommand(1);

  StimulusOptions stim;
  ModelOptions model_opt;
  cdnf::RainParams rain_params;
  double degree = 100.0;
  bool rain = false;
  std::string format = "pgm";
  std::string out_dir = "out";
  fs::path input, traces_dir, labels_file;
  bool snapshots = false;
  std::vector<std::string> kinds{"looming", "translating"};
  std::vector<std::string> polarities{"dark", "light"};
  std::vector<double> degrees{100, 75, 60, 50, 20, 5};

  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic clip");
  synth->set_config("--config", "", "Flat key=value config file; flags override config keys");
  add_stimulus_flags(synth, stim);
  synth->add_option("--coherence", degree, "Coherence degree in (0,100]")
      ->check(CLI::Range(1e-9, 100.0));
  synth->add_flag("--rain", rain, "Overlay synthetic rain");
  add_rain_flags(synth, rain_params);
  synth->add_option("--format", format, "pgm|gry8")->check(CLI::IsMember({"pgm", "gry8"}));
  synth->add_option("--out", out_dir, "Output directory")->envname("CDNF_OUT_DIR");

  CLI::App* run = app.add_subcommand("run", "Run the model over a frame sequence");
  run->set_config("--config", "", "Flat key=value config file; flags override config keys");
  run->add_option("--input", input, "PGM directory or .gry8 file")->required();
  add_model_flags(run, model_opt);
  run->add_flag("--snapshots", snapshots, "Record per-frame field snapshots");
  run->add_option("--out", out_dir, "Output directory")->envname("CDNF_OUT_DIR");

  CLI::App* eval = app.add_subcommand("eval", "Score traces against labels");
  eval->set_config("--config", "", "Flat key=value config file; flags override config keys");
  eval->add_option("--traces", traces_dir, "Directory of <clip_id>.csv traces")->required();
  eval->add_option("--labels", labels_file, "Labels file")->required();
  eval->add_option("--out", out_dir, "Output directory")->envname("CDNF_OUT_DIR");

  CLI::App* sweep = app.add_subcommand("sweep", "Coherence-degree sweep");
  sweep->set_config("--config", "", "Flat key=value config file; flags override config keys");
  add_stimulus_flags(sweep, stim);
  sweep->add_option("--kinds", kinds, "Stimulus kinds to sweep")->delimiter(',');
  sweep->add_option("--polarities", polarities, "Polarities to sweep")->delimiter(',');
  sweep->add_option("--degrees", degrees, "Coherence degrees")->delimiter(',');
  add_model_flags(sweep, model_opt);
  sweep->add_option("--out", out_dir, "Output directory")->envname("CDNF_OUT_DIR");

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) return cmd_synth(stim, degree, rain, rain_params, format, out_dir);
    if (run->parsed()) return cmd_run(input, model_opt, snapshots, out_dir);
    if (eval->parsed()) return cmd_eval(traces_dir, labels_file, out_dir);
    if (sweep->parsed())
      return cmd_sweep(stim, kinds, polarities, degrees, model_opt, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
