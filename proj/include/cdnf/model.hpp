#pragma once

#include <optional>

#include "cdnf/contrast.hpp"
#include "cdnf/solver.hpp"

namespace cdnf {

// Which Summation-field neurons count toward the integrated signal.
// `positive` admits neurons above zero (the -h term in the dynamics already
// carries the resting level); `above_h` gates at the resting level itself.
enum class IntegrationGate { positive, above_h };

struct ModelParams {
  double h = 0.2;          // resting level, shared by all three fields
  double sigma_c = 1.0;    // lateral excitation spread in the contrast fields
  double alpha_on = 0.5;   // contrast coefficients feeding the Summation field
  double alpha_off = 0.5;
  double sigma1 = 1.0 / 3.0;  // excitatory DoG scale; inhibitory is 3x
  int dog_radius = 3;
  double epsilon = 0.006;  // alert margin above the 0.5 baseline
  IntegrationGate gate = IntegrationGate::positive;
  SolverSettings solver{};

  double i_thre() const { return 0.5 + epsilon; }
  void validate() const;
};

// Last stationary solutions plus the previous frame; everything a model
// instance carries between frames.
struct ModelState {
  FieldGrid u_on;
  FieldGrid u_off;
  FieldGrid v_s;
  std::optional<FieldGrid> prev_frame;
  int t = 0;
};

struct FrameRecord {
  int t = 0;
  double i_v = 0.5;
  bool spike = false;
  bool converged = true;  // all three solves met tol this frame
};

struct FieldSnapshot {
  FieldGrid u_on;
  FieldGrid u_off;
  FieldGrid v_s;
};

struct RunTrace {
  std::vector<FrameRecord> records;
  std::optional<int> first_spike;
  std::vector<int> non_converged_frames;
  std::vector<FieldSnapshot> snapshots;  // filled only when requested
};

// Integrated signal: logistic of the mean gated activation over the field.
double integrate(const FieldGrid& v_s, const ModelParams& params);

// Collision alert: strictly above the threshold 0.5 + epsilon.
bool spike(double i_v, const ModelParams& params);

// One C-DNF instance at a fixed resolution. Owns the kernels, the field state
// and the solver scratch space; single-threaded at the API level, independent
// instances run in parallel.
class CdnfModel {
 public:
  CdnfModel(std::size_t rows, std::size_t cols, const ModelParams& params);

  // Full per-frame pipeline: luminance change, rectification, ON/OFF solves,
  // Summation solve, integration, spike decision. Frame 0 sees an all-zero
  // luminance change, so it can never alert. Solver non-convergence is
  // recorded in the returned record, not raised.
  FrameRecord process_frame(const FieldGrid& frame);

  void reset();

  const ModelState& state() const { return state_; }
  const ModelParams& params() const { return params_; }

 private:
  ModelParams params_;
  Kernel3x3 wc_;
  DogKernel ws_;
  ModelState state_;
  FieldGrid p_, p_on_, p_off_, drive_, zero_;
  ConvWorkspace conv_ws_;
};

// Batch driver: runs every frame through one model instance. Requires at
// least two frames. Deterministic for fixed inputs and params.
RunTrace run_sequence(const FrameSequence& frames, const ModelParams& params,
                      bool record_snapshots = false);

}  // namespace cdnf
