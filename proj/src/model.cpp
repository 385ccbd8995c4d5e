#include "cdnf/model.hpp"

#include <stdexcept>

namespace cdnf {

void ModelParams::validate() const {
  if (!(sigma_c > 0.0)) throw std::invalid_argument("ModelParams: sigma_c must be > 0");
  if (!(sigma1 > 0.0)) throw std::invalid_argument("ModelParams: sigma1 must be > 0");
  if (dog_radius < 1) throw std::invalid_argument("ModelParams: dog_radius must be >= 1");
  if (!(epsilon > 0.0)) throw std::invalid_argument("ModelParams: epsilon must be > 0");
  if (!(solver.tol > 0.0)) throw std::invalid_argument("ModelParams: solver tol must be > 0");
  if (solver.max_iters < 1) throw std::invalid_argument("ModelParams: max_iters must be >= 1");
}

double integrate(const FieldGrid& v_s, const ModelParams& params) {
  const double cut = params.gate == IntegrationGate::above_h ? params.h : 0.0;
  double s = 0.0;
  for (double v : v_s.values())
    if (v > cut) s += theta(v);
  return logistic(s / static_cast<double>(v_s.size()));
}

bool spike(double i_v, const ModelParams& params) { return i_v > params.i_thre(); }

CdnfModel::CdnfModel(std::size_t rows, std::size_t cols, const ModelParams& params)
    : params_(params),
      wc_(build_gaussian3x3(params.sigma_c)),
      ws_(build_dog(params.sigma1, params.dog_radius)),
      state_{FieldGrid(rows, cols), FieldGrid(rows, cols), FieldGrid(rows, cols), std::nullopt, 0},
      p_(rows, cols),
      p_on_(rows, cols),
      p_off_(rows, cols),
      drive_(rows, cols),
      zero_(rows, cols) {
  params_.validate();
  if (static_cast<std::size_t>(ws_.side()) > std::min(rows, cols))
    throw std::invalid_argument("CdnfModel: DoG kernel larger than the field");
}

void CdnfModel::reset() {
  state_.u_on.fill(0.0);
  state_.u_off.fill(0.0);
  state_.v_s.fill(0.0);
  state_.prev_frame.reset();
  state_.t = 0;
}

FrameRecord CdnfModel::process_frame(const FieldGrid& frame) {
  if (!frame.same_shape(p_)) throw std::invalid_argument("process_frame: resolution mismatch");

  if (state_.prev_frame)
    luminance_change_into(frame, *state_.prev_frame, p_);
  else
    p_.fill(0.0);
  rectify_into(p_, p_on_, p_off_);

  const bool warm = params_.solver.warm_start;
  SolveResult r_on = solve_stationary(p_on_, wc_, params_.h, warm ? state_.u_on : zero_,
                                      params_.solver, conv_ws_);
  SolveResult r_off = solve_stationary(p_off_, wc_, params_.h, warm ? state_.u_off : zero_,
                                       params_.solver, conv_ws_);
  state_.u_on = std::move(r_on.field);
  state_.u_off = std::move(r_off.field);

  summation_rhs_into(state_.u_on, state_.u_off, params_.alpha_on, params_.alpha_off, drive_);
  SolveResult r_s = solve_stationary(drive_, ws_, params_.h, warm ? state_.v_s : zero_,
                                     params_.solver, conv_ws_);
  state_.v_s = std::move(r_s.field);

  FrameRecord rec;
  rec.t = state_.t;
  rec.i_v = integrate(state_.v_s, params_);
  rec.spike = spike(rec.i_v, params_);
  rec.converged = r_on.converged && r_off.converged && r_s.converged;

  state_.prev_frame = frame;
  ++state_.t;
  return rec;
}

RunTrace run_sequence(const FrameSequence& frames, const ModelParams& params,
                      bool record_snapshots) {
  if (frames.size() < 2)
    throw std::invalid_argument("run_sequence: need at least two frames");
  CdnfModel model(frames.rows, frames.cols, params);
  RunTrace trace;
  trace.records.reserve(frames.size());
  for (const FieldGrid& f : frames.frames) {
    const FrameRecord rec = model.process_frame(f);
    trace.records.push_back(rec);
    if (rec.spike && !trace.first_spike) trace.first_spike = rec.t;
    if (!rec.converged) trace.non_converged_frames.push_back(rec.t);
    if (record_snapshots)
      trace.snapshots.push_back(
          {model.state().u_on, model.state().u_off, model.state().v_s});
  }
  return trace;
}

}  // namespace cdnf
