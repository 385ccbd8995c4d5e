#include "cdnf/solver.hpp"

#include <cmath>
#include <cstring>
#include <utility>

namespace cdnf {

double max_abs(const FieldGrid& g) {
  double m = 0.0;
  for (double v : g.values()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const FieldGrid& a, const FieldGrid& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  const double* pa = a.data();
  const double* pb = b.data();
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(pa[i] - pb[i]));
  return m;
}

namespace {

void check_kernel_fits(const FieldGrid& src, int side, const char* what) {
  if (static_cast<std::size_t>(side) > std::min(src.rows(), src.cols()))
    throw std::invalid_argument(std::string(what) + ": kernel larger than grid");
}

// Horizontal pass of a separable kernel, zero padding outside the grid.
void row_pass(const FieldGrid& src, const double* taps, int radius, FieldGrid& dst) {
  const int m = static_cast<int>(src.rows());
  const int n = static_cast<int>(src.cols());
  for (int r = 0; r < m; ++r) {
    const double* s = src.row(r);
    double* d = dst.row(r);
    const int guard = std::min(radius, n);
    for (int c = 0; c < guard; ++c) {
      const int t0 = std::max(-radius, -c);
      const int t1 = std::min(radius, n - 1 - c);
      double acc = 0.0;
      for (int t = t0; t <= t1; ++t) acc += taps[t + radius] * s[c + t];
      d[c] = acc;
    }
    for (int c = radius; c < n - radius; ++c) {
      double acc = 0.0;
      for (int t = -radius; t <= radius; ++t) acc += taps[t + radius] * s[c + t];
      d[c] = acc;
    }
    for (int c = std::max(n - radius, guard); c < n; ++c) {
      const int t0 = std::max(-radius, -c);
      const int t1 = std::min(radius, n - 1 - c);
      double acc = 0.0;
      for (int t = t0; t <= t1; ++t) acc += taps[t + radius] * s[c + t];
      d[c] = acc;
    }
  }
}

// Vertical pass; dst = scale * result, or accumulated on top of dst.
void col_pass(const FieldGrid& src, const double* taps, int radius, double scale,
              bool accumulate, FieldGrid& dst) {
  const int m = static_cast<int>(src.rows());
  const int n = static_cast<int>(src.cols());
  for (int r = 0; r < m; ++r) {
    double* d = dst.row(r);
    if (!accumulate) std::memset(d, 0, static_cast<std::size_t>(n) * sizeof(double));
    const int t0 = std::max(-radius, -r);
    const int t1 = std::min(radius, m - 1 - r);
    for (int t = t0; t <= t1; ++t) {
      const double w = scale * taps[t + radius];
      const double* s = src.row(r + t);
      for (int c = 0; c < n; ++c) d[c] += w * s[c];
    }
  }
}

}  // namespace

void convolve_into(const FieldGrid& src, const Kernel3x3& k, FieldGrid& dst, ConvWorkspace& ws) {
  check_kernel_fits(src, 3, "convolve");
  ws.ensure(src.rows(), src.cols());
  row_pass(src, k.factor.data(), 1, ws.tmp);
  col_pass(ws.tmp, k.factor.data(), 1, 1.0, false, dst);
}

void convolve_into(const FieldGrid& src, const DogKernel& k, FieldGrid& dst, ConvWorkspace& ws) {
  check_kernel_fits(src, k.side(), "convolve");
  ws.ensure(src.rows(), src.cols());
  row_pass(src, k.g1.data(), k.radius, ws.tmp);
  col_pass(ws.tmp, k.g1.data(), k.radius, k.amp_a, false, dst);
  row_pass(src, k.g2.data(), k.radius, ws.tmp);
  col_pass(ws.tmp, k.g2.data(), k.radius, -k.amp_b, true, dst);
}

FieldGrid convolve(const FieldGrid& src, const Kernel3x3& k) {
  ConvWorkspace ws;
  FieldGrid out(src.rows(), src.cols());
  convolve_into(src, k, out, ws);
  return out;
}

FieldGrid convolve(const FieldGrid& src, const DogKernel& k) {
  ConvWorkspace ws;
  FieldGrid out(src.rows(), src.cols());
  convolve_into(src, k, out, ws);
  return out;
}

namespace {

template <typename Kernel>
SolveResult solve_impl(const FieldGrid& input, const Kernel& k, double h,
                       const FieldGrid& init, const SolverSettings& settings,
                       ConvWorkspace& ws) {
  require_same_shape(input, init, "solve_stationary");
  if (!(settings.tol > 0.0)) throw std::invalid_argument("solve_stationary: tol must be > 0");
  if (settings.max_iters < 1) throw std::invalid_argument("solve_stationary: max_iters must be >= 1");

  FieldGrid u = init;
  FieldGrid conv(input.rows(), input.cols());
  FieldGrid next(input.rows(), input.cols());
  const std::size_t sz = input.size();
  const double* in = input.data();
  double delta = 0.0;

  for (int iter = 1; iter <= settings.max_iters; ++iter) {
    convolve_into(u, k, conv, ws);
    const double* cv = conv.data();
    const double* uu = u.data();
    double* nx = next.data();
    delta = 0.0;
    for (std::size_t i = 0; i < sz; ++i) {
      const double v = in[i] - h + vartheta(cv[i]);
      const double d = std::abs(v - uu[i]);
      if (d > delta) delta = d;
      nx[i] = v;
    }
    if (delta < settings.tol) {
      // u itself satisfies the stationarity equation to within tol; return it
      // rather than the half-updated iterate.
      return {std::move(u), true, delta, iter};
    }
    std::swap(u.values(), next.values());
  }
  return {std::move(u), false, delta, settings.max_iters};
}

}  // namespace

SolveResult solve_stationary(const FieldGrid& input, const Kernel3x3& k, double h,
                             const FieldGrid& init, const SolverSettings& settings,
                             ConvWorkspace& ws) {
  return solve_impl(input, k, h, init, settings, ws);
}

SolveResult solve_stationary(const FieldGrid& input, const DogKernel& k, double h,
                             const FieldGrid& init, const SolverSettings& settings,
                             ConvWorkspace& ws) {
  return solve_impl(input, k, h, init, settings, ws);
}

SolveResult solve_stationary(const FieldGrid& input, const Kernel3x3& k, double h,
                             const FieldGrid& init, const SolverSettings& settings) {
  ConvWorkspace ws;
  return solve_impl(input, k, h, init, settings, ws);
}

SolveResult solve_stationary(const FieldGrid& input, const DogKernel& k, double h,
                             const FieldGrid& init, const SolverSettings& settings) {
  ConvWorkspace ws;
  return solve_impl(input, k, h, init, settings, ws);
}

void summation_rhs_into(const FieldGrid& on_act, const FieldGrid& off_act,
                        double alpha_on, double alpha_off, FieldGrid& dst) {
  require_same_shape(on_act, off_act, "summation_rhs");
  require_same_shape(on_act, dst, "summation_rhs");
  const double* on = on_act.data();
  const double* off = off_act.data();
  double* d = dst.data();
  for (std::size_t i = 0; i < on_act.size(); ++i)
    d[i] = alpha_on * theta(on[i]) + alpha_off * theta(off[i]);
}

FieldGrid summation_rhs(const FieldGrid& on_act, const FieldGrid& off_act,
                        double alpha_on, double alpha_off) {
  FieldGrid out(on_act.rows(), on_act.cols());
  summation_rhs_into(on_act, off_act, alpha_on, alpha_off, out);
  return out;
}

}  // namespace cdnf
