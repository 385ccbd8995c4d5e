#pragma once

#include "cdnf/grid.hpp"
#include "cdnf/kernels.hpp"

namespace cdnf {

struct SolverSettings {
  double tol = 1e-6;    // max-norm step size below which the solve is converged
  int max_iters = 200;  // fixed-point map evaluations before giving up
  bool warm_start = true;  // consumed by the model: init from the previous frame
};

struct SolveResult {
  FieldGrid field;
  bool converged = false;
  double residual = 0.0;  // max-norm of the last evaluated step
  int iterations = 0;     // fixed-point map evaluations performed
};

// Scratch buffer reused across convolutions; keeps the per-frame allocation
// count flat.
struct ConvWorkspace {
  FieldGrid tmp;
  void ensure(std::size_t rows, std::size_t cols) {
    if (tmp.rows() != rows || tmp.cols() != cols) tmp = FieldGrid(rows, cols);
  }
};

// Correlation-style lateral sum with zero padding: out(x,y) = sum over the
// kernel support of w(i,j) * src(x+i, y+j), out-of-bounds neighbors contribute
// nothing. Both kernels are flip-symmetric so this equals convolution.
void convolve_into(const FieldGrid& src, const Kernel3x3& k, FieldGrid& dst, ConvWorkspace& ws);
void convolve_into(const FieldGrid& src, const DogKernel& k, FieldGrid& dst, ConvWorkspace& ws);
FieldGrid convolve(const FieldGrid& src, const Kernel3x3& k);
FieldGrid convolve(const FieldGrid& src, const DogKernel& k);

// Stationary solution of the field dynamics for a fixed input map: Picard
// iteration on u = input - h + vartheta(convolve(u, kernel)), starting from
// `init`, stopping when the max-norm step drops below settings.tol. On
// convergence the returned field is the iterate whose measured residual is
// below tol. Non-convergence is reported through the flag, not thrown;
// vartheta keeps every iterate within [min(input)-h-1, max(input)-h+1].
SolveResult solve_stationary(const FieldGrid& input, const Kernel3x3& k, double h,
                             const FieldGrid& init, const SolverSettings& settings);
SolveResult solve_stationary(const FieldGrid& input, const DogKernel& k, double h,
                             const FieldGrid& init, const SolverSettings& settings);
SolveResult solve_stationary(const FieldGrid& input, const Kernel3x3& k, double h,
                             const FieldGrid& init, const SolverSettings& settings,
                             ConvWorkspace& ws);
SolveResult solve_stationary(const FieldGrid& input, const DogKernel& k, double h,
                             const FieldGrid& init, const SolverSettings& settings,
                             ConvWorkspace& ws);

// Drive for the Summation field: alpha_on * theta(u_on) + alpha_off * theta(u_off).
FieldGrid summation_rhs(const FieldGrid& on_act, const FieldGrid& off_act,
                        double alpha_on, double alpha_off);
void summation_rhs_into(const FieldGrid& on_act, const FieldGrid& off_act,
                        double alpha_on, double alpha_off, FieldGrid& dst);

}  // namespace cdnf
