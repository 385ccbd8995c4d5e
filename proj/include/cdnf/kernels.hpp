#pragma once

#include <array>
#include <cmath>
#include <vector>

namespace cdnf {

// Normalized 3x3 Gaussian used for lateral excitation in the ON/OFF contrast
// fields. Weights sum to 1 and are strictly positive; the kernel is the outer
// product of the normalized 1-D factors.
struct Kernel3x3 {
  std::array<double, 9> weights{};  // row-major over offsets -1..1
  std::array<double, 3> factor{};   // normalized 1-D Gaussian taps
  double sigma_c = 0.0;

  double at(int di, int dj) const { return weights[(di + 1) * 3 + (dj + 1)]; }
  double sum() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }
};

// Difference-of-Gaussians lateral kernel for the Summation field: narrow
// excitatory Gaussian (amplitude amp_a) minus wide inhibitory one (amp_b),
// sigma2 = 3*sigma1, truncated at `radius`. Amplitudes are absolute; the
// kernel is not renormalized after truncation, so the center stays at
// amp_a - amp_b.
struct DogKernel {
  std::vector<double> weights;  // (2r+1)^2 row-major
  std::vector<double> g1, g2;   // unnormalized 1-D factors, length 2r+1
  int radius = 0;
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  double amp_a = 1.5;
  double amp_b = 0.5;

  int side() const { return 2 * radius + 1; }
  double at(int di, int dj) const {
    return weights[(di + radius) * side() + (dj + radius)];
  }
};

Kernel3x3 build_gaussian3x3(double sigma_c);
DogKernel build_dog(double sigma1, int radius);

// Interaction threshold: squashes the lateral sum into (-1, 1). Odd and
// strictly increasing.
inline double vartheta(double u) { return 2.0 / (1.0 + std::exp(-u)) - 1.0; }

inline const double k_tanh1 = std::tanh(1.0);

// Activation passed between fields; tanh scaled so theta(1) == 1.
inline double theta(double u) { return std::tanh(u) / k_tanh1; }

inline double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace cdnf
