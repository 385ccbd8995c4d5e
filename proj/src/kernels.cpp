#include "cdnf/kernels.hpp"

#include <stdexcept>

namespace cdnf {

Kernel3x3 build_gaussian3x3(double sigma_c) {
  if (!(sigma_c > 0.0)) throw std::invalid_argument("build_gaussian3x3: sigma_c must be > 0");
  Kernel3x3 k;
  k.sigma_c = sigma_c;
  const double inv = 1.0 / (2.0 * sigma_c * sigma_c);
  double sum = 0.0;
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j) {
      const double w = std::exp(-(i * i + j * j) * inv);
      k.weights[(i + 1) * 3 + (j + 1)] = w;
      sum += w;
    }
  for (double& w : k.weights) w /= sum;

  double fsum = 0.0;
  for (int t = -1; t <= 1; ++t) fsum += std::exp(-(t * t) * inv);
  for (int t = -1; t <= 1; ++t) k.factor[t + 1] = std::exp(-(t * t) * inv) / fsum;
  return k;
}

DogKernel build_dog(double sigma1, int radius) {
  if (!(sigma1 > 0.0)) throw std::invalid_argument("build_dog: sigma1 must be > 0");
  if (radius < 1) throw std::invalid_argument("build_dog: radius must be >= 1");
  DogKernel k;
  k.radius = radius;
  k.sigma1 = sigma1;
  k.sigma2 = 3.0 * sigma1;
  const int side = k.side();
  const double inv1 = 1.0 / (2.0 * k.sigma1 * k.sigma1);
  const double inv2 = 1.0 / (2.0 * k.sigma2 * k.sigma2);
  k.weights.resize(static_cast<std::size_t>(side) * side);
  for (int i = -radius; i <= radius; ++i)
    for (int j = -radius; j <= radius; ++j) {
      const double d2 = static_cast<double>(i * i + j * j);
      k.weights[(i + radius) * side + (j + radius)] =
          k.amp_a * std::exp(-d2 * inv1) - k.amp_b * std::exp(-d2 * inv2);
    }
  k.g1.resize(side);
  k.g2.resize(side);
  for (int t = -radius; t <= radius; ++t) {
    k.g1[t + radius] = std::exp(-(t * t) * inv1);
    k.g2[t + radius] = std::exp(-(t * t) * inv2);
  }
  return k;
}

}  // namespace cdnf
