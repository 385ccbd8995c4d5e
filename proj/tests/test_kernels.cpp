#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "cdnf/kernels.hpp"

using namespace cdnf;

TEST_CASE("gaussian3x3 matches the direct formula") {
  const Kernel3x3 k = build_gaussian3x3(1.0);
  // independent evaluation: exp(-(i^2+j^2)/2) over the nine offsets, normalized
  double raw[9], sum = 0.0;
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j) {
      raw[(i + 1) * 3 + (j + 1)] = std::exp(-(i * i + j * j) / 2.0);
      sum += raw[(i + 1) * 3 + (j + 1)];
    }
  for (int idx = 0; idx < 9; ++idx)
    CHECK(k.weights[idx] == doctest::Approx(raw[idx] / sum).epsilon(1e-12));

  CHECK(k.at(0, 0) == doctest::Approx(0.20418).epsilon(1e-4));
  CHECK(k.at(0, 1) == doctest::Approx(0.12384).epsilon(1e-4));
  CHECK(k.at(1, 1) == doctest::Approx(0.07511).epsilon(1e-4));
}

TEST_CASE("gaussian3x3 normalization, positivity and symmetry") {
  for (double sigma : {0.3, 0.5, 1.0, 2.0, 7.5}) {
    const Kernel3x3 k = build_gaussian3x3(sigma);
    CHECK(std::abs(k.sum() - 1.0) < 1e-12);
    for (double w : k.weights) CHECK(w > 0.0);
    for (int i = -1; i <= 1; ++i)
      for (int j = -1; j <= 1; ++j) {
        CHECK(k.at(i, j) == k.at(-i, j));
        CHECK(k.at(i, j) == k.at(i, -j));
        CHECK(k.at(i, j) == k.at(j, i));
      }
  }
}

TEST_CASE("gaussian3x3 flattens to 1/9 for huge sigma") {
  const Kernel3x3 k = build_gaussian3x3(1e6);
  for (double w : k.weights) CHECK(w == doctest::Approx(1.0 / 9.0).epsilon(1e-9));
}

TEST_CASE("gaussian3x3 rejects non-positive sigma") {
  CHECK_THROWS_AS(build_gaussian3x3(0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_gaussian3x3(-1.0), std::invalid_argument);
}

TEST_CASE("dog kernel values") {
  const DogKernel k = build_dog(1.0 / 3.0, 3);
  CHECK(k.sigma2 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(k.at(0, 0) - 1.0) < 1e-12);  // amp_a - amp_b
  const double expect10 = 1.5 * std::exp(-4.5) - 0.5 * std::exp(-0.5);
  CHECK(k.at(1, 0) == doctest::Approx(expect10).epsilon(1e-12));
  CHECK(k.at(1, 0) == doctest::Approx(-0.28660).epsilon(1e-4));
  CHECK(k.at(0, 1) == k.at(1, 0));
}

TEST_CASE("dog kernel is rotationally symmetric and center-positive only") {
  const DogKernel k = build_dog(1.0 / 3.0, 3);
  for (int i = -3; i <= 3; ++i)
    for (int j = -3; j <= 3; ++j) {
      CHECK(k.at(i, j) == k.at(-i, j));
      CHECK(k.at(i, j) == k.at(i, -j));
      CHECK(k.at(i, j) == k.at(j, i));
      if (i != 0 || j != 0) CHECK(k.at(i, j) < 0.0);  // sigma1=1/3 surround is inhibitory
    }
}

TEST_CASE("dog center stays at 1 for any sigma1") {
  for (double s : {0.1, 1.0 / 3.0, 0.8, 2.0})
    CHECK(std::abs(build_dog(s, 3).at(0, 0) - 1.0) < 1e-12);
}

TEST_CASE("dog rejects bad parameters") {
  CHECK_THROWS_AS(build_dog(0.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_dog(1.0 / 3.0, 0), std::invalid_argument);
}

TEST_CASE("vartheta values and shape") {
  CHECK(vartheta(0.0) == 0.0);
  CHECK(vartheta(1.0) == doctest::Approx(0.46212).epsilon(1e-4));
  CHECK(vartheta(1.0) == doctest::Approx(2.0 / (1.0 + std::exp(-1.0)) - 1.0).epsilon(1e-15));
  for (double u : {0.5, 2.0, 10.0}) CHECK(std::abs(vartheta(-u) + vartheta(u)) < 1e-12);
  double prev = -1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double u = -10.0 + 20.0 * i / 1000.0;
    const double v = vartheta(u);
    CHECK(v > -1.0);
    CHECK(v < 1.0);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("theta values and bound") {
  CHECK(theta(0.0) == 0.0);
  CHECK(std::abs(theta(1.0) - 1.0) < 1e-12);
  CHECK(theta(2.0) == doctest::Approx(1.26580).epsilon(1e-4));
  CHECK(theta(2.0) == doctest::Approx(std::tanh(2.0) / std::tanh(1.0)).epsilon(1e-15));
  const double bound = 1.0 / std::tanh(1.0);
  for (int i = 0; i <= 1000; ++i) {
    const double u = -40.0 + 80.0 * i / 1000.0;
    CHECK(std::abs(theta(u)) <= bound);
    CHECK(std::abs(theta(-u) + theta(u)) < 1e-12);
  }
}

TEST_CASE("logistic reference points") {
  CHECK(logistic(0.0) == 0.5);
  CHECK(logistic(1.0) == doctest::Approx(0.7310585786300049).epsilon(1e-15));
  CHECK(logistic(-1.0) == doctest::Approx(0.2689414213699951).epsilon(1e-15));
}
