#include "mes/models.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mes/error.hpp"

namespace mes {

void ModelSpec::validate() const {
  for (double g : {gamma_z1, gamma_z2, gamma_z3}) {
    if (!(g > 0.0) || !std::isfinite(g)) throw ArgumentError("Pareto gamma parameters must be positive");
  }
  if (variant == ModelVariant::Example2 && !(bernoulli_p > 0.0 && bernoulli_p < 1.0)) {
    throw ArgumentError("Bernoulli probability must lie in (0,1)");
  }
}

const char* to_string(ModelVariant variant) noexcept {
  switch (variant) {
    case ModelVariant::Example1: return "example1";
    case ModelVariant::Example2: return "example2";
  }
  return "unknown";
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(master) ^ index);
}

double uniform_open(std::mt19937_64& engine) noexcept {
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  return (static_cast<double>(engine() >> 11) + 0.5) * kScale;
}

double sample_pareto(double gamma, double u) {
  if (!(u > 0.0 && u < 1.0)) throw ArgumentError("uniform deviate must lie in (0,1)");
  return std::pow(1.0 - u, -gamma);
}

PairedSample sample_model(const ModelSpec& spec, std::size_t n, std::uint64_t seed) {
  spec.validate();
  if (n < 1) throw ArgumentError("sample size must be at least 1");
  std::mt19937_64 engine(seed);
  std::vector<double> x(n);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double branch = uniform_open(engine);
    const double z1 = sample_pareto(spec.gamma_z1, uniform_open(engine));
    const double z2 = sample_pareto(spec.gamma_z2, uniform_open(engine));
    const double z3 = sample_pareto(spec.gamma_z3, uniform_open(engine));
    if (spec.variant == ModelVariant::Example1) {
      x[i] = std::max(z1, z2);
      y[i] = std::max(z1, z3);
    } else if (branch < spec.bernoulli_p) {
      x[i] = z1;
      y[i] = z1;
    } else {
      x[i] = z2;
      y[i] = z3;
    }
  }
  return PairedSample(std::move(x), std::move(y));
}

}  // namespace mes
