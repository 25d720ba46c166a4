#pragma once

// Samplers for the two Pareto max-mixture models used in the simulation study.

#include <cstddef>
#include <cstdint>
#include <random>

#include "mes/evt_core.hpp"

namespace mes {

enum class ModelVariant {
  Example1,  // X = max(Z1, Z2), Y = max(Z1, Z3)
  Example2,  // (X, Y) = (Z1, Z1) with probability b, else (Z2, Z3)
};

/// Z1, Z2, Z3 are independent Pareto variables with P(Z > z) = z^(-1/gamma), z >= 1.
struct ModelSpec {
  ModelVariant variant = ModelVariant::Example1;
  double gamma_z1 = 0.3;
  double gamma_z2 = 0.4;
  double gamma_z3 = 0.4;
  double bernoulli_p = 0.5;  // Example2 only: probability of the (Z1, Z1) branch

  static ModelSpec example1() { return {}; }
  static ModelSpec example2() { return {.variant = ModelVariant::Example2}; }

  void validate() const;
};

const char* to_string(ModelVariant variant) noexcept;

/// Mixes (master, index) into an independent 64-bit seed (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// Uniform deviate on the open interval (0,1) from the top 53 bits of one draw.
/// Unlike std::uniform_real_distribution this is identical on every platform.
double uniform_open(std::mt19937_64& engine) noexcept;

/// Inverse transform (1-u)^(-gamma). Throws ArgumentError unless 0 < u < 1.
double sample_pareto(double gamma, double u);

/// n independent draws; deterministic given (spec, n, seed). Each draw
/// consumes four uniforms in a fixed order: branch, z1, z2, z3.
PairedSample sample_model(const ModelSpec& spec, std::size_t n, std::uint64_t seed);

}  // namespace mes
