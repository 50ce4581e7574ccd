#pragma once

// Seeded instance generators for property sweeps. Trial i of a sweep with
// seed s draws from its own engine seeded with substream_seed(s, i), so the
// instances do not depend on how trials are scheduled.

#include <cstdint>
#include <random>

#include "gaussmod/gaussian.hpp"

namespace gaussmod::random {

inline constexpr const char* kGeneratorId = "mt19937_64/splitmix64-substreams/std::normal_distribution";

/// splitmix64 of seed ⊕ golden-ratio multiple of index.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  /// Uniform integer in [lo, hi].
  long uniform_int(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

RMatrix normal_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols);

/// s·GGᵀ with G an n×rank standard normal matrix.
RMatrix psd(Rng& rng, Eigen::Index n, double scale, Eigen::Index rank);
RMatrix psd(Rng& rng, Eigen::Index n, double scale);

/// s·GGᵀ redrawn until its smallest eigenvalue exceeds 1e-8·s.
RMatrix strictly_positive(Rng& rng, Eigen::Index n, double scale);

RMatrix antisymmetric(Rng& rng, Eigen::Index n);

/// GGᵀ/n + ½·1, well conditioned.
RMatrix spd(Rng& rng, Eigen::Index n);

/// Random μ with σ rescaled so that ‖Σ₀‖_∞ = target_norm (σ = 0 when n = 1).
GaussianStateForm base_state(Rng& rng, Eigen::Index n, double target_norm = 0.9);

CanonicalPolarisation standard_polarisation(Rng& rng, Eigen::Index n, double target_norm = 0.9);

}  // namespace gaussmod::random
