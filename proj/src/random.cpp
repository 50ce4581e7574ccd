#include "gaussmod/random.hpp"

namespace gaussmod::random {

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RMatrix normal_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  RMatrix g(rows, cols);
  // Column-major fill order is part of the reproducibility contract.
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = rng.normal();
  }
  return g;
}

RMatrix psd(Rng& rng, Eigen::Index n, double scale, Eigen::Index rank) {
  const RMatrix g = normal_matrix(rng, n, rank);
  RMatrix out = scale * (g * g.transpose());
  return 0.5 * (out + out.transpose());
}

RMatrix psd(Rng& rng, Eigen::Index n, double scale) { return psd(rng, n, scale, n); }

RMatrix strictly_positive(Rng& rng, Eigen::Index n, double scale) {
  for (;;) {
    RMatrix d = psd(rng, n, scale);
    Eigen::SelfAdjointEigenSolver<RMatrix> solver(d, Eigen::EigenvaluesOnly);
    if (n == 0 || solver.eigenvalues()(0) > 1e-8 * scale) return d;
  }
}

RMatrix antisymmetric(Rng& rng, Eigen::Index n) {
  const RMatrix a = normal_matrix(rng, n, n);
  return a - a.transpose();
}

RMatrix spd(Rng& rng, Eigen::Index n) {
  const RMatrix g = normal_matrix(rng, n, n);
  RMatrix mu = g * g.transpose() / static_cast<double>(std::max<Eigen::Index>(n, 1));
  mu += 0.5 * RMatrix::Identity(n, n);
  return 0.5 * (mu + mu.transpose());
}

GaussianStateForm base_state(Rng& rng, Eigen::Index n, double target_norm) {
  RMatrix mu = spd(rng, n);
  RMatrix sigma = antisymmetric(rng, n);
  const GaussianStateForm probe(PreSymplecticSpace(sigma), mu);
  const double norm = 1.0 - domination_margin(probe);
  if (norm > 0.0) {
    sigma *= target_norm / norm;
    sigma = 0.5 * (sigma - sigma.transpose()).eval();
  }
  return GaussianStateForm(PreSymplecticSpace(sigma), mu);
}

CanonicalPolarisation standard_polarisation(Rng& rng, Eigen::Index n, double target_norm) {
  return polarisation_canonical(base_state(rng, n, target_norm));
}

}  // namespace gaussmod::random
