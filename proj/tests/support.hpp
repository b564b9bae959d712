#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "acs/fock.hpp"
#include "acs/raman.hpp"

namespace acs::testing {

// Fixed-seed generators for property-style loops.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  cplx complex_in_disk(double radius) {
    const double r = radius * std::sqrt(uniform(0.0, 1.0));
    return std::polar(r, uniform(0.0, 6.283185307179586));
  }

  fock::BlockVector block_vector(int two_j) {
    fock::BlockVector v(two_j);
    for (std::size_t l = 0; l < v.size(); ++l) v[l] = {uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
    return v;
  }

  fock::TwoModeState state(int cutoff, int max_total, int terms) {
    fock::TwoModeState::AmplitudeMap amps;
    for (int k = 0; k < terms; ++k) {
      const int total = integer(0, max_total);
      const int n_a = integer(0, total);
      amps[{n_a, total - n_a}] = {uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
    }
    return fock::TwoModeState(std::move(amps), cutoff);
  }

  raman::RamanParams raman(bool allow_negative_lambda = true) {
    raman::RamanParams p{uniform(0.1, 5.0), uniform(0.1, 5.0), uniform(0.05, 3.0)};
    if (allow_negative_lambda && integer(0, 1) == 1) p.lambda = -p.lambda;
    return p;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline double max_abs_diff(const fock::BlockVector& x, const fock::BlockVector& y) {
  double d = 0.0;
  for (std::size_t l = 0; l < x.size(); ++l) d = std::max(d, std::abs(x[l] - y[l]));
  return d;
}

}  // namespace acs::testing
