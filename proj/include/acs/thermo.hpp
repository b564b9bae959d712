#pragma once

// Canonical thermodynamics of the Raman Hamiltonian.  Each normal mode
// contributes a geometric series over N = 2j,
//
//   Z_+ = sum_{N>=0} exp(-beta A N) = 1 / (1 - exp(-beta A)),
//
// likewise Z_- with B, and Z = Z_+ Z_-,
//   U = -d ln Z / d beta = A / (exp(beta A) - 1) + B / (exp(beta B) - 1).
// Convergence needs B > 0, i.e. w1 w2 > lambda^2.

#include <optional>

#include "acs/raman.hpp"

namespace acs::thermo {

struct ThermoParams {
  double beta = 1.0;
};

struct ThermoResult {
  double beta = 0.0;
  double z_plus = 0.0;
  double z_minus = 0.0;
  double z_total = 0.0;
  double internal_energy = 0.0;
};

bool stability(const raman::RamanParams& p);

// 1 / (1 - exp(-beta freq)).  Throws UnstableBranch (freq <= 0) or BadBeta.
double branch_partition(double freq, double beta);

// Throws UnstableSystem when !stability(p).
ThermoResult total_partition(const raman::RamanParams& p, ThermoParams t);
double internal_energy(const raman::RamanParams& p, ThermoParams t);
double log_partition(const raman::RamanParams& p, ThermoParams t);

enum class SpectrumSource { closed_form, jacobi };

struct SpectralSum {
  double z = 0.0;
  double u = 0.0;
  int j_cap = 0;  // largest 2j block summed
  double tail_bound = 0.0;
};

inline constexpr int kMaxOracleBlocks = 10000;
inline constexpr double kTailTolerance = 1e-12;

// Upper bound on the part of Z carried by blocks 2j > j_cap.
double tail_bound(const raman::RamanParams& p, ThermoParams t, int j_cap);

// Brute-force trace of exp(-beta H) over explicit block spectra.  Without a
// j_cap the smallest cap meeting the tail tolerance is chosen.  Throws
// TailTooFat when the tolerance is not met (given cap, or none <= 10^4).
SpectralSum spectral_sum_oracle(const raman::RamanParams& p, ThermoParams t,
                                std::optional<int> j_cap = std::nullopt,
                                SpectrumSource source = SpectrumSource::closed_form);

}  // namespace acs::thermo
