#include "acs/thermo.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "acs/error.hpp"

namespace acs::thermo {

using raman::RamanParams;

namespace {

void check_beta(double beta) {
  if (!std::isfinite(beta) || beta <= 0.0) {
    throw Error(ErrorCode::BadBeta, "beta must be finite and positive");
  }
}

raman::NormalModes stable_modes(const RamanParams& p) {
  if (!stability(p)) {
    throw Error(ErrorCode::UnstableSystem,
                "w1 w2 <= lambda^2: the lower normal mode is not positive and Z diverges");
  }
  return raman::normal_modes(p);
}

// ln(1 - exp(-x)) for x > 0 without cancellation at either end.
double log1mexp(double x) { return x > std::numbers::ln2 ? std::log1p(-std::exp(-x)) : std::log(-std::expm1(-x)); }

}  // namespace

bool stability(const RamanParams& p) {
  raman::validate(p);
  return p.omega1 * p.omega2 - p.lambda * p.lambda > 0.0;
}

double branch_partition(double freq, double beta) {
  if (!std::isfinite(freq) || freq <= 0.0) {
    throw Error(ErrorCode::UnstableBranch, "branch frequency " + std::to_string(freq) + " is not positive");
  }
  check_beta(beta);
  return -1.0 / std::expm1(-beta * freq);
}

ThermoResult total_partition(const RamanParams& p, ThermoParams t) {
  const raman::NormalModes m = stable_modes(p);
  ThermoResult r;
  r.beta = t.beta;
  r.z_plus = branch_partition(m.A, t.beta);
  r.z_minus = branch_partition(m.B, t.beta);
  r.z_total = r.z_plus * r.z_minus;
  r.internal_energy = internal_energy(p, t);
  return r;
}

double internal_energy(const RamanParams& p, ThermoParams t) {
  const raman::NormalModes m = stable_modes(p);
  check_beta(t.beta);
  return m.A / std::expm1(t.beta * m.A) + m.B / std::expm1(t.beta * m.B);
}

double log_partition(const RamanParams& p, ThermoParams t) {
  const raman::NormalModes m = stable_modes(p);
  check_beta(t.beta);
  return -log1mexp(t.beta * m.A) - log1mexp(t.beta * m.B);
}

double tail_bound(const RamanParams& p, ThermoParams t, int j_cap) {
  const raman::NormalModes m = stable_modes(p);
  check_beta(t.beta);
  // Block N holds N+1 levels, each >= B N, so the tail is at most
  // sum_{N>=M} (N+1) x^N = x^M ((M+1) - M x) / (1-x)^2 with x = exp(-beta B).
  const double x = std::exp(-t.beta * m.B);
  const double one_minus_x = -std::expm1(-t.beta * m.B);
  const double first = static_cast<double>(j_cap) + 1.0;
  return std::exp(-t.beta * m.B * first) * ((first + 1.0) - first * x) / (one_minus_x * one_minus_x);
}

SpectralSum spectral_sum_oracle(const RamanParams& p, ThermoParams t, std::optional<int> j_cap,
                                SpectrumSource source) {
  stable_modes(p);
  check_beta(t.beta);

  int cap = 0;
  if (j_cap) {
    if (*j_cap < 0) throw Error(ErrorCode::InvalidArgument, "j_cap must be non-negative");
    cap = *j_cap;
  } else {
    while (cap < kMaxOracleBlocks && tail_bound(p, t, cap) >= kTailTolerance) ++cap;
  }
  const double tail = tail_bound(p, t, cap);
  if (tail >= kTailTolerance) {
    throw Error(ErrorCode::TailTooFat, "spectral tail bound " + std::to_string(tail) +
                                           " not below tolerance with 2j cap " + std::to_string(cap));
  }

  SpectralSum out;
  out.j_cap = cap;
  out.tail_bound = tail;
  double weighted_energy = 0.0;
  for (int two_j = 0; two_j <= cap; ++two_j) {
    const std::vector<double> levels = source == SpectrumSource::closed_form
                                           ? raman::spectrum_closed(p, two_j)
                                           : raman::block_spectrum_oracle(p, two_j);
    for (double e : levels) {
      const double boltzmann = std::exp(-t.beta * e);
      out.z += boltzmann;
      weighted_energy += e * boltzmann;
    }
  }
  out.u = weighted_energy / out.z;
  return out;
}

}  // namespace acs::thermo
