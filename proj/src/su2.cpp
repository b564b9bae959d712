#include "acs/su2.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "acs/error.hpp"

namespace acs::su2 {

using fock::BlockMatrix;
using fock::BlockVector;
using fock::Schwinger;

namespace {

constexpr double kPoleGuard = 1e-9;

void check_angles(ACSAngles ang) {
  if (!std::isfinite(ang.theta) || !std::isfinite(ang.phi) || ang.theta < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "theta must be finite and in [0, pi)");
  }
  if (ang.theta >= std::numbers::pi - kPoleGuard) {
    throw Error(ErrorCode::PoleAtSouthPole,
                "theta = " + std::to_string(ang.theta) + " is at the tan(theta/2) pole");
  }
}

void check_block(int two_j) {
  if (two_j < 0) throw Error(ErrorCode::InvalidArgument, "two_j must be non-negative");
  if (two_j > fock::kMaxTwoJ) {
    throw Error(ErrorCode::CombinatoricsOverflow,
                "2j = " + std::to_string(two_j) + " exceeds the supported maximum " +
                    std::to_string(fock::kMaxTwoJ));
  }
}

// Integer power by repeated squaring; exact for axis-aligned unit phasors.
cplx ipow(cplx base, int e) {
  cplx r{1.0, 0.0};
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

cplx tau_from_angles(ACSAngles ang) {
  check_angles(ang);
  return std::polar(std::tan(0.5 * ang.theta), -ang.phi);
}

BlockVector build_dicke(DickeLabel lbl) {
  if (lbl.two_j < 0 || std::abs(lbl.two_m) > lbl.two_j || (lbl.two_j + lbl.two_m) % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument, "invalid Dicke label (two_j=" + std::to_string(lbl.two_j) +
                                                ", two_m=" + std::to_string(lbl.two_m) + ")");
  }
  BlockVector v(lbl.two_j);
  v[static_cast<std::size_t>((lbl.two_j - lbl.two_m) / 2)] = 1.0;
  return v;
}

BlockVector build_acs(const ACSLabel& lbl) {
  check_block(lbl.two_j);
  if (!std::isfinite(lbl.tau.real()) || !std::isfinite(lbl.tau.imag())) {
    throw Error(ErrorCode::InvalidArgument, "tau must be finite");
  }
  const int n = lbl.two_j;
  BlockVector v(n);
  const double mag = std::abs(lbl.tau);
  if (mag == 0.0) {
    v[static_cast<std::size_t>(n)] = 1.0;
    return v;
  }
  const cplx phase = lbl.tau / mag;
  const double log_mag = std::log(mag);
  const double log_norm = 0.5 * n * std::log1p(std::norm(lbl.tau));
  for (int l = 0; l <= n; ++l) {
    const int power = n - l;
    const double log_coeff = 0.5 * log_binomial(n, l) + power * log_mag - log_norm;
    v[static_cast<std::size_t>(l)] = std::exp(log_coeff) * ipow(phase, power);
  }
  return v;
}

BlockVector build_acs_exponential_oracle(ACSAngles ang, int two_j) {
  check_angles(ang);
  check_block(two_j);

  const cplx mu = std::polar(0.5 * ang.theta, -ang.phi);
  const BlockMatrix gen = mu * fock::schwinger_matrix(two_j, Schwinger::j_plus) -
                          std::conj(mu) * fock::schwinger_matrix(two_j, Schwinger::j_minus);

  int squarings = 0;
  double scale = 1.0;
  for (double nrm = gen.norm1(); nrm * scale > 0.5; scale *= 0.5) ++squarings;
  const BlockMatrix x = cplx{scale, 0.0} * gen;
  const double xnorm = x.norm1();

  // Taylor series with the remainder bound ||x||^{K+1}/(K+1)! / (1 - ||x||/(K+2)).
  constexpr int kMaxTerms = 40;
  constexpr double kTarget = 1e-17;
  BlockMatrix result = BlockMatrix::identity(two_j);
  BlockMatrix term = BlockMatrix::identity(two_j);
  double term_bound = 1.0;
  bool converged = false;
  for (int k = 1; k <= kMaxTerms; ++k) {
    term = cplx{1.0 / k, 0.0} * (term * x);
    result = result + term;
    term_bound *= xnorm / (k + 1);
    const double remainder = term_bound / (1.0 - xnorm / (k + 2));
    if (remainder < kTarget) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw Error(ErrorCode::ExponentialNoConvergence,
                "Taylor remainder bound not met after " + std::to_string(kMaxTerms) + " terms");
  }
  for (int i = 0; i < squarings; ++i) result = result * result;

  return result.apply(build_dicke({two_j, -two_j}));
}

cplx acs_overlap_closed(int two_j, cplx tau_prime, cplx tau) {
  if (two_j < 0) throw Error(ErrorCode::InvalidArgument, "two_j must be non-negative");
  const double j = 0.5 * two_j;
  const cplx num = ipow(1.0 + std::conj(tau_prime) * tau, two_j);
  const double den = std::pow(1.0 + std::norm(tau), j) * std::pow(1.0 + std::norm(tau_prime), j);
  return num / den;
}

EigenrelationResiduals eigenrelation_residuals(const BlockVector& state, cplx tau) {
  const double j = 0.5 * state.two_j();
  const BlockVector jp = fock::apply_schwinger(state, Schwinger::j_plus);
  const BlockVector jm = fock::apply_schwinger(state, Schwinger::j_minus);
  const BlockVector jz = fock::apply_schwinger(state, Schwinger::j_z);

  EigenrelationResiduals r;
  r.r1 = (jm + tau * tau * jp - 2.0 * j * tau * state).norm();
  r.r2 = (jm + tau * jz - j * tau * state).norm();
  r.r3 = (tau * jp - cplx{1.0, 0.0} * jz - cplx{j, 0.0} * state).norm();
  return r;
}

EigenrelationResiduals eigenrelation_residuals(const ACSLabel& lbl) {
  return eigenrelation_residuals(build_acs(lbl), lbl.tau);
}

double eigenrelation_tolerance(const ACSLabel& lbl) {
  const double t = 1.0 + std::abs(lbl.tau);
  return 1e-10 * t * t * (lbl.two_j + 1);
}

}  // namespace acs::su2
