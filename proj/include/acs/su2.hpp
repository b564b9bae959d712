#pragma once

// Dicke states and atomic (SU(2)) coherent states inside one j-block of the
// two-mode Fock space.
//
//   |tau> = (1+|tau|^2)^{-j} exp(tau J+) |j,-j>
//         = (1+|tau|^2)^{-j} sum_l sqrt(C(2j,l)) tau^{2j-l} |2j-l> (x) |l>
//
// with the sphere chart tau = exp(-i phi) tan(theta/2).

#include "acs/fock.hpp"

namespace acs::su2 {

struct ACSAngles {
  double theta = 0.0;  // [0, pi)
  double phi = 0.0;    // [0, 2 pi)
};

struct ACSLabel {
  int two_j = 0;
  cplx tau{};
};

// |j, m> with both quantum numbers stored doubled to stay integral.
struct DickeLabel {
  int two_j = 0;
  int two_m = 0;
};

// Throws PoleAtSouthPole for theta >= pi - 1e-9.
cplx tau_from_angles(ACSAngles ang);

fock::BlockVector build_dicke(DickeLabel lbl);

// Coefficients are evaluated in log-magnitude / phase form so that blocks up
// to 2j = 200 stay finite.  Throws CombinatoricsOverflow for larger blocks.
fock::BlockVector build_acs(const ACSLabel& lbl);

// Independent construction exp(mu J+ - mu* J-) |j,-j>, mu = (theta/2) e^{-i phi},
// by scaling-and-squaring of a truncated Taylor series.
fock::BlockVector build_acs_exponential_oracle(ACSAngles ang, int two_j);

// Closed-form kernel <tau'|tau> in the bra-ket convention of fock::inner_product:
//   (1 + conj(tau') tau)^{2j} / ((1+|tau|^2)^j (1+|tau'|^2)^j)
cplx acs_overlap_closed(int two_j, cplx tau_prime, cplx tau);

struct EigenrelationResiduals {
  double r1 = 0.0;  // ||(J- + tau^2 J+)|tau> - 2j tau |tau>||
  double r2 = 0.0;  // ||(J- + tau Jz)|tau>   - j tau |tau>||
  double r3 = 0.0;  // ||(tau J+ - Jz)|tau>   - j |tau>||
};

EigenrelationResiduals eigenrelation_residuals(const ACSLabel& lbl);
// Same residuals for an externally supplied state claimed to be |tau>.
EigenrelationResiduals eigenrelation_residuals(const fock::BlockVector& state, cplx tau);

// Bound each residual must respect: 1e-10 (1+|tau|)^2 (2j+1).
double eigenrelation_tolerance(const ACSLabel& lbl);

}  // namespace acs::su2
