#include "acs/raman.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "acs/error.hpp"
#include "acs/su2.hpp"

namespace acs::raman {

using fock::BlockMatrix;
using fock::BlockVector;

void validate(const RamanParams& p) {
  if (!(std::isfinite(p.omega1) && p.omega1 > 0.0) || !(std::isfinite(p.omega2) && p.omega2 > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "omega1 and omega2 must be finite and positive");
  }
  if (!std::isfinite(p.lambda)) throw Error(ErrorCode::InvalidArgument, "lambda must be finite");
}

BlockMatrix hamiltonian_block(const RamanParams& p, int two_j) {
  validate(p);
  BlockMatrix h(two_j);
  const cplx coupling{0.0, p.lambda};
  for (int l = 0; l <= two_j; ++l) {
    const auto ul = static_cast<std::size_t>(l);
    h(ul, ul) = p.omega1 * (two_j - l) + p.omega2 * l;
    // -i lambda a^dag b takes l -> l-1; +i lambda a b^dag takes l -> l+1.
    if (l > 0) h(ul - 1, ul) = -coupling * std::sqrt(static_cast<double>(two_j - l + 1) * l);
    if (l < two_j) h(ul + 1, ul) = coupling * std::sqrt(static_cast<double>(two_j - l) * (l + 1));
  }
  return h;
}

TauPair tau_pm(const RamanParams& p) {
  validate(p);
  if (p.lambda == 0.0) {
    throw Error(ErrorCode::ZeroCoupling, "tau is undefined for lambda = 0 (H is already diagonal)");
  }
  // tau = i t with t real.  The root without cancellation is evaluated
  // directly; the other follows from tau_+ tau_- = 1, i.e. t_+ t_- = -1.
  const double delta = p.omega1 - p.omega2;
  const double disc = std::hypot(delta, 2.0 * p.lambda);
  double t_plus = 0.0;
  double t_minus = 0.0;
  if (delta >= 0.0) {
    t_plus = -(delta + disc) / (2.0 * p.lambda);
    t_minus = -1.0 / t_plus;
  } else {
    t_minus = -(delta - disc) / (2.0 * p.lambda);
    t_plus = -1.0 / t_minus;
  }
  return {cplx{0.0, t_plus}, cplx{0.0, t_minus}};
}

cplx tau_for(const RamanParams& p, Branch b) {
  const TauPair t = tau_pm(p);
  return b == Branch::plus ? t.plus : t.minus;
}

NormalModes normal_modes(const RamanParams& p) {
  validate(p);
  const double sum = p.omega1 + p.omega2;
  const double disc = std::hypot(p.omega1 - p.omega2, 2.0 * p.lambda);
  const double a = 0.5 * (sum + disc);
  // A B = w1 w2 - lambda^2; dividing avoids cancellation in (sum - disc).
  const double b = (p.omega1 * p.omega2 - p.lambda * p.lambda) / a;
  return {a, b};
}

double energy(const RamanParams& p, int two_j, Branch b) {
  if (two_j < 0) throw Error(ErrorCode::InvalidArgument, "two_j must be non-negative");
  const NormalModes m = normal_modes(p);
  return two_j * (b == Branch::plus ? m.A : m.B);
}

double eigen_residual(const RamanParams& p, const BlockVector& state, Branch b) {
  const BlockMatrix h = hamiltonian_block(p, state.two_j());
  const double e = energy(p, state.two_j(), b);
  return (h.apply(state) - cplx{e, 0.0} * state).norm();
}

double eigen_residual(const RamanParams& p, int two_j, Branch b) {
  const cplx tau = tau_for(p, b);
  return eigen_residual(p, su2::build_acs({two_j, tau}), b);
}

double eigen_residual_tolerance(const RamanParams& p, int two_j) {
  return 1e-10 * (two_j + 1) * std::max({p.omega1, p.omega2, std::abs(p.lambda)});
}

std::vector<double> spectrum_closed(const RamanParams& p, int two_j) {
  if (two_j < 0) throw Error(ErrorCode::InvalidArgument, "two_j must be non-negative");
  const NormalModes m = normal_modes(p);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(two_j) + 1);
  for (int n = 0; n <= two_j; ++n) out.push_back(m.A * n + m.B * (two_j - n));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> block_spectrum_oracle(const RamanParams& p, int two_j) {
  return jacobi_eigenvalues(hamiltonian_block(p, two_j)).eigenvalues;
}

// ---------------------------------------------------------------------------

namespace {

double off_diagonal_norm(const std::vector<cplx>& a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s += std::norm(a[i * n + j]);
  return std::sqrt(s);
}

}  // namespace

JacobiResult jacobi_eigenvalues(const BlockMatrix& m, const JacobiOptions& opts) {
  if (!m.is_hermitian(1e-12 * std::max(1.0, m.norm1()))) {
    throw Error(ErrorCode::InvalidArgument, "Jacobi eigensolver requires a Hermitian matrix");
  }
  const std::size_t n = m.dim();
  std::vector<cplx> a(m.entries().begin(), m.entries().end());
  for (std::size_t i = 0; i < n; ++i) a[i * n + i] = a[i * n + i].real();

  double frob = 0.0;
  for (const auto& x : a) frob += std::norm(x);
  const double threshold = opts.tol * std::max(1.0, std::sqrt(frob));

  auto at = [&](std::size_t i, std::size_t j) -> cplx& { return a[i * n + j]; };

  JacobiResult res;
  res.off_norm = off_diagonal_norm(a, n);
  while (res.off_norm >= threshold) {
    if (res.sweeps == opts.max_sweeps) {
      throw Error(ErrorCode::NoConvergence,
                  "Jacobi did not converge in " + std::to_string(opts.max_sweeps) +
                      " sweeps (off-diagonal norm " + std::to_string(res.off_norm) + ")");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double g = std::abs(at(p, q));
        if (g == 0.0) continue;
        const cplx phase = at(p, q) / g;
        const double app = at(p, p).real();
        const double aqq = at(q, q).real();

        // Rotation J = diag(1, conj(phase)) * [[c, s], [-s, c]] makes the
        // (p, q) element real first, then annihilates it.
        const double theta = (aqq - app) / (2.0 * g);
        double t = 0.0;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx jpp = c;
        const cplx jpq = s;
        const cplx jqp = -s * std::conj(phase);
        const cplx jqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = at(k, p);
          const cplx akq = at(k, q);
          at(k, p) = akp * jpp + akq * jqp;
          at(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = at(p, k);
          const cplx aqk = at(q, k);
          at(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          at(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        at(p, q) = 0.0;
        at(q, p) = 0.0;
        at(p, p) = app - t * g;
        at(q, q) = aqq + t * g;
      }
    }
    ++res.sweeps;
    res.off_norm = off_diagonal_norm(a, n);
  }

  res.eigenvalues.reserve(n);
  for (std::size_t i = 0; i < n; ++i) res.eigenvalues.push_back(a[i * n + i].real());
  std::sort(res.eigenvalues.begin(), res.eigenvalues.end());
  return res;
}

}  // namespace acs::raman
