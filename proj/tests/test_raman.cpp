#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "acs/error.hpp"
#include "acs/raman.hpp"
#include "acs/su2.hpp"
#include "support.hpp"

using namespace acs;
using namespace acs::raman;
using acs::fock::BlockMatrix;
using acs::fock::BlockVector;
using acs::testing::Gen;

namespace {

const cplx I{0.0, 1.0};
const double kSqrt5 = std::sqrt(5.0);

bool throws_code(ErrorCode code, auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace

TEST_CASE("hamiltonian blocks") {
  const RamanParams p{1.3, 0.7, 0.4};
  const auto h0 = hamiltonian_block(p, 0);
  CHECK(h0.dim() == 1);
  CHECK(h0(0, 0) == cplx{});

  const auto h1 = hamiltonian_block(p, 1);
  CHECK(h1(0, 0) == cplx{1.3, 0.0});
  CHECK(h1(1, 1) == cplx{0.7, 0.0});
  CHECK(std::abs(h1(0, 1) - (-0.4 * I)) < 1e-16);
  CHECK(std::abs(h1(1, 0) - 0.4 * I) < 1e-16);

  const auto h2 = hamiltonian_block({1.0, 1.0, 0.0}, 2);
  CHECK(h2.max_abs_deviation_from(cplx{2.0, 0.0} * BlockMatrix::identity(2)) == 0.0);

  Gen gen(41);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rp = gen.raman();
    const int two_j = gen.integer(0, 30);
    const auto h = hamiltonian_block(rp, two_j);
    CHECK(h.is_hermitian());
    double trace = 0.0;
    for (int l = 0; l <= two_j; ++l) trace += rp.omega1 * (two_j - l) + rp.omega2 * l;
    CHECK(std::abs(h.trace() - trace) < 1e-12 * std::max(1.0, trace));
  }
}

TEST_CASE("H matches the operator definition on two-mode states") {
  // H = w1 a^dag a + w2 b^dag b - i lambda (a^dag b - a b^dag), built from ladders.
  using fock::Ladder;
  const RamanParams p{1.7, 0.6, -0.9};
  Gen gen(43);
  for (int two_j = 0; two_j <= 8; ++two_j) {
    const auto v = gen.block_vector(two_j);
    const auto x = fock::block_embed(v, 12);
    auto L = [](const fock::TwoModeState& s, Ladder w) { return fock::ladder(s, w); };
    const auto hx = cplx{p.omega1, 0.0} * L(L(x, Ladder::a), Ladder::a_dag) +
                    cplx{p.omega2, 0.0} * L(L(x, Ladder::b), Ladder::b_dag) -
                    cplx{0.0, p.lambda} * (L(L(x, Ladder::b), Ladder::a_dag) - L(L(x, Ladder::b_dag), Ladder::a));
    // Result stays in the block.
    for (const auto& [occ, amp] : hx.amplitudes()) CHECK(occ.total() == two_j);
    const auto dense = hamiltonian_block(p, two_j).apply(v);
    CHECK(acs::testing::max_abs_diff(fock::block_extract(hx, two_j), dense) < 1e-13);
  }
}

TEST_CASE("tau roots") {
  const auto eq = tau_pm({1.0, 1.0, 0.7});
  CHECK(std::abs(eq.plus + I) < 1e-15);
  CHECK(std::abs(eq.minus - I) < 1e-15);

  const auto t = tau_pm({2.0, 1.0, 1.0});
  CHECK(std::abs(t.plus - (-I * (1.0 + kSqrt5) / 2.0)) < 1e-15);
  CHECK(std::abs(t.minus - I * (kSqrt5 - 1.0) / 2.0) < 1e-15);

  CHECK(throws_code(ErrorCode::ZeroCoupling, [] { tau_pm({2.0, 1.0, 0.0}); }));

  Gen gen(47);
  for (int trial = 0; trial < 200; ++trial) {
    auto rp = gen.raman();
    if (trial % 3 == 0) rp.lambda *= 1e-6;  // near-decoupled, cancellation-prone
    const auto r = tau_pm(rp);
    CHECK(r.plus.real() == 0.0);
    CHECK(r.minus.real() == 0.0);
    CHECK(std::abs(r.plus * r.minus - 1.0) < 1e-12);
    for (cplx tau : {r.plus, r.minus}) {
      const cplx poly = I * rp.lambda * tau * tau + tau * (rp.omega2 - rp.omega1) + I * rp.lambda;
      const double scale = std::abs(rp.lambda) * (std::norm(tau) + 1.0) + std::abs(rp.omega2 - rp.omega1) * std::abs(tau);
      CHECK(std::abs(poly) < 1e-14 * scale);
    }
  }
}

TEST_CASE("energies and normal modes") {
  CHECK(energy({1.0, 1.0, 0.5}, 1, Branch::plus) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(energy({1.0, 1.0, 0.5}, 1, Branch::minus) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(energy({2.0, 1.0, 1.0}, 2, Branch::plus) - (3.0 + kSqrt5)) < 1e-14);
  CHECK(energy({2.0, 1.0, 1.0}, 0, Branch::plus) == 0.0);
  CHECK(energy({2.0, 1.0, 1.0}, 0, Branch::minus) == 0.0);

  const auto m = normal_modes({1.0, 1.0, 0.5});
  CHECK(std::abs(m.A - 1.5) < 1e-15);
  CHECK(std::abs(m.B - 0.5) < 1e-15);

  const auto dec = normal_modes({0.8, 2.5, 0.0});
  CHECK(std::abs(dec.A - 2.5) < 1e-15);
  CHECK(std::abs(dec.B - 0.8) < 1e-15);

  const auto m2 = normal_modes({2.0, 1.0, 1.0});
  CHECK(std::abs(m2.A - (3.0 + kSqrt5) / 2.0) < 1e-15);
  CHECK(std::abs(m2.B - (3.0 - kSqrt5) / 2.0) < 1e-15);

  Gen gen(53);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rp = gen.raman();
    const auto nm = normal_modes(rp);
    CHECK(nm.A >= nm.B);
    CHECK(std::abs(nm.A + nm.B - (rp.omega1 + rp.omega2)) < 1e-12);
    CHECK(std::abs(nm.A * nm.B - (rp.omega1 * rp.omega2 - rp.lambda * rp.lambda)) <
          1e-10 * std::max(1.0, rp.omega1 * rp.omega2));
  }
}

TEST_CASE("coherent states are eigenstates of each block") {
  CHECK(eigen_residual({1.0, 1.0, 0.5}, 1, Branch::plus) < 1e-13);
  CHECK(eigen_residual({2.0, 1.0, 1.0}, 4, Branch::minus) < 1e-12);
  CHECK(eigen_residual({2.0, 1.0, 1.0}, 0, Branch::plus) == 0.0);
  CHECK(throws_code(ErrorCode::ZeroCoupling, [] { eigen_residual({2.0, 1.0, 0.0}, 3, Branch::plus); }));

  // H|i_+>_{1/2} = (w + lambda)/sqrt(2) (-i|1,0> + |0,1>)
  const double w = 1.3;
  const double lam = 0.4;
  const double h = 1.0 / std::sqrt(2.0);
  const BlockVector ket(1, {-I * h, cplx{h, 0.0}});
  const auto applied = hamiltonian_block({w, w, lam}, 1).apply(ket);
  CHECK(acs::testing::max_abs_diff(applied, cplx{w + lam, 0.0} * ket) < 1e-15);

  Gen gen(59);
  for (int trial = 0; trial < 50; ++trial) {
    const auto rp = gen.raman();
    const int two_j = gen.integer(0, 40);
    for (auto b : {Branch::plus, Branch::minus}) {
      CHECK(eigen_residual(rp, two_j, b) < eigen_residual_tolerance(rp, two_j));
    }
  }
}

TEST_CASE("branch states are orthogonal") {
  Gen gen(61);
  for (int trial = 0; trial < 50; ++trial) {
    const auto rp = gen.raman();
    const int two_j = gen.integer(1, 30);
    const auto t = tau_pm(rp);
    const cplx ov = fock::inner_product(su2::build_acs({two_j, t.plus}), su2::build_acs({two_j, t.minus}));
    CHECK(std::abs(ov) < 1e-12);
  }
}

TEST_CASE("closed-form block spectrum") {
  const auto s1 = spectrum_closed({2.0, 1.0, 1.0}, 1);
  const auto m = normal_modes({2.0, 1.0, 1.0});
  REQUIRE(s1.size() == 2);
  CHECK(s1[0] == m.B);
  CHECK(s1[1] == m.A);

  const auto s2 = spectrum_closed({1.0, 1.0, 0.5}, 2);
  REQUIRE(s2.size() == 3);
  CHECK(std::abs(s2[0] - 1.0) < 1e-15);
  CHECK(std::abs(s2[1] - 2.0) < 1e-15);
  CHECK(std::abs(s2[2] - 3.0) < 1e-15);

  for (double e : spectrum_closed({0.9, 0.9, 0.0}, 5)) CHECK(std::abs(e - 4.5) < 1e-14);

  const RamanParams p{2.2, 0.7, 0.3};
  const auto s = spectrum_closed(p, 6);
  CHECK(std::abs(s.front() - energy(p, 6, Branch::minus)) < 1e-14);
  CHECK(std::abs(s.back() - energy(p, 6, Branch::plus)) < 1e-14);
}

TEST_CASE("Jacobi oracle spectrum") {
  const auto s1 = block_spectrum_oracle({1.0, 1.0, 0.5}, 1);
  REQUIRE(s1.size() == 2);
  CHECK(std::abs(s1[0] - 0.5) < 1e-14);
  CHECK(std::abs(s1[1] - 1.5) < 1e-14);

  CHECK(block_spectrum_oracle({3.0, 1.0, 0.2}, 0) == std::vector<double>{0.0});

  // Values from a 40-digit reference diagonalization: {2B, A+B, 2A}.
  const auto s2 = block_spectrum_oracle({2.0, 1.0, 1.0}, 2);
  REQUIRE(s2.size() == 3);
  CHECK(std::abs(s2[0] - 0.7639320225002103) < 1e-13);
  CHECK(std::abs(s2[1] - 3.0) < 1e-13);
  CHECK(std::abs(s2[2] - 5.2360679774997897) < 1e-13);

  Gen gen(67);
  for (int trial = 0; trial < 40; ++trial) {
    const auto rp = gen.raman();
    const int two_j = gen.integer(0, 20);
    const auto closed = spectrum_closed(rp, two_j);
    const auto oracle = block_spectrum_oracle(rp, two_j);
    REQUIRE(closed.size() == oracle.size());
    for (std::size_t n = 0; n < closed.size(); ++n) CHECK(std::abs(closed[n] - oracle[n]) < 1e-9);
  }
}

TEST_CASE("Jacobi eigenvalues of random Hermitian matrices match Eigen") {
  Gen gen(71);
  for (int trial = 0; trial < 25; ++trial) {
    const int two_j = gen.integer(0, 30);
    const std::size_t n = static_cast<std::size_t>(two_j) + 1;
    BlockMatrix m(two_j);
    Eigen::MatrixXcd e(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      m(i, i) = gen.uniform(-5.0, 5.0);
      for (std::size_t j = i + 1; j < n; ++j) {
        m(i, j) = {gen.uniform(-2.0, 2.0), gen.uniform(-2.0, 2.0)};
        m(j, i) = std::conj(m(i, j));
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(e, Eigen::EigenvaluesOnly);
    const auto res = jacobi_eigenvalues(m);
    CHECK(res.sweeps <= 100);
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(std::abs(res.eigenvalues[k] - ref.eigenvalues()(static_cast<Eigen::Index>(k))) < 1e-11);
    }
  }
}

TEST_CASE("Jacobi reports non-convergence and rejects non-Hermitian input") {
  BlockMatrix m(3);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = i == j ? cplx{1.0 * i, 0.0} : cplx{0.3, 0.0};
  CHECK(throws_code(ErrorCode::NoConvergence, [&] { jacobi_eigenvalues(m, {1e-12, 0}); }));
  CHECK_NOTHROW(jacobi_eigenvalues(m));

  m(0, 1) = cplx{0.0, 1.0};
  CHECK(throws_code(ErrorCode::InvalidArgument, [&] { jacobi_eigenvalues(m); }));
}
