#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "acs/error.hpp"
#include "acs/sphere.hpp"
#include "acs/su2.hpp"

using namespace acs;
using namespace acs::sphere;

namespace {

bool throws_code(ErrorCode code, auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace

TEST_CASE("default grids") {
  const auto g0 = build_grid(0);
  CHECK(std::abs(g0.total_weight() - 1.0) < 1e-14);

  // 2j + 2 theta nodes and 4j + 2 azimuths.
  const auto g1 = build_grid(1);
  CHECK(g1.theta_count() == 3);
  CHECK(g1.phi_count == 4);

  const auto g4 = build_grid(4);
  CHECK(g4.theta_count() == 6);
  CHECK(g4.phi_count == 10);

  for (int two_j = 0; two_j <= 40; ++two_j) {
    const auto g = build_grid(two_j);
    CHECK(std::abs(g.total_weight() - 1.0) < 1e-14);
    CHECK(grid_meets_bounds(g, two_j));
    for (const auto& node : g.theta_nodes) {
      CHECK(node.theta > 0.0);
      CHECK(node.theta < std::numbers::pi);
    }
  }
}

TEST_CASE("quadrature integrates cos^k exactly") {
  // \int dOmega/4pi cos^k = 1/(k+1) for even k, 0 for odd k.
  const auto g = make_grid(6, 1);
  for (int k = 0; k <= 11; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.theta_count(); ++i) {
      s += g.point_weight(i) * std::pow(std::cos(g.theta_nodes[i].theta), k);
    }
    const double exact = k % 2 == 0 ? 1.0 / (k + 1) : 0.0;
    CHECK(std::abs(s - exact) < 1e-15);
  }
}

TEST_CASE("grid exactness bounds") {
  CHECK(grid_meets_bounds(make_grid(3, 10), 4));
  CHECK_FALSE(grid_meets_bounds(make_grid(2, 10), 4));
  CHECK_FALSE(grid_meets_bounds(make_grid(3, 9), 4));
  CHECK(throws_code(ErrorCode::GridTooCoarse, [] { identity_resolution_j(4, make_grid(3, 4)); }));
  CHECK(throws_code(ErrorCode::InvalidArgument, [] { make_grid(0, 4); }));
}

TEST_CASE("resolution of identity within a block") {
  const auto r0 = identity_resolution_j(0, build_grid(0));
  CHECK(r0.max_abs_deviation < 1e-15);

  CHECK(identity_resolution_j(1, build_grid(1)).max_abs_deviation < 1e-14);
  CHECK(identity_resolution_j(8, build_grid(8)).max_abs_deviation < 1e-13);

  for (int two_j = 0; two_j <= 16; ++two_j) {
    const auto rep = identity_resolution_j(two_j, build_grid(two_j));
    CHECK(rep.max_abs_deviation < 1e-13);
    CHECK(rep.grid.theta_count == two_j + 2);
    CHECK(rep.grid.phi_count == 2 * two_j + 2);
  }
}

TEST_CASE("projector terms are rank one with unit trace") {
  const auto g = build_grid(6);
  for (std::size_t i = 0; i < g.theta_count(); ++i) {
    const auto v = su2::build_acs({6, su2::tau_from_angles({g.theta_nodes[i].theta, g.phi(1)})});
    fock::BlockMatrix proj(6);
    for (std::size_t r = 0; r < v.size(); ++r)
      for (std::size_t c = 0; c < v.size(); ++c) proj(r, c) = v[r] * std::conj(v[c]);
    CHECK(proj.is_hermitian());
    CHECK(std::abs(proj.trace() - 1.0) < 1e-12);
    // P^2 = P characterizes a rank-one projector of unit trace.
    CHECK((proj * proj).max_abs_deviation_from(proj) < 1e-12);
  }
}

TEST_CASE("coarse azimuth grid aliases the corner harmonic") {
  // With n_phi = 2j the harmonic e^{2ij phi} of the (0, 2j) entry aliases to a
  // constant; the entry becomes (2j+1) 4^{-j} <sin^{2j} theta>.  Reference
  // values from 30-digit quadrature; for odd 2j the integrand is not a
  // polynomial in cos(theta), so only even blocks are compared closely.
  const std::vector<std::pair<int, double>> aliased = {
      {2, 0.5}, {3, 0.294524}, {4, 0.166667}, {6, 0.05}, {8, 0.0142857},
      {10, 0.00396825}, {12, 0.00108225}, {13, 0.000562322}, {16, 7.77001e-5}};
  for (const auto& [two_j, expected] : aliased) {
    const auto coarse = make_grid(two_j + 2, two_j);
    CHECK(throws_code(ErrorCode::GridTooCoarse, [&] { identity_resolution_j(two_j, coarse); }));
    const auto rep = identity_resolution_j(two_j, coarse, GridCheck::skip);
    const double tol = two_j % 2 == 0 ? 1e-5 : 1e-2;
    CHECK(rep.max_abs_deviation == doctest::Approx(expected).epsilon(tol));
    if (two_j <= 12) CHECK(rep.max_abs_deviation > 1e-3);
  }
}

TEST_CASE("serial and pairwise reductions agree") {
  for (int two_j : {3, 10}) {
    const auto g = build_grid(two_j);
    const auto a = assemble_resolution(two_j, g, Reduction::serial);
    const auto b = assemble_resolution(two_j, g, Reduction::pairwise);
    CHECK(a.max_abs_deviation_from(b) < 1e-14);
    // Bit-stable across repeated runs.
    CHECK(assemble_resolution(two_j, g, Reduction::pairwise).max_abs_deviation_from(b) == 0.0);
  }
}

TEST_CASE("full-space resolution of identity") {
  const auto r0 = identity_resolution_full(0, 0);
  CHECK(r0.max_abs_deviation < 1e-15);

  const auto r4 = identity_resolution_full(4, 4);
  CHECK(r4.max_abs_deviation < 1e-13);
  CHECK(r4.max_cross_block < 1e-14);

  const auto r12 = identity_resolution_full(12, 12);
  CHECK(r12.max_abs_deviation < 1e-12);
  CHECK(r12.max_cross_block < 1e-14);
  CHECK(r12.n_max == 12);

  // Blocks above the cutoff contribute nothing to the truncated space.
  CHECK(identity_resolution_full(20, 6).max_abs_deviation < 1e-13);
  CHECK(throws_code(ErrorCode::InvalidArgument, [] { identity_resolution_full(3, 5); }));
}
