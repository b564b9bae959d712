#pragma once

// Resolution of the identity by atomic coherent states, checked by exact
// quadrature on the sphere.  Within the 2j-block
//
//   (2j+1) \int dOmega/(4 pi) |tau><tau| = 1_j ,
//
// and summing the blocks gives the identity on the whole two-mode space.
// Projector entries are polynomials of degree <= 2j in cos(theta) times
// harmonics e^{ik phi} with |k| <= 2j, so Gauss-Legendre in cos(theta) and
// the trapezoid rule in phi integrate them exactly.

#include <vector>

#include "acs/fock.hpp"

namespace acs::sphere {

struct ThetaNode {
  double theta = 0.0;
  double weight = 0.0;  // normalized: the theta weights sum to 1
};

struct SphereGrid {
  std::vector<ThetaNode> theta_nodes;
  int phi_count = 1;

  std::size_t theta_count() const noexcept { return theta_nodes.size(); }
  double phi(int k) const;
  // Weight of one (theta_i, phi_k) point in dOmega/(4 pi).
  double point_weight(std::size_t i) const { return theta_nodes[i].weight / phi_count; }
  double total_weight() const;
};

struct GridSummary {
  int theta_count = 0;
  int phi_count = 0;
};

struct ResolutionReport {
  int two_j = 0;  // block, or the largest block summed for the full space
  int n_max = -1;  // cutoff of the full-space check; -1 for a single block
  double max_abs_deviation = 0.0;
  double max_cross_block = 0.0;  // full-space check only
  GridSummary grid;
};

// Gauss-Legendre grid with theta_count nodes in u = cos(theta) and phi_count
// uniform azimuths.
SphereGrid make_grid(int theta_count, int phi_count);

// Default grid: 2j+2 theta nodes, 4j+2 azimuths.
SphereGrid build_grid(int two_j);

// Exactness bounds: theta nodes >= j+1 and phi_count >= 4j+2.
bool grid_meets_bounds(const SphereGrid& grid, int two_j);

enum class GridCheck { enforce, skip };

enum class Reduction {
  pairwise,  // per-node partials computed concurrently, pairwise tree sum
  serial,    // single left-to-right accumulation
};

// Serial when ACS_DETERMINISTIC_REDUCTION=1, pairwise otherwise.
Reduction default_reduction();

// (2j+1) sum_grid w |tau><tau| as a block matrix.
fock::BlockMatrix assemble_resolution(int two_j, const SphereGrid& grid,
                                      Reduction mode = default_reduction());

// Throws GridTooCoarse when the grid misses the bounds, unless the check is
// skipped (used for negative controls).
ResolutionReport identity_resolution_j(int two_j, const SphereGrid& grid,
                                       GridCheck check = GridCheck::enforce);

// Sum over blocks 2j = 0..max_two_j restricted to total quanta <= n_max,
// compared against the identity on that truncated space.
ResolutionReport identity_resolution_full(int max_two_j, int n_max);

}  // namespace acs::sphere
