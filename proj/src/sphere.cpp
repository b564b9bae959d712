#include "acs/sphere.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <numbers>
#include <string>
#include <string_view>
#include <thread>

#include "acs/error.hpp"
#include "acs/su2.hpp"

namespace acs::sphere {

using fock::BlockMatrix;
using fock::BlockVector;

double SphereGrid::phi(int k) const { return 2.0 * std::numbers::pi * k / phi_count; }

double SphereGrid::total_weight() const {
  double s = 0.0;
  for (std::size_t i = 0; i < theta_nodes.size(); ++i) s += point_weight(i) * phi_count;
  return s;
}

SphereGrid make_grid(int theta_count, int phi_count) {
  if (theta_count < 1 || phi_count < 1) {
    throw Error(ErrorCode::InvalidArgument, "grid needs at least one theta node and one azimuth");
  }
  // Nodes are the zeros of P_n in u = cos(theta); Boost returns the
  // non-negative half.  Weights 2 / ((1 - u^2) P_n'(u)^2).
  SphereGrid grid;
  grid.phi_count = phi_count;
  grid.theta_nodes.reserve(static_cast<std::size_t>(theta_count));
  const auto add_node = [&](double u) {
    const double dp = boost::math::legendre_p_prime(theta_count, u);
    const double w = 2.0 / ((1.0 - u * u) * dp * dp);
    // dOmega/(4 pi) = du dphi / (4 pi): half the u-weight, phi handled by point_weight.
    grid.theta_nodes.push_back({std::acos(u), 0.5 * w});
  };
  for (double u : boost::math::legendre_p_zeros<double>(theta_count)) {
    add_node(u);
    if (u != 0.0) add_node(-u);
  }
  std::sort(grid.theta_nodes.begin(), grid.theta_nodes.end(),
            [](const ThetaNode& x, const ThetaNode& y) { return x.theta < y.theta; });
  return grid;
}

SphereGrid build_grid(int two_j) {
  if (two_j < 0) throw Error(ErrorCode::InvalidArgument, "two_j must be non-negative");
  return make_grid(two_j + 2, 2 * two_j + 2);
}

bool grid_meets_bounds(const SphereGrid& grid, int two_j) {
  return 2 * static_cast<int>(grid.theta_count()) >= two_j + 2 && grid.phi_count >= 2 * two_j + 2;
}

Reduction default_reduction() {
  const char* env = std::getenv("ACS_DETERMINISTIC_REDUCTION");
  return env != nullptr && std::string_view(env) == "1" ? Reduction::serial : Reduction::pairwise;
}

namespace {

void add_projector(BlockMatrix& acc, const BlockVector& v, double weight) {
  const std::size_t n = v.size();
  for (std::size_t r = 0; r < n; ++r) {
    const cplx vr = weight * v[r];
    for (std::size_t c = 0; c < n; ++c) acc(r, c) += vr * std::conj(v[c]);
  }
}

BlockMatrix theta_partial(int two_j, const SphereGrid& grid, std::size_t i) {
  BlockMatrix partial(two_j);
  const double w = grid.point_weight(i);
  for (int k = 0; k < grid.phi_count; ++k) {
    const cplx tau = su2::tau_from_angles({grid.theta_nodes[i].theta, grid.phi(k)});
    add_projector(partial, su2::build_acs({two_j, tau}), w);
  }
  return partial;
}

BlockMatrix pairwise_sum(std::vector<BlockMatrix>& parts, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return parts[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(parts, lo, mid) + pairwise_sum(parts, mid, hi);
}

}  // namespace

BlockMatrix assemble_resolution(int two_j, const SphereGrid& grid, Reduction mode) {
  const std::size_t nodes = grid.theta_count();
  BlockMatrix sum(two_j);
  if (mode == Reduction::serial) {
    for (std::size_t i = 0; i < nodes; ++i) {
      const double w = grid.point_weight(i);
      for (int k = 0; k < grid.phi_count; ++k) {
        const cplx tau = su2::tau_from_angles({grid.theta_nodes[i].theta, grid.phi(k)});
        add_projector(sum, su2::build_acs({two_j, tau}), w);
      }
    }
  } else {
    std::vector<BlockMatrix> parts(nodes, BlockMatrix(two_j));
    const std::size_t workers =
        std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(nodes, 1));
    std::vector<std::future<void>> jobs;
    jobs.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t i = w; i < nodes; i += workers) parts[i] = theta_partial(two_j, grid, i);
      }));
    }
    for (auto& job : jobs) job.get();
    sum = pairwise_sum(parts, 0, nodes);
  }
  return cplx{static_cast<double>(two_j + 1), 0.0} * sum;
}

ResolutionReport identity_resolution_j(int two_j, const SphereGrid& grid, GridCheck check) {
  if (two_j < 0) throw Error(ErrorCode::InvalidArgument, "two_j must be non-negative");
  if (check == GridCheck::enforce && !grid_meets_bounds(grid, two_j)) {
    throw Error(ErrorCode::GridTooCoarse,
                "grid (" + std::to_string(grid.theta_count()) + " theta, " +
                    std::to_string(grid.phi_count) + " phi) is too coarse for 2j = " +
                    std::to_string(two_j));
  }
  const BlockMatrix m = assemble_resolution(two_j, grid);
  ResolutionReport rep;
  rep.two_j = two_j;
  rep.max_abs_deviation = m.max_abs_deviation_from(BlockMatrix::identity(two_j));
  rep.grid = {static_cast<int>(grid.theta_count()), grid.phi_count};
  return rep;
}

ResolutionReport identity_resolution_full(int max_two_j, int n_max) {
  if (n_max < 0 || n_max > max_two_j) {
    throw Error(ErrorCode::InvalidArgument, "need 0 <= n_max <= max_two_j");
  }
  if (max_two_j > fock::kMaxTwoJ) {
    throw Error(ErrorCode::CombinatoricsOverflow, "max_two_j exceeds the supported maximum");
  }

  // Dense operator on all occupations with n_a + n_b <= n_max, ordered by
  // block then l.  Blocks above n_max have no support on this space.
  const auto offset = [](int two_j) { return static_cast<std::size_t>(two_j) * (two_j + 1) / 2; };
  const std::size_t dim = offset(n_max + 1);
  std::vector<cplx> acc(dim * dim, cplx{});
  std::vector<int> block_of(dim);
  for (int tj = 0; tj <= n_max; ++tj)
    for (int l = 0; l <= tj; ++l) block_of[offset(tj) + static_cast<std::size_t>(l)] = tj;

  SphereGrid largest;
  std::vector<cplx> full(dim);
  for (int tj = 0; tj <= n_max; ++tj) {
    const SphereGrid grid = build_grid(tj);
    const double degeneracy = tj + 1;
    for (std::size_t i = 0; i < grid.theta_count(); ++i) {
      const double w = degeneracy * grid.point_weight(i);
      for (int k = 0; k < grid.phi_count; ++k) {
        const cplx tau = su2::tau_from_angles({grid.theta_nodes[i].theta, grid.phi(k)});
        const BlockVector v = su2::build_acs({tj, tau});
        std::fill(full.begin(), full.end(), cplx{});
        for (std::size_t l = 0; l < v.size(); ++l) full[offset(tj) + l] = v[l];
        for (std::size_t r = 0; r < dim; ++r) {
          const cplx fr = w * full[r];
          for (std::size_t c = 0; c < dim; ++c) acc[r * dim + c] += fr * std::conj(full[c]);
        }
      }
    }
    if (tj == n_max) largest = grid;
  }

  ResolutionReport rep;
  rep.two_j = max_two_j;
  rep.n_max = n_max;
  rep.grid = {static_cast<int>(largest.theta_count()), largest.phi_count};
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      const cplx target = r == c ? cplx{1.0, 0.0} : cplx{};
      const double dev = std::abs(acc[r * dim + c] - target);
      rep.max_abs_deviation = std::max(rep.max_abs_deviation, dev);
      if (block_of[r] != block_of[c]) rep.max_cross_block = std::max(rep.max_cross_block, dev);
    }
  }
  return rep;
}

}  // namespace acs::sphere
