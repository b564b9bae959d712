#pragma once

// Two-mode truncated Fock space with the Schwinger realization of su(2):
//
//   J+ = a^dag b,   J- = a b^dag,   Jz = (a^dag a - b^dag b) / 2
//
// States of fixed total quanta n_a + n_b = 2j form the (2j+1)-dimensional
// j-block.  Inside a block the basis is ordered by l = n_b, so entry l of a
// BlockVector is the amplitude of |2j-l> (x) |l>.

#include <compare>
#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <vector>

namespace acs {

using cplx = std::complex<double>;

namespace fock {

inline constexpr int kDefaultCutoff = 64;
inline constexpr int kMaxTwoJ = 200;

struct ModeOccupation {
  int n_a = 0;
  int n_b = 0;

  constexpr int total() const noexcept { return n_a + n_b; }
  // Magnetic quantum number times two: 2m = n_a - n_b.
  constexpr int two_m() const noexcept { return n_a - n_b; }

  friend constexpr auto operator<=>(const ModeOccupation&, const ModeOccupation&) = default;
};

// Sparse amplitude map over occupations with n_a + n_b <= cutoff.  Values are
// immutable once built; every operation returns a fresh state.
class TwoModeState {
 public:
  using AmplitudeMap = std::map<ModeOccupation, cplx>;

  explicit TwoModeState(int cutoff = kDefaultCutoff);
  TwoModeState(AmplitudeMap amplitudes, int cutoff);

  static TwoModeState basis(int n_a, int n_b, int cutoff = kDefaultCutoff);

  int cutoff() const noexcept { return cutoff_; }
  const AmplitudeMap& amplitudes() const noexcept { return amps_; }
  cplx amplitude(ModeOccupation occ) const;
  bool empty() const noexcept { return amps_.empty(); }

  double norm2() const;
  double norm() const;
  TwoModeState normalized() const;

  TwoModeState operator+(const TwoModeState& other) const;
  TwoModeState operator-(const TwoModeState& other) const;
  friend TwoModeState operator*(cplx s, const TwoModeState& x);

 private:
  AmplitudeMap amps_;
  int cutoff_;
};

enum class Ladder { a, a_dag, b, b_dag };
enum class Schwinger { j_plus, j_minus, j_z };

// Throws CutoffOverflow when a creation operator would leave the cutoff.
TwoModeState ladder(const TwoModeState& state, Ladder which);
TwoModeState schwinger(const TwoModeState& state, Schwinger which);
cplx inner_product(const TwoModeState& bra, const TwoModeState& ket);

class BlockVector {
 public:
  explicit BlockVector(int two_j);
  BlockVector(int two_j, std::vector<cplx> amps);

  int two_j() const noexcept { return two_j_; }
  std::size_t size() const noexcept { return amps_.size(); }
  std::span<const cplx> amps() const noexcept { return amps_; }

  cplx operator[](std::size_t l) const { return amps_[l]; }
  cplx& operator[](std::size_t l) { return amps_[l]; }

  // Occupation of basis entry l.
  ModeOccupation occupation(std::size_t l) const;

  double norm() const;

  BlockVector operator+(const BlockVector& other) const;
  BlockVector operator-(const BlockVector& other) const;
  friend BlockVector operator*(cplx s, const BlockVector& v);

 private:
  int two_j_;
  std::vector<cplx> amps_;
};

cplx inner_product(const BlockVector& bra, const BlockVector& ket);

// Dense (2j+1)x(2j+1) operator on one j-block, row-major in BlockVector order.
class BlockMatrix {
 public:
  explicit BlockMatrix(int two_j);
  BlockMatrix(int two_j, std::vector<cplx> entries);

  static BlockMatrix identity(int two_j);

  int two_j() const noexcept { return two_j_; }
  std::size_t dim() const noexcept { return dim_; }
  std::span<const cplx> entries() const noexcept { return entries_; }

  cplx operator()(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }
  cplx& operator()(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }

  BlockVector apply(const BlockVector& v) const;
  BlockMatrix operator*(const BlockMatrix& rhs) const;
  BlockMatrix operator+(const BlockMatrix& rhs) const;
  BlockMatrix operator-(const BlockMatrix& rhs) const;
  friend BlockMatrix operator*(cplx s, const BlockMatrix& m);

  BlockMatrix adjoint() const;
  cplx trace() const;
  // max |M - M^dag| entrywise.
  double hermiticity_defect() const;
  bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect() < tol; }
  double max_abs_deviation_from(const BlockMatrix& other) const;
  double norm1() const;

 private:
  int two_j_;
  std::size_t dim_;
  std::vector<cplx> entries_;
};

// Matrix of J+, J- or Jz restricted to the 2j-block.
BlockMatrix schwinger_matrix(int two_j, Schwinger which);
// Direct block action of the Schwinger operators, without forming a matrix.
BlockVector apply_schwinger(const BlockVector& v, Schwinger which);

BlockVector block_extract(const TwoModeState& state, int two_j);
// Throws CutoffOverflow when cutoff < two_j.
TwoModeState block_embed(const BlockVector& v, int cutoff = kDefaultCutoff);

}  // namespace fock
}  // namespace acs
