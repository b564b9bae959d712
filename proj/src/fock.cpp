#include "acs/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "acs/error.hpp"

namespace acs::fock {

namespace {

void check_occupation(ModeOccupation occ, int cutoff) {
  if (occ.n_a < 0 || occ.n_b < 0) {
    throw Error(ErrorCode::InvalidArgument, "negative mode occupation");
  }
  if (occ.total() > cutoff) {
    throw Error(ErrorCode::CutoffOverflow,
                "occupation (" + std::to_string(occ.n_a) + "," + std::to_string(occ.n_b) +
                    ") exceeds cutoff " + std::to_string(cutoff));
  }
}

void check_two_j(int two_j) {
  if (two_j < 0) throw Error(ErrorCode::InvalidArgument, "two_j must be non-negative");
}

TwoModeState combine(const TwoModeState& x, const TwoModeState& y, double sign) {
  auto amps = x.amplitudes();
  for (const auto& [occ, amp] : y.amplitudes()) amps[occ] += sign * amp;
  return TwoModeState(std::move(amps), std::max(x.cutoff(), y.cutoff()));
}

}  // namespace

// ---------------------------------------------------------------------------
// TwoModeState

TwoModeState::TwoModeState(int cutoff) : cutoff_(cutoff) {
  if (cutoff < 0) throw Error(ErrorCode::InvalidArgument, "cutoff must be non-negative");
}

TwoModeState::TwoModeState(AmplitudeMap amplitudes, int cutoff)
    : amps_(std::move(amplitudes)), cutoff_(cutoff) {
  if (cutoff < 0) throw Error(ErrorCode::InvalidArgument, "cutoff must be non-negative");
  for (const auto& [occ, amp] : amps_) check_occupation(occ, cutoff_);
}

TwoModeState TwoModeState::basis(int n_a, int n_b, int cutoff) {
  return TwoModeState({{ModeOccupation{n_a, n_b}, cplx{1.0, 0.0}}}, cutoff);
}

cplx TwoModeState::amplitude(ModeOccupation occ) const {
  auto it = amps_.find(occ);
  return it == amps_.end() ? cplx{} : it->second;
}

double TwoModeState::norm2() const {
  double s = 0.0;
  for (const auto& [occ, amp] : amps_) s += std::norm(amp);
  return s;
}

double TwoModeState::norm() const { return std::sqrt(norm2()); }

TwoModeState TwoModeState::normalized() const {
  const double n = norm();
  if (n == 0.0) throw Error(ErrorCode::InvalidArgument, "cannot normalize the zero state");
  return cplx{1.0 / n, 0.0} * *this;
}

TwoModeState TwoModeState::operator+(const TwoModeState& other) const {
  return combine(*this, other, 1.0);
}

TwoModeState TwoModeState::operator-(const TwoModeState& other) const {
  return combine(*this, other, -1.0);
}

TwoModeState operator*(cplx s, const TwoModeState& x) {
  auto amps = x.amps_;
  for (auto& [occ, amp] : amps) amp *= s;
  return TwoModeState(std::move(amps), x.cutoff_);
}

// ---------------------------------------------------------------------------
// Operators on sparse states

TwoModeState ladder(const TwoModeState& state, Ladder which) {
  TwoModeState::AmplitudeMap out;
  for (const auto& [occ, amp] : state.amplitudes()) {
    ModeOccupation next = occ;
    double factor = 0.0;
    switch (which) {
      case Ladder::a:
        if (occ.n_a == 0) continue;
        factor = std::sqrt(static_cast<double>(occ.n_a));
        --next.n_a;
        break;
      case Ladder::b:
        if (occ.n_b == 0) continue;
        factor = std::sqrt(static_cast<double>(occ.n_b));
        --next.n_b;
        break;
      case Ladder::a_dag:
        factor = std::sqrt(static_cast<double>(occ.n_a + 1));
        ++next.n_a;
        break;
      case Ladder::b_dag:
        factor = std::sqrt(static_cast<double>(occ.n_b + 1));
        ++next.n_b;
        break;
    }
    check_occupation(next, state.cutoff());
    out[next] += factor * amp;
  }
  return TwoModeState(std::move(out), state.cutoff());
}

TwoModeState schwinger(const TwoModeState& state, Schwinger which) {
  // Composed ladder actions conserve total quanta, so the cutoff is never hit.
  TwoModeState::AmplitudeMap out;
  for (const auto& [occ, amp] : state.amplitudes()) {
    switch (which) {
      case Schwinger::j_plus:  // a^dag b
        if (occ.n_b == 0) continue;
        out[{occ.n_a + 1, occ.n_b - 1}] +=
            std::sqrt(static_cast<double>(occ.n_b) * (occ.n_a + 1)) * amp;
        break;
      case Schwinger::j_minus:  // a b^dag
        if (occ.n_a == 0) continue;
        out[{occ.n_a - 1, occ.n_b + 1}] +=
            std::sqrt(static_cast<double>(occ.n_a) * (occ.n_b + 1)) * amp;
        break;
      case Schwinger::j_z:
        if (occ.two_m() == 0) continue;
        out[occ] += 0.5 * occ.two_m() * amp;
        break;
    }
  }
  return TwoModeState(std::move(out), state.cutoff());
}

cplx inner_product(const TwoModeState& bra, const TwoModeState& ket) {
  cplx s{};
  for (const auto& [occ, amp] : bra.amplitudes()) s += std::conj(amp) * ket.amplitude(occ);
  return s;
}

// ---------------------------------------------------------------------------
// BlockVector

BlockVector::BlockVector(int two_j) : two_j_(two_j) {
  check_two_j(two_j);
  amps_.assign(static_cast<std::size_t>(two_j) + 1, cplx{});
}

BlockVector::BlockVector(int two_j, std::vector<cplx> amps)
    : two_j_(two_j), amps_(std::move(amps)) {
  check_two_j(two_j);
  if (amps_.size() != static_cast<std::size_t>(two_j) + 1) {
    throw Error(ErrorCode::InvalidArgument, "block vector length must be two_j + 1");
  }
}

ModeOccupation BlockVector::occupation(std::size_t l) const {
  return {two_j_ - static_cast<int>(l), static_cast<int>(l)};
}

double BlockVector::norm() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

BlockVector BlockVector::operator+(const BlockVector& other) const {
  if (other.two_j_ != two_j_) throw Error(ErrorCode::InvalidArgument, "block mismatch");
  BlockVector r = *this;
  for (std::size_t l = 0; l < amps_.size(); ++l) r.amps_[l] += other.amps_[l];
  return r;
}

BlockVector BlockVector::operator-(const BlockVector& other) const {
  if (other.two_j_ != two_j_) throw Error(ErrorCode::InvalidArgument, "block mismatch");
  BlockVector r = *this;
  for (std::size_t l = 0; l < amps_.size(); ++l) r.amps_[l] -= other.amps_[l];
  return r;
}

BlockVector operator*(cplx s, const BlockVector& v) {
  BlockVector r = v;
  for (auto& a : r.amps_) a *= s;
  return r;
}

cplx inner_product(const BlockVector& bra, const BlockVector& ket) {
  if (bra.two_j() != ket.two_j()) return {};
  cplx s{};
  for (std::size_t l = 0; l < bra.size(); ++l) s += std::conj(bra[l]) * ket[l];
  return s;
}

// ---------------------------------------------------------------------------
// BlockMatrix

BlockMatrix::BlockMatrix(int two_j)
    : two_j_(two_j), dim_(static_cast<std::size_t>(two_j) + 1) {
  check_two_j(two_j);
  entries_.assign(dim_ * dim_, cplx{});
}

BlockMatrix::BlockMatrix(int two_j, std::vector<cplx> entries)
    : two_j_(two_j), dim_(static_cast<std::size_t>(two_j) + 1), entries_(std::move(entries)) {
  check_two_j(two_j);
  if (entries_.size() != dim_ * dim_) {
    throw Error(ErrorCode::InvalidArgument, "block matrix must have (two_j+1)^2 entries");
  }
}

BlockMatrix BlockMatrix::identity(int two_j) {
  BlockMatrix m(two_j);
  for (std::size_t i = 0; i < m.dim_; ++i) m(i, i) = 1.0;
  return m;
}

BlockVector BlockMatrix::apply(const BlockVector& v) const {
  if (v.two_j() != two_j_) throw Error(ErrorCode::InvalidArgument, "block mismatch");
  BlockVector r(two_j_);
  for (std::size_t i = 0; i < dim_; ++i) {
    cplx s{};
    for (std::size_t k = 0; k < dim_; ++k) s += (*this)(i, k) * v[k];
    r[i] = s;
  }
  return r;
}

BlockMatrix BlockMatrix::operator*(const BlockMatrix& rhs) const {
  if (rhs.two_j_ != two_j_) throw Error(ErrorCode::InvalidArgument, "block mismatch");
  BlockMatrix r(two_j_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t k = 0; k < dim_; ++k) {
      const cplx a = (*this)(i, k);
      if (a == cplx{}) continue;
      for (std::size_t j = 0; j < dim_; ++j) r(i, j) += a * rhs(k, j);
    }
  }
  return r;
}

BlockMatrix BlockMatrix::operator+(const BlockMatrix& rhs) const {
  if (rhs.two_j_ != two_j_) throw Error(ErrorCode::InvalidArgument, "block mismatch");
  BlockMatrix r = *this;
  for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] += rhs.entries_[i];
  return r;
}

BlockMatrix BlockMatrix::operator-(const BlockMatrix& rhs) const {
  if (rhs.two_j_ != two_j_) throw Error(ErrorCode::InvalidArgument, "block mismatch");
  BlockMatrix r = *this;
  for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] -= rhs.entries_[i];
  return r;
}

BlockMatrix operator*(cplx s, const BlockMatrix& m) {
  BlockMatrix r = m;
  for (auto& e : r.entries_) e *= s;
  return r;
}

BlockMatrix BlockMatrix::adjoint() const {
  BlockMatrix r(two_j_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

cplx BlockMatrix::trace() const {
  cplx s{};
  for (std::size_t i = 0; i < dim_; ++i) s += (*this)(i, i);
  return s;
}

double BlockMatrix::hermiticity_defect() const {
  double d = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j)
      d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return d;
}

double BlockMatrix::max_abs_deviation_from(const BlockMatrix& other) const {
  if (other.two_j_ != two_j_) throw Error(ErrorCode::InvalidArgument, "block mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    d = std::max(d, std::abs(entries_[i] - other.entries_[i]));
  return d;
}

double BlockMatrix::norm1() const {
  double best = 0.0;
  for (std::size_t j = 0; j < dim_; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) col += std::abs((*this)(i, j));
    best = std::max(best, col);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Schwinger operators on blocks.  With l = n_b:
//   J+ |2j-l, l>  = sqrt((2j-l+1) l)   |2j-l+1, l-1>
//   J- |2j-l, l>  = sqrt((2j-l)(l+1))  |2j-l-1, l+1>
//   Jz |2j-l, l>  = (j - l)            |2j-l, l>

namespace {

double raise_factor(int two_j, int l) { return std::sqrt(static_cast<double>(two_j - l + 1) * l); }
double lower_factor(int two_j, int l) { return std::sqrt(static_cast<double>(two_j - l) * (l + 1)); }

}  // namespace

BlockMatrix schwinger_matrix(int two_j, Schwinger which) {
  BlockMatrix m(two_j);
  for (int l = 0; l <= two_j; ++l) {
    const auto ul = static_cast<std::size_t>(l);
    switch (which) {
      case Schwinger::j_plus:
        if (l > 0) m(ul - 1, ul) = raise_factor(two_j, l);
        break;
      case Schwinger::j_minus:
        if (l < two_j) m(ul + 1, ul) = lower_factor(two_j, l);
        break;
      case Schwinger::j_z:
        m(ul, ul) = 0.5 * (two_j - 2 * l);
        break;
    }
  }
  return m;
}

BlockVector apply_schwinger(const BlockVector& v, Schwinger which) {
  const int two_j = v.two_j();
  BlockVector r(two_j);
  for (int l = 0; l <= two_j; ++l) {
    const auto ul = static_cast<std::size_t>(l);
    switch (which) {
      case Schwinger::j_plus:
        if (l > 0) r[ul - 1] += raise_factor(two_j, l) * v[ul];
        break;
      case Schwinger::j_minus:
        if (l < two_j) r[ul + 1] += lower_factor(two_j, l) * v[ul];
        break;
      case Schwinger::j_z:
        r[ul] = 0.5 * (two_j - 2 * l) * v[ul];
        break;
    }
  }
  return r;
}

BlockVector block_extract(const TwoModeState& state, int two_j) {
  BlockVector v(two_j);
  for (const auto& [occ, amp] : state.amplitudes()) {
    if (occ.total() == two_j) v[static_cast<std::size_t>(occ.n_b)] = amp;
  }
  return v;
}

TwoModeState block_embed(const BlockVector& v, int cutoff) {
  if (cutoff < v.two_j()) {
    throw Error(ErrorCode::CutoffOverflow,
                "cutoff " + std::to_string(cutoff) + " below block 2j = " + std::to_string(v.two_j()));
  }
  TwoModeState::AmplitudeMap amps;
  for (std::size_t l = 0; l < v.size(); ++l) {
    if (v[l] != cplx{}) amps.emplace(v.occupation(l), v[l]);
  }
  return TwoModeState(std::move(amps), cutoff);
}

}  // namespace acs::fock
