#pragma once

#include <string>
#include <utility>
#include <vector>

#include "liplift/error.hpp"
#include "liplift/lipschitz.hpp"
#include "liplift/lp.hpp"
#include "liplift/metric_space.hpp"
#include "liplift/scalar.hpp"

namespace liplift {

// Element of the free space F(M) = Lip_0(M)* in delta coordinates: the
// functional f |-> sum coeffs[z] * f(z) over non-base points z.
template <class T>
class FreeVector {
 public:
  FreeVector(SpacePtr<T> space, std::vector<T> coeffs)
      : space_(std::move(space)), coeffs_(std::move(coeffs)) {
    if (static_cast<int>(coeffs_.size()) != space_->non_base_count()) {
      throw error(errc::dimension_mismatch,
                  "free vector has " + std::to_string(coeffs_.size()) + " coefficients for " +
                      std::to_string(space_->non_base_count()) + " non-base points");
    }
  }

  static FreeVector zero(SpacePtr<T> space) {
    std::vector<T> c(space->non_base_count(), scalar_traits<T>::zero());
    return FreeVector(std::move(space), std::move(c));
  }

  // Point evaluation delta_z (zero when z is the base point).
  static FreeVector dirac(SpacePtr<T> space, int z) {
    FreeVector mu = zero(space);
    int c = space->coord_of(z);
    if (c >= 0) mu.coeffs_[c] = scalar_traits<T>::one();
    return mu;
  }

  const SpacePtr<T>& space() const { return space_; }
  const std::vector<T>& coeffs() const { return coeffs_; }

  friend FreeVector operator+(const FreeVector& a, const FreeVector& b) {
    if (!same_space(a.space_, b.space_)) {
      throw error(errc::space_mismatch, "free vectors live on different spaces");
    }
    std::vector<T> c(a.coeffs_);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coeffs_[i];
    return FreeVector(a.space_, std::move(c));
  }

  friend FreeVector operator-(const FreeVector& a, const FreeVector& b) {
    if (!same_space(a.space_, b.space_)) {
      throw error(errc::space_mismatch, "free vectors live on different spaces");
    }
    std::vector<T> c(a.coeffs_);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.coeffs_[i];
    return FreeVector(a.space_, std::move(c));
  }

  friend FreeVector operator*(const T& s, const FreeVector& a) {
    std::vector<T> c(a.coeffs_);
    for (T& v : c) v = s * v;
    return FreeVector(a.space_, std::move(c));
  }

 private:
  SpacePtr<T> space_;
  std::vector<T> coeffs_;
};

// Normalized elementary molecule m_xy = (delta_x - delta_y) / d(x,y);
// pairing it with f gives the difference quotient (f(x)-f(y))/d(x,y).
template <class T>
FreeVector<T> molecule(const SpacePtr<T>& space, int x, int y) {
  if (x == y) throw error(errc::equal_points, "molecule requires two distinct points");
  std::vector<T> coeffs(space->non_base_count(), scalar_traits<T>::zero());
  const T inv = scalar_traits<T>::one() / space->dist(x, y);
  int cx = space->coord_of(x);
  int cy = space->coord_of(y);
  if (cx >= 0) coeffs[cx] = inv;
  if (cy >= 0) coeffs[cy] = -inv;
  return FreeVector<T>(space, std::move(coeffs));
}

template <class T>
T pairing(const FreeVector<T>& mu, const LipschitzFunction<T>& f) {
  if (!same_space(mu.space(), f.space())) {
    throw error(errc::space_mismatch, "free vector and function live on different spaces");
  }
  T acc = scalar_traits<T>::zero();
  for (std::size_t i = 0; i < mu.coeffs().size(); ++i) acc += mu.coeffs()[i] * f.values()[i];
  return acc;
}

template <class T>
struct FreeNormResult {
  T value = scalar_traits<T>::zero();
  LipschitzFunction<T> witness;  // argmax over the Lipschitz unit ball
};

// Kantorovich-Rubinstein norm: max <mu, f> over the Lipschitz unit ball
// {f : f(x)-f(y) <= d(x,y) for all pairs}, solved as an LP. The witness is
// the attaining vertex.
template <class T>
FreeNormResult<T> free_norm_witness(const FreeVector<T>& mu, const LpOptions<T>& opt = {}) {
  const SpacePtr<T>& space = mu.space();
  int k = space->non_base_count();
  if (k == 0) {
    return FreeNormResult<T>{scalar_traits<T>::zero(), LipschitzFunction<T>::zero(space)};
  }
  PairSet pairs(space->size());
  Matrix<T> g(pairs.size(), std::vector<T>(k, scalar_traits<T>::zero()));
  std::vector<T> h(pairs.size(), scalar_traits<T>::zero());
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    const Pair& p = pairs[r];
    int cx = space->coord_of(p.x);
    int cy = space->coord_of(p.y);
    if (cx >= 0) g[r][cx] = scalar_traits<T>::one();
    if (cy >= 0) g[r][cy] = -scalar_traits<T>::one();
    h[r] = space->dist(p.x, p.y);
  }
  MaxLinearResult<T> sol = max_linear(mu.coeffs(), g, h, opt);
  return FreeNormResult<T>{sol.value, LipschitzFunction<T>(space, sol.argmax)};
}

template <class T>
T free_norm(const FreeVector<T>& mu, const LpOptions<T>& opt = {}) {
  return free_norm_witness(mu, opt).value;
}

// Coefficients over the pair enumeration writing mu as sum a_xy * m_xy,
// together with the l1 cost of that writing.
template <class T>
struct MoleculeDecomposition {
  SpacePtr<T> space;
  std::vector<T> coefficients;  // indexed by PairSet rows
  T l1_value = scalar_traits<T>::zero();

  FreeVector<T> reconstruct() const {
    FreeVector<T> acc = FreeVector<T>::zero(space);
    PairSet pairs(space->size());
    for (std::size_t r = 0; r < pairs.size(); ++r) {
      if (coefficients[r] == scalar_traits<T>::zero()) continue;
      acc = acc + coefficients[r] * molecule(space, pairs[r].x, pairs[r].y);
    }
    return acc;
  }
};

// Minimum-l1 molecular representation of mu. Always feasible: the molecules
// m_z0 already span the delta coordinates. By LP duality the optimal cost
// equals free_norm(mu).
template <class T>
MoleculeDecomposition<T> optimal_representation(const FreeVector<T>& mu,
                                                const LpOptions<T>& opt = {}) {
  const SpacePtr<T>& space = mu.space();
  int k = space->non_base_count();
  PairSet pairs(space->size());
  Matrix<T> a(k, std::vector<T>(pairs.size(), scalar_traits<T>::zero()));
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    const Pair& p = pairs[r];
    const T inv = scalar_traits<T>::one() / space->dist(p.x, p.y);
    int cx = space->coord_of(p.x);
    int cy = space->coord_of(p.y);
    if (cx >= 0) a[cx][r] = inv;
    if (cy >= 0) a[cy][r] = -inv;
  }
  MinL1Result<T> sol = min_l1(a, mu.coeffs(), opt);
  return MoleculeDecomposition<T>{space, std::move(sol.coeffs), sol.value};
}

// |free_norm - optimal_representation cost|; zero in exact arithmetic.
template <class T>
T duality_gap(const FreeVector<T>& mu, const LpOptions<T>& opt = {}) {
  T primal = free_norm(mu, opt);
  T dual = optimal_representation(mu, opt).l1_value;
  return scalar_traits<T>::abs(primal - dual);
}

}  // namespace liplift
