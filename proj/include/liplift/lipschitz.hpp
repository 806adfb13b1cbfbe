#pragma once

#include <string>
#include <utility>
#include <vector>

#include "liplift/error.hpp"
#include "liplift/metric_space.hpp"
#include "liplift/scalar.hpp"

namespace liplift {

// Element of Lip_0(M): values at the non-base points, the base value is
// identically zero and never stored.
template <class T>
class LipschitzFunction {
 public:
  LipschitzFunction(SpacePtr<T> space, std::vector<T> values)
      : space_(std::move(space)), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != space_->non_base_count()) {
      throw error(errc::dimension_mismatch,
                  "function has " + std::to_string(values_.size()) + " values for " +
                      std::to_string(space_->non_base_count()) + " non-base points");
    }
  }

  static LipschitzFunction zero(SpacePtr<T> space) {
    std::vector<T> v(space->non_base_count(), scalar_traits<T>::zero());
    return LipschitzFunction(std::move(space), std::move(v));
  }

  const SpacePtr<T>& space() const { return space_; }
  const std::vector<T>& values() const { return values_; }

  // Value at a point index (base included).
  T at(int point) const {
    int c = space_->coord_of(point);
    return c < 0 ? scalar_traits<T>::zero() : values_[c];
  }

 private:
  SpacePtr<T> space_;
  std::vector<T> values_;
};

template <class T>
T lip_norm(const LipschitzFunction<T>& f) {
  const auto& space = *f.space();
  T best = scalar_traits<T>::zero();
  int n = space.size();
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x == y) continue;
      T q = scalar_traits<T>::abs((f.at(x) - f.at(y)) / space.dist(x, y));
      if (q > best) best = q;
    }
  }
  return best;
}

// The difference-quotient embedding as an explicit matrix: rows follow the
// pair enumeration, row (x,y) has +1/d(x,y) in column x and -1/d(x,y) in
// column y (base columns dropped).
template <class T>
class DeLeeuwMatrix {
 public:
  explicit DeLeeuwMatrix(SpacePtr<T> space) : space_(std::move(space)), pairs_(space_->size()) {}

  const SpacePtr<T>& space() const { return space_; }
  const PairSet& pairs() const { return pairs_; }
  int rows() const { return static_cast<int>(pairs_.size()); }
  int cols() const { return space_->non_base_count(); }

  T entry(int row, int col) const {
    const Pair& p = pairs_[row];
    const T inv = scalar_traits<T>::one() / space_->dist(p.x, p.y);
    if (space_->coord_of(p.x) == col) return inv;
    if (space_->coord_of(p.y) == col) return -inv;
    return scalar_traits<T>::zero();
  }

  Matrix<T> dense() const {
    Matrix<T> m(rows(), std::vector<T>(cols(), scalar_traits<T>::zero()));
    for (int r = 0; r < rows(); ++r) {
      for (int c = 0; c < cols(); ++c) m[r][c] = entry(r, c);
    }
    return m;
  }

 private:
  SpacePtr<T> space_;
  PairSet pairs_;
};

template <class T>
DeLeeuwMatrix<T> de_leeuw_matrix(SpacePtr<T> space) {
  return DeLeeuwMatrix<T>(std::move(space));
}

// Difference quotients of f over the pair enumeration. This is the matrix
// action, evaluated as (f(x)-f(y))/d(x,y) so that taking a maximum of
// absolute values reproduces lip_norm bit for bit.
template <class T>
std::vector<T> apply_de_leeuw(const LipschitzFunction<T>& f) {
  const auto& space = *f.space();
  PairSet pairs(space.size());
  std::vector<T> out(pairs.size(), scalar_traits<T>::zero());
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    const Pair& p = pairs[r];
    out[r] = (f.at(p.x) - f.at(p.y)) / space.dist(p.x, p.y);
  }
  return out;
}

template <class T>
std::vector<T> apply_de_leeuw(const DeLeeuwMatrix<T>& m, const LipschitzFunction<T>& f) {
  if (!same_space(m.space(), f.space())) {
    throw error(errc::space_mismatch, "function and embedding live on different spaces");
  }
  return apply_de_leeuw(f);
}

// Base-preserving point map gamma between spaces; gamma(base of `from`)
// must be the base of `to`.
template <class T>
struct BasePointMap {
  SpacePtr<T> from;
  SpacePtr<T> to;
  std::vector<int> images;  // images[p] = gamma(p), point indices of `to`

  BasePointMap(SpacePtr<T> from_space, SpacePtr<T> to_space, std::vector<int> point_images)
      : from(std::move(from_space)), to(std::move(to_space)), images(std::move(point_images)) {
    if (static_cast<int>(images.size()) != from->size()) {
      throw error(errc::dimension_mismatch, "point map must cover every point");
    }
    for (int img : images) {
      if (img < 0 || img >= to->size()) {
        throw error(errc::dimension_mismatch, "point map image out of range");
      }
    }
    if (images[from->base()] != to->base()) {
      throw error(errc::base_not_preserved, "gamma must send the base point to the base point");
    }
  }
};

// f on M, gamma: N -> M  =>  p |-> r * f(gamma(p)) on N.
template <class T>
LipschitzFunction<T> composition_function_map(const BasePointMap<T>& gamma, const T& r,
                                              const LipschitzFunction<T>& f) {
  if (!same_space(gamma.to, f.space())) {
    throw error(errc::space_mismatch, "function is not defined on the map's codomain");
  }
  const auto& n_space = *gamma.from;
  std::vector<T> values(n_space.non_base_count(), scalar_traits<T>::zero());
  for (int c = 0; c < n_space.non_base_count(); ++c) {
    int p = n_space.point_of_coord(c);
    values[c] = r * f.at(gamma.images[p]);
  }
  return LipschitzFunction<T>(gamma.from, std::move(values));
}

}  // namespace liplift
