#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "liplift/free_space.hpp"
#include "liplift/lipschitz.hpp"
#include "liplift/metric_space.hpp"
#include "liplift/scalar.hpp"

namespace liplift {

// splitmix64. Deterministic across platforms, unlike the standard library
// distributions, so frozen test values stay valid everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform integer in [lo, hi], inclusive
  long long next_int(long long lo, long long hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long long>(next_u64() % span);
  }

  Rng fork() { return Rng(next_u64()); }

 private:
  std::uint64_t state_;
};

// Scalars are drawn from a dyadic grid so float and rational runs see the
// same values exactly.
template <class T>
T random_scalar(Rng& rng, long long lo_num, long long hi_num, long long den) {
  return scalar_traits<T>::from_ratio(rng.next_int(lo_num, hi_num), den);
}

// Distances on the grid {1, 17/16, ..., 2} scaled by a power of two. Any
// matrix with off-diagonal entries in [s, 2s] satisfies the triangle
// inequality outright, so validation never rejects these.
template <class T>
SpacePtr<T> random_space(Rng& rng, int n, const std::string& prefix = "p") {
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = prefix + std::to_string(i);
  int scale_exp = static_cast<int>(rng.next_int(-2, 2));
  Matrix<T> dist(n, std::vector<T>(n, scalar_traits<T>::zero()));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      long long num = 16 + rng.next_int(0, 16);
      T d = scalar_traits<T>::from_ratio(num, 16);
      T s = scale_exp >= 0 ? scalar_traits<T>::from_int(1LL << scale_exp)
                           : scalar_traits<T>::from_ratio(1, 1LL << (-scale_exp));
      d = d * s;
      dist[i][j] = d;
      dist[j][i] = d;
    }
  }
  int base = static_cast<int>(rng.next_int(0, n - 1));
  return new_space<T>(std::move(labels), std::move(dist), base);
}

template <class T>
LipschitzFunction<T> random_function(Rng& rng, const SpacePtr<T>& space) {
  std::vector<T> values(space->non_base_count(), scalar_traits<T>::zero());
  for (T& v : values) v = random_scalar<T>(rng, -32, 32, 16);
  return LipschitzFunction<T>(space, std::move(values));
}

// Random function scaled into the Lipschitz unit ball.
template <class T>
LipschitzFunction<T> random_unit_ball_function(Rng& rng, const SpacePtr<T>& space) {
  LipschitzFunction<T> f = random_function(rng, space);
  T norm = lip_norm(f);
  if (norm <= scalar_traits<T>::one()) return f;
  std::vector<T> values = f.values();
  for (T& v : values) v = v / norm;
  return LipschitzFunction<T>(space, std::move(values));
}

template <class T>
FreeVector<T> random_free_vector(Rng& rng, const SpacePtr<T>& space) {
  std::vector<T> coeffs(space->non_base_count(), scalar_traits<T>::zero());
  for (T& v : coeffs) v = random_scalar<T>(rng, -32, 32, 16);
  return FreeVector<T>(space, std::move(coeffs));
}

// Permutation of point indices fixing `fixed` (pass -1 for an unrestricted
// permutation). Fisher-Yates over the remaining slots.
inline std::vector<int> random_permutation(Rng& rng, int n, int fixed) {
  std::vector<int> free_idx;
  for (int i = 0; i < n; ++i) {
    if (i != fixed) free_idx.push_back(i);
  }
  for (std::size_t i = free_idx.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.next_int(0, static_cast<long long>(i) - 1));
    std::swap(free_idx[i - 1], free_idx[j]);
  }
  std::vector<int> perm(n);
  std::size_t k = 0;
  for (int i = 0; i < n; ++i) perm[i] = i == fixed ? i : free_idx[k++];
  return perm;
}

}  // namespace liplift
