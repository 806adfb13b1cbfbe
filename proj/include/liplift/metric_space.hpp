#pragma once

#include <cstdlib>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "liplift/error.hpp"
#include "liplift/scalar.hpp"

namespace liplift {

template <class T>
using Matrix = std::vector<std::vector<T>>;

// Ultrametric cube coordinates are 1-based, so the largest distance between
// distinct words is 2^-1. Exposed as a constant because the convention is a
// deliberate choice, not an accident of the generator.
inline constexpr int ultrametric_first_coordinate = 1;

inline int point_cap_from_env() {
  const char* env = std::getenv("LIPLIFT_POINT_CAP");
  if (env == nullptr || *env == '\0') return 512;
  long v = std::strtol(env, nullptr, 10);
  return v > 0 ? static_cast<int>(v) : 512;
}

inline bool valid_label(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '_' || c == '-' || c == '.' || c == '+';
    if (!ok) return false;
  }
  return true;
}

// A finite metric space with labeled points and a distinguished base point.
// Construction validates every metric axiom by exhaustive enumeration and
// never yields an invalid instance.
template <class T>
class PointedMetricSpace {
 public:
  PointedMetricSpace(std::vector<std::string> labels, Matrix<T> dist, int base_index)
      : labels_(std::move(labels)), dist_(std::move(dist)), base_(base_index) {
    validate();
  }

  int size() const { return static_cast<int>(labels_.size()); }
  int base() const { return base_; }
  const std::string& label(int i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const T& dist(int i, int j) const { return dist_[i][j]; }
  const Matrix<T>& dist_matrix() const { return dist_; }

  int non_base_count() const { return size() - 1; }

  // Column coordinate of a non-base point (base maps to -1). Coordinates
  // enumerate non-base points in increasing index order.
  int coord_of(int point) const {
    if (point == base_) return -1;
    return point < base_ ? point : point - 1;
  }

  int point_of_coord(int coord) const { return coord < base_ ? coord : coord + 1; }

  int index_of_label(const std::string& name) const {
    for (int i = 0; i < size(); ++i) {
      if (labels_[i] == name) return i;
    }
    return -1;
  }

  bool is_ultrametric() const {
    int n = size();
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          const T& lhs = dist_[i][k];
          const T& m = dist_[i][j] > dist_[j][k] ? dist_[i][j] : dist_[j][k];
          if (lhs > m) return false;
        }
      }
    }
    return true;
  }

  friend bool operator==(const PointedMetricSpace& a, const PointedMetricSpace& b) {
    return a.base_ == b.base_ && a.labels_ == b.labels_ && a.dist_ == b.dist_;
  }

 private:
  void validate() const {
    int n = size();
    if (n == 0) throw error(errc::dimension_mismatch, "space needs at least one point");
    if (static_cast<int>(dist_.size()) != n) {
      throw error(errc::dimension_mismatch, "distance matrix has " +
                                                std::to_string(dist_.size()) + " rows for " +
                                                std::to_string(n) + " labels");
    }
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(dist_[i].size()) != n) {
        throw error(errc::dimension_mismatch,
                    "distance matrix row " + std::to_string(i) + " has " +
                        std::to_string(dist_[i].size()) + " entries, expected " +
                        std::to_string(n));
      }
    }
    if (base_ < 0 || base_ >= n) {
      throw error(errc::base_out_of_range, "base index " + std::to_string(base_) +
                                               " outside [0, " + std::to_string(n) + ")");
    }
    for (int i = 0; i < n; ++i) {
      if (!valid_label(labels_[i])) {
        throw error(errc::invalid_label, "label '" + labels_[i] + "' at index " +
                                             std::to_string(i) +
                                             " (allowed: [A-Za-z0-9_.+-], nonempty)");
      }
      for (int j = i + 1; j < n; ++j) {
        if (labels_[i] == labels_[j]) {
          throw error(errc::duplicate_label, "label '" + labels_[i] + "' at indices " +
                                                 std::to_string(i) + " and " +
                                                 std::to_string(j));
        }
      }
    }
    const T zero = scalar_traits<T>::zero();
    for (int i = 0; i < n; ++i) {
      if (!(dist_[i][i] == zero)) {
        throw error(errc::nonzero_diagonal, "dist[" + std::to_string(i) + "][" +
                                                std::to_string(i) + "] must be 0");
      }
      for (int j = 0; j < n; ++j) {
        if (dist_[i][j] < zero) {
          throw error(errc::negative_distance,
                      "dist[" + std::to_string(i) + "][" + std::to_string(j) + "] < 0");
        }
        if (!(dist_[i][j] == dist_[j][i])) {
          throw error(errc::asymmetric_matrix, "dist[" + std::to_string(i) + "][" +
                                                   std::to_string(j) + "] != dist[" +
                                                   std::to_string(j) + "][" +
                                                   std::to_string(i) + "]");
        }
        if (i != j && dist_[i][j] == zero) {
          throw error(errc::zero_distance_distinct_points,
                      "dist[" + std::to_string(i) + "][" + std::to_string(j) +
                          "] = 0 for distinct points");
        }
      }
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          if (dist_[i][k] > dist_[i][j] + dist_[j][k]) {
            throw error(errc::triangle_violation,
                        "d(" + std::to_string(i) + "," + std::to_string(k) + ") > d(" +
                            std::to_string(i) + "," + std::to_string(j) + ") + d(" +
                            std::to_string(j) + "," + std::to_string(k) + ")");
          }
        }
      }
    }
  }

  std::vector<std::string> labels_;
  Matrix<T> dist_;
  int base_;
};

template <class T>
using SpacePtr = std::shared_ptr<const PointedMetricSpace<T>>;

template <class T>
SpacePtr<T> new_space(std::vector<std::string> labels, Matrix<T> dist, int base_index) {
  return std::make_shared<const PointedMetricSpace<T>>(std::move(labels), std::move(dist),
                                                       base_index);
}

// Structural identity; pointer equality is the fast path.
template <class T>
bool same_space(const SpacePtr<T>& a, const SpacePtr<T>& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

struct Pair {
  int x;
  int y;
  friend bool operator==(const Pair& a, const Pair& b) { return a.x == b.x && a.y == b.y; }
};

// All ordered off-diagonal pairs (i, j), i != j, in lexicographic order.
class PairSet {
 public:
  explicit PairSet(int n) : n_(n), row_of_(static_cast<std::size_t>(n) * n, -1) {
    pairs_.reserve(static_cast<std::size_t>(n) * (n - 1));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        row_of_[static_cast<std::size_t>(i) * n + j] = static_cast<int>(pairs_.size());
        pairs_.push_back(Pair{i, j});
      }
    }
  }

  std::size_t size() const { return pairs_.size(); }
  const Pair& operator[](std::size_t r) const { return pairs_[r]; }

  int row(int x, int y) const {
    if (x == y || x < 0 || y < 0 || x >= n_ || y >= n_) return -1;
    return row_of_[static_cast<std::size_t>(x) * n_ + y];
  }

  int points() const { return n_; }

 private:
  int n_;
  std::vector<Pair> pairs_;
  std::vector<int> row_of_;
};

template <class T>
PairSet pair_set(const PointedMetricSpace<T>& space) {
  return PairSet(space.size());
}

template <class T>
PairSet pair_set(const SpacePtr<T>& space) {
  return PairSet(space->size());
}

// {0,1}^depth under d(x,y) = 2^-(first differing coordinate), coordinates
// numbered from ultrametric_first_coordinate. Base point is the all-zeros
// word; words are enumerated in binary counting order.
template <class T>
SpacePtr<T> gen_ultrametric_cube(int depth, int point_cap = point_cap_from_env()) {
  if (depth < 1) throw error(errc::dimension_mismatch, "cube depth must be >= 1");
  if (depth >= 31 || (1 << depth) > point_cap) {
    throw error(errc::cap_exceeded, "2^" + std::to_string(depth) +
                                        " points exceed the configured cap of " +
                                        std::to_string(point_cap));
  }
  int n = 1 << depth;
  std::vector<std::string> labels(n);
  for (int w = 0; w < n; ++w) {
    std::string word;
    for (int b = depth - 1; b >= 0; --b) word += ((w >> b) & 1) ? '1' : '0';
    labels[w] = "w" + word;
  }
  Matrix<T> dist(n, std::vector<T>(n, scalar_traits<T>::zero()));
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      int diff = a ^ b;
      // coordinate 1 is the leading bit of the word
      int first = depth - 1;
      while (((diff >> first) & 1) == 0) --first;
      int coordinate = (depth - 1 - first) + ultrametric_first_coordinate;
      T d = scalar_traits<T>::from_ratio(1, 1LL << coordinate);
      dist[a][b] = d;
      dist[b][a] = d;
    }
  }
  return new_space<T>(std::move(labels), std::move(dist), 0);
}

}  // namespace liplift
