#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "forecastability/core.hpp"

namespace fcast {

enum class NeighborSearch {
  kAuto,        // k-d tree unless the point set is tiny
  kBruteForce,  // O(N^2) scan
  kKdTree,
};

/// Chebyshev (max-norm) distance.
[[nodiscard]] inline double max_norm_distance(std::span<const double> a,
                                              std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] > b[i] ? a[i] - b[i] : b[i] - a[i];
    if (diff > d) d = diff;
  }
  return d;
}

/// Static k-d tree for max-norm queries against the points it was built on.
///
/// Pruning uses per-node bounding boxes and never approximates, so results are
/// exactly those of a brute-force scan using max_norm_distance.
class KdTree {
 public:
  explicit KdTree(const PointSet& points, std::size_t leaf_size = 16);

  /// Distance from point i to its k-th nearest other point (i itself excluded,
  /// coincident points included).
  [[nodiscard]] double kth_neighbor_distance(std::size_t i, std::size_t k) const;

  /// Number of points j != i with distance(point i, point j) < radius.
  [[nodiscard]] std::size_t count_within(std::size_t i, double radius) const;

 private:
  struct Node {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t left = 0;   // child indices; 0 means leaf
    std::size_t right = 0;
  };

  std::size_t build(std::size_t begin, std::size_t end);
  [[nodiscard]] double box_lower_bound(std::size_t node, std::span<const double> q) const;
  [[nodiscard]] double box_upper_bound(std::size_t node, std::span<const double> q) const;

  const PointSet& points_;
  std::size_t leaf_size_;
  std::vector<std::size_t> order_;     // permutation of point indices
  std::vector<std::size_t> position_;  // inverse of order_
  std::vector<Node> nodes_;
  std::vector<double> lo_;  // per-node bounding boxes, dim entries each
  std::vector<double> hi_;
};

/// Resolves kAuto for a point set.
[[nodiscard]] NeighborSearch resolve_search(NeighborSearch search, const PointSet& points);

/// k-th neighbour distance for every point.
[[nodiscard]] std::vector<double> kth_neighbor_distances(const PointSet& points, std::size_t k,
                                                         NeighborSearch search,
                                                         std::size_t threads = 1);

/// For every i, #{j != i : distance(i, j) < radii[i]}.
[[nodiscard]] std::vector<std::size_t> counts_within(const PointSet& points,
                                                     std::span<const double> radii,
                                                     NeighborSearch search,
                                                     std::size_t threads = 1);

}  // namespace fcast
