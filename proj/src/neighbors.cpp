#include "forecastability/neighbors.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "forecastability/error.hpp"
#include "forecastability/parallel.hpp"

namespace fcast {
namespace {

// Max-norm distance, or any value >= cutoff as soon as one coordinate
// reaches it.
double distance_below(std::span<const double> a, std::span<const double> b, double cutoff) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] > b[i] ? a[i] - b[i] : b[i] - a[i];
    if (diff > d) {
      d = diff;
      if (d >= cutoff) return d;
    }
  }
  return d;
}

}  // namespace

KdTree::KdTree(const PointSet& points, std::size_t leaf_size)
    : points_(points), leaf_size_(std::max<std::size_t>(leaf_size, 1)) {
  order_.resize(points.rows);
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  nodes_.reserve(2 * points.rows / leaf_size_ + 1);
  if (points.rows > 0) build(0, points.rows);
  position_.resize(points.rows);
  for (std::size_t pos = 0; pos < order_.size(); ++pos) position_[order_[pos]] = pos;
}

std::size_t KdTree::build(std::size_t begin, std::size_t end) {
  const std::size_t dim = points_.dim;
  const std::size_t id = nodes_.size();
  nodes_.push_back({begin, end, 0, 0});
  lo_.resize((id + 1) * dim);
  hi_.resize((id + 1) * dim);
  for (std::size_t d = 0; d < dim; ++d) {
    double lo = points_.row(order_[begin])[d];
    double hi = lo;
    for (std::size_t pos = begin + 1; pos < end; ++pos) {
      const double v = points_.row(order_[pos])[d];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    lo_[id * dim + d] = lo;
    hi_[id * dim + d] = hi;
  }
  if (end - begin <= leaf_size_) return id;

  std::size_t split_dim = 0;
  double widest = -1.0;
  for (std::size_t d = 0; d < dim; ++d) {
    const double width = hi_[id * dim + d] - lo_[id * dim + d];
    if (width > widest) {
      widest = width;
      split_dim = d;
    }
  }
  if (!(widest > 0.0)) return id;  // all points coincide

  const std::size_t mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin),
                   order_.begin() + static_cast<std::ptrdiff_t>(mid),
                   order_.begin() + static_cast<std::ptrdiff_t>(end),
                   [&](std::size_t a, std::size_t b) {
                     return points_.row(a)[split_dim] < points_.row(b)[split_dim];
                   });
  const std::size_t left = build(begin, mid);
  const std::size_t right = build(mid, end);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

double KdTree::box_lower_bound(std::size_t node, std::span<const double> q) const {
  const std::size_t dim = points_.dim;
  double bound = 0.0;
  for (std::size_t d = 0; d < dim; ++d) {
    const double lo = lo_[node * dim + d];
    const double hi = hi_[node * dim + d];
    double gap = 0.0;
    if (q[d] < lo) {
      gap = lo - q[d];
    } else if (q[d] > hi) {
      gap = q[d] - hi;
    }
    bound = std::max(bound, gap);
  }
  return bound;
}

double KdTree::box_upper_bound(std::size_t node, std::span<const double> q) const {
  const std::size_t dim = points_.dim;
  double bound = 0.0;
  for (std::size_t d = 0; d < dim; ++d) {
    const double lo = lo_[node * dim + d];
    const double hi = hi_[node * dim + d];
    const double a = q[d] > lo ? q[d] - lo : lo - q[d];
    const double b = q[d] > hi ? q[d] - hi : hi - q[d];
    bound = std::max({bound, a, b});
  }
  return bound;
}

double KdTree::kth_neighbor_distance(std::size_t i, std::size_t k) const {
  if (k == 0 || k >= points_.rows) {
    throw ConfigError("k must satisfy 1 <= k < N");
  }
  const auto q = points_.row(i);
  std::priority_queue<double> best;  // max-heap of the k smallest distances
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const std::size_t node = stack.back();
    stack.pop_back();
    if (best.size() == k && box_lower_bound(node, q) >= best.top()) continue;
    const Node& n = nodes_[node];
    if (n.left == 0) {
      for (std::size_t pos = n.begin; pos < n.end; ++pos) {
        const std::size_t j = order_[pos];
        if (j == i) continue;
        const double d = max_norm_distance(q, points_.row(j));
        if (best.size() < k) {
          best.push(d);
        } else if (d < best.top()) {
          best.pop();
          best.push(d);
        }
      }
      continue;
    }
    // Push the farther child first so the nearer one is searched first.
    const double dl = box_lower_bound(n.left, q);
    const double dr = box_lower_bound(n.right, q);
    if (dl <= dr) {
      stack.push_back(n.right);
      stack.push_back(n.left);
    } else {
      stack.push_back(n.left);
      stack.push_back(n.right);
    }
  }
  return best.top();
}

std::size_t KdTree::count_within(std::size_t i, double radius) const {
  const auto q = points_.row(i);
  const std::size_t self = position_[i];
  std::size_t count = 0;
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const std::size_t node = stack.back();
    stack.pop_back();
    if (box_lower_bound(node, q) >= radius) continue;
    const Node& n = nodes_[node];
    if (box_upper_bound(node, q) < radius) {
      count += n.end - n.begin;
      if (self >= n.begin && self < n.end) --count;
      continue;
    }
    if (n.left == 0) {
      for (std::size_t pos = n.begin; pos < n.end; ++pos) {
        if (pos == self) continue;
        if (max_norm_distance(q, points_.row(order_[pos])) < radius) ++count;
      }
      continue;
    }
    stack.push_back(n.left);
    stack.push_back(n.right);
  }
  return count;
}

NeighborSearch resolve_search(NeighborSearch search, const PointSet& points) {
  if (search != NeighborSearch::kAuto) return search;
  if (points.rows < 64) return NeighborSearch::kBruteForce;
  return NeighborSearch::kKdTree;
}

std::vector<double> kth_neighbor_distances(const PointSet& points, std::size_t k,
                                           NeighborSearch search, std::size_t threads) {
  const std::size_t n = points.rows;
  if (k == 0 || k >= n) throw ConfigError("k must satisfy 1 <= k < N");
  std::vector<double> out(n);
  if (resolve_search(search, points) == NeighborSearch::kKdTree) {
    const KdTree tree(points);
    parallel_for(n, threads, [&](std::size_t i) { out[i] = tree.kth_neighbor_distance(i, k); });
    return out;
  }
  parallel_for(n, threads, [&](std::size_t i) {
    const auto q = points.row(i);
    std::priority_queue<double> best;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      if (best.size() < k) {
        best.push(max_norm_distance(q, points.row(j)));
        continue;
      }
      const double d = distance_below(q, points.row(j), best.top());
      if (d < best.top()) {
        best.pop();
        best.push(d);
      }
    }
    out[i] = best.top();
  });
  return out;
}

std::vector<std::size_t> counts_within(const PointSet& points, std::span<const double> radii,
                                       NeighborSearch search, std::size_t threads) {
  const std::size_t n = points.rows;
  std::vector<std::size_t> out(n);
  if (resolve_search(search, points) == NeighborSearch::kKdTree) {
    const KdTree tree(points);
    parallel_for(n, threads, [&](std::size_t i) { out[i] = tree.count_within(i, radii[i]); });
    return out;
  }
  parallel_for(n, threads, [&](std::size_t i) {
    const auto q = points.row(i);
    std::size_t c = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && distance_below(q, points.row(j), radii[i]) < radii[i]) ++c;
    }
    out[i] = c;
  });
  return out;
}

}  // namespace fcast
