#include "expwave/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

namespace expwave {

namespace {

struct NodeTable {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Newton iteration on P_n(x); initial guesses from the Chebyshev estimate.
NodeTable compute_gauss(int order) {
  NodeTable t;
  const auto n = static_cast<std::size_t>(order);
  t.nodes.assign(n, 0.0);
  t.weights.assign(n, 0.0);
  const std::size_t m = (n + 1) / 2;
  for (std::size_t i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    t.nodes[i] = -x;
    t.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    t.weights[i] = w;
    t.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) t.nodes[m - 1] = 0.0;
  return t;
}

const NodeTable& table_for(int order) {
  if (order < 2 || order > 64)
    throw std::invalid_argument("gauss rule order must lie in [2, 64]");
  static std::map<int, NodeTable> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end())
    it = cache.emplace(order, compute_gauss(order)).first;
  return it->second;
}

}  // namespace

const std::vector<double>& gauss_nodes(int order) { return table_for(order).nodes; }
const std::vector<double>& gauss_weights(int order) { return table_for(order).weights; }

}  // namespace expwave
