#pragma once

// Brute-force oracles and random inputs shared by the unit tests. Nothing
// here calls the library's counting code.

#include <cmath>
#include <cstdint>
#include <vector>

#include "graphlim/graph.hpp"
#include "graphlim/rng.hpp"
#include "graphlim/stepfunction.hpp"

namespace gltest {

using namespace graphlim;

inline SimpleGraph random_graph(Stream& rng, std::size_t n, double p) {
  SimpleGraph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (rng.uniform() < p) g.add_edge(u, v);
  return g;
}

inline Stepfunction random_stepfunction(Stream& rng, std::size_t k) {
  auto m = dirichlet_uniform(rng, k);
  std::vector<double> v(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) v[i * k + j] = v[j * k + i] = rng.uniform();
  return Stepfunction(m, v);
}

// Odometer over all maps [k] -> [n].
template <class Fn>
void for_each_map(std::size_t k, std::size_t n, Fn&& fn) {
  std::vector<std::size_t> phi(k, 0);
  for (;;) {
    fn(phi);
    std::size_t i = 0;
    while (i < k && ++phi[i] == n) phi[i++] = 0;
    if (i == k) return;
  }
}

inline double brute_hom_density(const SimpleGraph& f, const SimpleGraph& g) {
  const std::size_t k = f.node_count(), n = g.node_count();
  const auto fe = f.edges();
  std::uint64_t count = 0;
  for_each_map(k, n, [&](const std::vector<std::size_t>& phi) {
    for (const Edge& e : fe)
      if (phi[e.u] == phi[e.v] || !g.has_edge(phi[e.u], phi[e.v])) return;
    ++count;
  });
  return static_cast<double>(count) / std::pow(static_cast<double>(n), static_cast<double>(k));
}

inline double brute_induced_graph(const SimpleGraph& f, const SimpleGraph& g) {
  const std::size_t k = f.node_count(), n = g.node_count();
  std::uint64_t count = 0, total = 0;
  for_each_map(k, n, [&](const std::vector<std::size_t>& phi) {
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b)
        if (phi[a] == phi[b]) return;
    ++total;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b)
        if (f.has_edge(a, b) != g.has_edge(phi[a], phi[b])) return;
    ++count;
  });
  return static_cast<double>(count) / static_cast<double>(total);
}

// Sum over part assignments; induced adds (1 - W) on non-edges.
inline double brute_step_density(const SimpleGraph& f, const StepKernel& w, bool induced) {
  const std::size_t k = f.node_count(), q = w.parts();
  long double sum = 0;
  for_each_map(k, q, [&](const std::vector<std::size_t>& phi) {
    long double term = 1;
    for (std::size_t a = 0; a < k; ++a) term *= w.measure(phi[a]);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b) {
        const double x = w.value(phi[a], phi[b]);
        if (f.has_edge(a, b)) term *= x;
        else if (induced) term *= 1 - x;
      }
    sum += term;
  });
  return static_cast<double>(sum);
}

// Cut norm on a fine grid: k-part kernel whose measures are multiples of
// 1/grid, maximized over all count vectors (s_1..s_k), s_i in 0..c_i, with
// the best T taken column-cell by column-cell for each sign.
inline double grid_cut_norm(const StepKernel& d, const std::vector<std::size_t>& counts, std::size_t grid) {
  const std::size_t k = d.parts();
  const double h = 1.0 / static_cast<double>(grid);
  double best = 0;
  std::vector<std::size_t> s(k, 0);
  for (;;) {
    double pos = 0, neg = 0;
    for (std::size_t j = 0; j < k; ++j) {
      double col = 0;
      for (std::size_t i = 0; i < k; ++i) col += static_cast<double>(s[i]) * h * d.value(i, j);
      // all c_j cells of column part j share the sign of col
      if (col > 0) pos += col * static_cast<double>(counts[j]) * h;
      else neg -= col * static_cast<double>(counts[j]) * h;
    }
    best = std::max({best, pos, neg});
    std::size_t i = 0;
    while (i < k && ++s[i] > counts[i]) s[i++] = 0;
    if (i == k) break;
  }
  return best;
}

}  // namespace gltest
