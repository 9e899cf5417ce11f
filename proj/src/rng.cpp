#include "graphlim/rng.hpp"

#include <cmath>

namespace graphlim {

std::vector<double> dirichlet_uniform(Stream& rng, std::size_t k) {
  std::vector<double> out(k);
  double total = 0;
  for (auto& x : out) {
    x = -std::log1p(-rng.uniform());
    // A zero draw has probability 2^-53 but would give an empty part.
    if (x <= 0) x = 0x1.0p-53;
    total += x;
  }
  for (auto& x : out) x /= total;
  return out;
}

}  // namespace graphlim
