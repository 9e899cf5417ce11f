#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace graphlim {

// SplitMix64 finalizer. Used both to derive stream keys and as the
// counter-based generator itself.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// (root, path) names a stream. Children are addressed by index, so any
// fan-out of trials gets the same streams regardless of scheduling.
struct SeedSpec {
  std::uint64_t root = 0;
  std::vector<std::uint64_t> path;

  SeedSpec() = default;
  explicit SeedSpec(std::uint64_t r) : root(r) {}
  SeedSpec(std::uint64_t r, std::initializer_list<std::uint64_t> p) : root(r), path(p) {}

  SeedSpec child(std::uint64_t index) const {
    SeedSpec s = *this;
    s.path.push_back(index);
    return s;
  }

  std::uint64_t key() const noexcept {
    std::uint64_t k = mix64(root ^ 0x5851f42d4c957f2dULL);
    for (std::uint64_t p : path) k = mix64(k ^ mix64(p + 0x2545f4914f6cdd1dULL));
    return k;
  }

  bool operator==(const SeedSpec&) const = default;
};

// Counter-based stream: draw i is a pure function of (key, i).
class Stream {
 public:
  explicit Stream(std::uint64_t key) : key_(key) {}
  explicit Stream(const SeedSpec& seed) : key_(seed.key()) {}

  std::uint64_t at(std::uint64_t counter) const noexcept {
    return mix64(key_ ^ mix64(counter * 0xd1342543de82ef95ULL + 1));
  }

  std::uint64_t next_u64() noexcept { return at(counter_++); }

  // Uniform on [0,1) with 53 random bits.
  double uniform() noexcept { return to_unit(next_u64()); }

  double uniform_at(std::uint64_t counter) const noexcept { return to_unit(at(counter)); }

  // Uniform integer in [0, n). Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t n) noexcept {
    if (n <= 1) return 0;
    for (;;) {
      std::uint64_t x = next_u64();
      __uint128_t m = static_cast<__uint128_t>(x) * n;
      auto low = static_cast<std::uint64_t>(m);
      if (low >= n || low >= (-n) % n) return static_cast<std::uint64_t>(m >> 64);
    }
  }

  Stream child(std::uint64_t index) const noexcept {
    return Stream(mix64(key_ ^ mix64(index + 0x632be59bd9b4e019ULL)));
  }

  std::uint64_t key() const noexcept { return key_; }

  static double to_unit(std::uint64_t x) noexcept {
    return static_cast<double>(x >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Dirichlet(1,...,1) on k coordinates via normalized exponentials.
std::vector<double> dirichlet_uniform(Stream& rng, std::size_t k);

}  // namespace graphlim
