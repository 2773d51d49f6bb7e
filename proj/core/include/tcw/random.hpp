#pragma once

#include <cstdint>
#include <random>

#include "tcw/ternary.hpp"

namespace tcw {

/// Seeded generator for the randomized checks. Draws go through explicit
/// modulo reduction rather than std::uniform_int_distribution so a given
/// seed produces the same sequence on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t bound) {
    return bound ? engine_() % bound : 0;
  }

  int int_in(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool coin() { return (engine_() & 1) != 0; }

 private:
  std::mt19937_64 engine_;
};

/// A uniformly random two-valued zero-propagating function: free {0,1}
/// choices on {1,2}^arity, 0 wherever a component is 0.
TernaryFunction random_r_function(int arity, Rng& rng);

}  // namespace tcw
