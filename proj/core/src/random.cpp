#include "tcw/random.hpp"

namespace tcw {

TernaryFunction random_r_function(int arity, Rng& rng) {
  if (arity < 1 || arity > 12)
    throw std::invalid_argument("random_r_function: arity must lie in 1..12");
  const std::uint64_t size = pow3(arity);
  std::vector<Value> table(size, 0);
  for (std::uint64_t idx = 0; idx < size; ++idx) {
    std::uint64_t rest = idx;
    bool has_zero = false;
    for (int j = 0; j < arity && !has_zero; ++j) {
      has_zero = rest % 3 == 0;
      rest /= 3;
    }
    if (!has_zero) table[idx] = rng.coin() ? 1 : 0;
  }
  return TernaryFunction(arity, std::move(table));
}

}  // namespace tcw
