#include "zhbraille/random.h"

#include <limits>

namespace zhbraille {

std::uint64_t UniformBelow(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t& counter, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % bound;
  while (true) {
    std::uint64_t x = CounterHash(seed, stream, counter++);
    if (x < limit) return x % bound;
  }
}

}  // namespace zhbraille
