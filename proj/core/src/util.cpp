#include "phasebound/util.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace phasebound {

int thread_count() {
  if (const char* env = std::getenv("PHASEBOUND_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<int>(std::min(v, 256L));
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace phasebound
