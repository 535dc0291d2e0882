#include "fh/parallel.hpp"

#include <cstdlib>

namespace fh {

int max_threads() {
  if (const char* env = std::getenv("FHSPEC_THREADS")) {
    const int k = std::atoi(env);
    if (k >= 1) return k;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

}  // namespace fh
