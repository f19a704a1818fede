#include "gaussq/parallel.hpp"

#include <cstdlib>
#include <string>

namespace gaussq {

int default_jobs() {
  if (const char* env = std::getenv("GAUSSQ_JOBS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace gaussq
