#include "curved_mie/cli/parallel.hpp"

#include <cstdlib>
#include <string>

namespace curved_mie::cli {

unsigned thread_cap() {
  if (const char* env = std::getenv("CURVED_MIE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return unsigned(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

namespace detail {

bool& in_worker() {
  thread_local bool flag = false;
  return flag;
}

}  // namespace detail

}  // namespace curved_mie::cli
