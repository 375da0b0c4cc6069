#include "grw/parallel.hpp"

#include <thread>

namespace grw {

int default_workers() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
#endif
}

}  // namespace grw
