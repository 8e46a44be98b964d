#include "cyclab/kernels.hpp"

namespace cyclab::kernels {

void set_worker_count(int n) {
#ifdef CYCLAB_HAVE_OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

int worker_count() {
#ifdef CYCLAB_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace cyclab::kernels
