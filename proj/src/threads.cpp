#include "khovcss/threads.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace khovcss::threads {

void set_max(int n) {
    if (n <= 0) {
        if (const char* env = std::getenv("KHOVCSS_THREADS")) {
            n = std::atoi(env);
        }
    }
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace khovcss::threads
