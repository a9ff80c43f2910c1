#include "aigx/execution.hpp"

#include <omp.h>

namespace aigx {

void set_thread_count(int threads) {
    if (threads > 0) {
        omp_set_dynamic(0);
        omp_set_num_threads(threads);
    }
}

int max_thread_count() { return omp_get_max_threads(); }

} // namespace aigx
