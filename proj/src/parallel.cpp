#include "ncgeo/parallel.hpp"

#include <cstdlib>
#include <string>

namespace ncgeo {

int configured_threads() {
    static const int threads = [] {
        int fallback = 1;
#ifdef _OPENMP
        fallback = omp_get_max_threads();
#endif
        const char* env = std::getenv("NCGEO_THREADS");
        if (!env) return fallback;
        try {
            int v = std::stoi(env);
            return v >= 1 ? v : fallback;
        } catch (...) {
            return fallback;
        }
    }();
    return threads;
}

void apply_thread_config() {
#ifdef _OPENMP
    omp_set_num_threads(configured_threads());
#endif
}

}  // namespace ncgeo
