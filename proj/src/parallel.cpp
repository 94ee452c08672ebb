#include "hypquot/parallel.hpp"

#include <cstdlib>

namespace hypquot {

int default_worker_count() {
    if (const char* env = std::getenv("HYPQUOT_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

} // namespace hypquot
