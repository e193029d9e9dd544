#include "bsde/parallel.hpp"

#include <cstdlib>
#include <string>

namespace bsde {

namespace {

int resolve_worker_count() {
    const char* env = std::getenv("BSDE_THREADS");
    long requested = 0;  // 0 = auto
    if (env && *env) {
        char* end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end && *end == '\0' && parsed >= 0) requested = parsed;
    }
    if (requested > 0) return static_cast<int>(requested);
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace

int worker_count() {
    static const int count = resolve_worker_count();
    return count;
}

}  // namespace bsde
