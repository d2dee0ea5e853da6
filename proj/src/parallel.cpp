#include "cubei/parallel.hpp"

#include <cstdlib>
#include <string>

namespace cubei {

unsigned worker_count() {
    static const unsigned count = [] {
        if (const char* env = std::getenv("CUBE_INTERACT_THREADS")) {
            try {
                const long v = std::stol(env);
                if (v >= 1) return static_cast<unsigned>(v);
            } catch (...) {
            }
        }
        const unsigned hw = std::thread::hardware_concurrency();
        return hw ? hw : 1u;
    }();
    return count;
}

}  // namespace cubei
