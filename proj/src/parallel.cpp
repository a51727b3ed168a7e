// parallel.cpp

#include "qrws/parallel.hpp"

#include <cstdlib>

namespace qrws {

unsigned default_thread_count() {
    if (const char* env = std::getenv("QRWS_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return static_cast<unsigned>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace qrws
