#include "rscc/parallel.hpp"

#include <cstdlib>
#include <string>

namespace rscc {

int env_workers(int fallback) {
    const char* raw = std::getenv("RSCC_THREADS");
    if (!raw || !*raw) return fallback;
    try {
        const int n = std::stoi(raw);
        return n >= 1 ? n : fallback;
    } catch (const std::exception&) {
        return fallback;
    }
}

} // namespace rscc
