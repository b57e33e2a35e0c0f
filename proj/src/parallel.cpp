#include "pamlab/parallel.hpp"

#include <cstdlib>
#include <string>

namespace pamlab {

int worker_count()
{
    if (const char* env = std::getenv("PAMLAB_THREADS")) {
        try {
            const int v = std::stoi(env);
            if (v > 0) return v;
        } catch (...) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace pamlab
