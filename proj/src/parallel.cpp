#include "skelmeas/parallel.hpp"

#include <cstdlib>
#include <string>

namespace skelmeas {

unsigned thread_count()
{
    if (const char* env = std::getenv("SKELMEAS_THREADS")) {
        try {
            long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (...) {
        }
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace skelmeas
