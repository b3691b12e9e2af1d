#include "swf/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace swf {

int configure_threads_from_env()
{
    if (const char* s = std::getenv("SWF_THREADS")) {
        try {
            int n = std::stoi(s);
            if (n > 0) omp_set_num_threads(n);
        } catch (const std::exception&) {
        }
    }
    return omp_get_max_threads();
}

}  // namespace swf
