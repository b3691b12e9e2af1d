#pragma once

namespace swf {

// Caps OpenMP threads from SWF_THREADS when set; returns the thread count in effect.
int configure_threads_from_env();

}  // namespace swf
