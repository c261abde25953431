#pragma once

namespace khovcss::threads {

/// Cap worker threads globally (0 = hardware default). Reads KHOVCSS_THREADS
/// when `n` is 0 and the variable is set.
void set_max(int n);
int max_threads();

} // namespace khovcss::threads
