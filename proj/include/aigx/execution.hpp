#pragma once

namespace aigx {

/// Selects between the OpenMP kernel and its serial reference. Both produce
/// bit-identical results; the serial path exists for testing and benchmarking.
enum class Execution { Serial, Parallel };

/// Sets the OpenMP team size for subsequent parallel kernels; 0 leaves the
/// runtime default.
void set_thread_count(int threads);

int max_thread_count();

} // namespace aigx
