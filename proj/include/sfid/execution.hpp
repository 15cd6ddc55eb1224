#pragma once

namespace sfid {

// Selects between the OpenMP kernel and the serial reference loop. Both
// produce identical results; the serial path is kept for testing and for
// builds without OpenMP.
enum class Execution { kSerial, kParallel };

// Number of threads the parallel kernels will use (1 without OpenMP).
int max_threads();

}  // namespace sfid
