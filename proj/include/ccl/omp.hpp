#pragma once

// OpenMP shim: the rest of the code includes this instead of <omp.h> so it
// still builds (serially) without OpenMP support.

#define CCL_PRAGMA(X) _Pragma(#X)

#ifdef _OPENMP
#include <omp.h>
#define CCL_OMP(ARGS) CCL_PRAGMA(omp ARGS)
#else
#define CCL_OMP(ARGS)
inline int omp_get_max_threads() { return 1; }
inline int omp_get_thread_num() { return 0; }
inline void omp_set_num_threads(int) {}
#endif
