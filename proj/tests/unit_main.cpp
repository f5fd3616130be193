#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#ifdef _OPENMP
#include <omp.h>
#endif

// The suite asserts bitwise serial/parallel agreement, so it always runs with
// a real thread pool, even on single-core CI machines.
int main(int argc, char** argv) {
#ifdef _OPENMP
    omp_set_num_threads(4);
#endif
    doctest::Context context(argc, argv);
    return context.run();
}
