// placeholder, replaced once the core modules land
#include <benchmark/benchmark.h>
BENCHMARK_MAIN();
