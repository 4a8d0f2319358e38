#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <string>

#include "explab/lab/acceptance.hpp"

// Usage: explab-acceptance [criterion ...]
int main(int argc, char** argv) {
    explab::lab::AcceptanceOptions options;
    for (int i = 1; i < argc; ++i) options.only.insert(std::atoi(argv[i]));
    if (const char* dir = std::getenv("EXPLAB_CACHE_DIR")) options.cache_dir = dir;
    const auto results = explab::lab::run_acceptance(std::cout, options);
    const auto passed = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.passed; });
    std::cout << passed << "/" << results.size() << " criteria passed" << std::endl;
    return passed == static_cast<long>(results.size()) ? EXIT_SUCCESS : EXIT_FAILURE;
}
