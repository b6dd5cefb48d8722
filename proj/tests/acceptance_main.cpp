// Acceptance harness: runs the reproduction suite and prints one pass/fail
// line per check (plus computed-vs-expected sub-lines). Exit status is
// nonzero when any selected check fails, so each check can be registered as
// an individual ctest entry via `--only <id>`.

#include "boxwing/validation.hpp"

#include <cstring>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
    std::string filter;
    bool verbose = false;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if ((arg == "--only" || arg == "--filter") && i + 1 < argc) {
            filter = argv[++i];
        } else if (arg == "--verbose" || arg == "-v") {
            verbose = true;
        } else if (arg == "--help" || arg == "-h") {
            std::cout << "usage: acceptance [--only <id-or-title-substring>] [--verbose]\n";
            return 0;
        } else {
            std::cerr << "unknown argument: " << arg << "\n";
            return 2;
        }
    }

    const auto results = boxwing::run_validation(filter);
    if (results.empty()) {
        std::cerr << "no checks match filter '" << filter << "'\n";
        return 2;
    }
    boxwing::print_validation_report(std::cout, results, verbose);
    return boxwing::all_passed(results) ? 0 : 1;
}
