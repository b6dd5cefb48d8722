#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace boxwing {

// One assertion inside a validation check, with a human-readable
// computed-vs-expected detail string.
struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct CheckResult {
    std::string id;    // short id, e.g. "c5"
    std::string title; // what the check reproduces
    std::vector<CheckLine> lines;

    bool pass() const;
};

// The reproduction suite: every published reference identity this toolkit
// commits to, grouped into ten checks. `filter` (substring match on id or
// title, empty = all) selects a subset.
std::vector<CheckResult> run_validation(const std::string& filter = "");

// Pretty pass/fail table; one line per check plus indented sub-lines.
void print_validation_report(std::ostream& os, const std::vector<CheckResult>& results,
                             bool verbose);

// True iff every selected check passed.
bool all_passed(const std::vector<CheckResult>& results);

} // namespace boxwing
