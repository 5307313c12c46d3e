#pragma once

#include "khsq_app/corpus.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace khsq::app {

// Suites that run once per diagram and once per random cocycle respectively.
const std::vector<std::string>& diagram_suites();
const std::vector<std::string>& cocycle_suites();
std::vector<std::string> all_suites();

struct PropOptions {
    std::uint64_t seed = 1;
    std::vector<std::string> suites; // empty means all
    int cocycles_per_diagram = 6;
};

struct SuiteResult {
    std::string suite;
    long checks = 0;
    bool failed = false;
    std::string reproducer; // diagram, bidegree, cocycle and matching seed of the smallest failure found
};

struct PropReport {
    std::vector<SuiteResult> suites;
    long cocycles = 0;  // random cocycles drawn
    int diagrams = 0;   // diagrams that contributed at least one cocycle
    bool ok() const;
    std::string str() const;
};

// Stops at the first failing suite.
PropReport run_suites(const std::vector<CorpusItem>& corpus, const PropOptions& opt);

} // namespace khsq::app
