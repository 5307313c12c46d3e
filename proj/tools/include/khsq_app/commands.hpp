#pragma once

#include "khsq/link.hpp"

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace khsq::app {

struct JobSpec {
    std::vector<std::string> pds;
    std::vector<std::string> names;
    std::string table;
    std::vector<int> ls;
    std::string parity = "both"; // even | odd | both
    std::string ring = "both";   // z | f2 | both
    std::string format = "text"; // text | json | csv
    std::string cache_dir;
    int jobs = 1;
    std::uint64_t seed = 1;
    std::string verify_table;
    bool all = false;
    std::vector<std::string> suites;
    int diagrams = 24;
    int max_crossings = 7;
    int cocycles = 6;
};

// Checks the job and throws BadArgument on nonsense values.
void validate(const JobSpec& job);

struct Source {
    std::string label;
    LinkDiagram diagram;
};
std::vector<Source> sources(const JobSpec& job);

// Transcribed St rows: name -> l -> entries "(i, j)↦(x1, x2, x3, x4)".
using StReference = std::map<std::string, std::map<int, std::vector<std::string>>>;
StReference read_st_reference(const std::string& path);

// Exit codes: 0 success, 1 property failure or table mismatch. Errors propagate as exceptions.
int cmd_homology(const JobSpec& job, std::ostream& out);
int cmd_st(const JobSpec& job, std::ostream& out);
int cmd_wedge(const JobSpec& job, std::ostream& out);
int cmd_proptest(const JobSpec& job, std::ostream& out);

// Runs fn(0..n-1) on up to `jobs` threads; rethrows the first exception.
template <class F>
void parallel_for(std::size_t n, int jobs, F&& fn);

} // namespace khsq::app

#include "khsq_app/parallel.ipp"
