#pragma once

#include "khsq/link.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace khsq::app {

// Closure of a braid word on `strands` strands; generator +k / -k crosses positions k-1 and k.
LinkDiagram braid_closure(int strands, const std::vector<int>& word);

struct CorpusItem {
    std::string name;
    LinkDiagram diagram;
};

// Random braid closures with at most max_crossings crossings, every strand position used.
std::vector<CorpusItem> random_corpus(std::uint64_t seed, int count, int max_crossings);

} // namespace khsq::app
