#include "khsq_app/corpus.hpp"

#include "khsq/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <set>

namespace khsq::app {

LinkDiagram braid_closure(int strands, const std::vector<int>& word) {
    if (strands < 1) throw Error(ErrorKind::BadArgument, "cli", "braid needs a strand");
    std::vector<int> label(strands);
    for (int p = 0; p < strands; ++p) label[p] = p + 1;
    int next = strands + 1;
    std::vector<std::array<int, 4>> xs;
    std::vector<int> touched(strands, 0);
    for (int g : word) {
        int k = std::abs(g);
        if (k < 1 || k >= strands) throw Error(ErrorKind::BadArgument, "cli", "braid generator out of range");
        int lo = k - 1, hi = k;
        int a = label[lo], b = label[hi];
        int na = next++, nb = next++; // strand from lo moves to hi, strand from hi moves to lo
        // upward strands; a positive generator puts the strand from lo over
        if (g > 0) xs.push_back({b, na, nb, a});
        else xs.push_back({a, b, na, nb});
        label[hi] = na;
        label[lo] = nb;
        touched[lo] = touched[hi] = 1;
    }
    for (int p = 0; p < strands; ++p)
        if (!touched[p]) throw Error(ErrorKind::BadArgument, "cli", "braid leaves a strand unused");
    // identify the top labels with the bottom ones
    std::vector<int> rename(next, 0);
    for (int v = 1; v < next; ++v) rename[v] = v;
    for (int p = 0; p < strands; ++p) rename[label[p]] = p + 1;
    for (auto& x : xs)
        for (auto& v : x) v = rename[v];
    // compact labels to 1..2n in order of first use
    std::vector<int> compact(next, 0);
    int used = 0;
    for (auto& x : xs)
        for (auto& v : x) {
            if (!compact[v]) compact[v] = ++used;
            v = compact[v];
        }
    return LinkDiagram(std::move(xs), 0);
}

std::vector<CorpusItem> random_corpus(std::uint64_t seed, int count, int max_crossings) {
    std::mt19937_64 rng(seed);
    std::vector<CorpusItem> out;
    std::set<std::string> seen;
    int attempts = 0;
    while (static_cast<int>(out.size()) < count) {
        if (++attempts > 1000 * (count + 1)) throw Error(ErrorKind::InvariantViolation, "cli", "corpus generation stalled");
        int strands = 2 + static_cast<int>(rng() % 3);
        int len = std::max(strands, 3) + static_cast<int>(rng() % (max_crossings - std::max(strands, 3) + 1));
        std::vector<int> word;
        for (int k = 0; k < len; ++k) {
            int g = 1 + static_cast<int>(rng() % (strands - 1));
            word.push_back(rng() & 1 ? g : -g);
        }
        LinkDiagram d;
        try {
            d = braid_closure(strands, word);
        } catch (const Error&) {
            continue;
        }
        bool kink = false;
        for (const auto& x : d.crossings())
            for (int p = 0; p < 4; ++p)
                for (int q = p + 1; q < 4; ++q)
                    if (x[p] == x[q]) kink = true;
        if (kink) continue;
        std::string pd = render_pd(d);
        if (!seen.insert(pd).second) continue;
        std::string name = "braid" + std::to_string(strands) + "[";
        for (std::size_t k = 0; k < word.size(); ++k) name += (k ? "," : "") + std::to_string(word[k]);
        out.push_back({name + "]", std::move(d)});
    }
    return out;
}

} // namespace khsq::app
