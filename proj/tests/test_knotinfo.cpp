#include "support.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace khsq;
using namespace khsq::test;

namespace {

// "2*t^(4)*q^(11)*T^(2)" style sums into groups; T^(m) marks Z/m summands.
Groups parse_poly(const std::string& s, int q_shift = 0, Groups g = {}) {
    std::stringstream ss(s);
    std::string term;
    while (std::getline(ss, term, '+')) {
        term.erase(0, term.find_first_not_of(' '));
        term.erase(term.find_last_not_of(' ') + 1);
        if (term.empty()) continue;
        int coeff = 1, i = 0, j = 0;
        unsigned long tors = 0;
        std::stringstream fs(term);
        std::string f;
        bool first = true;
        while (std::getline(fs, f, '*')) {
            auto exp = [&] { return f.size() > 1 ? std::stoi(f.substr(3, f.size() - 4)) : 1; };
            if (f[0] == 't') i = exp();
            else if (f[0] == 'q') j = exp();
            else if (f[0] == 'T') tors = static_cast<unsigned long>(exp());
            else if (first) coeff = std::stoi(f);
            first = false;
        }
        auto& slot = g[{i, j + q_shift}];
        if (tors)
            for (int k = 0; k < coeff; ++k) slot.second.push_back(tors);
        else slot.first += coeff;
    }
    for (auto& [ij, v] : g) std::sort(v.second.begin(), v.second.end());
    return g;
}

} // namespace

TEST_CASE("integral Khovanov homology matches KnotInfo, both theories") {
    std::ifstream in(kKnotInfo);
    REQUIRE(in);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ls(line);
        std::string name, pd, even, odd;
        std::getline(ls, name, '\t');
        std::getline(ls, pd, '\t');
        std::getline(ls, even, '\t');
        std::getline(ls, odd, '\t');
        KhComplex c(parse_pd(pd));
        CHECK_MESSAGE(as_groups(khovanov_homology(c, Parity::Even, Ring::Z)) == parse_poly(even), name);
        // unreduced odd homology is two shifted copies of the reduced one
        Groups odd_expected = parse_poly(odd, 1, parse_poly(odd, -1));
        CHECK_MESSAGE(as_groups(khovanov_homology(c, Parity::Odd, Ring::Z)) == odd_expected, name);
        ++n;
    }
    CHECK(n == 61);
}
