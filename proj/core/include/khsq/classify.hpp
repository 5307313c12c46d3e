#pragma once

#include "khsq/complex.hpp"
#include "khsq/integer.hpp"
#include "khsq/steenrod.hpp"

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace khsq {

struct StEntry {
    int i = 0, j = 0;
    std::array<int, 4> x{}; // (x1, x2, x3, x4)
    std::array<int, 4> r{}; // (r1, r2, r3, r4)
    bool zero() const { return x == std::array<int, 4>{}; }
    std::string str() const; // "(i, j)↦(x1, x2, x3, x4)"
};

struct StTable {
    int l = 0;
    std::vector<StEntry> entries; // nonzero tuples only, ordered by (i, j)
    std::array<int, 4> at(int i, int j) const;
};

StEntry st_at(CohomologyOps& ops, int i, int l);
// Nonzero entries of one quantum grading.
std::vector<StEntry> st_grading(const KhComplex& c, int l, int j);
void sort_entries(std::vector<StEntry>& entries);
StTable st(const KhComplex& c, int l);

struct HypothesisReport {
    int sigma = 0;
    bool diagonals = true, torsion = true, lowest_diagonal = true;
    std::vector<std::pair<int, int>> off_diagonal;
    std::vector<std::pair<int, int>> bad_torsion;
    std::vector<unsigned long> bad_orders;
    std::vector<std::pair<int, int>> lowest_torsion;
    bool ok() const { return diagonals && torsion && lowest_diagonal; }
    std::string str() const;
};

HypothesisReport check_hypotheses(const std::vector<HomologyGroup>& kh);

struct MooreSummand {
    int degree = 0;          // cohomological degree of the cell carrying the group
    unsigned long order = 0; // 0 for Z
    int count = 0;
};

struct WedgeDecomposition {
    int l = 0, j = 0, i = 0;
    int cp2 = 0, rp5_rp2 = 0, rp4_rp1 = 0, rp2_rp2 = 0;
    std::vector<MooreSummand> moore;
    bool moore_only() const { return cp2 == 0 && rp5_rp2 == 0 && rp4_rp1 == 0 && rp2_rp2 == 0; }
    std::string str() const;
};

// Throws HypothesesFail when the homology is outside the classified range.
WedgeDecomposition wedge(const std::vector<HomologyGroup>& kh, const StTable& table, int l, int j);

} // namespace khsq
