#pragma once

#include "khsq/classify.hpp"
#include "khsq/complex.hpp"
#include "khsq/link.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#ifndef KHSQ_DATA_DIR
#define KHSQ_DATA_DIR "data"
#endif

namespace khsq::test {

inline const std::string kTable = KHSQ_DATA_DIR "/knots.pdtab";
inline const std::string kStTable = KHSQ_DATA_DIR "/st_table.tsv";
inline const std::string kKnotInfo = KHSQ_DATA_DIR "/knotinfo_kh.tsv";

inline LinkDiagram named(const std::string& n) { return load_named(kTable, n); }

using Dense = std::vector<std::vector<mpz_class>>;

inline Dense dense(const GradedMatrix& m) {
    Dense a(m.rows, std::vector<mpz_class>(m.cols, 0));
    for (std::size_t c = 0; c < m.cols; ++c)
        for (auto [r, v] : m.columns[c]) a[r][c] += v;
    return a;
}

// Invariant factors by repeated smallest-pivot reduction; deliberately naive.
inline std::vector<mpz_class> naive_invariant_factors(Dense a) {
    std::vector<mpz_class> out;
    std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::size_t t = 0;
    while (t < rows && t < cols) {
        // smallest nonzero in the trailing block
        std::size_t pr = rows, pc = cols;
        for (std::size_t r = t; r < rows; ++r)
            for (std::size_t c = t; c < cols; ++c)
                if (a[r][c] != 0 && (pr == rows || abs(a[r][c]) < abs(a[pr][pc]))) {
                    pr = r;
                    pc = c;
                }
        if (pr == rows) break;
        std::swap(a[t], a[pr]);
        for (auto& row : a) std::swap(row[t], row[pc]);
        bool clean = true;
        for (std::size_t r = t + 1; r < rows; ++r) {
            mpz_class q = a[r][t] / a[t][t];
            if (q != 0)
                for (std::size_t c = t; c < cols; ++c) a[r][c] -= q * a[t][c];
            if (a[r][t] != 0) clean = false;
        }
        for (std::size_t c = t + 1; c < cols; ++c) {
            mpz_class q = a[t][c] / a[t][t];
            if (q != 0)
                for (std::size_t r = t; r < rows; ++r) a[r][c] -= q * a[r][t];
            if (a[t][c] != 0) clean = false;
        }
        if (!clean) continue;
        // divisibility: fold a non-multiple entry into the pivot row
        bool divides = true;
        for (std::size_t r = t + 1; r < rows && divides; ++r)
            for (std::size_t c = t + 1; c < cols; ++c)
                if (a[r][c] % a[t][t] != 0) {
                    for (std::size_t k = t; k < cols; ++k) a[t][k] += a[r][k];
                    divides = false;
                    break;
                }
        if (!divides) continue;
        out.push_back(abs(a[t][t]));
        ++t;
    }
    return out;
}

// (i, j) -> (rank, sorted torsion orders) from the integral cochain complexes.
using Groups = std::map<std::pair<int, int>, std::pair<long, std::vector<unsigned long>>>;

inline Groups oracle_homology(const KhComplex& c, Parity p) {
    Groups g;
    for (int j : c.q_gradings()) {
        CochainComplex cc = c.cochain_complex(j, p, Ring::Z);
        for (int i = cc.i_min; i <= cc.i_max(); ++i) {
            auto out = naive_invariant_factors(dense(cc.diff(i)));
            auto in = naive_invariant_factors(dense(cc.diff(i - 1)));
            long rank = static_cast<long>(cc.dim(i)) - static_cast<long>(out.size()) - static_cast<long>(in.size());
            std::vector<unsigned long> tors;
            for (const auto& f : in)
                if (f > 1)
                    for (auto q : prime_power_parts(f.get_ui())) tors.push_back(q);
            std::sort(tors.begin(), tors.end());
            if (rank || !tors.empty()) g[{i, j}] = {rank, tors};
        }
    }
    return g;
}

inline Groups as_groups(const std::vector<HomologyGroup>& kh) {
    Groups g;
    for (const auto& h : kh) {
        if (h.trivial()) continue;
        auto t = h.torsion;
        std::sort(t.begin(), t.end());
        g[{h.i, h.j}] = {static_cast<long>(h.rank), t};
    }
    return g;
}

inline std::map<std::pair<int, int>, std::array<int, 4>> st_map(const StTable& t) {
    std::map<std::pair<int, int>, std::array<int, 4>> m;
    for (const auto& e : t.entries) m[{e.i, e.j}] = e.x;
    return m;
}

} // namespace khsq::test
