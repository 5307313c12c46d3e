#include "khsq/classify.hpp"

#include "khsq/error.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace khsq {

namespace {

// Kernel of the map sending basis vector k to images[k].
std::vector<BitVec> kernel_of(const std::vector<BitVec>& images, std::size_t target_dim) {
    std::size_t n = images.size();
    F2Reducer red(target_dim, n);
    std::vector<BitVec> ker;
    for (std::size_t k = 0; k < n; ++k) {
        BitVec v = images[k];
        BitVec tag(n);
        tag.set(k);
        if (red.reduce(v, &tag)) ker.push_back(std::move(tag));
        else red.insert(std::move(v), std::move(tag));
    }
    return ker;
}

BitVec combine(const std::vector<BitVec>& images, const BitVec& coeffs, std::size_t target_dim) {
    BitVec out(target_dim);
    for (std::size_t k = coeffs.next(0); k < coeffs.size(); k = coeffs.next(k + 1)) out ^= images[k];
    return out;
}

std::size_t span_rank(const std::vector<BitVec>& vs, std::size_t dim) {
    F2Reducer red(dim, 0);
    for (const auto& v : vs) red.insert(v);
    return red.rank();
}

std::size_t meet_dim(const std::vector<BitVec>& a, const std::vector<BitVec>& b, std::size_t dim) {
    std::vector<BitVec> both = a;
    both.insert(both.end(), b.begin(), b.end());
    return span_rank(a, dim) + span_rank(b, dim) - span_rank(both, dim);
}

} // namespace

std::string StEntry::str() const {
    std::ostringstream os;
    os << "(" << i << ", " << j << ")↦(" << x[0] << ", " << x[1] << ", " << x[2] << ", " << x[3] << ")";
    return os.str();
}

std::array<int, 4> StTable::at(int i, int j) const {
    for (const auto& e : entries)
        if (e.i == i && e.j == j) return e.x;
    return {};
}

StEntry st_at(CohomologyOps& ops, int i, int l) {
    StEntry e;
    e.i = i;
    e.j = ops.j();
    std::size_t h0 = ops.cohomology(i).dim();
    std::size_t h2 = ops.cohomology(i + 2).dim();
    if (h0 == 0 || h2 == 0) return e;
    std::size_t h1 = ops.cohomology(i + 1).dim();
    auto s2 = ops.sq2(i, l);
    auto s1a = ops.sq1(i);
    auto s1b = ops.sq1(i + 1);
    std::vector<BitVec> s2_ker;
    for (const auto& k : kernel_of(s1a, h1)) s2_ker.push_back(combine(s2, k, h2));
    int r1 = static_cast<int>(span_rank(s2, h2));
    int r2 = static_cast<int>(span_rank(s2_ker, h2));
    int r3 = static_cast<int>(meet_dim(s1b, s2, h2));
    int r4 = static_cast<int>(meet_dim(s1b, s2_ker, h2));
    e.r = {r1, r2, r3, r4};
    e.x = {r2 - r4, r1 - r2 - r3 + r4, r4, r3 - r4};
    for (int v : e.x)
        if (v < 0)
            throw Error(ErrorKind::InvariantViolation, "classify",
                        "negative St entry at (" + std::to_string(i) + "," + std::to_string(e.j) + ")");
    return e;
}

std::vector<StEntry> st_grading(const KhComplex& c, int l, int j) {
    std::vector<StEntry> out;
    bool any = false;
    for (int i = c.i_min(); i + 2 <= c.i_max(); ++i)
        if (c.dim(i, j) && c.dim(i + 2, j)) any = true;
    if (!any) return out;
    CohomologyOps ops(c, j, parity_of_l(l));
    for (int i = c.i_min(); i + 2 <= c.i_max(); ++i) {
        if (!c.dim(i, j) || !c.dim(i + 2, j)) continue;
        StEntry e = st_at(ops, i, l);
        if (!e.zero()) out.push_back(e);
    }
    return out;
}

void sort_entries(std::vector<StEntry>& entries) {
    std::sort(entries.begin(), entries.end(),
              [](const StEntry& a, const StEntry& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
}

StTable st(const KhComplex& c, int l) {
    StTable t;
    t.l = l;
    for (int j : c.q_gradings()) {
        auto part = st_grading(c, l, j);
        t.entries.insert(t.entries.end(), part.begin(), part.end());
    }
    sort_entries(t.entries);
    return t;
}

HypothesisReport check_hypotheses(const std::vector<HomologyGroup>& kh) {
    HypothesisReport r;
    bool first = true;
    for (const auto& g : kh) {
        if (g.trivial()) continue;
        int d = 2 * g.i - g.j;
        if (first || d < r.sigma) r.sigma = d;
        first = false;
    }
    for (const auto& g : kh) {
        if (g.trivial()) continue;
        int d = 2 * g.i - g.j;
        if (d != r.sigma && d != r.sigma + 2 && d != r.sigma + 4) {
            r.diagonals = false;
            r.off_diagonal.push_back({g.i, g.j});
        }
        for (auto t : g.torsion)
            if (t != 2 && t != 3) {
                r.torsion = false;
                r.bad_torsion.push_back({g.i, g.j});
                r.bad_orders.push_back(t);
            }
        if (d == r.sigma && !g.torsion.empty()) {
            r.lowest_diagonal = false;
            r.lowest_torsion.push_back({g.i, g.j});
        }
    }
    return r;
}

std::string HypothesisReport::str() const {
    std::ostringstream os;
    os << "sigma=" << sigma << " diagonals=" << (diagonals ? "pass" : "fail") << " torsion=" << (torsion ? "pass" : "fail")
       << " lowest-diagonal=" << (lowest_diagonal ? "pass" : "fail");
    for (std::size_t k = 0; k < bad_torsion.size(); ++k)
        os << " Z/" << bad_orders[k] << "@(" << bad_torsion[k].first << "," << bad_torsion[k].second << ")";
    for (auto [i, j] : off_diagonal) os << " off-diagonal@(" << i << "," << j << ")";
    for (auto [i, j] : lowest_torsion) os << " lowest-torsion@(" << i << "," << j << ")";
    return os.str();
}

WedgeDecomposition wedge(const std::vector<HomologyGroup>& kh, const StTable& table, int l, int j) {
    HypothesisReport rep = check_hypotheses(kh);
    if (!rep.ok())
        throw Error(ErrorKind::HypothesesFail, "classify",
                    rep.str() + "; the Chang-complex refinement is not implemented");
    WedgeDecomposition w;
    w.l = l;
    w.j = j;
    if ((rep.sigma + j) % 2 != 0) return w;
    w.i = (rep.sigma + j) / 2;
    auto x = table.at(w.i, j);
    w.cp2 = x[0];
    w.rp5_rp2 = x[1];
    w.rp4_rp1 = x[2];
    w.rp2_rp2 = x[3];

    // remaining free ranks and cyclic torsion per degree
    std::map<int, long> free;
    std::map<int, std::map<unsigned long, long>> tors;
    for (const auto& g : kh) {
        if (g.j != j) continue;
        free[g.i] += static_cast<long>(g.rank);
        for (auto t : g.torsion) ++tors[g.i][t];
    }
    const int i = w.i;
    free[i] -= w.cp2 + w.rp4_rp1;
    free[i + 2] -= w.cp2 + w.rp5_rp2;
    tors[i + 1][2] -= w.rp5_rp2 + w.rp2_rp2;
    tors[i + 2][2] -= w.rp4_rp1 + w.rp2_rp2;
    for (auto& [k, r] : free) {
        if (r < 0) throw Error(ErrorKind::InvariantViolation, "classify", "St summands exceed free homology");
        if (r > 0) w.moore.push_back({k, 0, static_cast<int>(r)});
    }
    for (auto& [k, ts] : tors)
        for (auto& [t, cnt] : ts) {
            if (cnt < 0) throw Error(ErrorKind::InvariantViolation, "classify", "St summands exceed torsion");
            if (cnt > 0) w.moore.push_back({k, t, static_cast<int>(cnt)});
        }
    std::sort(w.moore.begin(), w.moore.end(), [](const MooreSummand& a, const MooreSummand& b) {
        return a.degree != b.degree ? a.degree < b.degree : a.order < b.order;
    });
    return w;
}

std::string WedgeDecomposition::str() const {
    std::ostringstream os;
    os << "X_" << l << "^" << j << " ~ ";
    bool first = true;
    auto part = [&](int count, const std::string& name, int shift) {
        if (count == 0) return;
        if (!first) os << " v ";
        first = false;
        if (count > 1) os << count << "x";
        os << "S^" << shift << " " << name;
    };
    part(cp2, "CP2", i - 2);
    part(rp5_rp2, "RP5/RP2", i - 3);
    part(rp4_rp1, "RP4/RP1", i - 2);
    part(rp2_rp2, "RP2^RP2", i - 2);
    for (const auto& m : moore) {
        if (!first) os << " v ";
        first = false;
        if (m.count > 1) os << m.count << "x";
        os << "M(" << (m.order == 0 ? std::string("Z") : "Z/" + std::to_string(m.order)) << "," << m.degree << ")";
    }
    if (first) os << "*";
    return os.str();
}

} // namespace khsq
