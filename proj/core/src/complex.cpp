#include "khsq/complex.hpp"

#include "khsq/error.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace khsq {

namespace {

struct Binomials {
    std::uint64_t c[33][33] = {};
    Binomials() {
        for (int n = 0; n <= 32; ++n) {
            c[n][0] = 1;
            for (int k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
        }
    }
};

const Binomials& binomials() {
    static const Binomials b;
    return b;
}

} // namespace

std::uint64_t labeling_rank(Labeling mask) {
    std::uint64_t r = 0;
    int t = 1;
    for (Labeling w = mask; w; w &= w - 1, ++t) r += binomials().c[std::countr_zero(w)][t];
    return r;
}

Labeling labeling_unrank(std::uint64_t rank, int weight) {
    Labeling mask = 0;
    int pos = 31;
    for (int t = weight; t >= 1; --t) {
        while (binomials().c[pos][t] > rank) --pos;
        rank -= binomials().c[pos][t];
        mask |= Labeling(1) << pos;
        --pos;
    }
    return mask;
}

KhComplex::KhComplex(const LinkDiagram& d, LadybugRule rule)
    : KhComplex(std::make_shared<const ResolutionCube>(d, rule)) {}

KhComplex::KhComplex(std::shared_ptr<const ResolutionCube> cube) : cube_(std::move(cube)) {
    const auto& c = *cube_;
    i_min_ = -c.diagram().n_minus();
    i_max_ = c.n() - c.diagram().n_minus();
    for (Vertex u = 0; u <= c.top(); ++u) {
        int k = c.n_circles(u);
        int i = c.hom_grading(u);
        for (int p = 0; p <= k; ++p) {
            int j = c.q_grading(u, p == 0 ? 0 : (Labeling(1) << p) - 1);
            Block& b = blocks_[{i, j}];
            if (b.offsets.empty()) b.offsets.push_back(0);
            b.verts.push_back(u);
            b.offsets.push_back(b.offsets.back() + binomials().c[k][p]);
        }
    }
}

std::vector<int> KhComplex::q_gradings() const {
    std::set<int> js;
    for (const auto& [key, b] : blocks_) js.insert(key.second);
    return {js.begin(), js.end()};
}

const KhComplex::Block* KhComplex::block(int i, int j) const {
    auto it = blocks_.find({i, j});
    return it == blocks_.end() ? nullptr : &it->second;
}

std::size_t KhComplex::dim(int i, int j) const {
    const Block* b = block(i, j);
    return b ? b->offsets.back() : 0;
}

int KhComplex::minus_count(Vertex u, int j) const {
    const auto& c = *cube_;
    int base = c.n_circles(u) + std::popcount(u) + c.diagram().n_plus() - 2 * c.diagram().n_minus();
    return (base - j) / 2;
}

Generator KhComplex::generator(int i, int j, std::size_t idx) const {
    const Block* b = block(i, j);
    if (!b || idx >= b->offsets.back()) throw Error(ErrorKind::BadArgument, "cube", "generator index out of range");
    auto it = std::upper_bound(b->offsets.begin(), b->offsets.end(), idx);
    std::size_t k = static_cast<std::size_t>(it - b->offsets.begin()) - 1;
    Vertex u = b->verts[k];
    return {u, labeling_unrank(idx - b->offsets[k], minus_count(u, j))};
}

std::pair<int, int> KhComplex::bidegree(const Generator& g) const {
    return {cube_->hom_grading(g.u), cube_->q_grading(g.u, g.mask)};
}

std::size_t KhComplex::index(const Generator& g) const {
    auto [i, j] = bidegree(g);
    const Block* b = block(i, j);
    if (!b) throw Error(ErrorKind::BadArgument, "cube", "generator outside the complex");
    auto it = std::lower_bound(b->verts.begin(), b->verts.end(), g.u);
    if (it == b->verts.end() || *it != g.u) throw Error(ErrorKind::BadArgument, "cube", "generator outside the complex");
    return b->offsets[it - b->verts.begin()] + labeling_rank(g.mask);
}

std::vector<EdgeTerm> KhComplex::edges(const Generator& g) const {
    const auto& c = *cube_;
    std::vector<EdgeTerm> out;
    Term t[2];
    for (int jx = 0; jx < c.n(); ++jx) {
        if (g.u >> jx & 1) continue;
        Vertex v = g.u | (Vertex(1) << jx);
        int nt = c.terms(g.u, g.mask, jx, t);
        for (int a = 0; a < nt; ++a) {
            EdgeTerm e;
            e.y = {v, t[a].mask};
            e.target = index(e.y);
            e.crossing = jx;
            e.coeff = t[a].coeff;
            e.s_z = edge_index(v, g.u);
            e.s = e.s_z & 1;
            e.sigma = c.sigma(g.u, jx, t[a].coeff);
            out.push_back(e);
        }
    }
    return out;
}

std::vector<EdgeTerm> KhComplex::edges(int i, int j, std::size_t idx) const { return edges(generator(i, j, idx)); }

GradedMatrix KhComplex::differential(int i, int j, Parity p, Ring r) const {
    GradedMatrix m(r, dim(i + 1, j), dim(i, j));
    m.i = i;
    m.j = j;
    for (std::size_t x = 0; x < m.cols; ++x) {
        for (const auto& e : edges(i, j, x))
            m.columns[x].push_back({static_cast<std::uint32_t>(e.target), r == Ring::F2 ? 1 : e.sign(p)});
        std::sort(m.columns[x].begin(), m.columns[x].end());
    }
    return m;
}

CochainComplex KhComplex::cochain_complex(int j, Parity p, Ring r) const {
    CochainComplex cc;
    cc.j = j;
    cc.i_min = i_min_;
    for (int i = i_min_; i <= i_max_; ++i) cc.dims.push_back(dim(i, j));
    for (int i = i_min_; i < i_max_; ++i) cc.d.push_back(differential(i, j, p, r));
    return cc;
}

std::vector<HomologyGroup> khovanov_homology(const KhComplex& c, Parity p, Ring r) {
    std::vector<HomologyGroup> out;
    for (int j : c.q_gradings()) {
        auto h = homology(c.cochain_complex(j, p, r), r);
        out.insert(out.end(), h.begin(), h.end());
    }
    std::sort(out.begin(), out.end(), [](const HomologyGroup& a, const HomologyGroup& b) {
        return a.j != b.j ? a.j < b.j : a.i < b.i;
    });
    return out;
}

namespace {

std::map<std::pair<int, int>, GradedMatrix> all_differentials(const KhComplex& c, Parity p, Ring r) {
    std::map<std::pair<int, int>, GradedMatrix> out;
    for (int j : c.q_gradings())
        for (int i = c.i_min(); i < c.i_max(); ++i)
            if (c.dim(i, j) > 0 || c.dim(i + 1, j) > 0) out[{i, j}] = c.differential(i, j, p, r);
    return out;
}

} // namespace

std::map<std::pair<int, int>, GradedMatrix> even_differential(const KhComplex& c, Ring r) {
    return all_differentials(c, Parity::Even, r);
}

std::map<std::pair<int, int>, GradedMatrix> odd_differential(const KhComplex& c, Ring r) {
    return all_differentials(c, Parity::Odd, r);
}

} // namespace khsq
