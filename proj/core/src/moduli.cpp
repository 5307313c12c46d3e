#include "khsq/moduli.hpp"

#include "khsq/error.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <unordered_map>

namespace khsq {

namespace {

int crossing_between(Vertex lo, Vertex hi) { return std::countr_zero(hi ^ lo); }

// S of the single term g -> target along crossing jx, or -1 if the term is absent.
int term_S(const ResolutionCube& cube, const Generator& g, int jx, Labeling target) {
    Term t[2];
    int nt = cube.terms(g.u, g.mask, jx, t);
    for (int a = 0; a < nt; ++a)
        if (t[a].mask == target) {
            Vertex v = g.u | (Vertex(1) << jx);
            return (standard_sign(v, g.u) + cube.sigma(g.u, jx, t[a].coeff)) & 1;
        }
    return -1;
}

// Intermediate generators of x -> y' -> z with the first step along crossing ja.
std::vector<Generator> paths_through(const ResolutionCube& cube, const Generator& x, int ja, int jb,
                                     const Generator& z) {
    std::vector<Generator> out;
    Term t[2], s[2];
    Vertex v = x.u | (Vertex(1) << ja);
    int nt = cube.terms(x.u, x.mask, ja, t);
    for (int a = 0; a < nt; ++a) {
        int ns = cube.terms(v, t[a].mask, jb, s);
        for (int b = 0; b < ns; ++b)
            if (s[b].mask == z.mask) out.push_back({v, t[a].mask});
    }
    return out;
}

} // namespace

ModuliPoint moduli_point(const Generator& gx, std::size_t x, const EdgeTerm& e) {
    ModuliPoint p;
    p.x = x;
    p.y = e.target;
    p.gx = gx;
    p.gy = e.y;
    p.crossing = e.crossing;
    p.s = e.s;
    p.s_z = e.s_z;
    p.sigma = e.sigma;
    return p;
}

Generator interval_partner(const KhComplex& c, const Generator& x, const Generator& y, const Generator& z) {
    const ResolutionCube& cube = c.cube();
    int ja = crossing_between(x.u, y.u);
    int jb = crossing_between(y.u, z.u);
    auto same = paths_through(cube, x, ja, jb, z);
    auto other = paths_through(cube, x, jb, ja, z);
    if (same.size() != other.size() || same.empty() || same.size() > 2)
        throw Error(ErrorKind::OddCount, "moduli", "composition counts differ across a face");
    if (std::find(same.begin(), same.end(), y) == same.end())
        throw Error(ErrorKind::InvariantViolation, "moduli", "chain is not a composition");
    Generator partner;
    if (same.size() == 1) {
        partner = other[0];
    } else {
        Vertex u = x.u;
        if (!cube.is_ladybug(u, std::min(ja, jb), std::max(ja, jb)))
            throw Error(ErrorKind::OddCount, "moduli", "two compositions on a non-ladybug face");
        const CubeEdge& e = cube.edge(u, ja);
        int p = (y.mask >> e.t1 & 1) ? e.t1 : e.t2;
        int q = cube.ladybug_partner(u, ja, jb, p);
        bool found = false;
        for (const auto& g : other)
            if (g.mask >> q & 1) {
                partner = g;
                found = true;
            }
        if (!found) throw Error(ErrorKind::InvariantViolation, "moduli", "ladybug partner not found");
    }
    int total = term_S(cube, x, ja, y.mask) + term_S(cube, y, jb, z.mask) + term_S(cube, x, jb, partner.mask) +
                term_S(cube, partner, ja, z.mask);
    if (total % 2 != 1)
        throw Error(ErrorKind::SignCriterionViolation, "moduli",
                    "interval at vertex " + std::to_string(x.u) + " fails the sign criterion");
    return partner;
}

IntervalCheck check_interval_matching(const KhComplex& c, int i, int j) {
    IntervalCheck out;
    const ResolutionCube& cube = c.cube();
    for (std::size_t xi = 0; xi < c.dim(i, j); ++xi) {
        Generator x = c.generator(i, j, xi);
        for (const auto& e1 : c.edges(x))
            for (const auto& e2 : c.edges(e1.y)) {
                Generator partner = interval_partner(c, x, e1.y, e2.y);
                Generator back = interval_partner(c, x, partner, e2.y);
                if (!(back == e1.y)) throw Error(ErrorKind::InvariantViolation, "moduli", "interval matching is not an involution");
                ++out.intervals;
                int ja = e1.crossing, jb = e2.crossing;
                if (cube.is_ladybug(x.u, std::min(ja, jb), std::max(ja, jb))) ++out.ladybug_intervals;
            }
    }
    out.intervals /= 2;
    out.ladybug_intervals /= 2;
    return out;
}

namespace {

FacewiseMatching collect(const KhComplex& c, int i, int j, const BitVec& mu) {
    if (mu.size() != c.dim(i, j)) throw Error(ErrorKind::DimensionMismatch, "moduli", "cochain length differs");
    FacewiseMatching m;
    m.i = i;
    m.j = j;
    m.by_y.resize(c.dim(i + 1, j));
    for (std::size_t x = mu.next(0); x < mu.size(); x = mu.next(x + 1)) {
        Generator gx = c.generator(i, j, x);
        for (const auto& e : c.edges(gx)) m.by_y[e.target].points.push_back(moduli_point(gx, x, e));
    }
    for (std::size_t y = 0; y < m.by_y.size(); ++y)
        if (m.by_y[y].points.size() % 2 != 0)
            throw Error(ErrorKind::OddBoundary, "moduli", "cochain is not a cocycle at y=" + std::to_string(y));
    return m;
}

} // namespace

FacewiseMatching facewise_matching(const KhComplex& c, int i, int j, const BitVec& mu) {
    FacewiseMatching m = collect(c, i, j, mu);
    for (auto& b : m.by_y) {
        std::sort(b.points.begin(), b.points.end(), [](const ModuliPoint& p, const ModuliPoint& q) {
            return p.s_z != q.s_z ? p.s_z < q.s_z : p.x < q.x;
        });
        b.ordered.assign(b.points.size() / 2, true);
    }
    return m;
}

FacewiseMatching random_matching(const KhComplex& c, int i, int j, const BitVec& mu, std::mt19937_64& rng) {
    FacewiseMatching m = collect(c, i, j, mu);
    for (auto& b : m.by_y) {
        std::shuffle(b.points.begin(), b.points.end(), rng);
        for (std::size_t k = 0; k + 1 < b.points.size(); k += 2) {
            auto& p = b.points[k];
            auto& q = b.points[k + 1];
            bool flip = p.s_z != q.s_z ? p.s_z > q.s_z : (rng() & 1);
            if (flip) std::swap(p, q);
        }
        b.ordered.assign(b.points.size() / 2, true);
    }
    return m;
}

FacewiseMatching signwise_matching(const FacewiseMatching& m) {
    FacewiseMatching out = m;
    for (auto& b : out.by_y)
        for (std::size_t k = 0; k < b.ordered.size(); ++k)
            b.ordered[k] = b.ordered[k] && b.points[2 * k].S() == b.points[2 * k + 1].S();
    return out;
}

void check_matching(const FacewiseMatching& m) {
    for (const auto& b : m.by_y) {
        if (b.points.size() % 2 != 0) throw Error(ErrorKind::OddBoundary, "moduli", "unpaired boundary point");
        if (b.ordered.size() != b.points.size() / 2)
            throw Error(ErrorKind::InvariantViolation, "moduli", "ordering flags do not match pairs");
        for (std::size_t k = 0; k < b.ordered.size(); ++k) {
            const auto& p = b.points[2 * k];
            const auto& q = b.points[2 * k + 1];
            if (p.x == q.x) throw Error(ErrorKind::InvariantViolation, "moduli", "point matched with itself");
            if (p.s_z > q.s_z && b.ordered[k])
                throw Error(ErrorKind::InvariantViolation, "moduli", "pair ordered against the index rule");
            if (p.s_z != q.s_z && !b.ordered[k] && p.S() == q.S())
                throw Error(ErrorKind::InvariantViolation, "moduli", "same-sign pair left unordered");
        }
    }
}

std::vector<BoundaryGraph> build_gammas(const KhComplex& c, const FacewiseMatching& m, GammaMode mode) {
    const int i = m.i, j = m.j;
    std::unordered_map<std::size_t, std::size_t> graph_of; // z index -> slot
    std::vector<BoundaryGraph> graphs;
    std::vector<std::unordered_map<std::uint64_t, int>> lookup;
    auto key = [](std::size_t y, std::uint32_t pos) { return (std::uint64_t(y) << 20) | pos; };

    for (std::size_t y = 0; y < m.by_y.size(); ++y) {
        const auto& b = m.by_y[y];
        if (b.points.empty()) continue;
        Generator gy = c.generator(i + 1, j, y);
        for (const auto& q : c.edges(gy)) {
            auto it = graph_of.find(q.target);
            if (it == graph_of.end()) {
                it = graph_of.emplace(q.target, graphs.size()).first;
                graphs.emplace_back();
                graphs.back().z = q.y;
                graphs.back().z_index = q.target;
                lookup.emplace_back();
            }
            BoundaryGraph& g = graphs[it->second];
            for (std::uint32_t pos = 0; pos < b.points.size(); ++pos) {
                lookup[it->second][key(y, pos)] = static_cast<int>(g.vertices.size());
                g.vertices.push_back({y, pos, q});
            }
        }
    }

    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
        BoundaryGraph& g = graphs[gi];
        std::size_t nv = g.vertices.size();
        g.e_prime.assign(nv, -1);
        g.e_match.assign(nv, -1);
        g.direction.assign(nv, 0);
        g.S.assign(nv, 0);
        g.S_Z.assign(nv, 0);
        g.sigma2.assign(nv, 0);
        g.sigma_p.assign(nv, 0);
        for (std::size_t v = 0; v < nv; ++v) {
            const GammaVertex& gv = g.vertices[v];
            const auto& b = m.by_y[gv.y];
            const ModuliPoint& p = b.points[gv.pos];
            g.S[v] = (p.S() + gv.q.S()) & 1;
            g.S_Z[v] = gv.q.s_z;
            g.sigma2[v] = gv.q.sigma;
            g.sigma_p[v] = p.sigma;

            std::uint32_t mate = gv.pos ^ 1u;
            g.e_match[v] = lookup[gi].at(key(gv.y, mate));
            bool ordered = b.ordered[gv.pos / 2];
            if (mode == GammaMode::Schutz) ordered = ordered && p.S() == b.points[mate].S();
            if (ordered) g.direction[v] = (gv.pos % 2 == 0) ? 1 : -1;

            Generator y2 = interval_partner(c, p.gx, p.gy, g.z);
            std::size_t y2i = c.index(y2);
            const auto& b2 = m.by_y[y2i];
            int found = -1;
            for (std::uint32_t k = 0; k < b2.points.size(); ++k)
                if (b2.points[k].x == p.x) found = static_cast<int>(k);
            if (found < 0) throw Error(ErrorKind::DanglingVertex, "moduli", "interval partner has no boundary point");
            auto it = lookup[gi].find(key(y2i, static_cast<std::uint32_t>(found)));
            if (it == lookup[gi].end()) throw Error(ErrorKind::DanglingVertex, "moduli", "interval partner outside graph");
            g.e_prime[v] = it->second;
        }
        check_graph(g);
    }
    std::sort(graphs.begin(), graphs.end(),
              [](const BoundaryGraph& a, const BoundaryGraph& b) { return a.z_index < b.z_index; });
    return graphs;
}

BoundaryGraph build_gamma(const KhComplex& c, const FacewiseMatching& m, std::size_t z, GammaMode mode) {
    for (auto& g : build_gammas(c, m, mode))
        if (g.z_index == z) return g;
    BoundaryGraph empty;
    empty.z = c.generator(m.i + 2, m.j, z);
    empty.z_index = z;
    return empty;
}

void check_graph(const BoundaryGraph& g) {
    int nv = static_cast<int>(g.size());
    for (int v = 0; v < nv; ++v) {
        int a = g.e_prime[v], b = g.e_match[v];
        if (a < 0 || b < 0 || a == v || b == v || a == b || g.e_prime[a] != v || g.e_match[b] != v)
            throw Error(ErrorKind::DanglingVertex, "moduli", "vertex is not on exactly one edge of each kind");
        if (g.S_Z[b] != g.S_Z[v] || g.sigma2[b] != g.sigma2[v])
            throw Error(ErrorKind::DanglingVertex, "moduli", "matching edge changes the index or odd sign");
        if (g.S_Z[a] == g.S_Z[v]) throw Error(ErrorKind::DanglingVertex, "moduli", "interval edge keeps the index");
        if (g.direction[v] != -g.direction[b]) throw Error(ErrorKind::DanglingVertex, "moduli", "inconsistent direction");
    }
    for (const auto& cyc : cycles(g)) {
        int coherent = 0;
        for (int w : cyc.middles)
            if (g.S[w] == g.S[g.e_match[w]]) ++coherent;
        if (coherent % 2 != 0)
            throw Error(ErrorKind::InvariantViolation, "moduli", "cycle with an odd number of same-sign matching edges");
    }
}

std::vector<GraphCycle> cycles(const BoundaryGraph& g) {
    std::vector<GraphCycle> out;
    std::vector<bool> seen(g.size(), false);
    for (std::size_t v0 = 0; v0 < g.size(); ++v0) {
        if (seen[v0]) continue;
        GraphCycle cyc;
        int v = static_cast<int>(v0);
        do {
            seen[v] = true;
            int w = g.e_prime[v];
            if (seen[w]) throw Error(ErrorKind::DanglingVertex, "moduli", "cycle closes on an interval edge");
            seen[w] = true;
            cyc.starts.push_back(v);
            cyc.middles.push_back(w);
            v = g.e_match[w];
        } while (v != static_cast<int>(v0) && !seen[v]);
        if (v != static_cast<int>(v0)) throw Error(ErrorKind::DanglingVertex, "moduli", "walk does not close");
        out.push_back(std::move(cyc));
    }
    return out;
}

std::string BoundaryGraph::dump() const {
    std::ostringstream os;
    os << "z=" << z_index << " vertices=" << size() << "\n";
    for (std::size_t v = 0; v < size(); ++v)
        os << v << ": y=" << vertices[v].y << " p=" << vertices[v].pos << " S=" << S[v] << " SZ=" << S_Z[v]
           << " sigma2=" << sigma2[v] << " interval->" << e_prime[v] << " match->" << e_match[v]
           << (direction[v] > 0 ? " out" : direction[v] < 0 ? " in" : "") << "\n";
    return os.str();
}

} // namespace khsq
