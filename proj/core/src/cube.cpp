#include "khsq/cube.hpp"

#include "khsq/error.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <sstream>

namespace khsq {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

int highest_bit(Vertex u) { return 31 - std::countl_zero(u); }

} // namespace

Resolution resolve(const LinkDiagram& d, Vertex u) {
    const auto& labels = d.labels();
    int top = d.max_label();
    std::vector<int> slot(top + 1, -1);
    for (size_t i = 0; i < labels.size(); ++i) slot[labels[i]] = static_cast<int>(i);
    UnionFind uf(static_cast<int>(labels.size()));
    for (int k = 0; k < d.n_crossings(); ++k) {
        const auto& x = d.crossings()[k];
        if (u >> k & 1) {
            uf.unite(slot[x[0]], slot[x[3]]);
            uf.unite(slot[x[1]], slot[x[2]]);
        } else {
            uf.unite(slot[x[0]], slot[x[1]]);
            uf.unite(slot[x[2]], slot[x[3]]);
        }
    }
    Resolution r;
    r.vertex = u;
    r.circle_of_label.assign(top + 1, -1);
    std::map<int, int> root_id;
    for (size_t i = 0; i < labels.size(); ++i) {
        int root = uf.find(static_cast<int>(i));
        auto it = root_id.find(root);
        if (it == root_id.end()) it = root_id.emplace(root, r.n_circles++).first;
        r.circle_of_label[labels[i]] = it->second;
    }
    r.n_circles += d.n_free_loops();
    return r;
}

int edge_index(Vertex T, Vertex S) {
    Vertex diff = T ^ S;
    if ((S & ~T) != 0 || std::popcount(diff) != 1)
        throw Error(ErrorKind::NotAnEdge, "cube", "vertices do not differ by one crossing");
    Vertex below = diff - 1;
    return std::popcount(S & below);
}

int standard_sign(Vertex T, Vertex S) { return edge_index(T, S) & 1; }

int sort_parity(const int* v, int len) {
    int inv = 0;
    for (int a = 0; a < len; ++a)
        for (int b = a + 1; b < len; ++b)
            if (v[a] > v[b]) ++inv;
    return inv & 1;
}

ResolutionCube::ResolutionCube(LinkDiagram d, LadybugRule rule) : diagram_(std::move(d)), rule_(rule) {
    n_ = diagram_.n_crossings();
    if (n_ > 20) throw Error(ErrorKind::BadArgument, "cube", "too many crossings");
    build_resolutions();
    build_edges();
    solve_epsilon();
}

void ResolutionCube::build_resolutions() {
    const auto& labels = diagram_.labels();
    n_labels_ = static_cast<int>(labels.size());
    label_slot_.assign(diagram_.max_label() + 1, -1);
    for (int i = 0; i < n_labels_; ++i) label_slot_[labels[i]] = i;
    std::size_t nv = std::size_t(1) << n_;
    ncirc_.assign(nv, 0);
    circ_.assign(nv * n_labels_, -1);
    max_circles_ = 0;
    for (Vertex u = 0; u < nv; ++u) {
        Resolution r = resolve(diagram_, u);
        if (r.n_circles > 31) throw Error(ErrorKind::BadArgument, "cube", "more than 31 circles");
        ncirc_[u] = static_cast<std::uint8_t>(r.n_circles);
        max_circles_ = std::max(max_circles_, r.n_circles);
        for (int i = 0; i < n_labels_; ++i)
            circ_[std::size_t(u) * n_labels_ + i] = static_cast<std::int8_t>(r.circle_of_label[labels[i]]);
    }
}

int ResolutionCube::circle_of(Vertex u, int label) const {
    return circ_[std::size_t(u) * n_labels_ + label_slot_[label]];
}

void ResolutionCube::build_edges() {
    std::size_t nv = std::size_t(1) << n_;
    edges_.assign(nv * n_, CubeEdge{});
    maps_.clear();
    int loops = diagram_.n_free_loops();
    for (Vertex u = 0; u < nv; ++u) {
        for (int j = 0; j < n_; ++j) {
            if (u >> j & 1) continue;
            Vertex v = u | (Vertex(1) << j);
            const auto& x = diagram_.crossings()[j];
            CubeEdge e;
            e.map_offset = static_cast<std::uint32_t>(maps_.size());
            int nu = ncirc_[u];
            maps_.resize(maps_.size() + nu, 0);
            std::uint8_t* m = maps_.data() + e.map_offset;
            for (int i = 0; i < n_labels_; ++i)
                m[circ_[std::size_t(u) * n_labels_ + i]] =
                    static_cast<std::uint8_t>(circ_[std::size_t(v) * n_labels_ + i]);
            for (int f = 0; f < loops; ++f) m[nu - loops + f] = static_cast<std::uint8_t>(ncirc_[v] - loops + f);
            int ca = circle_of(u, x[0]), cc = circle_of(u, x[2]);
            if (ca != cc) {
                e.merge = true;
                e.ca = static_cast<std::uint8_t>(ca);
                e.cb = static_cast<std::uint8_t>(cc);
                e.t1 = static_cast<std::uint8_t>(circle_of(v, x[0]));
                e.t2 = e.t1;
            } else {
                e.merge = false;
                e.ca = e.cb = static_cast<std::uint8_t>(ca);
                e.t1 = static_cast<std::uint8_t>(circle_of(v, x[0]));
                e.t2 = static_cast<std::uint8_t>(circle_of(v, x[1]));
                if (e.t1 == e.t2) throw Error(ErrorKind::InvariantViolation, "cube", "split edge without two circles");
                m[ca] = e.t1;
            }
            edges_[std::size_t(u) * n_ + j] = e;
        }
    }
}

int ResolutionCube::terms(Vertex u, Labeling mask, int j, Term out[2]) const {
    const CubeEdge& e = edge(u, j);
    const std::uint8_t* m = maps_.data() + e.map_offset;
    int list[34];
    int len = 0;
    Labeling image = 0;
    if (e.merge) {
        bool has_a = mask >> e.ca & 1, has_b = mask >> e.cb & 1;
        if (has_a && has_b) return 0;
        for (Labeling w = mask; w; w &= w - 1) {
            int c = std::countr_zero(w);
            list[len++] = m[c];
            image |= Labeling(1) << m[c];
        }
        out[0] = {image, sort_parity(list, len) ? -1 : 1};
        return 1;
    }
    bool has_c = mask >> e.ca & 1;
    list[len++] = 0; // slot for the new factor
    for (Labeling w = mask; w; w &= w - 1) {
        int c = std::countr_zero(w);
        list[len++] = m[c];
        image |= Labeling(1) << m[c];
    }
    if (has_c) {
        // (t1 - t2) ^ w with t1 already in w
        list[0] = e.t2;
        out[0] = {image | (Labeling(1) << e.t2), sort_parity(list, len) ? 1 : -1};
        return 1;
    }
    list[0] = e.t1;
    out[0] = {image | (Labeling(1) << e.t1), sort_parity(list, len) ? -1 : 1};
    list[0] = e.t2;
    out[1] = {image | (Labeling(1) << e.t2), sort_parity(list, len) ? 1 : -1};
    return 2;
}

int ResolutionCube::hom_grading(Vertex u) const { return std::popcount(u) - diagram_.n_minus(); }

int ResolutionCube::q_grading(Vertex u, Labeling mask) const {
    int k = ncirc_[u];
    int minus = std::popcount(mask);
    return (k - 2 * minus) + std::popcount(u) + diagram_.n_plus() - 2 * diagram_.n_minus();
}

bool ResolutionCube::is_ladybug(Vertex u, int j1, int j2) const {
    const CubeEdge& e1 = edge(u, j1);
    const CubeEdge& e2 = edge(u, j2);
    if (e1.merge || e2.merge || e1.ca != e2.ca) return false;
    Vertex v1 = u | (Vertex(1) << j1);
    return edge(v1, j2).merge;
}

int ResolutionCube::ladybug_label(int j) const {
    return diagram_.crossings()[j][rule_ == LadybugRule::Right ? 0 : 1];
}

int ResolutionCube::ladybug_partner(Vertex u, int j1, int j2, int c1) const {
    Vertex v1 = u | (Vertex(1) << j1), v2 = u | (Vertex(1) << j2);
    int la = ladybug_label(j1);
    int lc = diagram_.crossings()[j1][rule_ == LadybugRule::Right ? 2 : 3];
    if (circle_of(v1, la) == c1) return circle_of(v2, la);
    if (circle_of(v1, lc) == c1) return circle_of(v2, lc);
    throw Error(ErrorKind::InvariantViolation, "cube", "circle is not part of the ladybug");
}

int ResolutionCube::compute_face_type(Vertex u, int j1, int j2) const {
    Vertex v1 = u | (Vertex(1) << j1), v2 = u | (Vertex(1) << j2);
    Term t[2], s[2];
    if (is_ladybug(u, j1, j2)) {
        // path sign parity keyed by the intermediate circle carrying x
        auto side = [&](Vertex v, int ja, int jb) {
            std::map<int, int> neg;
            int nt = terms(u, 0, ja, t);
            for (int a = 0; a < nt; ++a) {
                int ns = terms(v, t[a].mask, jb, s);
                if (ns != 1) throw Error(ErrorKind::InvariantViolation, "cube", "ladybug path count");
                int circle = std::countr_zero(t[a].mask);
                neg[circle] = ((t[a].coeff < 0) + (s[0].coeff < 0)) & 1;
            }
            return neg;
        };
        auto n1 = side(v1, j1, j2);
        auto n2 = side(v2, j2, j1);
        if (n1.size() != 2 || n2.size() != 2)
            throw Error(ErrorKind::InvariantViolation, "cube", "ladybug face without two paths per side");
        int type = -1;
        for (auto [c1, p1] : n1) {
            int c2 = ladybug_partner(u, j1, j2, c1);
            auto it = n2.find(c2);
            if (it == n2.end()) throw Error(ErrorKind::InvariantViolation, "cube", "ladybug partner missing");
            int ty = (p1 + it->second) & 1;
            if (type >= 0 && ty != type)
                throw Error(ErrorKind::NoValidAssignment, "cube", "ladybug pairs disagree on face type");
            type = ty;
        }
        // the partner rule must read the same from the second crossing
        const auto& x2 = diagram_.crossings()[j2];
        int l2 = x2[rule_ == LadybugRule::Right ? 0 : 1];
        if (ladybug_partner(u, j1, j2, circle_of(v1, l2)) != circle_of(v2, l2))
            throw Error(ErrorKind::InvariantViolation, "cube", "ladybug rule not symmetric in the two crossings");
        return type;
    }
    auto side = [&](Vertex v, int ja, int jb) {
        std::map<Labeling, int> sign;
        int nt = terms(u, 0, ja, t);
        for (int a = 0; a < nt; ++a) {
            int ns = terms(v, t[a].mask, jb, s);
            for (int b = 0; b < ns; ++b) {
                if (sign.count(s[b].mask)) throw Error(ErrorKind::InvariantViolation, "cube", "repeated path on a face");
                sign[s[b].mask] = ((t[a].coeff < 0) + (s[b].coeff < 0)) & 1;
            }
        }
        return sign;
    };
    auto p1 = side(v1, j1, j2);
    auto p2 = side(v2, j2, j1);
    if (p1.empty() || p1.size() != p2.size())
        throw Error(ErrorKind::InvariantViolation, "cube", "face paths do not pair up");
    int type = -1;
    for (auto [z, a] : p1) {
        auto it = p2.find(z);
        if (it == p2.end()) throw Error(ErrorKind::InvariantViolation, "cube", "face paths do not pair up");
        int ty = (a + it->second) & 1;
        if (type >= 0 && ty != type) throw Error(ErrorKind::NoValidAssignment, "cube", "face neither commutes nor anticommutes");
        type = ty;
    }
    return type;
}

int ResolutionCube::face_type(Vertex u, int j1, int j2) const {
    if (j1 > j2) std::swap(j1, j2);
    return face_types_[(std::size_t(u) * n_ + j1) * n_ + j2];
}

void ResolutionCube::solve_epsilon() {
    std::size_t nv = std::size_t(1) << n_;
    face_types_.assign(nv * n_ * n_, 0);
    for (Vertex u = 0; u < nv; ++u)
        for (int j1 = 0; j1 < n_; ++j1)
            for (int j2 = j1 + 1; j2 < n_; ++j2)
                if (!(u >> j1 & 1) && !(u >> j2 & 1))
                    face_types_[(std::size_t(u) * n_ + j1) * n_ + j2] =
                        static_cast<std::uint8_t>(compute_face_type(u, j1, j2));

    // Edges (v, m) with m above every crossing of v form a spanning tree and are fixed to 0;
    // every other edge is then determined by the face it closes.
    eps_.assign(nv * n_, 0);
    for (Vertex u = 1; u < nv; ++u) {
        int m = highest_bit(u);
        Vertex up = u ^ (Vertex(1) << m);
        for (int j = 0; j < m; ++j) {
            if (u >> j & 1) continue;
            eps_[std::size_t(u) * n_ + j] =
                static_cast<std::uint8_t>(face_type(up, j, m) ^ eps_[std::size_t(up) * n_ + j]);
        }
    }
    for (Vertex u = 0; u < nv; ++u)
        for (int j1 = 0; j1 < n_; ++j1)
            for (int j2 = j1 + 1; j2 < n_; ++j2) {
                if ((u >> j1 & 1) || (u >> j2 & 1)) continue;
                Vertex v1 = u | (Vertex(1) << j1), v2 = u | (Vertex(1) << j2);
                int d = epsilon(u, j1) ^ epsilon(v1, j2) ^ epsilon(u, j2) ^ epsilon(v2, j1);
                if (d != face_type(u, j1, j2))
                    throw Error(ErrorKind::NoValidAssignment, "cube",
                                "face types are not a coboundary (vertex " + std::to_string(u) + ")");
            }
}

std::string dump_cube(const ResolutionCube& cube) {
    std::ostringstream os;
    os << "{\"n\":" << cube.n() << ",\"vertices\":[";
    for (Vertex u = 0; u <= cube.top(); ++u) {
        if (u) os << ',';
        os << "{\"u\":" << u << ",\"circles\":" << cube.n_circles(u) << ",\"edges\":[";
        bool first = true;
        for (int j = 0; j < cube.n(); ++j) {
            if (u >> j & 1) continue;
            const CubeEdge& e = cube.edge(u, j);
            if (!first) os << ',';
            first = false;
            Vertex v = u | (Vertex(1) << j);
            os << "{\"j\":" << j << ",\"type\":\"" << (e.merge ? "merge" : "split") << "\",\"s\":"
               << standard_sign(v, u) << ",\"sZ\":" << edge_index(v, u) << ",\"eps\":" << cube.epsilon(u, j) << '}';
        }
        os << "]}";
    }
    os << "]}";
    return os.str();
}

} // namespace khsq
