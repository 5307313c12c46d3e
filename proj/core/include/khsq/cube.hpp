#pragma once

#include "khsq/link.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace khsq {

// Subset of crossings resolved as 1, bit k for crossing k (0-based, PD order).
using Vertex = std::uint32_t;

// Bit c set means circle c carries x (even) or lies in the wedge (odd).
using Labeling = std::uint32_t;

struct Resolution {
    Vertex vertex = 0;
    int n_circles = 0;
    std::vector<int> circle_of_label; // indexed by strand label, -1 for unused labels
};

Resolution resolve(const LinkDiagram& d, Vertex u);

// Standard sign and index of the edge S -> T; throws NotAnEdge unless T = S + {j}.
int standard_sign(Vertex T, Vertex S);
int edge_index(Vertex T, Vertex S);

struct Generator {
    Vertex u = 0;
    Labeling mask = 0;
    bool operator==(const Generator& o) const { return u == o.u && mask == o.mask; }
    bool operator<(const Generator& o) const { return u != o.u ? u < o.u : mask < o.mask; }
};

enum class LadybugRule { Right, Left };

struct CubeEdge {
    bool merge = false;
    std::uint8_t ca = 0, cb = 0; // merge: the two source circles; split: ca is the split circle
    std::uint8_t t1 = 0, t2 = 0; // merge: t1 is the merged circle; split: t1 holds label a, t2 holds label b
    std::uint32_t map_offset = 0;
};

// One term of the differential along a single edge. coeff is the odd (exterior) coefficient.
struct Term {
    Labeling mask = 0;
    int coeff = 1;
};

class ResolutionCube {
public:
    explicit ResolutionCube(LinkDiagram d, LadybugRule rule = LadybugRule::Right);

    const LinkDiagram& diagram() const { return diagram_; }
    int n() const { return n_; }
    Vertex top() const { return (Vertex(1) << n_) - 1; }
    LadybugRule ladybug_rule() const { return rule_; }

    int n_circles(Vertex u) const { return ncirc_[u]; }
    int circle_of(Vertex u, int label) const;
    int max_circles() const { return max_circles_; }

    const CubeEdge& edge(Vertex u, int j) const { return edges_[std::size_t(u) * n_ + j]; }
    int mapped_circle(Vertex u, int j, int c) const { return maps_[edge(u, j).map_offset + c]; }

    // Terms of d applied to (u, mask) along crossing j, j not in u. Returns the term count (0..2).
    int terms(Vertex u, Labeling mask, int j, Term out[2]) const;

    int hom_grading(Vertex u) const;
    int q_grading(Vertex u, Labeling mask) const;

    // Odd edge assignment; sigma of a term is epsilon + (coeff < 0).
    int epsilon(Vertex u, int j) const { return eps_[std::size_t(u) * n_ + j]; }
    int sigma(Vertex u, int j, int coeff) const { return (epsilon(u, j) + (coeff < 0 ? 1 : 0)) & 1; }

    // Ladybug faces: u + {j1, j2} with both crossings splitting the same circle and rejoining.
    bool is_ladybug(Vertex u, int j1, int j2) const;
    // For a ladybug face, the circle of u+{j2} matched with circle c1 of u+{j1}.
    int ladybug_partner(Vertex u, int j1, int j2, int c1) const;

    // Required value of the coboundary of epsilon on the face u + {j1, j2}.
    int face_type(Vertex u, int j1, int j2) const;

private:
    void build_resolutions();
    void build_edges();
    void solve_epsilon();
    int compute_face_type(Vertex u, int j1, int j2) const;
    int ladybug_label(int j) const;

    LinkDiagram diagram_;
    LadybugRule rule_;
    int n_ = 0;
    int n_labels_ = 0;
    int max_circles_ = 0;
    std::vector<std::uint8_t> ncirc_;
    std::vector<std::int8_t> circ_; // (u, label index) -> circle
    std::vector<int> label_slot_;   // strand label -> label index
    std::vector<CubeEdge> edges_;
    std::vector<std::uint8_t> maps_;
    std::vector<std::uint8_t> eps_;
    std::vector<std::uint8_t> face_types_;
};

// Parity of the permutation sorting a short list of distinct integers.
int sort_parity(const int* v, int len);

// JSON-like dump of vertices, circle counts and edge data.
std::string dump_cube(const ResolutionCube& cube);

} // namespace khsq
