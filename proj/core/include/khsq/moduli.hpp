#pragma once

#include "khsq/complex.hpp"
#include "khsq/f2.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace khsq {

// A point of M(y, x): the edge term x -> y.
struct ModuliPoint {
    std::size_t x = 0; // index of x in its block
    std::size_t y = 0; // index of y in its block
    Generator gx, gy;
    int crossing = 0;
    int s = 0, s_z = 0, sigma = 0;
    int S() const { return (s + sigma) & 1; }
};

ModuliPoint moduli_point(const Generator& gx, std::size_t x, const EdgeTerm& e);

// The other endpoint of the interval through x -> y -> z: the intermediate generator y'.
// Checks the sign criterion on the interval; throws OddCount when the face is inconsistent.
Generator interval_partner(const KhComplex& c, const Generator& x, const Generator& y, const Generator& z);

struct IntervalCheck {
    std::size_t intervals = 0;
    std::size_t ladybug_intervals = 0;
};

// Enumerates every interval of the (i, j) -> (i+2, j) moduli spaces and checks the sign criterion.
IntervalCheck check_interval_matching(const KhComplex& c, int i, int j);

// For each y in degree i+1, the points of M(y, mu) paired up. Pair k is (points[2k], points[2k+1]);
// `ordered` says whether that pair carries the ordering (first, second).
struct MatchedBoundary {
    std::vector<ModuliPoint> points;
    std::vector<bool> ordered; // one flag per pair
};

struct FacewiseMatching {
    int i = 0, j = 0; // bidegree of mu
    std::vector<MatchedBoundary> by_y; // indexed by y in block (i+1, j)
};

// Canonical matching: sort by (s_Z, source index) and pair neighbours.
FacewiseMatching facewise_matching(const KhComplex& c, int i, int j, const BitVec& mu);
// Random matching satisfying the ordering rule.
FacewiseMatching random_matching(const KhComplex& c, int i, int j, const BitVec& mu, std::mt19937_64& rng);
// Keeps orderings only on pairs with equal S.
FacewiseMatching signwise_matching(const FacewiseMatching& m);
// Checks involution and ordering rule; throws OddBoundary / InvariantViolation.
void check_matching(const FacewiseMatching& m);

enum class GammaMode { Facewise, Schutz };

struct GammaVertex {
    std::size_t y = 0;     // index in block (i+1, j)
    std::uint32_t pos = 0; // position of p inside by_y[y].points
    EdgeTerm q;            // y -> z
};

struct BoundaryGraph {
    Generator z;
    std::size_t z_index = 0;
    std::vector<GammaVertex> vertices;
    std::vector<int> e_prime;  // interval partner
    std::vector<int> e_match;  // matching partner
    std::vector<int> direction; // +1 if the matching edge leaves this vertex, -1 if it enters, 0 if undirected
    std::vector<int> S, S_Z, sigma2;
    std::vector<int> sigma_p; // sigma of the lower point p

    std::size_t size() const { return vertices.size(); }
    std::string dump() const;
};

// Builds Gamma(z, mu) for every z in block (i+2, j) that receives a chain.
std::vector<BoundaryGraph> build_gammas(const KhComplex& c, const FacewiseMatching& m, GammaMode mode);
BoundaryGraph build_gamma(const KhComplex& c, const FacewiseMatching& m, std::size_t z, GammaMode mode);

// Graph cycles alternate an interval edge (v, e_prime[v]) with a matching edge (w, e_match[w]).
struct GraphCycle {
    std::vector<int> starts;  // v_k: the step leaves v_k along its interval edge
    std::vector<int> middles; // w_k = e_prime[v_k]; the matching edge leaves w_k
};

std::vector<GraphCycle> cycles(const BoundaryGraph& g);
// Validates the special-graph-structure conditions; throws DanglingVertex.
void check_graph(const BoundaryGraph& g);

} // namespace khsq
