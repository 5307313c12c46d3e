#pragma once

#include "khsq/cube.hpp"
#include "khsq/f2.hpp"
#include "khsq/integer.hpp"

#include <map>
#include <memory>
#include <utility>
#include <vector>

namespace khsq {

enum class Parity { Even, Odd };

inline Parity parity_of_l(int l) { return (l % 2 + 2) % 2 == 0 ? Parity::Even : Parity::Odd; }

// One differential term x -> y with everything the flow category needs.
struct EdgeTerm {
    std::size_t target = 0; // index of y in its (i+1, j) block
    Generator y;
    int crossing = 0;
    int coeff = 1; // odd exterior coefficient
    int s = 0;     // standard sign
    int s_z = 0;   // index
    int sigma = 0; // odd sign
    int S() const { return (s + sigma) & 1; }
    int sign(Parity p) const { return ((s + (p == Parity::Odd ? sigma : 0)) & 1) ? -1 : 1; }
};

// Generators grouped by bidegree (i, j), ordered by (vertex, labeling) inside each block.
class KhComplex {
public:
    explicit KhComplex(std::shared_ptr<const ResolutionCube> cube);
    explicit KhComplex(const LinkDiagram& d, LadybugRule rule = LadybugRule::Right);

    const ResolutionCube& cube() const { return *cube_; }
    std::shared_ptr<const ResolutionCube> cube_ptr() const { return cube_; }

    std::vector<int> q_gradings() const;
    int i_min() const { return i_min_; }
    int i_max() const { return i_max_; }

    std::size_t dim(int i, int j) const;
    Generator generator(int i, int j, std::size_t idx) const;
    std::size_t index(const Generator& g) const;
    std::pair<int, int> bidegree(const Generator& g) const;

    // Terms of d out of generator idx of block (i, j).
    std::vector<EdgeTerm> edges(int i, int j, std::size_t idx) const;
    std::vector<EdgeTerm> edges(const Generator& g) const;

    GradedMatrix differential(int i, int j, Parity p, Ring r) const;
    CochainComplex cochain_complex(int j, Parity p, Ring r = Ring::Z) const;

private:
    struct Block {
        std::vector<Vertex> verts;
        std::vector<std::size_t> offsets; // prefix sums, one extra at the end
    };
    const Block* block(int i, int j) const;
    int minus_count(Vertex u, int j) const;

    std::shared_ptr<const ResolutionCube> cube_;
    std::map<std::pair<int, int>, Block> blocks_;
    std::vector<std::uint64_t> binom_; // (n, k) -> C(n, k), n, k <= 32
    int i_min_ = 0, i_max_ = 0;
};

std::uint64_t labeling_rank(Labeling mask);
Labeling labeling_unrank(std::uint64_t rank, int weight);

// Integral homology of every quantum grading, both parities through the Parity flag.
std::vector<HomologyGroup> khovanov_homology(const KhComplex& c, Parity p, Ring r);

// Per-(i,j) differentials; even has entries (-1)^s, odd (-1)^(s + sigma).
std::map<std::pair<int, int>, GradedMatrix> even_differential(const KhComplex& c, Ring r);
std::map<std::pair<int, int>, GradedMatrix> odd_differential(const KhComplex& c, Ring r);

} // namespace khsq
