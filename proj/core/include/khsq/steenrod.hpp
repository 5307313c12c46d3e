#pragma once

#include "khsq/complex.hpp"
#include "khsq/f2.hpp"
#include "khsq/moduli.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace khsq {

// One matching edge of a graph cycle, in traversal order.
struct FacetEntry {
    int a = 0;           // facet label S_Z
    int omega = 0;       // odd sign sigma_2
    int orient = 0;      // +1 forward, -1 backward, 0 undirected
    bool sigma_flip = false; // sign map of the first arrow differs across the edge
};

using FacetCycle = std::vector<FacetEntry>;

FacetCycle facet_cycle(const BoundaryGraph& g, const GraphCycle& c);
// The same cycle read in the opposite direction.
FacetCycle reversed(const FacetCycle& z);

// Individual summands of Q, for debugging and fixtures.
struct QTerms {
    long products = 0, labels = 0, maxima = 0, middles = 0;
    long switchbacks = 0, winding = 0, turnarounds = 0, signed_vertex = 0;
    int total(bool with_signs) const;
};

QTerms q_terms(const FacetCycle& z);
// Signed Q of a facet cycle.
int Q(const FacetCycle& z);
// Q for the spectrum X_l: signed terms for odd l, plus the (l/2)-weighted balance of sign-flip edges.
int Q_k(const FacetCycle& z, int l);

int frame_f(int i, int j);

int schutz_F(const BoundaryGraph& g, const GraphCycle& c, int eps);
int schutz_D(const BoundaryGraph& g, const GraphCycle& c);

// Cochain-level operations; mu lives in block (i, j), results in (i+2, j) unless noted.
BitVec sq2(const KhComplex& c, const BitVec& mu, const FacewiseMatching& m, int l);
BitVec sq2_schutz(const KhComplex& c, const BitVec& mu, const FacewiseMatching& m, int eps);
BitVec L_map(const KhComplex& c, int i, int j, const BitVec& mu);
BitVec H_map(const KhComplex& c, int i, int j, const BitVec& mu); // lands in (i+1, j)
BitVec xi_cochain(const KhComplex& c, const FacewiseMatching& m); // lands in (i+1, j)

// F2 cohomology of one degree: chosen representatives and coordinates.
class F2Cohomology {
public:
    F2Cohomology() = default;
    // d_in: C^{i-1} -> C^i, d_out: C^i -> C^{i+1}, both over F2.
    F2Cohomology(const GradedMatrix& d_in, const GradedMatrix& d_out);

    std::size_t dim() const { return reps_.size(); }
    std::size_t cochain_dim() const { return n_; }
    const std::vector<BitVec>& reps() const { return reps_; }
    BitVec coords(const BitVec& cocycle) const; // throws NotACocycle
    bool is_coboundary(const BitVec& v) const;
    bool is_cocycle(const BitVec& v) const;

private:
    std::size_t n_ = 0;
    GradedMatrix d_out_;
    F2Reducer boundaries_;
    F2Reducer classes_;
    std::vector<BitVec> reps_;
};

// Induced operations on Kh^{*,j} over F2 for one parity.
class CohomologyOps {
public:
    CohomologyOps(const KhComplex& c, int j, Parity p);

    const F2Cohomology& cohomology(int i);
    // Images of the basis of H^i, as coordinate vectors.
    std::vector<BitVec> sq1(int i);
    std::vector<BitVec> sq2(int i, int l);
    std::vector<BitVec> sq2_schutz(int i, int eps);

    const KhComplex& complex() const { return c_; }
    Parity parity() const { return p_; }
    int j() const { return j_; }

private:
    const KhComplex& c_;
    int j_;
    Parity p_;
    CochainComplex integral_;
    std::map<int, std::unique_ptr<F2Cohomology>> coh_;
};

} // namespace khsq
