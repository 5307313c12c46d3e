#pragma once

#include "khsq/f2.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace khsq {

using IntMatrix = std::vector<std::vector<mpz_class>>;

IntMatrix int_identity(std::size_t n);
IntMatrix int_multiply(const IntMatrix& a, const IntMatrix& b, std::size_t inner);
IntMatrix to_dense(const GradedMatrix& m);

// U * A * V = D with U, V unimodular and D diagonal with d1 | d2 | ...
struct SmithForm {
    IntMatrix U, D, V;
    std::vector<mpz_class> factors; // nonzero diagonal entries
};

SmithForm smith_normal_form(const IntMatrix& a, std::size_t rows, std::size_t cols);

// Nonzero invariant factors without certificates: rank and a nonzero maximal minor M come from
// fraction-free elimination, then the diagonalisation runs modulo 2M.
std::vector<mpz_class> invariant_factors(const IntMatrix& a, std::size_t rows, std::size_t cols);

// Invariant factors of a sparse integral matrix: unit pivots are eliminated sparsely and the
// remainder goes through the dense form.
struct SparseSmith {
    std::size_t rank = 0;
    std::vector<mpz_class> torsion; // invariant factors greater than 1
};

SparseSmith sparse_smith(const GradedMatrix& m);

struct HomologyGroup {
    int i = 0, j = 0;
    std::size_t rank = 0;
    std::vector<unsigned long> torsion; // orders of cyclic summands, each at least 2

    bool trivial() const { return rank == 0 && torsion.empty(); }
    std::string str() const;
};

// Cyclic group of order n split into its prime-power summands.
std::vector<unsigned long> prime_power_parts(unsigned long n);

// Cochain complex in one quantum grading: d[k] maps degree i_min + k to i_min + k + 1.
struct CochainComplex {
    int j = 0;
    int i_min = 0;
    std::vector<std::size_t> dims;
    std::vector<GradedMatrix> d;

    int i_max() const { return i_min + static_cast<int>(dims.size()) - 1; }
    std::size_t dim(int i) const;
    // Differential out of degree i; a zero matrix at the ends.
    GradedMatrix diff(int i) const;
};

// Throws NotAComplex if some composite is nonzero.
void check_complex(const CochainComplex& c);

std::vector<HomologyGroup> homology(const CochainComplex& c, Ring ring);

// Integral lift of an F2 cocycle in degree i, pushed through the integral differential and halved.
BitVec bockstein_sq1(const CochainComplex& c, int i, const BitVec& cocycle);

} // namespace khsq
