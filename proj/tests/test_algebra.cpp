#include "support.hpp"

#include "khsq/error.hpp"
#include "khsq/integer.hpp"

#include <doctest.h>

#include <random>

using namespace khsq;
using namespace khsq::test;

namespace {

GradedMatrix from_rows(const std::vector<std::vector<int>>& rows, Ring r = Ring::Z) {
    std::size_t nr = rows.size(), nc = nr ? rows[0].size() : 0;
    GradedMatrix m(r, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j)
            if (rows[i][j] && (r == Ring::Z || rows[i][j] % 2)) m.columns[j].push_back({static_cast<std::uint32_t>(i), rows[i][j]});
    return m;
}

// Fraction-free (Bareiss) elimination over Z.
std::size_t bareiss_rank(Dense a) {
    std::size_t rows = a.size(), cols = rows ? a[0].size() : 0, r = 0;
    mpz_class prev = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t k = c + 1; k < cols; ++k) a[i][k] = (a[r][c] * a[i][k] - a[i][c] * a[r][k]) / prev;
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

// Plain dense elimination mod 2.
std::size_t bool_rank(std::vector<std::vector<int>> a) {
    std::size_t rows = a.size(), cols = rows ? a[0].size() : 0, r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && !(a[p][c] & 1)) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = 0; i < rows; ++i)
            if (i != r && (a[i][c] & 1))
                for (std::size_t k = 0; k < cols; ++k) a[i][k] ^= a[r][k] & 1;
        ++r;
    }
    return r;
}

} // namespace

TEST_CASE("bit vector basics") {
    BitVec v(130);
    v.set(0);
    v.set(64);
    v.set(129);
    CHECK(v.count() == 3);
    CHECK(v.next(1) == 64);
    CHECK(v.next(65) == 129);
    CHECK(v.support() == std::vector<std::size_t>{0, 64, 129});
    v.flip(64);
    CHECK(v.count() == 2);
    BitVec w = v;
    w ^= v;
    CHECK_FALSE(w.any());
    CHECK(w.lowest() == 130);
}

TEST_CASE("identity and zero over F2") {
    std::vector<std::vector<int>> id(5, std::vector<int>(5, 0));
    for (int k = 0; k < 5; ++k) id[k][k] = 1;
    CHECK(f2_rank(from_rows(id, Ring::F2)) == 5);
    GradedMatrix z(Ring::F2, 4, 7);
    CHECK(f2_rank(z) == 0);
    CHECK(f2_kernel_basis(z).size() == 7);
    CHECK(f2_image_basis(z).empty());
    CHECK(z.is_zero());
}

TEST_CASE("random 64x64 ranks agree with independent eliminations") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 4; ++trial) {
        std::vector<std::vector<int>> rows(64, std::vector<int>(64, 0));
        for (auto& r : rows)
            for (auto& v : r)
                if (rng() & 1) v = (rng() & 1) ? 1 : -1;
        // a few dependent rows
        for (int k = 0; k < 8 * trial; ++k) rows[63 - k] = rows[k];
        GradedMatrix m = from_rows(rows);
        CHECK(f2_rank(m.reduce_mod2()) == bool_rank(rows));
        CHECK(sparse_smith(m).rank == bareiss_rank(dense(m)));
    }
}

TEST_CASE("dense Smith form of a random 12x12 matrix") {
    std::mt19937_64 rng(8);
    std::vector<std::vector<int>> rows(12, std::vector<int>(12, 0));
    for (auto& r : rows)
        for (auto& v : r) v = static_cast<int>(rng() % 5) - 2;
    rows[11] = rows[0];
    GradedMatrix m = from_rows(rows);
    auto snf = smith_normal_form(to_dense(m), 12, 12);
    CHECK(snf.factors.size() == bareiss_rank(dense(m)));
    CHECK(int_multiply(int_multiply(snf.U, to_dense(m), 12), snf.V, 12) == snf.D);
    auto naive = naive_invariant_factors(dense(m));
    REQUIRE(naive.size() == snf.factors.size());
    for (std::size_t k = 0; k < naive.size(); ++k) CHECK(naive[k] == abs(snf.factors[k]));
}

TEST_CASE("planted invariant factors survive unimodular scrambling") {
    const std::size_t n = 20;
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<std::vector<int>> rows(n, std::vector<int>(n, 0));
        const int planted[] = {2, 6, 12, 36};
        for (std::size_t k = 0; k < n - 2; ++k) rows[k][k] = k < 4 ? planted[k] : 1;
        for (std::size_t step = 0; step < 3 * n; ++step) {
            std::size_t x = rng() % n, y = rng() % n;
            int q = static_cast<int>(rng() % 3) - 1;
            if (x == y) continue;
            if (rng() & 1)
                for (std::size_t k = 0; k < n; ++k) rows[y][k] += q * rows[x][k];
            else
                for (auto& r : rows) r[y] += q * r[x];
        }
        GradedMatrix m = from_rows(rows);
        auto snf = smith_normal_form(to_dense(m), n, n);
        CHECK(int_multiply(int_multiply(snf.U, to_dense(m), n), snf.V, n) == snf.D);
        std::vector<mpz_class> expect(n - 6, 1);
        for (int p : planted) expect.push_back(p);
        std::vector<mpz_class> got;
        for (const auto& x : snf.factors) got.push_back(abs(x));
        CHECK(got == expect);
        CHECK(invariant_factors(to_dense(m), n, n) == expect);
        auto sp = sparse_smith(m);
        CHECK(sp.rank == n - 2);
        std::sort(sp.torsion.begin(), sp.torsion.end());
        CHECK(sp.torsion == std::vector<mpz_class>{2, 6, 12, 36});
    }
}

TEST_CASE("kernel, image and solve over F2") {
    auto m = from_rows({{1, 1, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 0}}, Ring::F2);
    auto ker = f2_kernel_basis(m);
    CHECK(ker.size() == 4 - f2_rank(m));
    for (const auto& k : ker) CHECK_FALSE(m.apply(k).any());
    BitVec b(3);
    b.set(0);
    b.set(2);
    BitVec x = f2_solve(m, b);
    CHECK(m.apply(x) == b);
    BitVec bad(3);
    bad.set(0);
    CHECK_THROWS_AS(f2_solve(m, bad), Error);
    CHECK(f2_intersection_dim(f2_image_basis(m), {b}) == 1);
    CHECK(f2_span_rank({b, b}) == 1);
}

TEST_CASE("Smith normal form fixtures") {
    auto snf = smith_normal_form(to_dense(from_rows({{2, 0}, {0, 3}})), 2, 2);
    REQUIRE(snf.factors.size() == 2);
    CHECK(snf.factors[0] == 1);
    CHECK(snf.factors[1] == 6);
    auto prod = int_multiply(int_multiply(snf.U, to_dense(from_rows({{2, 0}, {0, 3}})), 2), snf.V, 2);
    CHECK(prod == snf.D);
    CHECK(smith_normal_form(to_dense(GradedMatrix(Ring::Z, 3, 4)), 3, 4).factors.empty());
    auto s = sparse_smith(from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
    CHECK(s.rank == 3);
    CHECK(s.torsion == std::vector<mpz_class>{2, 6, 12});
    CHECK(naive_invariant_factors(dense(from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}))) ==
          std::vector<mpz_class>{2, 6, 12});
    auto parts = prime_power_parts(12);
    std::sort(parts.begin(), parts.end());
    CHECK(parts == std::vector<unsigned long>{3, 4});
}

TEST_CASE("homology of the unknot and the trefoils against the SNF oracle") {
    KhComplex u(parse_pd("U^1"));
    auto hu = as_groups(khovanov_homology(u, Parity::Even, Ring::Z));
    CHECK(hu == Groups{{{0, -1}, {1, {}}}, {{0, 1}, {1, {}}}});
    KhComplex k(parse_pd("X[1,1,2,2]"));
    CHECK(as_groups(khovanov_homology(k, Parity::Even, Ring::Z)) == hu);
    CHECK(as_groups(khovanov_homology(k, Parity::Odd, Ring::Z)) == hu);

    KhComplex r(named("m(3_1)"));
    Groups right{{{0, 1}, {1, {}}}, {{0, 3}, {1, {}}}, {{2, 5}, {1, {}}}, {{3, 9}, {1, {}}}, {{3, 7}, {0, {2}}}};
    CHECK(as_groups(khovanov_homology(r, Parity::Even, Ring::Z)) == right);
    CHECK(oracle_homology(r, Parity::Even) == right);
    auto odd = as_groups(khovanov_homology(r, Parity::Odd, Ring::Z));
    CHECK(odd == oracle_homology(r, Parity::Odd));
    long total = 0;
    for (auto& [ij, g] : odd) {
        CHECK(g.second.empty());
        total += g.first;
    }
    CHECK(total == 6);
    auto f2 = as_groups(khovanov_homology(r, Parity::Even, Ring::F2));
    CHECK(f2.size() == 6);
    CHECK(f2.count({2, 7}) == 1);
}

TEST_CASE("homology matches the SNF oracle on small knots, both parities") {
    for (const char* n : {"3_1", "4_1", "5_1", "5_2", "6_1", "L2a1", "L4a1"}) {
        KhComplex c(named(n));
        for (Parity p : {Parity::Even, Parity::Odd})
            CHECK_MESSAGE(as_groups(khovanov_homology(c, p, Ring::Z)) == oracle_homology(c, p), n);
    }
}

TEST_CASE("Bockstein on the right-handed trefoil") {
    KhComplex c(named("m(3_1)"));
    CohomologyOps ops(c, 7, Parity::Even);
    REQUIRE(ops.cohomology(2).dim() == 1);
    REQUIRE(ops.cohomology(3).dim() == 1);
    auto s = ops.sq1(2);
    CHECK(s[0].any());
    // the free class at (0, 1) lifts to an integral cocycle
    CohomologyOps ops1(c, 1, Parity::Even);
    for (const auto& v : ops1.sq1(0)) CHECK_FALSE(v.any());
    CHECK_THROWS_AS(check_complex([&] {
                        CochainComplex bad;
                        bad.j = 0;
                        bad.dims = {1, 1, 1};
                        bad.d = {from_rows({{1}}), from_rows({{1}})};
                        return bad;
                    }()),
                    Error);
}
