#include "support.hpp"

#include "khsq/cube.hpp"
#include "khsq/error.hpp"
#include "khsq_app/corpus.hpp"

#include <doctest.h>

#include <random>

using namespace khsq;
using khsq::test::named;

TEST_CASE("resolution circle counts") {
    auto t = parse_pd("X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]");
    ResolutionCube cube(t);
    CHECK(cube.n_circles(0) + cube.n_circles(cube.top()) == 5);
    CHECK(resolve(t, 0).n_circles == cube.n_circles(0));
    // the all-B resolution of a negative trefoil is the 3-circle one for the mirror
    ResolutionCube m(mirror(t));
    CHECK(m.n_circles(0) == 2);
    CHECK(m.n_circles(m.top()) == 3);
    ResolutionCube u(parse_pd("U^1"));
    CHECK(u.n_circles(0) == 1);
}

TEST_CASE("standard sign and index") {
    // crossings 1, 2, 3 are bits 0, 1, 2
    CHECK(standard_sign(0b001, 0b000) == 0);
    CHECK(edge_index(0b001, 0b000) == 0);
    CHECK(standard_sign(0b101, 0b001) == 1);
    CHECK(edge_index(0b101, 0b001) == 1);
    CHECK(standard_sign(0b111, 0b101) == 1);
    CHECK(edge_index(0b111, 0b101) == 1);
    CHECK_THROWS_AS(standard_sign(0b011, 0b000), Error);
    CHECK_THROWS_AS(standard_sign(0b001, 0b010), Error);
}

TEST_CASE("standard sign anticommutes on every square") {
    for (Vertex u = 0; u < 16; ++u)
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) {
                Vertex A = Vertex(1) << a, B = Vertex(1) << b;
                if (u & (A | B)) continue;
                int s = standard_sign(u | A, u) + standard_sign(u | A | B, u | A) + standard_sign(u | B, u) +
                        standard_sign(u | A | B, u | B);
                CHECK(s % 2 == 1);
            }
}

TEST_CASE("Hopf link: exhaustive odd sign search agrees with the solver") {
    auto d = named("L2a1");
    ResolutionCube cube(d);
    REQUIRE(cube.n() == 2);
    struct E {
        Vertex u;
        int j;
    };
    std::vector<E> edges = {{0, 0}, {0, 1}, {1, 1}, {2, 0}};
    auto composite_zero = [&](auto eps_of) {
        for (Labeling mask = 0; mask < (Labeling(1) << cube.n_circles(0)); ++mask) {
            std::map<std::pair<Vertex, Labeling>, long> acc;
            for (int j1 = 0; j1 < 2; ++j1) {
                Term t1[2];
                int n1 = cube.terms(0, mask, j1, t1);
                Vertex u1 = Vertex(1) << j1;
                for (int a = 0; a < n1; ++a) {
                    int j2 = 1 - j1;
                    Term t2[2];
                    int n2 = cube.terms(u1, t1[a].mask, j2, t2);
                    for (int b = 0; b < n2; ++b) {
                        int s1 = standard_sign(u1, 0) + eps_of(0, j1) + (t1[a].coeff < 0);
                        int s2 = standard_sign(3, u1) + eps_of(u1, j2) + (t2[b].coeff < 0);
                        long v = std::abs(t1[a].coeff) * std::abs(t2[b].coeff) * (((s1 + s2) & 1) ? -1 : 1);
                        acc[{3, t2[b].mask}] += v;
                    }
                }
            }
            for (auto& [k, v] : acc)
                if (v != 0) return false;
        }
        return true;
    };
    int valid = 0;
    for (int bits = 0; bits < 16; ++bits) {
        auto eps = [&](Vertex u, int j) {
            for (std::size_t k = 0; k < edges.size(); ++k)
                if (edges[k].u == u && edges[k].j == j) return bits >> k & 1;
            return 0;
        };
        if (composite_zero(eps)) ++valid;
    }
    CHECK(valid >= 1);
    CHECK(composite_zero([&](Vertex u, int j) { return cube.epsilon(u, j); }));
    KhComplex c(d);
    for (int j : c.q_gradings()) CHECK_NOTHROW(check_complex(c.cochain_complex(j, Parity::Odd, Ring::Z)));
}

TEST_CASE("one-crossing diagram has no squares") {
    auto d = parse_pd("X[1,1,2,2]");
    KhComplex c(d);
    for (int j : c.q_gradings()) CHECK_NOTHROW(check_complex(c.cochain_complex(j, Parity::Odd, Ring::Z)));
}

TEST_CASE("d squared vanishes on random diagrams") {
    auto corpus = app::random_corpus(11, 60, 6);
    for (const auto& item : corpus) {
        KhComplex c(item.diagram);
        for (int j : c.q_gradings())
            for (Parity p : {Parity::Even, Parity::Odd}) CHECK_NOTHROW(check_complex(c.cochain_complex(j, p, Ring::Z)));
    }
}

TEST_CASE("every face of the odd sign assignment is consistent") {
    for (const char* n : {"4_1", "5_2", "L4a1", "8_19"}) {
        ResolutionCube cube(named(n));
        for (Vertex u = 0; u <= cube.top(); ++u)
            for (int a = 0; a < cube.n(); ++a)
                for (int b = a + 1; b < cube.n(); ++b) {
                    Vertex A = Vertex(1) << a, B = Vertex(1) << b;
                    if (u & (A | B)) continue;
                    int de = cube.epsilon(u, a) + cube.epsilon(u | A, b) + cube.epsilon(u, b) + cube.epsilon(u | B, a);
                    CHECK((de & 1) == cube.face_type(u, a, b));
                }
    }
}

TEST_CASE("ladybug face of the two-crossing unlink diagram") {
    ResolutionCube cube(parse_pd("X[1,2,3,4],X[3,2,1,4]"));
    CHECK(cube.n_circles(0) == 1);
    CHECK(cube.is_ladybug(0, 0, 1));
    int c1 = 0;
    int c2 = cube.ladybug_partner(0, 0, 1, c1);
    CHECK(c2 >= 0);
    CHECK(c2 < cube.n_circles(2));
    ResolutionCube hopf(named("L2a1"));
    CHECK_FALSE(hopf.is_ladybug(0, 0, 1));
    CHECK(dump_cube(cube).find("circles") != std::string::npos);
}

TEST_CASE("sort parity") {
    int a[] = {1, 2, 3};
    int b[] = {2, 1, 3};
    int c[] = {3, 1, 2};
    CHECK(sort_parity(a, 3) == 0);
    CHECK(sort_parity(b, 3) == 1);
    CHECK(sort_parity(c, 3) == 0);
}

TEST_CASE("quantum gradings of generators") {
    auto d = named("3_1");
    ResolutionCube cube(d);
    KhComplex c(d);
    for (int j : c.q_gradings())
        for (int i = c.i_min(); i <= c.i_max(); ++i)
            for (std::size_t k = 0; k < c.dim(i, j); ++k) {
                Generator g = c.generator(i, j, k);
                CHECK(cube.q_grading(g.u, g.mask) == j);
                CHECK(cube.hom_grading(g.u) == i);
                CHECK(c.index(g) == k);
            }
}
