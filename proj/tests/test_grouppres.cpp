#include "hfc/error.hpp"
#include "hfc/presentation.hpp"
#include "hfc/tessellation.hpp"

#include <doctest.h>

#include <algorithm>

using namespace hfc;
using namespace hfc::pres;

TEST_CASE("word parse/format round trip") {
    for (const char* s : {"a", "b'", "g3", "abg", "ag'2b", "g8"}) {
        Word w = parse_word(s);
        CHECK(format_word(w) == s);
    }
    CHECK(parse_word("aab'b'") == Word{0, 0, 3, 3});
    CHECK(format_word(parse_word("ggg")) == "g3");
    CHECK_THROWS_AS(parse_word("ax"), error);
    CHECK_THROWS_AS(parse_word("a0"), error);
}

TEST_CASE("free reduction and inverse") {
    CHECK(reduce(parse_word("aa'b")) == parse_word("b"));
    CHECK(reduce(parse_word("gbb'g'")) == Word{});
    Word w = parse_word("ab'g2");
    Word ww = w;
    Word inv = word_inverse(w);
    ww.insert(ww.end(), inv.begin(), inv.end());
    CHECK(reduce(ww).empty());
}

// Rotation groups of the platonic {p,3} solids. Flag counts are 3V for
// V = 4, 8, 20 (tetrahedron, cube, dodecahedron).
TEST_CASE("coset enumeration: spherical triangle groups") {
    struct Case {
        int p, flags, V, E, F;
    };
    for (Case c : {Case{3, 12, 4, 6, 4}, Case{4, 24, 8, 12, 6}, Case{5, 60, 20, 30, 12}}) {
        Presentation pr(c.p);
        PermutationRep rep = todd_coxeter(pr);
        CHECK(rep.flag_count == c.flags);
        CHECK(validate_rep(rep, c.p).ok());
        auto t = tess::extract(rep, c.p);
        CHECK(t.num_vertices == c.V);
        CHECK(t.num_edges == c.E);
        CHECK(t.num_faces == c.F);
        CHECK(t.genus == 0);
    }
}

TEST_CASE("coset enumeration is independent of extra-relator order") {
    // (ag)^3 and (ga)^3 are redundant in the cube group; their order must not
    // change the canonical output.
    Word r1 = parse_word("agagag");
    Word r2 = parse_word("gagaga");
    PermutationRep rep1 = todd_coxeter(Presentation(4, {r1, r2}));
    PermutationRep rep2 = todd_coxeter(Presentation(4, {r2, r1}));
    PermutationRep rep3 = todd_coxeter(Presentation(4));
    CHECK(rep1.perm_alpha == rep2.perm_alpha);
    CHECK(rep1.perm_beta == rep2.perm_beta);
    CHECK(rep1.perm_gamma == rep2.perm_gamma);
    CHECK(rep1.perm_alpha == rep3.perm_alpha);
    CHECK(rep1.perm_beta == rep3.perm_beta);
    CHECK(rep1.perm_gamma == rep3.perm_gamma);
}

TEST_CASE("unquotiented hyperbolic group overflows the coset budget") {
    CHECK_THROWS_AS(todd_coxeter(Presentation(7), 5000), error);
    try {
        todd_coxeter(Presentation(7), 5000);
    } catch (const error& e) {
        CHECK(e.code() == errc::enumeration_overflow);
    }
}

TEST_CASE("presentation rejects malformed relators") {
    CHECK_THROWS_AS(Presentation(2), error);
    CHECK_THROWS_AS(Presentation(8, {Word{}}), error);
    CHECK_THROWS_AS(Presentation(8, {parse_word("aa'")}), error);
}

TEST_CASE("validate_rep flags tampered permutations") {
    PermutationRep rep = todd_coxeter(Presentation(4));
    SUBCASE("broken involution") {
        std::swap(rep.perm_alpha[0], rep.perm_alpha[1]);
        CHECK_FALSE(validate_rep(rep, 4).ok());
    }
    SUBCASE("not a permutation") {
        rep.perm_gamma[0] = rep.perm_gamma[1];
        CHECK_FALSE(validate_rep(rep, 4).ok());
    }
    SUBCASE("intransitive") {
        // Two disjoint copies of the cube flags.
        PermutationRep dbl;
        int n = rep.flag_count;
        dbl.flag_count = 2 * n;
        for (auto [src, dst] : {std::pair{&rep.perm_alpha, &dbl.perm_alpha},
                                std::pair{&rep.perm_beta, &dbl.perm_beta},
                                std::pair{&rep.perm_gamma, &dbl.perm_gamma}}) {
            dst->resize(2 * n);
            for (int i = 0; i < n; ++i) {
                (*dst)[i] = (*src)[i];
                (*dst)[n + i] = n + (*src)[i];
            }
        }
        auto report = validate_rep(dbl, 4);
        CHECK(report.violations.empty());
        CHECK_FALSE(report.transitive);
        CHECK_FALSE(report.ok());
    }
}
