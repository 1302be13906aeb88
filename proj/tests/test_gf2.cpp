#include "hfc/gf2.hpp"

#include <doctest.h>

#include <random>

using namespace hfc::hom;

TEST_CASE("gf2 vector basics") {
    Gf2Vec v(130);
    CHECK_FALSE(v.any());
    v.set(0, true);
    v.set(64, true);
    v.set(129, true);
    CHECK(v.popcount() == 3);
    CHECK(v.lowest_set() == 0);
    v.flip(0);
    CHECK(v.lowest_set() == 64);
    Gf2Vec w(130);
    w.set(64, true);
    v ^= w;
    CHECK(v.popcount() == 1);
    CHECK(v.get(129));
}

TEST_CASE("rank of structured matrices") {
    // Identity plus duplicated rows.
    Gf2Matrix m(0, 8);
    for (int i = 0; i < 8; ++i) {
        Gf2Vec r(8);
        r.set(i, true);
        m.add_row(r);
        m.add_row(r);
    }
    CHECK(m.rank() == 8);

    // All rows summing to zero: rank n-1.
    Gf2Matrix cyc(0, 6);
    for (int i = 0; i < 6; ++i) {
        Gf2Vec r(6);
        r.set(i, true);
        r.set((i + 1) % 6, true);
        cyc.add_row(r);
    }
    CHECK(cyc.rank() == 5);
}

TEST_CASE("span add/reduce against dense reference") {
    std::mt19937 rng(7);
    const int cols = 40;
    Gf2Span span(cols);
    std::vector<Gf2Vec> added;
    for (int i = 0; i < 60; ++i) {
        Gf2Vec v(cols);
        for (int b = 0; b < cols; ++b)
            if (rng() & 1) v.set(b, true);
        bool grew = span.add(v);
        Gf2Matrix before(0, cols);
        for (const auto& a : added) before.add_row(a);
        int r0 = before.rank();
        before.add_row(v);
        CHECK(grew == (before.rank() > r0));
        if (grew) added.push_back(v);
        CHECK(span.rank() == (int)added.size());
        CHECK(span.contains(v));
    }
}
