#include <stdexcept>
#include "doctest.h"
#include "nbcm/galois.hpp"

using namespace nbcm;

namespace {

// independent oracle: polynomial multiplication modulo the primitive polynomial
unsigned polymod_mul(unsigned a, unsigned b, unsigned poly, int m) {
    unsigned acc = 0;
    for (int i = 0; i < m; ++i)
        if ((b >> i) & 1) acc ^= a << i;
    for (int d = 2 * m - 2; d >= m; --d)
        if ((acc >> d) & 1) acc ^= poly << (d - m);
    return acc;
}

}  // namespace

TEST_CASE("default primitive polynomials match the documented table") {
    // x+1, x^2+x+1, x^3+x+1, x^4+x+1, x^5+x^2+1, x^6+x+1, x^7+x+1, x^8+x^4+x^3+x^2+1
    const unsigned expected[] = {0x3, 0x7, 0xB, 0x13, 0x25, 0x43, 0x83, 0x11D};
    for (int m = 1; m <= 8; ++m) CHECK(default_primitive_poly(m) == expected[m - 1]);
}

TEST_CASE("m=2: alpha^2 = alpha + 1 is forced by x^2+x+1") {
    FieldTables f = build_field(2);
    CHECK(f.mul(2, 2) == 3);
}

TEST_CASE("m=1 degenerate field") {
    FieldTables f = build_field(1);
    CHECK(f.q == 2);
    REQUIRE(f.exp_table.size() == 1);
    CHECK(f.exp_table[0] == 1);
    CHECK(f.mul(1, 1) == 1);
}

TEST_CASE("exp table is a permutation of the nonzero elements") {
    for (int m : {1, 2, 3, 4, 5, 6, 7, 8}) {
        FieldTables f = build_field(m);
        std::vector<bool> seen(f.q, false);
        for (gf_elem v : f.exp_table) {
            CHECK(v != 0);
            CHECK(!seen[v]);
            seen[v] = true;
        }
        CHECK(f.exp_table[0] == 1);
    }
}

TEST_CASE("table products agree with polynomial multiplication mod the primitive poly") {
    for (int m : {2, 3, 4}) {
        FieldTables f = build_field(m);
        for (int a = 0; a < f.q; ++a)
            for (int b = 0; b < f.q; ++b)
                CHECK(f.mul(a, b) == polymod_mul(a, b, f.primitive_poly, m));
    }
}

TEST_CASE("m=4: beta^15 = 1 for every nonzero beta (brute-force powers)") {
    FieldTables f = build_field(4);
    for (int b = 1; b < 16; ++b) {
        unsigned acc = 1;
        for (int i = 0; i < 15; ++i) acc = polymod_mul(acc, b, f.primitive_poly, 4);
        CHECK(acc == 1);
        CHECK(f.pow(static_cast<gf_elem>(b), 15) == 1);
    }
}

TEST_CASE("characteristic 2, identity, inverses") {
    FieldTables f = build_field(5);
    for (int a = 0; a < f.q; ++a) {
        CHECK(FieldTables::add(a, a) == 0);
        CHECK(f.mul(1, a) == a);
    }
    for (int a = 1; a < f.q; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
    CHECK_THROWS_AS(f.inv(0), std::domain_error);
}

TEST_CASE("distributivity: exhaustive for m<=4, sampled for m=8") {
    for (int m : {2, 3, 4}) {
        FieldTables f = build_field(m);
        for (int a = 0; a < f.q; ++a)
            for (int b = 0; b < f.q; ++b)
                for (int c = 0; c < f.q; ++c)
                    CHECK(f.mul(a, FieldTables::add(b, c)) ==
                          FieldTables::add(f.mul(a, b), f.mul(a, c)));
    }
    FieldTables f = build_field(8);
    unsigned s = 12345;
    for (int t = 0; t < 20000; ++t) {
        s = s * 1664525u + 1013904223u;
        int a = (s >> 8) & 255, b = (s >> 16) & 255, c = s & 255;
        CHECK(f.mul(a, FieldTables::add(b, c)) == FieldTables::add(f.mul(a, b), f.mul(a, c)));
    }
}

TEST_CASE("build_field rejects bad inputs") {
    CHECK_THROWS(build_field(0));
    CHECK_THROWS(build_field(9));
    CHECK_THROWS(build_field(4, 0x13 << 1));   // degree 5 mask
    CHECK_THROWS(build_field(4, 0b11111));     // x^4+x^3+x^2+x+1 is irreducible but not primitive
}

TEST_CASE("companion matrix of 1 is the identity") {
    for (int m : {1, 2, 4, 6}) {
        FieldTables f = build_field(m);
        CompanionMatrix c = companion_matrix(1, f);
        for (int i = 0; i < m; ++i) CHECK(c.rows[i] == (1u << i));
    }
}

TEST_CASE("companion action equals field multiplication (m=2 exhaustive)") {
    FieldTables f = build_field(2);
    CompanionMatrix c = companion_matrix(2, f);  // alpha
    for (int v = 0; v < 4; ++v) CHECK(c.apply(v) == f.mul(2, v));
}

TEST_CASE("m=4: companion(alpha)^15 = identity") {
    FieldTables f = build_field(4);
    CompanionMatrix c = companion_matrix(2, f);
    CompanionMatrix acc = companion_matrix(1, f);
    for (int i = 0; i < 15; ++i) acc = companion_mul(acc, c);
    CHECK(companion_equal(acc, companion_matrix(1, f)));
}

TEST_CASE("companion matrix is a multiplicative homomorphism (m<=4 exhaustive)") {
    for (int m : {2, 3, 4}) {
        FieldTables f = build_field(m);
        for (int a = 1; a < f.q; ++a)
            for (int b = 1; b < f.q; ++b) {
                CompanionMatrix prod = companion_mul(companion_matrix(a, f), companion_matrix(b, f));
                CHECK(companion_equal(prod, companion_matrix(f.mul(a, b), f)));
            }
    }
}

TEST_CASE("companion of zero is rejected") {
    FieldTables f = build_field(3);
    CHECK_THROWS_AS(companion_matrix(0, f), std::invalid_argument);
}
