#pragma once
// GF(2^m) arithmetic through log/antilog tables, 1 <= m <= 8, plus the binary
// companion matrices used to binarize q-ary parity-check matrices.
//
// Bit-image convention, fixed project-wide: bit 0 (least significant) of a
// field element is the coefficient of alpha^0.

#include <cstdint>
#include <vector>

namespace nbcm {

using gf_elem = std::uint16_t;

struct FieldTables {
    int m = 0;
    unsigned primitive_poly = 0;  // bitmask of degree m
    int q = 0;                    // 2^m
    std::vector<gf_elem> exp_table;  // size q-1, exp_table[0] = 1
    std::vector<int> log_table;      // size q, log_table[0] unused

    gf_elem mul(gf_elem a, gf_elem b) const {
        if (a == 0 || b == 0) return 0;
        int s = log_table[a] + log_table[b];
        if (s >= q - 1) s -= q - 1;
        return exp_table[s];
    }
    static gf_elem add(gf_elem a, gf_elem b) { return a ^ b; }
    gf_elem inv(gf_elem a) const;
    gf_elem pow(gf_elem a, long e) const;
    gf_elem alpha_pow(long e) const {  // alpha^e, e may be negative
        long r = e % (q - 1);
        if (r < 0) r += q - 1;
        return exp_table[r];
    }
};

// Builds tables for GF(2^m). With poly == 0 the default primitive polynomial
// is used: the lexicographically smallest one of degree m (see
// default_primitive_poly). A supplied polynomial is rejected unless x
// generates a cycle of length exactly 2^m - 1.
FieldTables build_field(int m, unsigned poly = 0);

unsigned default_primitive_poly(int m);

struct CompanionMatrix {
    int m = 0;
    std::vector<std::uint16_t> rows;  // m bitmasks, row i bit j = entry (i,j)

    // y = M x over GF(2), x given as bit image
    std::uint16_t apply(std::uint16_t x) const {
        std::uint16_t y = 0;
        for (int i = 0; i < m; ++i)
            y |= static_cast<std::uint16_t>(__builtin_parity(rows[i] & x) << i);
        return y;
    }
};

// Companion matrix of beta != 0: apply(bits(v)) == bits(beta * v) for all v.
CompanionMatrix companion_matrix(gf_elem beta, const FieldTables& field);

CompanionMatrix companion_mul(const CompanionMatrix& a, const CompanionMatrix& b);
bool companion_equal(const CompanionMatrix& a, const CompanionMatrix& b);

}  // namespace nbcm
