#include "nbcm/galois.hpp"

#include <stdexcept>
#include <string>

namespace nbcm {

namespace {

// multiply by x modulo poly, elements as bitmasks of degree < m
unsigned mulx(unsigned v, unsigned poly, int m) {
    v <<= 1;
    if (v & (1u << m)) v ^= poly;
    return v;
}

bool cycle_is_full(unsigned poly, int m) {
    const unsigned q = 1u << m;
    unsigned v = 1;
    for (unsigned i = 0; i < q - 2; ++i) {
        v = mulx(v, poly, m);
        if (v == 1) return false;  // short cycle
        if (v == 0) return false;
    }
    return mulx(v, poly, m) == 1;
}

}  // namespace

unsigned default_primitive_poly(int m) {
    if (m < 1 || m > 8) throw std::invalid_argument("default_primitive_poly: m out of range");
    // smallest primitive polynomial per degree, found once by search
    for (unsigned poly = (1u << m) + 1; poly < (2u << m); poly += 2) {
        if (cycle_is_full(poly, m)) return poly;
    }
    throw std::runtime_error("default_primitive_poly: none found");  // unreachable
}

FieldTables build_field(int m, unsigned poly) {
    if (m < 1 || m > 8) throw std::invalid_argument("build_field: need 1 <= m <= 8");
    if (poly == 0) poly = default_primitive_poly(m);
    if ((poly >> m) != 1u)
        throw std::invalid_argument("build_field: polynomial degree must equal m");
    if (!cycle_is_full(poly, m))
        throw std::invalid_argument("build_field: polynomial is not primitive (cycle length != 2^m-1)");

    FieldTables f;
    f.m = m;
    f.primitive_poly = poly;
    f.q = 1 << m;
    f.exp_table.resize(f.q - 1);
    f.log_table.assign(f.q, -1);
    unsigned v = 1;
    for (int i = 0; i < f.q - 1; ++i) {
        f.exp_table[i] = static_cast<gf_elem>(v);
        f.log_table[v] = i;
        v = mulx(v, poly, m);
    }
    return f;
}

gf_elem FieldTables::inv(gf_elem a) const {
    if (a == 0) throw std::domain_error("field inverse of zero");
    return exp_table[(q - 1 - log_table[a]) % (q - 1)];
}

gf_elem FieldTables::pow(gf_elem a, long e) const {
    if (a == 0) {
        if (e == 0) return 1;
        if (e < 0) throw std::domain_error("0 to a negative power");
        return 0;
    }
    long r = (static_cast<long>(log_table[a]) * e) % (q - 1);
    if (r < 0) r += q - 1;
    return exp_table[r];
}

CompanionMatrix companion_matrix(gf_elem beta, const FieldTables& field) {
    if (beta == 0)
        throw std::invalid_argument("companion_matrix: beta must be nonzero "
                                    "(zero entries of H are absences, not matrices)");
    CompanionMatrix c;
    c.m = field.m;
    c.rows.assign(field.m, 0);
    for (int j = 0; j < field.m; ++j) {
        gf_elem col = field.mul(beta, static_cast<gf_elem>(1u << j));
        for (int i = 0; i < field.m; ++i)
            if ((col >> i) & 1) c.rows[i] |= static_cast<std::uint16_t>(1u << j);
    }
    return c;
}

CompanionMatrix companion_mul(const CompanionMatrix& a, const CompanionMatrix& b) {
    CompanionMatrix r;
    r.m = a.m;
    r.rows.assign(a.m, 0);
    for (int i = 0; i < a.m; ++i) {
        // row i of a*b: combine rows of b selected by bits of a's row i
        std::uint16_t acc = 0;
        for (int k = 0; k < a.m; ++k)
            if ((a.rows[i] >> k) & 1) acc ^= b.rows[k];
        r.rows[i] = acc;
    }
    return r;
}

bool companion_equal(const CompanionMatrix& a, const CompanionMatrix& b) {
    return a.m == b.m && a.rows == b.rows;
}

}  // namespace nbcm
