#include <stdexcept>
#include <set>

#include "doctest.h"
#include "nbcm/qc_code.hpp"

using namespace nbcm;

namespace {

const char* kPaperExample = NBCM_DATA_DIR "/paper_example_r14_gf16.txt";
const char* kDeskCode = NBCM_DATA_DIR "/code_r34_gf16_L12.txt";

std::vector<gf_elem> random_word(int len, int q, Rng& rng) {
    std::vector<gf_elem> v(len);
    for (auto& x : v) x = static_cast<gf_elem>(rng.next_below(q));
    return v;
}

}  // namespace

TEST_CASE("paper example parses with b=1, c=4, rate 1/4") {
    PolynomialParityCheck ppc = load_code_definition(kPaperExample);
    CHECK(ppc.cols == 4);
    CHECK(ppc.rows == 3);
    CHECK(ppc.b() == 1);
    CHECK(ppc.rate() == doctest::Approx(0.25));
    CHECK(ppc.field.m == 4);
    CHECK(ppc.degrees[1][3] == 7);
    CHECK(ppc.coeffs[1][3] == ppc.field.alpha_pow(3));
    CHECK(ppc.base[1][2] == 0);
    CHECK(ppc.coeffs[2][2] == ppc.field.alpha_pow(5));
    CHECK(ppc.max_degree == 9);
}

TEST_CASE("parser rejects malformed definitions") {
    CHECK_THROWS(parse_code_definition("2 2 1 1\n-1 -1\n\n-1 -1\n"));      // all-zero base
    CHECK_THROWS(parse_code_definition("2 2 1 1\n-1 0\n\n1 1\n"));         // -1 mismatch
    CHECK_THROWS(parse_code_definition("2 2 1 1\n0 0\n\n1 0\n"));          // explicit zero coeff
    CHECK_THROWS(parse_code_definition("2 2 1 1\n0 -2\n\n1 -1\n"));        // degree < -1
    CHECK_THROWS(parse_code_definition("2 2 1 1\n0 0 0\n\n1 1\n"));        // row too long
    CHECK_THROWS(parse_code_definition("2 2 2 1\n0 0\n\n1 1\n"));          // b >= c
}

TEST_CASE("lift with L=1 reproduces the coefficient matrix") {
    PolynomialParityCheck ppc = parse_code_definition("2 3 1 1\n0 1 -1\n2 -1 0\n\n1 a -1\na^1 -1 1\n");
    QaryParityCheck q = lift(ppc);
    CHECK(q.n_sym == 3);
    CHECK(q.r_sym == 2);
    REQUIRE(q.row_entries[0].size() == 2);
    CHECK(q.row_entries[0][0] == std::pair<int, gf_elem>{0, 1});
    CHECK(q.row_entries[0][1].second == ppc.field.alpha_pow(1));
    REQUIRE(q.row_entries[1].size() == 2);
    CHECK(q.row_entries[1][0] == std::pair<int, gf_elem>{0, ppc.field.alpha_pow(1)});
    CHECK(q.row_entries[1][1] == std::pair<int, gf_elem>{2, 1});
}

TEST_CASE("paper example with L=3: degree 7 reduces to shift 1") {
    PolynomialParityCheck ppc = load_code_definition(kPaperExample);
    QaryParityCheck q = lift(ppc);
    // entry (2,4) of H(D) is alpha^3 D^7; block row 1, block col 3, shift 7 mod 3 = 1
    const int L = 3;
    for (int i = 0; i < L; ++i) {
        int row = 1 * L + i;
        bool found = false;
        for (auto [c, v] : q.row_entries[row])
            if (c / L == 3) {
                CHECK(c % L == (i + 7) % L);
                CHECK(v == ppc.field.alpha_pow(3));
                found = true;
            }
        CHECK(found);
    }
}

TEST_CASE("lifted column weights repeat the base pattern") {
    PolynomialParityCheck ppc = load_code_definition(kDeskCode);
    QaryParityCheck q = lift(ppc);
    auto w = q.column_weights();
    for (int c = 0; c < ppc.cols; ++c) {
        int base_w = 0;
        for (int r = 0; r < ppc.rows; ++r) base_w += ppc.base[r][c];
        for (int i = 0; i < ppc.lifting; ++i) CHECK(w[c * ppc.lifting + i] == base_w);
    }
}

TEST_CASE("binary image: q=2 path equals the q-ary matrix") {
    PolynomialParityCheck ppc = parse_code_definition("1 3 1 2\n0 1 -1\n1 0 1\n\n1 1 -1\n1 1 1\n");
    QaryParityCheck q = lift(ppc);
    BinaryParityCheck b = binary_image(q, ppc.field);
    CHECK(b.n_bits == q.n_sym);
    for (int r = 0; r < q.r_sym; ++r) {
        std::vector<int> qcols;
        for (auto [c, v] : q.row_entries[r]) qcols.push_back(c);
        CHECK(b.row_cols[r] == qcols);
    }
}

TEST_CASE("coefficient 1 expands to identity blocks") {
    PolynomialParityCheck ppc = parse_code_definition("3 2 1 2\n0 1\n\n1 1\n");
    QaryParityCheck q = lift(ppc);
    BinaryParityCheck b = binary_image(q, ppc.field);
    // every binary row has exactly one bit per q-ary entry, at matching offset
    for (int r = 0; r < b.r_bits; ++r) {
        REQUIRE(b.row_cols[r].size() == 2);
        for (int c : b.row_cols[r]) CHECK(c % ppc.field.m == r % ppc.field.m);
    }
}

TEST_CASE("q-ary and binary syndromes agree on random vectors") {
    PolynomialParityCheck ppc = load_code_definition(kPaperExample);
    QaryParityCheck q = lift(ppc);
    BinaryParityCheck b = binary_image(q, ppc.field);
    Rng rng(99);
    const int m = ppc.field.m;
    int zero_cases = 0;
    Encoder enc(ppc);
    for (int t = 0; t < 200; ++t) {
        std::vector<gf_elem> x;
        if (t % 2 == 0) {
            x = enc.encode(random_word(ppc.k_sym(), ppc.field.q, rng));  // known codewords
        } else {
            x = random_word(q.n_sym, ppc.field.q, rng);
        }
        std::vector<int> bits(q.n_sym * m);
        for (int s = 0; s < q.n_sym; ++s)
            for (int j = 0; j < m; ++j) bits[s * m + j] = (x[s] >> j) & 1;
        bool qz = q.in_code(x);
        bool bz = b.in_code(bits);
        CHECK(qz == bz);
        if (qz) ++zero_cases;
    }
    CHECK(zero_cases >= 100);  // the encoded half
}

TEST_CASE("encoding: desk code uses the structured path") {
    PolynomialParityCheck ppc = load_code_definition(kDeskCode);
    Encoder enc(ppc);
    CHECK(enc.structured());
    QaryParityCheck q = lift(ppc);
    std::vector<gf_elem> zero(ppc.k_sym(), 0);
    auto cw = enc.encode(zero);
    for (auto v : cw) CHECK(v == 0);

    Rng rng(7);
    for (int t = 0; t < 1000; ++t) {
        auto info = random_word(ppc.k_sym(), ppc.field.q, rng);
        auto c = enc.encode(info);
        for (int i = 0; i < ppc.k_sym(); ++i) CHECK(c[i] == info[i]);
        CHECK(q.in_code(c));
    }
}

TEST_CASE("encoding: paper example falls back to the dense generator") {
    PolynomialParityCheck ppc = load_code_definition(kPaperExample);
    Encoder enc(ppc);
    CHECK(!enc.structured());
    // this code's parity block is singular for every L, so one pivot is
    // stolen from the info columns and strict systematicity is lost
    CHECK(!enc.strictly_systematic());
    QaryParityCheck q = lift(ppc);
    Rng rng(8);
    for (int t = 0; t < 1000; ++t) {
        auto info = random_word(ppc.k_sym(), ppc.field.q, rng);
        auto c = enc.encode(info);
        CHECK(q.in_code(c));
    }
    // distinct info words still give distinct codewords
    auto c1 = enc.encode({1, 2, 3});
    auto c2 = enc.encode({1, 2, 4});
    CHECK(c1 != c2);
}

TEST_CASE("dense fallback stays strictly systematic when the parity block is regular") {
    // alter the paper example so the parity part becomes invertible but the
    // bidiagonal detection still fails
    PolynomialParityCheck ppc = load_code_definition(kPaperExample);
    ppc.coeffs[0][1] = ppc.field.alpha_pow(6);
    Encoder enc(ppc);
    CHECK(!enc.structured());
    CHECK(enc.strictly_systematic());
    QaryParityCheck q = lift(ppc);
    Rng rng(81);
    for (int t = 0; t < 200; ++t) {
        auto info = random_word(ppc.k_sym(), ppc.field.q, rng);
        auto c = enc.encode(info);
        for (int i = 0; i < ppc.k_sym(); ++i) CHECK(c[i] == info[i]);
        CHECK(q.in_code(c));
    }
}

TEST_CASE("codeword differences are codewords") {
    PolynomialParityCheck ppc = load_code_definition(kDeskCode);
    Encoder enc(ppc);
    QaryParityCheck q = lift(ppc);
    Rng rng(21);
    auto a = random_word(ppc.k_sym(), ppc.field.q, rng);
    auto b = a;
    b[3] ^= 5;  // single-symbol info difference
    auto ca = enc.encode(a), cb = enc.encode(b);
    std::vector<gf_elem> diff(ca.size());
    for (size_t i = 0; i < ca.size(); ++i) diff[i] = ca[i] ^ cb[i];
    CHECK(q.in_code(diff));
}

TEST_CASE("ensemble sampling: regular case has exact row weights") {
    EnsembleConfig cfg{16, 4, 2, 3, {3, 3}, 4};
    FieldTables f = build_field(4);
    Rng rng(5);
    for (int t = 0; t < 20; ++t) {
        QaryParityCheck h = sample_ensemble_matrix(cfg, f, rng);
        for (const auto& row : h.row_entries) CHECK(row.size() == 3);
    }
}

TEST_CASE("ensemble sampling: column weight statistics") {
    EnsembleConfig cfg{16, 4, 3, 4, {2, 3, 4}, 3};
    FieldTables f = build_field(4);
    Rng rng(17);
    const int samples = 10000;
    double sum = 0.0;
    double sumsq = 0.0;
    for (int t = 0; t < samples; ++t) {
        QaryParityCheck h = sample_ensemble_matrix(cfg, f, rng);
        auto w = h.column_weights();
        for (int c = 0; c < h.n_sym; ++c) {
            CHECK(w[c] >= 0);
            CHECK(w[c] <= cfg.J);
        }
        double avg = 0;
        for (int x : w) avg += x;
        avg /= h.n_sym;
        sum += avg;
        sumsq += avg * avg;
    }
    double mean = sum / samples;
    double se = std::sqrt((sumsq / samples - mean * mean) / samples);
    CHECK(std::fabs(mean - cfg.avg_column_weight()) <= std::max(3 * se, 1e-12));
}

TEST_CASE("ensemble sampling: q=2 labels are all 1") {
    EnsembleConfig cfg{2, 1, 2, 2, {2, 2}, 3};
    FieldTables f = build_field(1);
    Rng rng(3);
    QaryParityCheck h = sample_ensemble_matrix(cfg, f, rng);
    for (const auto& row : h.row_entries)
        for (auto [c, v] : row) CHECK(v == 1);
}

TEST_CASE("binary ensemble sampling preserves per-strip bit counts") {
    EnsembleConfig cfg{4, 2, 2, 3, {2, 3}, 2};
    FieldTables f = build_field(2);
    Rng rng(4);
    BinaryParityCheck b = sample_ensemble_matrix_binary(cfg, f, rng);
    CHECK(b.n_bits == cfg.n_bits());
    CHECK(b.r_bits == cfg.J * cfg.L_strip * cfg.m);
    // each strip holds K_j * L companion blocks worth of ones
    for (int j = 0; j < cfg.J; ++j) {
        int ones = 0;
        for (int r = 0; r < cfg.L_strip * cfg.m; ++r)
            ones += static_cast<int>(b.row_cols[j * cfg.L_strip * cfg.m + r].size());
        CHECK(ones >= cfg.K_list[j] * cfg.L_strip * cfg.m);          // each block row >= m ones
        CHECK(ones <= cfg.K_list[j] * cfg.L_strip * cfg.m * cfg.m);  // <= m^2
    }
}

TEST_CASE("ensemble config validation") {
    CHECK_THROWS(parse_ensemble_config("3 1 2 2\n2\n"));     // q not a power of two
    CHECK_THROWS(parse_ensemble_config("4 2 3 2\n3 4\n"));   // K_i > K
    EnsembleConfig cfg = parse_ensemble_config("16 3 12 42\n3 12 12\n");
    CHECK(cfg.m == 4);
    CHECK(cfg.N() == 504);
    CHECK(cfg.avg_column_weight() == doctest::Approx(27.0 / 12.0));
}
