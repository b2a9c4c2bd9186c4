#include <numeric>
#include "doctest.h"
#include "nbcm/numerics.hpp"
#include "nbcm/pam_map.hpp"

using namespace nbcm;

TEST_CASE("Gray amplitude table rows from the paper") {
    // 4-PAM: bits (1) -> 1, (0) -> 3
    CHECK(gray_amplitude(2, 1) == 1);
    CHECK(gray_amplitude(2, 0) == 3);
    // 8-PAM: (10) -> 1, (11) -> 3, (01) -> 5, (00) -> 7
    CHECK(gray_amplitude(3, 0b10) == 1);
    CHECK(gray_amplitude(3, 0b11) == 3);
    CHECK(gray_amplitude(3, 0b01) == 5);
    CHECK(gray_amplitude(3, 0b00) == 7);
    // 16-PAM: (110)->1 ... (010)->15; spec-pinned row: (110) -> 1
    CHECK(gray_amplitude(4, 0b110) == 1);
    CHECK(gray_amplitude(4, 0b111) == 3);
    CHECK(gray_amplitude(4, 0b101) == 5);
    CHECK(gray_amplitude(4, 0b100) == 7);
    CHECK(gray_amplitude(4, 0b000) == 9);
    CHECK(gray_amplitude(4, 0b001) == 11);
    CHECK(gray_amplitude(4, 0b011) == 13);
    CHECK(gray_amplitude(4, 0b010) == 15);
    CHECK_THROWS(gray_amplitude(5, 0));
}

TEST_CASE("gray_amplitude is a bijection with its inverse") {
    for (int p : {2, 3, 4})
        for (unsigned b = 0; b < (1u << (p - 1)); ++b)
            CHECK(gray_amplitude_inverse(p, gray_amplitude(p, b)) == b);
}

TEST_CASE("signal_value formula") {
    CHECK(signal_value(2, 1, 1) == 1);   // s=1, amp bits (1) -> +1
    CHECK(signal_value(2, 0, 0) == -3);  // s=0, amp bits (0) -> -3
    CHECK(signal_value(3, 0, 0b01) == -5);
}

TEST_CASE("full 8-PAM label-to-point row matches the paper's pair-table header") {
    const int expected[8] = {-7, -5, -3, -1, 1, 3, 5, 7};
    const unsigned labels[8] = {0b000, 0b001, 0b011, 0b010, 0b110, 0b111, 0b101, 0b100};
    for (int i = 0; i < 8; ++i) CHECK(signal_of_label(3, labels[i]) == expected[i]);
}

TEST_CASE("scheme validation rules") {
    CHECK_NOTHROW(MappingScheme{MappingKind::BICM, 3, 2}.validate());
    CHECK_THROWS(MappingScheme{MappingKind::SICM, 3, 2}.validate());   // p must divide m
    CHECK_NOTHROW(MappingScheme{MappingKind::SICM, 4, 2}.validate());
    CHECK_THROWS(MappingScheme{MappingKind::ASCM, 4, 4}.validate());   // p < m
    CHECK_NOTHROW(MappingScheme{MappingKind::ASCM, 4, 3}.validate());
    CHECK_THROWS(MappingScheme{MappingKind::ASCM, 5, 3}.validate());   // p-1 must divide m
}

TEST_CASE("BICM hand-trace: m=4, p=2, bits 1101 -> (+1, -1)") {
    MappingScheme s{MappingKind::BICM, 4, 2};
    auto sig = map_codeword({1, 1, 0, 1}, s);
    REQUIRE(sig.size() == 2);
    CHECK(sig[0] == 1);
    CHECK(sig[1] == -1);
}

TEST_CASE("SICM with p | m matches BICM bit placement") {
    Rng rng(31);
    for (auto [m, p] : std::vector<std::pair<int, int>>{{4, 2}, {2, 2}, {6, 3}, {6, 2}}) {
        MappingScheme sicm{MappingKind::SICM, m, p};
        MappingScheme bicm{MappingKind::BICM, m, p};
        std::vector<int> bits(m * p * 4);
        for (auto& b : bits) b = rng.next_below(2);
        CHECK(map_codeword(bits, sicm) == map_codeword(bits, bicm));
    }
}

TEST_CASE("BPCM hand-trace: m=4, p=3, 12 bits -> 4 signals") {
    MappingScheme s{MappingKind::BPCM, 4, 3};
    // signs (1,0,0,1); a1 plane (1,1,0,0); a2 plane (0,1,0,1)
    std::vector<int> bits = {1, 0, 0, 1, 1, 1, 0, 0, 0, 1, 0, 1};
    auto sig = map_codeword(bits, s);
    REQUIRE(sig.size() == 4);
    CHECK(sig[0] == signal_value(3, 1, 0b10));
    CHECK(sig[1] == signal_value(3, 0, 0b11));
    CHECK(sig[2] == signal_value(3, 0, 0b00));
    CHECK(sig[3] == signal_value(3, 1, 0b01));
}

TEST_CASE("ASCM amplitude groups are signal-major") {
    MappingScheme s{MappingKind::ASCM, 4, 3};
    // group: symbol0 -> signs of 4 signals; symbol1 -> (a1,a2) of signals 0,1;
    // symbol2 -> (a1,a2) of signals 2,3
    std::vector<int> bits = {1, 1, 1, 1,  1, 0, 0, 1,  1, 1, 0, 0};
    auto sig = map_codeword(bits, s);
    REQUIRE(sig.size() == 4);
    CHECK(sig[0] == signal_value(3, 1, 0b10));
    CHECK(sig[1] == signal_value(3, 1, 0b01));
    CHECK(sig[2] == signal_value(3, 1, 0b11));
    CHECK(sig[3] == signal_value(3, 1, 0b00));
}

TEST_CASE("round trip on random bits, all four schemes") {
    Rng rng(77);
    std::vector<MappingScheme> schemes = {
        {MappingKind::BICM, 4, 2}, {MappingKind::BICM, 4, 3}, {MappingKind::BICM, 3, 4},
        {MappingKind::SICM, 4, 2}, {MappingKind::SICM, 6, 3}, {MappingKind::BPCM, 2, 3},
        {MappingKind::BPCM, 4, 3}, {MappingKind::ASCM, 4, 3}, {MappingKind::ASCM, 6, 4},
    };
    for (const auto& s : schemes) {
        int n = std::lcm(s.group_bits(), s.m) * 3;
        for (int t = 0; t < 50; ++t) {
            std::vector<int> bits(n);
            for (auto& b : bits) b = rng.next_below(2);
            CHECK(demap_hard(map_codeword(bits, s), s) == bits);
        }
        std::vector<int> zeros(n, 0);
        CHECK(demap_hard(map_codeword(zeros, s), s) == zeros);
    }
}

TEST_CASE("out-of-constellation values are rejected") {
    MappingScheme s{MappingKind::BICM, 4, 2};
    CHECK_THROWS(demap_hard({2}, s));
    CHECK_THROWS(demap_hard({5}, s));  // 4-PAM tops out at 3
}

TEST_CASE("flipping sign-plane bits flips only signs (BPCM and ASCM)") {
    Rng rng(5);
    for (MappingKind kind : {MappingKind::BPCM, MappingKind::ASCM}) {
        MappingScheme s{kind, 4, 3};
        int n = s.group_bits() * 2;
        std::vector<int> bits(n);
        for (auto& b : bits) b = rng.next_below(2);
        auto base = map_codeword(bits, s);
        auto flipped = bits;
        for (int g = 0; g < n; g += s.group_bits())
            for (int k = 0; k < s.m; ++k) flipped[g + k] ^= 1;  // symbol 0 = all sign bits
        auto sig = map_codeword(flipped, s);
        for (size_t i = 0; i < sig.size(); ++i) CHECK(sig[i] == -base[i]);
    }
}

TEST_CASE("energy census: mean squared point equals (M^2-1)/3") {
    for (int p : {2, 3, 4}) {
        int M = 1 << p;
        double acc = 0;
        for (int u = 0; u < M; ++u) acc += double(signal_of_label(p, u)) * signal_of_label(p, u);
        CHECK(acc / M == doctest::Approx((double(M) * M - 1) / 3));
    }
}
