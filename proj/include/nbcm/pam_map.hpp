#pragma once
// The four modulators (BICM, SICM, BPCM, ASCM): codeword bits to 2^p-PAM
// amplitudes with the paper-fixed Gray labeling, plus the hard inverse.
//
// Label convention: a signal's p-bit label is (s, a1, ..., a_{p-1}) packed
// with the sign bit as the most significant bit. Codeword bits are the
// concatenated symbol images, alpha^0 coefficient first within each symbol.

#include <cstdint>
#include <string>
#include <vector>

namespace nbcm {

enum class MappingKind { BICM, SICM, BPCM, ASCM };

std::string to_string(MappingKind k);
MappingKind mapping_kind_from_string(const std::string& s);

struct MappingScheme {
    MappingKind kind;
    int m;  // bits per code symbol
    int p;  // bits per PAM signal, M = 2^p

    int M() const { return 1 << p; }
    void validate() const;

    // Bits are consumed in fixed-size groups; group_bits() divides n.
    int group_bits() const;
    int signals_per_group() const { return group_bits() / p; }
    // position of bit k (0-based within a group): (signal index in group, slot),
    // slot 0 = sign, slot l = l-th amplitude bit
    std::pair<int, int> bit_position(int k) const;
};

// Gray amplitude map of the paper's table; amp_bits packs (a1..a_{p-1}) with
// a1 most significant. p in {2,3,4}.
int gray_amplitude(int p, unsigned amp_bits);
unsigned gray_amplitude_inverse(int p, int amplitude);

// label -> odd signal point, label = (s, a1..a_{p-1}) with s as MSB
int signal_of_label(int p, unsigned label);
unsigned label_of_signal(int p, int value);

inline int signal_value(int p, int sign_bit, unsigned amp_bits) {
    return (2 * sign_bit - 1) * gray_amplitude(p, amp_bits);
}

std::vector<int> map_codeword(const std::vector<int>& bits, const MappingScheme& scheme);
std::vector<int> demap_hard(const std::vector<int>& signals, const MappingScheme& scheme);

}  // namespace nbcm
