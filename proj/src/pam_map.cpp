#include "nbcm/pam_map.hpp"

#include <algorithm>
#include <stdexcept>

namespace nbcm {

std::string to_string(MappingKind k) {
    switch (k) {
        case MappingKind::BICM: return "bicm";
        case MappingKind::SICM: return "sicm";
        case MappingKind::BPCM: return "bpcm";
        case MappingKind::ASCM: return "ascm";
    }
    return "?";
}

MappingKind mapping_kind_from_string(const std::string& s) {
    if (s == "bicm" || s == "BICM") return MappingKind::BICM;
    if (s == "sicm" || s == "SICM") return MappingKind::SICM;
    if (s == "bpcm" || s == "BPCM") return MappingKind::BPCM;
    if (s == "ascm" || s == "ASCM") return MappingKind::ASCM;
    throw std::invalid_argument("unknown mapping '" + s + "'");
}

void MappingScheme::validate() const {
    if (p < 2 || p > 4) throw std::invalid_argument("mapping: p must be in {2,3,4}");
    if (m < 1 || m > 8) throw std::invalid_argument("mapping: m out of range");
    switch (kind) {
        case MappingKind::BICM:
            break;  // any (m, p)
        case MappingKind::SICM:
            if (m % p != 0) throw std::invalid_argument("SICM requires p | m");
            break;
        case MappingKind::BPCM:
            break;  // bit-plane rule works for any (m, p); the paper's use case is p > m
        case MappingKind::ASCM:
            if (p >= m) throw std::invalid_argument("ASCM requires p < m");
            if (m % (p - 1) != 0) throw std::invalid_argument("ASCM requires (p-1) | m");
            break;
    }
}

int MappingScheme::group_bits() const {
    switch (kind) {
        case MappingKind::BICM: return p;       // one signal at a time
        case MappingKind::SICM: return m;       // one symbol = m/p signals
        case MappingKind::BPCM:
        case MappingKind::ASCM: return m * p;   // p symbols = m signals
    }
    return p;
}

std::pair<int, int> MappingScheme::bit_position(int k) const {
    switch (kind) {
        case MappingKind::BICM:
        case MappingKind::SICM:
            // consecutive p-bit chunks: first bit sign, rest amplitude
            return {k / p, k % p};
        case MappingKind::BPCM: {
            // symbol 0 of the group -> signs, symbol l -> amplitude plane l
            int sym = k / m, pos = k % m;
            return {pos, sym};
        }
        case MappingKind::ASCM: {
            // signs as in BPCM; each later symbol fills all p-1 amplitude
            // bits of a = m/(p-1) consecutive signals (signal-major order)
            int sym = k / m, pos = k % m;
            if (sym == 0) return {pos, 0};
            int a = m / (p - 1);
            int sig = (sym - 1) * a + pos / (p - 1);
            int slot = 1 + pos % (p - 1);
            return {sig, slot};
        }
    }
    return {0, 0};
}

namespace {

// Paper Gray table rows; amp_index packs (a1..a_{p-1}) with a1 as MSB.
// 4-PAM:  (1)->1 (0)->3
// 8-PAM:  (10)->1 (11)->3 (01)->5 (00)->7
// 16-PAM: (110)->1 (111)->3 (101)->5 (100)->7 (000)->9 (001)->11 (011)->13 (010)->15
const int kAmp4[2] = {3, 1};
const int kAmp8[4] = {7, 5, 1, 3};
const int kAmp16[8] = {9, 11, 15, 13, 7, 5, 1, 3};

}  // namespace

int gray_amplitude(int p, unsigned amp_bits) {
    switch (p) {
        case 2:
            if (amp_bits > 1) throw std::invalid_argument("gray_amplitude: bad bits");
            return kAmp4[amp_bits];
        case 3:
            if (amp_bits > 3) throw std::invalid_argument("gray_amplitude: bad bits");
            return kAmp8[amp_bits];
        case 4:
            if (amp_bits > 7) throw std::invalid_argument("gray_amplitude: bad bits");
            return kAmp16[amp_bits];
        default:
            throw std::invalid_argument("gray_amplitude: p must be in {2,3,4}");
    }
}

unsigned gray_amplitude_inverse(int p, int amplitude) {
    for (unsigned b = 0; b < (1u << (p - 1)); ++b)
        if (gray_amplitude(p, b) == amplitude) return b;
    throw std::invalid_argument("gray_amplitude_inverse: not an amplitude of this constellation");
}

int signal_of_label(int p, unsigned label) {
    int s = (label >> (p - 1)) & 1;
    unsigned amp = label & ((1u << (p - 1)) - 1);
    return signal_value(p, s, amp);
}

unsigned label_of_signal(int p, int value) {
    int s = value > 0 ? 1 : 0;
    int a = value > 0 ? value : -value;
    if (a % 2 == 0 || a > (1 << p) - 1)
        throw std::invalid_argument("label_of_signal: value not a constellation point");
    return (static_cast<unsigned>(s) << (p - 1)) | gray_amplitude_inverse(p, a);
}

std::vector<int> map_codeword(const std::vector<int>& bits, const MappingScheme& scheme) {
    scheme.validate();
    const int g = scheme.group_bits();
    const int n = static_cast<int>(bits.size());
    if (n == 0 || n % g != 0 || n % scheme.m != 0)
        throw std::invalid_argument("map_codeword: length incompatible with scheme");
    const int spg = scheme.signals_per_group();
    std::vector<int> signals(n / scheme.p);
    std::vector<unsigned> labels(spg);
    for (int g0 = 0; g0 < n; g0 += g) {
        std::fill(labels.begin(), labels.end(), 0u);
        for (int k = 0; k < g; ++k) {
            auto [sig, slot] = scheme.bit_position(k);
            if (bits[g0 + k]) labels[sig] |= 1u << (scheme.p - 1 - slot);
        }
        int base = g0 / scheme.p;
        for (int s = 0; s < spg; ++s) signals[base + s] = signal_of_label(scheme.p, labels[s]);
    }
    return signals;
}

std::vector<int> demap_hard(const std::vector<int>& signals, const MappingScheme& scheme) {
    scheme.validate();
    const int g = scheme.group_bits();
    const int spg = scheme.signals_per_group();
    const int np = static_cast<int>(signals.size());
    if (np == 0 || np % spg != 0)
        throw std::invalid_argument("demap_hard: length incompatible with scheme");
    std::vector<int> bits(np * scheme.p);
    for (int b0 = 0; b0 < np; b0 += spg) {
        std::vector<unsigned> labels(spg);
        for (int s = 0; s < spg; ++s) labels[s] = label_of_signal(scheme.p, signals[b0 + s]);
        int g0 = b0 * scheme.p;
        for (int k = 0; k < g; ++k) {
            auto [sig, slot] = scheme.bit_position(k);
            bits[g0 + k] = (labels[sig] >> (scheme.p - 1 - slot)) & 1;
        }
    }
    return bits;
}

}  // namespace nbcm
