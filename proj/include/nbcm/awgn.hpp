#pragma once
// AWGN channel and SNR bookkeeping.
//
// SNR convention: SNR = Es / sigma^2 per PAM signal component, with
// Es = (M^2-1)/3 for the odd-integer constellation. This is the convention
// that reproduces the printed BICM limits (9.304 dB at 4-PAM / 1.5 bits,
// 14.365 dB at 8-PAM / 2.25 bits); see ChannelConfig::sigma_from_snr.

#include <vector>

#include "nbcm/numerics.hpp"

namespace nbcm {

struct ChannelConfig {
    double snr_db = 0.0;
    int M = 4;

    double es() const { return (double(M) * M - 1.0) / 3.0; }
    double sigma2() const { return es() / std::pow(10.0, snr_db / 10.0); }
    double sigma() const { return std::sqrt(sigma2()); }
    double n0() const { return 2.0 * sigma2(); }
};

double sigma_from_snr(double snr_db, int M);
double snr_from_sigma(double sigma, int M);

std::vector<double> transmit(const std::vector<int>& signals, const ChannelConfig& cfg, Rng& rng);

}  // namespace nbcm
