#pragma once
// Exact ensemble-average Hamming weight spectra via log-domain generating
// function arithmetic, and the generic composition of a CGF with an MGF.

#include <vector>

#include "nbcm/numerics.hpp"
#include "nbcm/qc_code.hpp"

namespace nbcm {

// Dense polynomial with log-domain nonnegative coefficients; NEG_INF = absent.
struct LogPoly {
    std::vector<double> c;

    int degree() const { return static_cast<int>(c.size()) - 1; }
    double at(int i) const { return i >= 0 && i < static_cast<int>(c.size()) ? c[i] : NEG_INF; }
    double log_total() const { return log_sum(c); }
    static LogPoly one() { return LogPoly{{0.0}}; }
};

LogPoly poly_mul(const LogPoly& a, const LogPoly& b);
LogPoly poly_power(const LogPoly& p, long L);

// sum_n cgf_n * mgf^n (mgf must be a proper MGF: coefficients sum to 1)
LogPoly compose(const LogPoly& cgf, const LogPoly& mgf);

// Weight enumerator CGF of q-ary length-K sequences satisfying the nonzero
// part of one random q-ary parity-check equation with K_j active positions:
//   [(1+(q-1)s)^{K_j} + (q-1)(1-s)^{K_j}]/q * (1+(q-1)s)^{K-K_j}
// computed with exact big-integer arithmetic before the log conversion.
LogPoly row_cgf(int K_j, int K, int q);

// phi(rho) = ((1+rho)^m - 1)/(q-1): MGF of the bit weight of a uniform
// nonzero symbol of GF(2^m)
LogPoly phi_mgf(int m);

// F_{N,w} over symbol weights w = 0..N (ensemble N)
LogPoly ensemble_symbol_spectrum(const EnsembleConfig& cfg);
// Psi_w over bit weights w = 0..n (ensemble B)
LogPoly ensemble_bit_spectrum(const EnsembleConfig& cfg);

// 2^{-r} C(N,w) (q-1)^w, r in redundant bits
LogPoly random_code_spectrum(int N, int r_bits, int q);

void write_spectrum_csv(const LogPoly& spectrum, const std::string& path);

}  // namespace nbcm
