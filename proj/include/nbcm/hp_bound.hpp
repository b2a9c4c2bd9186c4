#pragma once
// Herzberg-Poltyrev sphere bound on ML decoding error probability driven by a
// SED spectrum, and the BICM capacity limit used to annotate figures.

#include <vector>

#include "nbcm/sed_spectra.hpp"

namespace nbcm {

struct BoundInput {
    const SpectrumPoly* spectrum = nullptr;
    int n_dim = 0;     // number of PAM signal components N_p
    double sigma = 0.0;
};

struct W0Result {
    bool found = false;
    double w0 = 0.0;
    double residual = 0.0;  // |LHS-RHS|/RHS at the returned radius
};

// Solves sum_{w<=w0} S_w int_0^{arccos sqrt(w/4w0)} sin^{n-3} = RHS by
// bisection (LHS is nondecreasing in w0). found=false when the spectrum is
// too thin to ever cover the sphere; the bound then degenerates to the plain
// union bound.
W0Result solve_w0(const SpectrumPoly& spectrum, int n_dim);

double hp_bound(const BoundInput& input, const W0Result& w0);
double hp_bound(const SpectrumPoly& spectrum, int n_dim, double sigma);

// log of the radius equation LHS at a given w0 (exposed for monotonicity tests)
double w0_equation_lhs(const SpectrumPoly& spectrum, int n_dim, double w0);
double w0_equation_rhs(int n_dim);

struct BoundPoint {
    double snr_db;
    double bound;
};
std::vector<BoundPoint> bound_curve(const SpectrumPoly& spectrum, int n_dim, int M,
                                    const std::vector<double>& snr_grid_db);

// Sum of Gray-labeled per-bit-channel mutual informations at the given SNR
// (bits per PAM use), by 64-node Gauss-Hermite quadrature.
double bicm_mutual_information(int M, double snr_db);
// SNR (dB) at which the BICM mutual information equals the spectral
// efficiency; spectral_efficiency must be < log2(M).
double bicm_limit(int M, double spectral_efficiency);

double log_q_function(double x);

}  // namespace nbcm
