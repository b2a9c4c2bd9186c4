#pragma once
// Squared-Euclidean-distance spectrum machinery: pairwise SED/Hamming tables
// for signal groups, the per-weight mixture MGFs, and the compositions that
// turn Hamming spectra into cumulative normalized SED spectra.

#include <string>
#include <vector>

#include "nbcm/gf_spectra.hpp"
#include "nbcm/pam_map.hpp"

namespace nbcm {

// Sparse-in-spirit spectrum over a real distance grid; bin i holds the
// log-domain mass at distance i * grid_step.
struct SpectrumPoly {
    double grid_step = 0.05;
    std::vector<double> bins;  // log domain, NEG_INF = empty

    int bin_of(double distance) const { return static_cast<int>(std::lround(distance / grid_step)); }
    double distance_of(int bin) const { return bin * grid_step; }
    void add(double distance, double log_mass);
    double log_total() const { return log_sum(bins); }
    int first_nonzero() const;
};

struct WeightedDelta {
    double prob;   // linear domain
    double delta;  // normalized SED d_E^2 / d_H
};

// Rows indexed by tau = Hamming distance of the binary group labels; each row
// is the conditional distribution of delta = d_E^2/tau given tau.
struct GroupMgfTable {
    int group_bits = 0;
    int signals_per_group = 0;
    std::vector<std::vector<WeightedDelta>> rows;  // rows[tau-1]
};

// Exhaustive enumeration of ordered pairs of group label vectors under the
// scheme's bit placement. Rejects groups with more than 2^24 ordered pairs.
GroupMgfTable group_sed_mgf(const MappingScheme& scheme);

// Uniform pairwise MGF over all M(M-1) ordered signal pairs with the
// normalized exponent d_E^2/d_H (the printed single-signal MGF).
std::vector<WeightedDelta> sicm_uniform_mgf(int M);
// Same enumeration with the full d_E^2 exponent; this is what one nonzero
// p-bit group contributes to the cumulative SED, so the SICM spectrum
// composition draws from it.
std::vector<WeightedDelta> signal_pair_sed_mgf(int M);

enum class TauModel { Binomial, Hypergeometric };

// alpha_{n,d}: mixture over tau >= 1 of the table rows with weights
// p_{n,d}(tau), renormalized on tau >= 1.
std::vector<WeightedDelta> alpha_nd(const GroupMgfTable& table, int n, int d,
                                    TauModel model = TauModel::Binomial);

// theta(s) = ((1+(M-1)s)^{m/p} - 1)/(q-1): MGF of the number of nonzero
// p-bit groups of a uniform nonzero symbol. (The printed form with the
// (M-1)(1-s)^{m/p} term fails theta(1)=1 and theta(s)=s at m=p; see README.)
LogPoly theta_mgf(int m, int p);

// A(Delta) = sum_w Psi_w G_w, G_{w} = G_{w-1} (x) alpha_{n,w}; BICM, BPCM and
// ASCM all use this with their own group table. Support truncated at
// max_distance.
SpectrumPoly bicm_family_seds(const LogPoly& bit_spectrum, const GroupMgfTable& table, int n,
                              double grid_step, double max_distance,
                              TauModel model = TauModel::Binomial);

// A = F(theta(alpha)) with the full-SED per-signal MGF; requires p | m.
SpectrumPoly sicm_seds(const LogPoly& symbol_spectrum, int m, int p, double grid_step,
                       double max_distance);

void write_spectrum_csv(const SpectrumPoly& s, const std::string& path);

// Appendix-style table of a group MGF in the paper's row convention
// (row i = conditional delta distribution given label Hamming weight i).
std::string format_group_table(const GroupMgfTable& table, int max_cols = 6);
std::string format_mgf(const std::vector<WeightedDelta>& mgf);
// d_H(d_E^2) pair table of the M-PAM constellation in label order
std::string format_pair_table(int M);

}  // namespace nbcm
