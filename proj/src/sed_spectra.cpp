#include "nbcm/sed_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace nbcm {

void SpectrumPoly::add(double distance, double log_mass) {
    int b = bin_of(distance);
    if (b < 0 || b >= static_cast<int>(bins.size()))
        throw std::out_of_range("SpectrumPoly::add: distance outside grid");
    bins[b] = log_add(bins[b], log_mass);
}

int SpectrumPoly::first_nonzero() const {
    for (int b = 0; b < static_cast<int>(bins.size()); ++b)
        if (bins[b] != NEG_INF) return b;
    return -1;
}

namespace {

std::vector<WeightedDelta> collect_rows(std::map<long long, long long>& counts, long long total,
                                        double denom_scale) {
    std::vector<WeightedDelta> out;
    out.reserve(counts.size());
    for (const auto& [key, cnt] : counts)
        out.push_back({static_cast<double>(cnt) / total, key / denom_scale});
    return out;
}

constexpr double kDeltaKeyScale = 720720.0;  // lcm(1..13): keeps d^2/tau exact as integer keys

}  // namespace

GroupMgfTable group_sed_mgf(const MappingScheme& scheme) {
    scheme.validate();
    const int g = scheme.group_bits();
    if (2.0 * g > 24.0)  // ordered pairs = 2^{2g}
        throw std::invalid_argument("group_sed_mgf: group enumeration exceeds 2^24 pairs");
    const int spg = scheme.signals_per_group();
    const int p = scheme.p;
    const unsigned labels = 1u << g;

    // signals of every group label under the scheme's bit placement
    std::vector<std::vector<int>> sig(labels, std::vector<int>(spg));
    for (unsigned x = 0; x < labels; ++x) {
        std::vector<unsigned> lab(spg, 0);
        for (int k = 0; k < g; ++k)
            if ((x >> k) & 1) {
                auto [si, slot] = scheme.bit_position(k);
                lab[si] |= 1u << (p - 1 - slot);
            }
        for (int s = 0; s < spg; ++s) sig[x][s] = signal_of_label(p, lab[s]);
    }

    std::vector<std::map<long long, long long>> buckets(g);
    std::vector<long long> totals(g, 0);
    for (unsigned x = 0; x < labels; ++x)
        for (unsigned e = 1; e < labels; ++e) {
            unsigned y = x ^ e;
            int tau = __builtin_popcount(e);
            long long d2 = 0;
            for (int s = 0; s < spg; ++s) {
                long long d = sig[x][s] - sig[y][s];
                d2 += d * d;
            }
            long long key = static_cast<long long>(d2 * kDeltaKeyScale) / tau;
            ++buckets[tau - 1][key];
            ++totals[tau - 1];
        }

    GroupMgfTable t;
    t.group_bits = g;
    t.signals_per_group = spg;
    t.rows.resize(g);
    for (int tau = 1; tau <= g; ++tau)
        t.rows[tau - 1] = collect_rows(buckets[tau - 1], totals[tau - 1], kDeltaKeyScale);
    return t;
}

std::vector<WeightedDelta> sicm_uniform_mgf(int M) {
    int p = 0;
    while ((1 << p) < M) ++p;
    if ((1 << p) != M || p < 2 || p > 4) throw std::invalid_argument("sicm_uniform_mgf: M in {4,8,16}");
    std::map<long long, long long> counts;
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            if (i == j) continue;
            int tau = __builtin_popcount(static_cast<unsigned>(i ^ j));
            long long d = signal_of_label(p, i) - signal_of_label(p, j);
            counts[static_cast<long long>(d * d * kDeltaKeyScale) / tau]++;
        }
    return collect_rows(counts, static_cast<long long>(M) * (M - 1), kDeltaKeyScale);
}

std::vector<WeightedDelta> signal_pair_sed_mgf(int M) {
    int p = 0;
    while ((1 << p) < M) ++p;
    if ((1 << p) != M || p < 2 || p > 4)
        throw std::invalid_argument("signal_pair_sed_mgf: M in {4,8,16}");
    std::map<long long, long long> counts;
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            if (i == j) continue;
            long long d = signal_of_label(p, i) - signal_of_label(p, j);
            counts[static_cast<long long>(d * d * kDeltaKeyScale)]++;
        }
    return collect_rows(counts, static_cast<long long>(M) * (M - 1), kDeltaKeyScale);
}

std::vector<WeightedDelta> alpha_nd(const GroupMgfTable& table, int n, int d, TauModel model) {
    if (d < 1 || d > n) throw std::invalid_argument("alpha_nd: need 1 <= d <= n");
    const int g = table.group_bits;
    std::vector<double> ptau(g + 1, 0.0);
    double mass = 0.0;
    for (int tau = 1; tau <= std::min(g, d); ++tau) {
        double lp;
        if (model == TauModel::Binomial) {
            double frac = static_cast<double>(d) / n;
            lp = log_binomial(g, tau) + tau * std::log(frac) + (g - tau) * std::log1p(-frac);
            if (frac >= 1.0) lp = (tau == g) ? 0.0 : NEG_INF;
        } else {
            if (d - tau > n - g) {
                lp = NEG_INF;
            } else {
                lp = log_binomial(g, tau) + log_binomial(n - g, d - tau) - log_binomial(n, d);
            }
        }
        ptau[tau] = (lp == NEG_INF) ? 0.0 : std::exp(lp);
        mass += ptau[tau];
    }
    if (mass <= 0.0) throw std::runtime_error("alpha_nd: empty tau mixture");
    std::map<double, double> mix;
    for (int tau = 1; tau <= std::min(g, d); ++tau) {
        if (ptau[tau] == 0.0) continue;
        for (const auto& wd : table.rows[tau - 1])
            mix[wd.delta] += ptau[tau] / mass * wd.prob;
    }
    std::vector<WeightedDelta> out;
    out.reserve(mix.size());
    for (const auto& [delta, prob] : mix) out.push_back({prob, delta});
    return out;
}

LogPoly theta_mgf(int m, int p) {
    if (m % p != 0) throw std::invalid_argument("theta_mgf: requires p | m");
    const int g = m / p;
    const int M = 1 << p;
    const int q = 1 << m;
    LogPoly th;
    th.c.assign(g + 1, NEG_INF);
    for (int j = 1; j <= g; ++j)
        th.c[j] = log_binomial(g, j) + j * std::log(static_cast<double>(M - 1)) -
                  std::log(static_cast<double>(q - 1));
    return th;
}

namespace {

// dense log-domain distance vector convolved with a sparse MGF, truncated
void conv_with_mgf(std::vector<double>& G, const std::vector<std::pair<int, double>>& mgf_bins) {
    const int nb = static_cast<int>(G.size());
    std::vector<double> out(nb, NEG_INF);
    for (int b = 0; b < nb; ++b) {
        if (G[b] == NEG_INF) continue;
        for (const auto& [shift, lp] : mgf_bins) {
            int t = b + shift;
            if (t >= nb) break;  // mgf_bins sorted ascending
            out[t] = log_add(out[t], G[b] + lp);
        }
    }
    G.swap(out);
}

std::vector<std::pair<int, double>> to_bins(const std::vector<WeightedDelta>& mgf, double grid) {
    std::map<int, double> acc;
    for (const auto& wd : mgf) {
        int b = static_cast<int>(std::lround(wd.delta / grid));
        auto it = acc.find(b);
        double lp = std::log(wd.prob);
        if (it == acc.end())
            acc[b] = lp;
        else
            it->second = log_add(it->second, lp);
    }
    return {acc.begin(), acc.end()};
}

bool all_empty(const std::vector<double>& G) {
    for (double v : G)
        if (v != NEG_INF) return false;
    return true;
}

}  // namespace

SpectrumPoly bicm_family_seds(const LogPoly& bit_spectrum, const GroupMgfTable& table, int n,
                              double grid_step, double max_distance, TauModel model) {
    SpectrumPoly A;
    A.grid_step = grid_step;
    const int nb = static_cast<int>(std::lround(max_distance / grid_step)) + 1;
    A.bins.assign(nb, NEG_INF);
    std::vector<double> G(nb, NEG_INF);
    G[0] = 0.0;
    for (int w = 1; w <= bit_spectrum.degree(); ++w) {
        conv_with_mgf(G, to_bins(alpha_nd(table, n, w, model), grid_step));
        if (all_empty(G)) break;
        double lw = bit_spectrum.at(w);
        if (lw == NEG_INF) continue;
        for (int b = 0; b < nb; ++b)
            if (G[b] != NEG_INF) A.bins[b] = log_add(A.bins[b], lw + G[b]);
    }
    return A;
}

SpectrumPoly sicm_seds(const LogPoly& symbol_spectrum, int m, int p, double grid_step,
                       double max_distance) {
    if (m % p != 0) throw std::invalid_argument("sicm_seds: requires p | m");
    const int M = 1 << p;
    LogPoly th = theta_mgf(m, p);
    auto alpha_bins = to_bins(signal_pair_sed_mgf(M), grid_step);

    // beta = theta(alpha): distance MGF of one nonzero symbol
    const int nb = static_cast<int>(std::lround(max_distance / grid_step)) + 1;
    std::vector<double> beta(nb, NEG_INF), pw(nb, NEG_INF);
    pw[0] = 0.0;
    for (int j = 0; j <= th.degree(); ++j) {
        if (th.c[j] != NEG_INF)
            for (int b = 0; b < nb; ++b)
                if (pw[b] != NEG_INF) beta[b] = log_add(beta[b], th.c[j] + pw[b]);
        if (j < th.degree()) conv_with_mgf(pw, alpha_bins);
    }
    std::vector<std::pair<int, double>> beta_bins;
    for (int b = 0; b < nb; ++b)
        if (beta[b] != NEG_INF) beta_bins.emplace_back(b, beta[b]);

    SpectrumPoly A;
    A.grid_step = grid_step;
    A.bins.assign(nb, NEG_INF);
    std::vector<double> G(nb, NEG_INF);
    G[0] = 0.0;
    for (int w = 1; w <= symbol_spectrum.degree(); ++w) {
        conv_with_mgf(G, beta_bins);
        if (all_empty(G)) break;
        double lw = symbol_spectrum.at(w);
        if (lw == NEG_INF) continue;
        for (int b = 0; b < nb; ++b)
            if (G[b] != NEG_INF) A.bins[b] = log_add(A.bins[b], lw + G[b]);
    }
    return A;
}

void write_spectrum_csv(const SpectrumPoly& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "distance,log10_count\n";
    const double l10 = std::log(10.0);
    for (int b = 0; b < static_cast<int>(s.bins.size()); ++b)
        if (s.bins[b] != NEG_INF) out << s.distance_of(b) << "," << s.bins[b] / l10 << "\n";
}

// ---------------------------------------------------------------------------
// printable tables

namespace {

std::string fmt_delta(double d) {
    std::ostringstream os;
    if (std::fabs(d - std::lround(d)) < 1e-9) {
        os << static_cast<long long>(std::lround(d));
    } else {
        // print small rationals as fractions when the denominator is tiny
        for (int den = 2; den <= 12; ++den) {
            double num = d * den;
            if (std::fabs(num - std::lround(num)) < 1e-7) {
                os << static_cast<long long>(std::lround(num)) << "/" << den;
                return os.str();
            }
        }
        os << d;
    }
    return os.str();
}

}  // namespace

std::string format_mgf(const std::vector<WeightedDelta>& mgf) {
    std::ostringstream os;
    os << "  prob:  ";
    for (const auto& wd : mgf) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%-8.4g", wd.prob);
        os << buf;
    }
    os << "\n  dist:  ";
    for (const auto& wd : mgf) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%-8s", fmt_delta(wd.delta).c_str());
        os << buf;
    }
    os << "\n";
    return os.str();
}

std::string format_group_table(const GroupMgfTable& table, int max_cols) {
    std::ostringstream os;
    for (int tau = 1; tau <= table.group_bits; ++tau) {
        auto row = table.rows[tau - 1];
        std::sort(row.begin(), row.end(),
                  [](const WeightedDelta& a, const WeightedDelta& b) { return a.delta < b.delta; });
        os << " tau=" << tau << "\n";
        os << "  prob:  ";
        int cols = std::min<int>(max_cols, row.size());
        for (int i = 0; i < cols; ++i) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%-8.4g", row[i].prob);
            os << buf;
        }
        if (static_cast<int>(row.size()) > cols) os << "...";
        os << "\n  dist:  ";
        for (int i = 0; i < cols; ++i) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%-8s", fmt_delta(row[i].delta).c_str());
            os << buf;
        }
        if (static_cast<int>(row.size()) > cols) os << "...";
        os << "\n";
    }
    return os.str();
}

std::string format_pair_table(int M) {
    int p = 0;
    while ((1 << p) < M) ++p;
    std::ostringstream os;
    os << "      ";
    for (int j = 0; j < M; ++j) {
        for (int b = p - 1; b >= 0; --b) os << ((j >> b) & 1);
        int v = signal_of_label(p, j);
        os << "(" << v << ")" << (j + 1 < M ? "  " : "\n");
    }
    for (int i = 0; i < M; ++i) {
        for (int b = p - 1; b >= 0; --b) os << ((i >> b) & 1);
        os << "(" << signal_of_label(p, i) << ") ";
        for (int j = 0; j < M; ++j) {
            int dh = __builtin_popcount(static_cast<unsigned>(i ^ j));
            long long d = signal_of_label(p, i) - signal_of_label(p, j);
            os << dh << "(" << d * d << ")" << (j + 1 < M ? " " : "\n");
        }
    }
    return os.str();
}

}  // namespace nbcm
