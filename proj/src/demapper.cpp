#include "nbcm/demapper.hpp"

#include <cmath>
#include <stdexcept>

#include "nbcm/numerics.hpp"

namespace nbcm {

namespace {

inline double clip_llr(double x) {
    if (x > LLR_MAX) return LLR_MAX;
    if (x < -LLR_MAX) return -LLR_MAX;
    return x;
}

}  // namespace

std::vector<double> label_log_posteriors(double r, int p, double sigma) {
    const int M = 1 << p;
    const double n0 = 2.0 * sigma * sigma;
    std::vector<double> lp(M);
    double mx = NEG_INF;
    for (int u = 0; u < M; ++u) {
        double d = r - signal_of_label(p, u);
        lp[u] = -d * d / n0;
        mx = std::max(mx, lp[u]);
    }
    double acc = 0.0;
    for (int u = 0; u < M; ++u) acc += std::exp(lp[u] - mx);
    double lz = mx + std::log(acc);
    for (int u = 0; u < M; ++u) lp[u] -= lz;
    return lp;
}

std::vector<double> signal_posteriors(double r, int M, double sigma) {
    int p = 0;
    while ((1 << p) < M) ++p;
    auto lp = label_log_posteriors(r, p, sigma);
    std::vector<double> out(M);
    for (int u = 0; u < M; ++u) out[u] = std::exp(lp[u]);
    return out;
}

std::vector<double> bit_llrs(const std::vector<double>& label_logpost, int p) {
    const int M = 1 << p;
    std::vector<double> llr(p);
    for (int slot = 0; slot < p; ++slot) {
        int bitpos = p - 1 - slot;  // slot 0 = sign = MSB
        double l1 = NEG_INF, l0 = NEG_INF;
        for (int u = 0; u < M; ++u) {
            if ((u >> bitpos) & 1)
                l1 = log_add(l1, label_logpost[u]);
            else
                l0 = log_add(l0, label_logpost[u]);
        }
        llr[slot] = clip_llr(l1 - l0);
    }
    return llr;
}

std::vector<LlrVector> symbol_metrics(const std::vector<double>& received,
                                      const MappingScheme& scheme, double sigma) {
    scheme.validate();
    if (sigma <= 0.0) throw std::invalid_argument("symbol_metrics: sigma must be positive");
    const int p = scheme.p;
    const int m = scheme.m;
    const int n = static_cast<int>(received.size()) * p;
    if (n % scheme.group_bits() != 0 || n % m != 0)
        throw std::invalid_argument("symbol_metrics: received length incompatible with scheme");
    const int N = n / m;
    const int q = 1 << m;
    const int g = scheme.group_bits();
    const int spg = scheme.signals_per_group();

    std::vector<std::vector<double>> logpost(received.size());
    for (size_t t = 0; t < received.size(); ++t)
        logpost[t] = label_log_posteriors(received[t], p, sigma);

    std::vector<LlrVector> out(N);
    auto normalize = [&](LlrVector& v) {
        double z = v.values[0];
        for (auto& x : v.values) x = clip_llr(x - z);
    };

    switch (scheme.kind) {
        case MappingKind::BICM:
        case MappingKind::BPCM: {
            // additive over per-bit LLRs; only the bit placement differs
            std::vector<double> bllr(n);
            for (int k = 0; k < n; ++k) {
                int grp = k / g, kk = k % g;
                auto [sig, slot] = scheme.bit_position(kk);
                int t = grp * spg + sig;
                int bitpos = p - 1 - slot;
                double l1 = NEG_INF, l0 = NEG_INF;
                for (int u = 0; u < (1 << p); ++u) {
                    if ((u >> bitpos) & 1)
                        l1 = log_add(l1, logpost[t][u]);
                    else
                        l0 = log_add(l0, logpost[t][u]);
                }
                bllr[k] = l1 - l0;
            }
            for (int s = 0; s < N; ++s) {
                out[s].values.assign(q, 0.0);
                for (int v = 1; v < q; ++v) {
                    double acc = 0.0;
                    for (int j = 0; j < m; ++j)
                        if ((v >> j) & 1) acc += bllr[s * m + j];
                    out[s].values[v] = clip_llr(acc);
                }
            }
            break;
        }
        case MappingKind::SICM: {
            // joint per-signal group log-likelihoods, no bit marginalization
            const int gp = m / p;
            for (int s = 0; s < N; ++s) {
                out[s].values.assign(q, 0.0);
                int t0 = s * gp;
                for (int v = 0; v < q; ++v) {
                    double acc = 0.0;
                    for (int i = 0; i < gp; ++i) {
                        unsigned label = 0;
                        for (int t = 0; t < p; ++t)
                            if ((v >> (i * p + t)) & 1) label |= 1u << (p - 1 - t);
                        acc += logpost[t0 + i][label];
                    }
                    out[s].values[v] = acc;
                }
                normalize(out[s]);
            }
            break;
        }
        case MappingKind::ASCM: {
            const int a = m / (p - 1);
            const int syms_per_group = g / m;  // = p
            for (int grp = 0; grp < n / g; ++grp) {
                int t0 = grp * spg;
                for (int sg = 0; sg < syms_per_group; ++sg) {
                    int s = grp * syms_per_group + sg;
                    out[s].values.assign(q, 0.0);
                    if (sg == 0) {
                        // sign-plane symbol: additive over sign-bit LLRs
                        for (int v = 1; v < q; ++v) {
                            double acc = 0.0;
                            for (int j = 0; j < m; ++j) {
                                if (!((v >> j) & 1)) continue;
                                const auto& lp = logpost[t0 + j];
                                double l1 = NEG_INF, l0 = NEG_INF;
                                for (int u = 0; u < (1 << p); ++u) {
                                    if ((u >> (p - 1)) & 1)
                                        l1 = log_add(l1, lp[u]);
                                    else
                                        l0 = log_add(l0, lp[u]);
                                }
                                acc += l1 - l0;
                            }
                            out[s].values[v] = clip_llr(acc);
                        }
                    } else {
                        // amplitude symbol: sign-averaged joint group probabilities
                        int sig0 = (sg - 1) * a;
                        for (int v = 0; v < q; ++v) {
                            double acc = 0.0;
                            for (int i = 0; i < a; ++i) {
                                unsigned amp = 0;
                                for (int t = 0; t < p - 1; ++t)
                                    if ((v >> (i * (p - 1) + t)) & 1) amp |= 1u << (p - 2 - t);
                                const auto& lp = logpost[t0 + sig0 + i];
                                double lplus = lp[(1u << (p - 1)) | amp];
                                double lminus = lp[amp];
                                acc += log_add(lplus, lminus);
                            }
                            out[s].values[v] = acc;
                        }
                        normalize(out[s]);
                    }
                }
            }
            break;
        }
    }
    return out;
}

}  // namespace nbcm
