#include "nbcm/hp_bound.hpp"

#include <cmath>
#include <stdexcept>

#include "nbcm/awgn.hpp"

namespace nbcm {

double log_q_function(double x) {
    if (x < 30.0) {
        double q = q_function(x);
        if (q > 0.0) return std::log(q);
    }
    // tail expansion: Q(x) ~ exp(-x^2/2)/(x sqrt(2 pi)) (1 - 1/x^2 + 3/x^4)
    double x2 = x * x;
    return -0.5 * x2 - std::log(x) - 0.5 * std::log(2.0 * M_PI) +
           std::log1p(-1.0 / x2 + 3.0 / (x2 * x2));
}

namespace {

// log of int_0^{arccos(sqrt(u))} sin^{n-3} phi dphi, u in [0,1]
double log_cap_integral(double u, int n_dim, int order = 64) {
    if (u >= 1.0) return NEG_INF;
    double hi = std::acos(std::sqrt(u));
    const QuadRule& gl = gauss_legendre(order);
    double mx = NEG_INF;
    std::vector<double> terms(gl.x.size());
    for (size_t k = 0; k < gl.x.size(); ++k) {
        double phi = 0.5 * hi * (gl.x[k] + 1.0);
        double ls = std::sin(phi);
        terms[k] = (n_dim - 3) * (ls > 0 ? std::log(ls) : -745.0) + std::log(gl.w[k]);
        mx = std::max(mx, terms[k]);
    }
    double acc = 0.0;
    for (double t : terms) acc += std::exp(t - mx);
    return mx + std::log(acc) + std::log(0.5 * hi);
}

}  // namespace

double w0_equation_rhs(int n_dim) {
    return 0.5 * std::log(M_PI) + std::lgamma(0.5 * (n_dim - 2)) - std::lgamma(0.5 * (n_dim - 1));
}

double w0_equation_lhs(const SpectrumPoly& s, int n_dim, double w0) {
    double acc = NEG_INF;
    for (int b = 1; b < static_cast<int>(s.bins.size()); ++b) {
        if (s.bins[b] == NEG_INF) continue;
        double w = s.distance_of(b);
        if (w > w0) break;
        acc = log_add(acc, s.bins[b] + log_cap_integral(std::min(1.0, w / (4.0 * w0)), n_dim));
    }
    return acc;
}

W0Result solve_w0(const SpectrumPoly& spectrum, int n_dim) {
    if (n_dim < 3) throw std::invalid_argument("solve_w0: n_dim >= 3 required");
    int fb = spectrum.first_nonzero();
    if (fb <= 0) throw std::invalid_argument("solve_w0: empty spectrum");
    const double rhs = w0_equation_rhs(n_dim);
    double lo = spectrum.distance_of(fb) * (1.0 - 1e-12);
    double hi = lo;
    W0Result res;
    if (w0_equation_lhs(spectrum, n_dim, lo) >= rhs) {
        // crossing sits at the first support point
        res.found = true;
        res.w0 = lo;
        res.residual = std::fabs(std::expm1(w0_equation_lhs(spectrum, n_dim, lo) - rhs));
        return res;
    }
    const double cap = 1e12;
    while (w0_equation_lhs(spectrum, n_dim, hi) < rhs) {
        hi *= 2.0;
        if (hi > cap) {
            res.found = false;  // spectrum too thin: union-bound regime
            return res;
        }
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-9 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        if (w0_equation_lhs(spectrum, n_dim, mid) < rhs)
            lo = mid;
        else
            hi = mid;
    }
    res.found = true;
    res.w0 = 0.5 * (lo + hi);
    res.residual = std::fabs(std::expm1(w0_equation_lhs(spectrum, n_dim, res.w0) - rhs));
    return res;
}

namespace {

// log Theta_w: int_{sqrt(w)/2}^{sqrt(w0)} (1/sigma) f(y/sigma)
//              chi2cdf_{n-1}((w0-y^2)/sigma^2) dy
double log_theta_w(double w, double w0, double sigma, int n_dim, int order = 96) {
    double a = 0.5 * std::sqrt(w);
    double b = std::sqrt(w0);
    if (a >= b) return NEG_INF;
    const QuadRule& gl = gauss_legendre(order);
    const double s2 = sigma * sigma;
    double mx = NEG_INF;
    std::vector<double> terms(gl.x.size());
    for (size_t k = 0; k < gl.x.size(); ++k) {
        double y = 0.5 * (b - a) * (gl.x[k] + 1.0) + a;
        double lf = -0.5 * std::log(2.0 * M_PI * s2) - y * y / (2.0 * s2);
        double lc = log_chi2_cdf(n_dim - 1, (w0 - y * y) / s2);
        terms[k] = lf + lc + std::log(gl.w[k]);
        mx = std::max(mx, terms[k]);
    }
    double acc = 0.0;
    for (double t : terms) acc += std::exp(t - mx);
    return mx + std::log(acc) + std::log(0.5 * (b - a));
}

}  // namespace

double hp_bound(const BoundInput& input, const W0Result& w0) {
    const SpectrumPoly& s = *input.spectrum;
    const double sigma = input.sigma;
    if (sigma <= 0.0) return 0.0;
    double ltotal = NEG_INF;
    if (!w0.found) {
        // union bound: sum_w S_w Q(sqrt(w)/(2 sigma))
        for (int b = 1; b < static_cast<int>(s.bins.size()); ++b) {
            if (s.bins[b] == NEG_INF) continue;
            double w = s.distance_of(b);
            ltotal = log_add(ltotal, s.bins[b] + log_q_function(std::sqrt(w) / (2.0 * sigma)));
        }
    } else {
        for (int b = 1; b < static_cast<int>(s.bins.size()); ++b) {
            if (s.bins[b] == NEG_INF) continue;
            double w = s.distance_of(b);
            if (w > w0.w0) break;
            ltotal = log_add(ltotal, s.bins[b] + log_theta_w(w, w0.w0, sigma, input.n_dim));
        }
        ltotal = log_add(ltotal, log_chi2_sf(input.n_dim - 1, w0.w0 / (sigma * sigma)));
    }
    if (ltotal >= 0.0) return 1.0;
    return std::exp(ltotal);
}

double hp_bound(const SpectrumPoly& spectrum, int n_dim, double sigma) {
    BoundInput in{&spectrum, n_dim, sigma};
    return hp_bound(in, solve_w0(spectrum, n_dim));
}

std::vector<BoundPoint> bound_curve(const SpectrumPoly& spectrum, int n_dim, int M,
                                    const std::vector<double>& snr_grid_db) {
    W0Result w0 = solve_w0(spectrum, n_dim);
    std::vector<BoundPoint> out;
    out.reserve(snr_grid_db.size());
    for (double snr : snr_grid_db) {
        BoundInput in{&spectrum, n_dim, sigma_from_snr(snr, M)};
        out.push_back({snr, hp_bound(in, w0)});
    }
    return out;
}

double bicm_mutual_information(int M, double snr_db) {
    int p = 0;
    while ((1 << p) < M) ++p;
    if ((1 << p) != M || p < 2 || p > 4)
        throw std::invalid_argument("bicm_mutual_information: M in {4,8,16}");
    const double sigma = sigma_from_snr(snr_db, M);
    const double n0 = 2.0 * sigma * sigma;
    const QuadRule& gh = gauss_hermite(64);
    std::vector<double> pts(M);
    for (int u = 0; u < M; ++u) pts[u] = signal_of_label(p, u);

    double total = 0.0;
    const double inv_sqrt_pi = 1.0 / std::sqrt(M_PI);
    for (int bit = 0; bit < p; ++bit) {
        int bitpos = p - 1 - bit;
        double avg = 0.0;
        for (int u = 0; u < M; ++u) {
            int bu = (u >> bitpos) & 1;
            for (size_t k = 0; k < gh.x.size(); ++k) {
                double y = pts[u] + std::sqrt(2.0) * sigma * gh.x[k];
                double num = NEG_INF, den = NEG_INF;
                for (int v = 0; v < M; ++v) {
                    double d = y - pts[v];
                    double lp = -d * d / n0;
                    num = log_add(num, lp);
                    if (((v >> bitpos) & 1) == bu) den = log_add(den, lp);
                }
                avg += gh.w[k] * (num - den);
            }
        }
        total += 1.0 - inv_sqrt_pi * avg / (M * std::log(2.0));
    }
    return total;
}

double bicm_limit(int M, double spectral_efficiency) {
    int p = 0;
    while ((1 << p) < M) ++p;
    if (spectral_efficiency >= p)
        throw std::invalid_argument("bicm_limit: spectral efficiency must be < log2(M)");
    if (spectral_efficiency <= 0.0)
        throw std::invalid_argument("bicm_limit: spectral efficiency must be positive");
    double lo = -20.0, hi = 50.0;
    for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        if (bicm_mutual_information(M, mid) < spectral_efficiency)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace nbcm
