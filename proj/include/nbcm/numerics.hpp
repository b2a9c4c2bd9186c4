#pragma once
// Shared numeric helpers: log-domain accumulation, special functions,
// fixed-order quadrature rules, and the deterministic RNG used everywhere.

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace nbcm {

inline constexpr double NEG_INF = -std::numeric_limits<double>::infinity();

inline double log_add(double a, double b) {
    if (a == NEG_INF) return b;
    if (b == NEG_INF) return a;
    if (a < b) std::swap(a, b);
    return a + std::log1p(std::exp(b - a));
}

double log_sum(const std::vector<double>& v);

inline double log_binomial(double n, double k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// Regularized lower incomplete gamma P(a,x). 1e-14ish relative accuracy on the
// ranges used here (a up to a few thousand). Series below a+1, continued
// fraction above.
double gamma_p(double a, double x);
double gamma_q(double a, double x);  // 1 - P(a,x)
double log_gamma_q(double a, double x);

// Chi-squared CDF with k degrees of freedom, and its log.
inline double chi2_cdf(double k, double x) { return gamma_p(0.5 * k, 0.5 * x); }
double log_chi2_cdf(double k, double x);
double log_chi2_sf(double k, double x);

inline double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

// Gauss-Legendre nodes/weights on [-1,1]; cached per order.
struct QuadRule {
    std::vector<double> x, w;
};
const QuadRule& gauss_legendre(int order);
// Gauss-Hermite (weight e^{-t^2}); cached per order.
const QuadRule& gauss_hermite(int order);

// SplitMix64: the documented seed-derivation function of the project.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// xoshiro256** with deterministic, platform-independent output. Gaussian
// variates via Box-Muller so noise streams are byte-identical per seed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& v : state_) {
            s = splitmix64(s);
            v = s;
        }
        have_cached_ = false;
    }

    std::uint64_t next_u64() {
        auto rotl = [](std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform in [0,1)
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, n)
    std::uint64_t next_below(std::uint64_t n) {
        // modulo bias is irrelevant at our n << 2^64, but reject anyway
        std::uint64_t lim = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= lim);
        return v % n;
    }

    double next_gaussian() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1, u2;
        do {
            u1 = next_double();
        } while (u1 <= 0.0);
        u2 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * M_PI * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

  private:
    std::uint64_t state_[4];
    double cached_ = 0.0;
    bool have_cached_;
};

}  // namespace nbcm
