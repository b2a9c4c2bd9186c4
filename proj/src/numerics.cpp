#include "nbcm/numerics.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace nbcm {

double log_sum(const std::vector<double>& v) {
    double m = NEG_INF;
    for (double x : v) m = std::max(m, x);
    if (m == NEG_INF) return NEG_INF;
    double acc = 0.0;
    for (double x : v)
        if (x != NEG_INF) acc += std::exp(x - m);
    return m + std::log(acc);
}

namespace {

// series expansion of P(a,x), valid for x < a+1
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 10000; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16)
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw std::runtime_error("gamma_p_series: no convergence");
}

// Lentz continued fraction for Q(a,x), valid for x >= a+1
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16)
            return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
    }
    throw std::runtime_error("gamma_q_cf: no convergence");
}

}  // namespace

double gamma_p(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_p: bad arguments");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double log_gamma_q(double a, double x) {
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) {
        double p = gamma_p_series(a, x);
        if (p < 0.5) return std::log1p(-p);
    }
    // recompute the CF prefactor in log form to survive extreme tails
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return -x + a * std::log(x) - std::lgamma(a) + std::log(h);
}

double log_chi2_cdf(double k, double x) {
    double p = chi2_cdf(k, x);
    if (p > 0.0) return std::log(p);
    // deep lower tail: P(a,x) ~ x^a e^{-x} / (a Gamma(a)) with a=k/2, x=x/2
    double a = 0.5 * k, xx = 0.5 * x;
    return a * std::log(xx) - xx - std::log(a) - std::lgamma(a);
}

double log_chi2_sf(double k, double x) { return log_gamma_q(0.5 * k, 0.5 * x); }

namespace {

QuadRule make_legendre(int n) {
    QuadRule r;
    r.x.resize(n);
    r.w.resize(n);
    int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        r.w[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        r.w[n - 1 - i] = r.w[i];
    }
    return r;
}

QuadRule make_hermite(int n) {
    QuadRule r;
    r.x.resize(n);
    r.w.resize(n);
    int m = (n + 1) / 2;
    double x = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0)
            x = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        else if (i == 1)
            x -= 1.14 * std::pow(n, 0.426) / x;
        else if (i == 2)
            x = 1.86 * x - 0.86 * r.x[0];
        else if (i == 3)
            x = 1.91 * x - 0.91 * r.x[1];
        else
            x = 2.0 * x - r.x[i - 2];
        double pp = 0.0;
        const double pim4 = 0.7511255444649425;  // pi^{-1/4}
        for (int it = 0; it < 200; ++it) {
            double p1 = pim4, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = x * std::sqrt(2.0 / (j + 1.0)) * p2 - std::sqrt(double(j) / (j + 1.0)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            double dx = p1 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-14) break;
        }
        r.x[i] = x;
        r.x[n - 1 - i] = -x;
        r.w[i] = 2.0 / (pp * pp);
        r.w[n - 1 - i] = r.w[i];
    }
    // nodes ordered ascending
    std::reverse(r.x.begin(), r.x.end());
    std::reverse(r.w.begin(), r.w.end());
    return r;
}

std::mutex rule_mutex;

}  // namespace

const QuadRule& gauss_legendre(int order) {
    static std::map<int, QuadRule> cache;
    std::lock_guard<std::mutex> lock(rule_mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, make_legendre(order)).first;
    return it->second;
}

const QuadRule& gauss_hermite(int order) {
    static std::map<int, QuadRule> cache;
    std::lock_guard<std::mutex> lock(rule_mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, make_hermite(order)).first;
    return it->second;
}

}  // namespace nbcm
