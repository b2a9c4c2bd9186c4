#include "nbcm/gf_spectra.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <fstream>
#include <stdexcept>

namespace nbcm {

using boost::multiprecision::cpp_int;

namespace {

double log_of_cpp_int(const cpp_int& x) {
    if (x == 0) return NEG_INF;
    if (x < 0) throw std::domain_error("log of negative count");
    // log via top bits to survive arbitrary magnitude
    size_t bits = msb(x);
    if (bits <= 62) return std::log(static_cast<double>(x.convert_to<std::uint64_t>()));
    cpp_int top = x >> (bits - 62);
    return std::log(static_cast<double>(top.convert_to<std::uint64_t>())) +
           (static_cast<double>(bits) - 62.0) * std::log(2.0);
}

std::vector<cpp_int> binomial_row(int n) {
    std::vector<cpp_int> row(n + 1);
    row[0] = 1;
    for (int k = 1; k <= n; ++k) row[k] = row[k - 1] * (n - k + 1) / k;
    return row;
}

}  // namespace

LogPoly poly_mul(const LogPoly& a, const LogPoly& b) {
    LogPoly out;
    out.c.assign(a.c.size() + b.c.size() - 1, NEG_INF);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == NEG_INF) continue;
        for (size_t j = 0; j < b.c.size(); ++j) {
            if (b.c[j] == NEG_INF) continue;
            out.c[i + j] = log_add(out.c[i + j], a.c[i] + b.c[j]);
        }
    }
    return out;
}

LogPoly poly_power(const LogPoly& p, long L) {
    if (L < 1) throw std::invalid_argument("poly_power: L >= 1");
    LogPoly result = LogPoly::one();
    LogPoly base = p;
    long e = L;
    while (e > 0) {
        if (e & 1) result = poly_mul(result, base);
        e >>= 1;
        if (e) base = poly_mul(base, base);
    }
    return result;
}

LogPoly compose(const LogPoly& cgf, const LogPoly& mgf) {
    double mass = mgf.log_total();
    if (std::fabs(mass) > 1e-9)
        throw std::invalid_argument("compose: mgf coefficients must sum to 1");
    LogPoly out;
    out.c.assign(static_cast<size_t>(std::max(0, cgf.degree())) * std::max(0, mgf.degree()) + 1,
                 NEG_INF);
    LogPoly pw = LogPoly::one();
    for (int n = 0; n <= cgf.degree(); ++n) {
        if (cgf.c[n] != NEG_INF)
            for (size_t i = 0; i < pw.c.size(); ++i)
                if (pw.c[i] != NEG_INF) out.c[i] = log_add(out.c[i], cgf.c[n] + pw.c[i]);
        if (n < cgf.degree()) pw = poly_mul(pw, mgf);
    }
    return out;
}

LogPoly row_cgf(int K_j, int K, int q) {
    if (K_j < 1 || K_j > K) throw std::invalid_argument("row_cgf: need 1 <= K_j <= K");
    if (K > 64) throw std::invalid_argument("row_cgf: K <= 64");
    // A(s) = (1+(q-1)s)^{K_j} + (q-1)(1-s)^{K_j}; the alternating part cancels
    // exactly in integer arithmetic, coefficients of A are multiples known
    // nonnegative and divisible structure is irrelevant: we keep num/q.
    const cpp_int qm1 = q - 1;
    auto binKj = binomial_row(K_j);
    std::vector<cpp_int> A(K_j + 1);
    cpp_int pw = 1;
    for (int i = 0; i <= K_j; ++i) {
        cpp_int term = binKj[i] * pw;          // C(K_j,i) (q-1)^i
        cpp_int alt = binKj[i] * qm1;          // (q-1) C(K_j,i) (-1)^i
        A[i] = (i % 2 == 0) ? cpp_int(term + alt) : cpp_int(term - alt);
        if (A[i] < 0) throw std::runtime_error("row_cgf: negative intermediate");
        pw *= qm1;
    }
    // B(s) = (1+(q-1)s)^{K-K_j}
    auto binB = binomial_row(K - K_j);
    std::vector<cpp_int> B(K - K_j + 1);
    pw = 1;
    for (int i = 0; i <= K - K_j; ++i) {
        B[i] = binB[i] * pw;
        pw *= qm1;
    }
    std::vector<cpp_int> C(K + 1, 0);
    for (int i = 0; i <= K_j; ++i)
        for (int j = 0; j <= K - K_j; ++j) C[i + j] += A[i] * B[j];
    LogPoly out;
    out.c.resize(K + 1);
    const double lq = std::log(static_cast<double>(q));
    for (int i = 0; i <= K; ++i) out.c[i] = log_of_cpp_int(C[i]) - lq;
    return out;
}

LogPoly phi_mgf(int m) {
    const int q = 1 << m;
    LogPoly out;
    out.c.assign(m + 1, NEG_INF);
    for (int i = 1; i <= m; ++i)
        out.c[i] = log_binomial(m, i) - std::log(static_cast<double>(q - 1));
    return out;
}

LogPoly ensemble_symbol_spectrum(const EnsembleConfig& cfg) {
    cfg.validate();
    const int N = cfg.N();
    LogPoly F;
    F.c.assign(N + 1, 0.0);
    const double lq1 = std::log(static_cast<double>(cfg.q - 1));
    for (int w = 0; w <= N; ++w)
        F.c[w] = (1 - cfg.J) * (w * lq1 + log_binomial(N, w));
    for (int j = 0; j < cfg.J; ++j) {
        LogPoly fs = poly_power(row_cgf(cfg.K_list[j], cfg.K, cfg.q), cfg.L_strip);
        for (int w = 0; w <= N; ++w) {
            double v = fs.at(w);
            F.c[w] = (v == NEG_INF) ? NEG_INF : (F.c[w] == NEG_INF ? NEG_INF : F.c[w] + v);
        }
    }
    return F;
}

LogPoly ensemble_bit_spectrum(const EnsembleConfig& cfg) {
    cfg.validate();
    const int n = cfg.n_bits();
    LogPoly psi;
    psi.c.assign(n + 1, 0.0);
    for (int w = 0; w <= n; ++w) psi.c[w] = (1 - cfg.J) * log_binomial(n, w);
    LogPoly ph = phi_mgf(cfg.m);
    for (int j = 0; j < cfg.J; ++j) {
        LogPoly comp = compose(row_cgf(cfg.K_list[j], cfg.K, cfg.q), ph);
        LogPoly ps = poly_power(comp, cfg.L_strip);
        for (int w = 0; w <= n; ++w) {
            double v = ps.at(w);
            psi.c[w] = (v == NEG_INF) ? NEG_INF : (psi.c[w] == NEG_INF ? NEG_INF : psi.c[w] + v);
        }
    }
    return psi;
}

LogPoly random_code_spectrum(int N, int r_bits, int q) {
    LogPoly F;
    F.c.resize(N + 1);
    const double l2 = std::log(2.0);
    const double lq1 = std::log(static_cast<double>(q - 1));
    for (int w = 0; w <= N; ++w)
        F.c[w] = -r_bits * l2 + log_binomial(N, w) + w * lq1;
    return F;
}

void write_spectrum_csv(const LogPoly& spectrum, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "weight,log10_count\n";
    const double l10 = std::log(10.0);
    for (int w = 0; w <= spectrum.degree(); ++w)
        if (spectrum.c[w] != NEG_INF) out << w << "," << spectrum.c[w] / l10 << "\n";
}

}  // namespace nbcm
