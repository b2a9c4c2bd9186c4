#include "nbcm/qspa.hpp"

#include <cmath>
#include <stdexcept>

#include "nbcm/numerics.hpp"

namespace nbcm {

void wht(std::vector<double>& v) {
    const size_t n = v.size();
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("wht: length must be a power of two");
    for (size_t h = 1; h < n; h <<= 1)
        for (size_t i = 0; i < n; i += h << 1)
            for (size_t j = i; j < i + h; ++j) {
                double x = v[j], y = v[j + h];
                v[j] = x + y;
                v[j + h] = x - y;
            }
}

namespace {

constexpr double kTinyProb = 1e-300;

inline void normalize_clip(std::vector<double>& msg) {
    double z = msg[0];
    for (auto& x : msg) {
        x -= z;
        if (x > LLR_MAX) x = LLR_MAX;
        if (x < -LLR_MAX) x = -LLR_MAX;
    }
}

}  // namespace

DecodeResult qspa_decode(const QaryParityCheck& code, const std::vector<LlrVector>& metrics,
                         int max_iters) {
    const int q = code.field.q;
    const int N = code.n_sym;
    if (static_cast<int>(metrics.size()) != N)
        throw std::invalid_argument("qspa_decode: metrics length must equal N");

    // edge list grouped by row
    struct Edge {
        int col;
        gf_elem coef;
        int perm[256];   // perm[u] gives source index h^{-1} u of the y = h x change
        int iperm[256];  // reading position h*v for the output
    };
    std::vector<std::vector<Edge>> rows(code.r_sym);
    std::vector<std::vector<std::pair<int, int>>> col_edges(N);  // (row, index within row)
    for (int r = 0; r < code.r_sym; ++r) {
        rows[r].reserve(code.row_entries[r].size());
        for (const auto& [c, h] : code.row_entries[r]) {
            Edge e;
            e.col = c;
            e.coef = h;
            gf_elem hi = code.field.inv(h);
            for (int u = 0; u < q; ++u) {
                e.perm[u] = code.field.mul(hi, static_cast<gf_elem>(u));
                e.iperm[u] = code.field.mul(h, static_cast<gf_elem>(u));
            }
            col_edges[c].emplace_back(r, static_cast<int>(rows[r].size()));
            rows[r].push_back(e);
        }
    }

    // messages indexed per (row, edge)
    std::vector<std::vector<std::vector<double>>> v2c(code.r_sym), c2v(code.r_sym);
    for (int r = 0; r < code.r_sym; ++r) {
        v2c[r].assign(rows[r].size(), std::vector<double>(q));
        c2v[r].assign(rows[r].size(), std::vector<double>(q, 0.0));
        for (size_t e = 0; e < rows[r].size(); ++e) v2c[r][e] = metrics[rows[r][e].col].values;
    }

    DecodeResult res;
    res.symbols.assign(N, 0);

    std::vector<std::vector<double>> fwd, bwd;
    std::vector<double> tmp(q), outp(q);

    for (int it = 1; it <= max_iters; ++it) {
        // check-node pass
        for (int r = 0; r < code.r_sym; ++r) {
            const size_t deg = rows[r].size();
            if (deg == 0) continue;
            // permuted probability-domain messages in transform space
            if (fwd.size() < deg + 1) {
                fwd.resize(deg + 1, std::vector<double>(q));
                bwd.resize(deg + 1, std::vector<double>(q));
            }
            std::vector<std::vector<double>> tf(deg, std::vector<double>(q));
            for (size_t e = 0; e < deg; ++e) {
                const Edge& ed = rows[r][e];
                const auto& msg = v2c[r][e];
                double mx = msg[0];
                for (int u = 1; u < q; ++u) mx = std::max(mx, msg[u]);
                for (int u = 0; u < q; ++u) tf[e][u] = std::exp(msg[ed.perm[u]] - mx);
                wht(tf[e]);
            }
            // exclusion products via prefix/suffix (transform components can
            // be zero or negative, so no division)
            for (int u = 0; u < q; ++u) fwd[0][u] = 1.0;
            for (size_t e = 0; e < deg; ++e)
                for (int u = 0; u < q; ++u) fwd[e + 1][u] = fwd[e][u] * tf[e][u];
            for (int u = 0; u < q; ++u) bwd[deg][u] = 1.0;
            for (size_t e = deg; e-- > 0;)
                for (int u = 0; u < q; ++u) bwd[e][u] = bwd[e + 1][u] * tf[e][u];
            for (size_t e = 0; e < deg; ++e) {
                for (int u = 0; u < q; ++u) tmp[u] = fwd[e][u] * bwd[e + 1][u];
                wht(tmp);  // inverse up to the factor q, absorbed by normalization
                const Edge& ed = rows[r][e];
                for (int v = 0; v < q; ++v) {
                    double val = tmp[ed.iperm[v]];
                    outp[v] = std::log(val > kTinyProb ? val : kTinyProb);
                }
                auto& msg = c2v[r][e];
                for (int v = 0; v < q; ++v) msg[v] = outp[v];
                normalize_clip(msg);
            }
        }

        // variable-node pass and hard decision
        for (int c = 0; c < N; ++c) {
            std::vector<double> total = metrics[c].values;
            for (const auto& [r, e] : col_edges[c])
                for (int v = 0; v < q; ++v) total[v] += c2v[r][e][v];
            int best = 0;
            for (int v = 1; v < q; ++v)
                if (total[v] > total[best]) best = v;
            res.symbols[c] = best;
            for (const auto& [r, e] : col_edges[c]) {
                auto& msg = v2c[r][e];
                const auto& sub = c2v[r][e];
                for (int v = 0; v < q; ++v) msg[v] = total[v] - sub[v];
                normalize_clip(msg);
            }
        }

        res.iterations = it;
        std::vector<gf_elem> hard(N);
        for (int c = 0; c < N; ++c) hard[c] = static_cast<gf_elem>(res.symbols[c]);
        if (code.in_code(hard)) {
            res.converged = true;
            return res;
        }
    }
    res.converged = false;
    return res;
}

}  // namespace nbcm
