#include "nbcm/qc_code.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nbcm {

std::vector<QaryEntry> QaryParityCheck::entries() const {
    std::vector<QaryEntry> out;
    for (int r = 0; r < static_cast<int>(row_entries.size()); ++r)
        for (const auto& [c, v] : row_entries[r]) out.push_back({r, c, v});
    return out;
}

std::vector<gf_elem> QaryParityCheck::syndrome(const std::vector<gf_elem>& x) const {
    std::vector<gf_elem> s(r_sym, 0);
    for (int r = 0; r < r_sym; ++r) {
        gf_elem acc = 0;
        for (const auto& [c, v] : row_entries[r]) acc ^= field.mul(v, x[c]);
        s[r] = acc;
    }
    return s;
}

bool QaryParityCheck::in_code(const std::vector<gf_elem>& x) const {
    for (int r = 0; r < r_sym; ++r) {
        gf_elem acc = 0;
        for (const auto& [c, v] : row_entries[r]) acc ^= field.mul(v, x[c]);
        if (acc) return false;
    }
    return true;
}

std::vector<int> QaryParityCheck::column_weights() const {
    std::vector<int> w(n_sym, 0);
    for (const auto& row : row_entries)
        for (const auto& [c, v] : row) ++w[c];
    return w;
}

std::vector<int> BinaryParityCheck::syndrome(const std::vector<int>& bits) const {
    std::vector<int> s(r_bits, 0);
    for (int r = 0; r < r_bits; ++r) {
        int acc = 0;
        for (int c : row_cols[r]) acc ^= bits[c];
        s[r] = acc;
    }
    return s;
}

bool BinaryParityCheck::in_code(const std::vector<int>& bits) const {
    for (int r = 0; r < r_bits; ++r) {
        int acc = 0;
        for (int c : row_cols[r]) acc ^= bits[c];
        if (acc) return false;
    }
    return true;
}

namespace {

gf_elem parse_coeff_token(const std::string& tok, const FieldTables& field, int row, int col) {
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("code definition: H_c entry (" + std::to_string(row + 1) + "," +
                                    std::to_string(col + 1) + "): " + why);
    };
    if (tok == "-1") return 0;  // sentinel handled by caller
    if (tok == "1") return 1;
    if (tok == "a") return field.alpha_pow(1);
    if (tok.rfind("a^", 0) == 0) {
        long e;
        try {
            e = std::stol(tok.substr(2));
        } catch (...) {
            fail("bad exponent in '" + tok + "'");
            return 0;
        }
        return field.alpha_pow(e);
    }
    if (tok == "0") fail("coefficient 0 at a present position");
    fail("unrecognized token '" + tok + "'");
    return 0;
}

}  // namespace

PolynomialParityCheck parse_code_definition(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    auto next_content_line = [&](bool allow_blank_skip) -> std::string {
        while (std::getline(in, line)) {
            std::string trimmed = line;
            trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
            if (!trimmed.empty() && trimmed[0] == '#') continue;
            if (trimmed.find_first_not_of(" \t\r") == std::string::npos) {
                if (allow_blank_skip) continue;
                return "";
            }
            return line;
        }
        throw std::invalid_argument("code definition: unexpected end of input");
    };

    PolynomialParityCheck ppc;
    {
        std::istringstream hdr(next_content_line(true));
        int m, c, b, L;
        if (!(hdr >> m >> c >> b >> L))
            throw std::invalid_argument("code definition: header must be 'm c b L'");
        if (m < 1 || m > 8) throw std::invalid_argument("code definition: m out of range");
        if (c <= 0 || b <= 0 || b >= c) throw std::invalid_argument("code definition: need 0 < b < c");
        if (L < 1) throw std::invalid_argument("code definition: L must be >= 1");
        ppc.field = build_field(m);
        ppc.cols = c;
        ppc.rows = c - b;
        ppc.lifting = L;
    }

    ppc.degrees.assign(ppc.rows, std::vector<int>(ppc.cols, ABSENT));
    ppc.coeffs.assign(ppc.rows, std::vector<int>(ppc.cols, ABSENT));
    ppc.base.assign(ppc.rows, std::vector<int>(ppc.cols, 0));

    for (int r = 0; r < ppc.rows; ++r) {
        std::istringstream row(next_content_line(true));
        for (int c = 0; c < ppc.cols; ++c) {
            int w;
            if (!(row >> w))
                throw std::invalid_argument("code definition: H_w row " + std::to_string(r + 1) +
                                            " has fewer than c entries");
            if (w < -1)
                throw std::invalid_argument("code definition: H_w degree < -1 at row " +
                                            std::to_string(r + 1));
            ppc.degrees[r][c] = w;
        }
        int extra;
        if (row >> extra)
            throw std::invalid_argument("code definition: H_w row " + std::to_string(r + 1) +
                                        " has more than c entries");
    }

    for (int r = 0; r < ppc.rows; ++r) {
        std::istringstream row(next_content_line(true));
        for (int c = 0; c < ppc.cols; ++c) {
            std::string tok;
            if (!(row >> tok))
                throw std::invalid_argument("code definition: H_c row " + std::to_string(r + 1) +
                                            " has fewer than c entries");
            if (tok == "-1") {
                ppc.coeffs[r][c] = ABSENT;
            } else {
                ppc.coeffs[r][c] = parse_coeff_token(tok, ppc.field, r, c);
            }
        }
        int extra;
        if (row >> extra)
            throw std::invalid_argument("code definition: H_c row " + std::to_string(r + 1) +
                                        " has more than c entries");
    }

    // cross-consistency: -1 in H_w iff -1 in H_c; base follows
    int present = 0;
    for (int r = 0; r < ppc.rows; ++r)
        for (int c = 0; c < ppc.cols; ++c) {
            bool wp = ppc.degrees[r][c] != ABSENT;
            bool cp = ppc.coeffs[r][c] != ABSENT;
            if (wp != cp)
                throw std::invalid_argument("code definition: -1 mismatch between H_w and H_c at (" +
                                            std::to_string(r + 1) + "," + std::to_string(c + 1) + ")");
            ppc.base[r][c] = wp ? 1 : 0;
            if (wp) {
                ++present;
                ppc.max_degree = std::max(ppc.max_degree, ppc.degrees[r][c]);
            }
        }
    if (present == 0) throw std::invalid_argument("code definition: all-zero base matrix");
    for (int c = 0; c < ppc.cols; ++c) {
        int w = 0;
        for (int r = 0; r < ppc.rows; ++r) w += ppc.base[r][c];
        if (w == 0)
            throw std::invalid_argument("code definition: column " + std::to_string(c + 1) +
                                        " of the base matrix is all-zero");
    }
    return ppc;
}

PolynomialParityCheck load_code_definition(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open code definition file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_code_definition(ss.str());
}

QaryParityCheck lift(const PolynomialParityCheck& ppc) {
    const int L = ppc.lifting;
    QaryParityCheck q;
    q.field = ppc.field;
    q.n_sym = ppc.cols * L;
    q.r_sym = ppc.rows * L;
    q.row_entries.assign(q.r_sym, {});
    for (int r = 0; r < ppc.rows; ++r)
        for (int c = 0; c < ppc.cols; ++c) {
            if (ppc.base[r][c] == 0) continue;
            int shift = ppc.degrees[r][c] % L;  // circulant powers are cyclic of order L
            gf_elem coef = static_cast<gf_elem>(ppc.coeffs[r][c]);
            for (int i = 0; i < L; ++i) {
                int row = r * L + i;
                int col = c * L + (i + shift) % L;
                q.row_entries[row].emplace_back(col, coef);
            }
        }
    for (auto& row : q.row_entries) std::sort(row.begin(), row.end());
    return q;
}

BinaryParityCheck binary_image(const QaryParityCheck& qpc, const FieldTables& field) {
    const int m = field.m;
    BinaryParityCheck b;
    b.n_bits = qpc.n_sym * m;
    b.r_bits = qpc.r_sym * m;
    b.row_cols.assign(b.r_bits, {});
    for (int r = 0; r < qpc.r_sym; ++r)
        for (const auto& [c, v] : qpc.row_entries[r]) {
            CompanionMatrix cm = companion_matrix(v, field);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    if ((cm.rows[i] >> j) & 1) b.row_cols[r * m + i].push_back(c * m + j);
        }
    for (auto& row : b.row_cols) std::sort(row.begin(), row.end());
    return b;
}

// ---------------------------------------------------------------------------
// Encoder

namespace {

struct Monomial {
    int shift;
    gf_elem coef;
};

// y += B x where B is the lifted circulant of coef * D^shift: row i of B has
// its nonzero at column (i + shift) mod L
void apply_monomial(const Monomial& mo, const std::vector<gf_elem>& x, std::vector<gf_elem>& y,
                    const FieldTables& f, int L) {
    for (int i = 0; i < L; ++i) y[i] ^= f.mul(mo.coef, x[(i + mo.shift) % L]);
}

// solve B x = s for x
void apply_monomial_inv(const Monomial& mo, const std::vector<gf_elem>& s, std::vector<gf_elem>& x,
                        const FieldTables& f, int L) {
    gf_elem ic = f.inv(mo.coef);
    for (int i = 0; i < L; ++i) x[(i + mo.shift) % L] = f.mul(ic, s[i]);
}

}  // namespace

Encoder::Encoder(const PolynomialParityCheck& ppc) : ppc_(ppc), qpc_(lift(ppc)) {
    const int rows = ppc.rows;
    const int b = ppc.b();
    const FieldTables& f = ppc.field;

    // Structured path: parity part (h0 | H_bd) where h0 (column b) has two
    // entries with equal shifts, and each bidiagonal column has identical
    // entries in its two rows so that summing all block rows cancels them.
    structured_ = rows >= 2;
    if (structured_) {
        int h0r0 = -1, h0r1 = -1;
        for (int r = 0; r < rows; ++r)
            if (ppc.base[r][b]) (h0r0 < 0 ? h0r0 : h0r1) = r;
        int h0_count = 0;
        for (int r = 0; r < rows; ++r) h0_count += ppc.base[r][b];
        if (h0_count != 2 || ppc.degrees[h0r0][b] != ppc.degrees[h0r1][b] ||
            ppc.coeffs[h0r0][b] == ppc.coeffs[h0r1][b])
            structured_ = false;
        for (int j = 0; structured_ && j < rows - 1; ++j) {
            int c = b + 1 + j;
            for (int r = 0; r < rows; ++r) {
                bool expect = (r == j || r == j + 1);
                if ((ppc.base[r][c] != 0) != expect) structured_ = false;
            }
            if (structured_ &&
                (ppc.degrees[j][c] != ppc.degrees[j + 1][c] || ppc.coeffs[j][c] != ppc.coeffs[j + 1][c]))
                structured_ = false;
        }
    }

    if (!structured_) {
        // Dense generator via Gaussian elimination. Pivot columns are taken
        // from the parity block (the last r_sym columns) first; when that
        // block is singular -- the paper's own rate-1/4 example is, for every
        // L -- pivots are stolen from info columns so that valid codewords
        // still come out, at the price of strict first-k systematicity.
        const int n = qpc_.n_sym;
        const int r_sym = qpc_.r_sym;
        const int k = b * ppc.lifting;
        std::vector<std::vector<gf_elem>> M(r_sym, std::vector<gf_elem>(n, 0));
        for (int r = 0; r < r_sym; ++r)
            for (const auto& [c, v] : qpc_.row_entries[r]) M[r][c] ^= v;

        std::vector<int> col_order;
        for (int c = k; c < n; ++c) col_order.push_back(c);
        for (int c = 0; c < k; ++c) col_order.push_back(c);

        int rank = 0;
        std::vector<int> pivot_col;
        for (int col : col_order) {
            int pivot = -1;
            for (int r = rank; r < r_sym; ++r)
                if (M[r][col]) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) continue;
            std::swap(M[rank], M[pivot]);
            gf_elem iv = f.inv(M[rank][col]);
            for (int c = 0; c < n; ++c) M[rank][c] = f.mul(iv, M[rank][c]);
            for (int r = 0; r < r_sym; ++r) {
                if (r == rank || !M[r][col]) continue;
                gf_elem fac = M[r][col];
                for (int c = 0; c < n; ++c) M[r][c] ^= f.mul(fac, M[rank][c]);
            }
            pivot_col.push_back(col);
            if (++rank == r_sym) break;
        }
        if (static_cast<size_t>(n) - rank < static_cast<size_t>(k))
            throw std::runtime_error("Encoder: parity-check matrix leaves no room for information");

        std::vector<bool> is_pivot(n, false);
        for (int c : pivot_col) is_pivot[c] = true;
        free_cols_.clear();
        for (int c = 0; c < n; ++c)
            if (!is_pivot[c]) free_cols_.push_back(c);
        pivot_cols_ = pivot_col;
        dense_r_.assign(rank, std::vector<gf_elem>(free_cols_.size(), 0));
        for (int r = 0; r < rank; ++r)
            for (size_t j = 0; j < free_cols_.size(); ++j) dense_r_[r][j] = M[r][free_cols_[j]];
    }
}

bool Encoder::strictly_systematic() const {
    if (structured_) return true;
    const int k = ppc_.k_sym();
    for (size_t j = 0; j < free_cols_.size() && static_cast<int>(j) < k; ++j)
        if (free_cols_[j] != static_cast<int>(j)) return false;
    return true;
}

std::vector<gf_elem> Encoder::encode_structured(const std::vector<gf_elem>& info) const {
    const FieldTables& f = ppc_.field;
    const int L = ppc_.lifting;
    const int rows = ppc_.rows;
    const int b = ppc_.b();

    // per-block-row syndromes of the information part
    std::vector<std::vector<gf_elem>> s(rows, std::vector<gf_elem>(L, 0));
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < b; ++c) {
            if (!ppc_.base[r][c]) continue;
            Monomial mo{ppc_.degrees[r][c] % L, static_cast<gf_elem>(ppc_.coeffs[r][c])};
            std::vector<gf_elem> blk(info.begin() + c * L, info.begin() + (c + 1) * L);
            apply_monomial(mo, blk, s[r], f, L);
        }

    int h0r0 = -1, h0r1 = -1;
    for (int r = 0; r < rows; ++r)
        if (ppc_.base[r][b]) (h0r0 < 0 ? h0r0 : h0r1) = r;
    Monomial m0{ppc_.degrees[h0r0][b] % L, static_cast<gf_elem>(ppc_.coeffs[h0r0][b])};
    Monomial m1{ppc_.degrees[h0r1][b] % L, static_cast<gf_elem>(ppc_.coeffs[h0r1][b])};

    // summing all block rows cancels the bidiagonal part:
    // (coef0 + coef1) D^shift p0 = sum_r s_r
    std::vector<gf_elem> total(L, 0);
    for (int r = 0; r < rows; ++r)
        for (int i = 0; i < L; ++i) total[i] ^= s[r][i];
    Monomial msum{m0.shift, FieldTables::add(m0.coef, m1.coef)};
    std::vector<std::vector<gf_elem>> parity(rows, std::vector<gf_elem>(L, 0));
    apply_monomial_inv(msum, total, parity[0], f, L);  // parity block 0 = p0 (column b)

    // back-substitute down the bidiagonal: row j determines bd column j
    for (int j = 0; j < rows - 1; ++j) {
        std::vector<gf_elem> rhs = s[j];
        if (j == h0r0 || j == h0r1) {
            const Monomial& mh = (j == h0r0) ? m0 : m1;
            apply_monomial(mh, parity[0], rhs, f, L);
        }
        if (j > 0) {
            int cprev = b + j;  // bd column j-1 also sits in row j
            Monomial mp{ppc_.degrees[j][cprev] % L, static_cast<gf_elem>(ppc_.coeffs[j][cprev])};
            apply_monomial(mp, parity[j], rhs, f, L);
        }
        int c = b + 1 + j;
        Monomial md{ppc_.degrees[j][c] % L, static_cast<gf_elem>(ppc_.coeffs[j][c])};
        apply_monomial_inv(md, rhs, parity[j + 1], f, L);
    }

    std::vector<gf_elem> cw(info);
    cw.resize(ppc_.n_sym());
    for (int j = 0; j < rows; ++j)
        for (int i = 0; i < L; ++i) cw[(b + j) * L + i] = parity[j][i];
    return cw;
}

std::vector<gf_elem> Encoder::encode(const std::vector<gf_elem>& info) const {
    const int k = ppc_.k_sym();
    if (static_cast<int>(info.size()) != k)
        throw std::invalid_argument("encode: info length must be b*L symbols");
    std::vector<gf_elem> cw;
    if (structured_) {
        cw = encode_structured(info);
        if (!qpc_.in_code(cw))
            throw std::runtime_error("encode: structured encoder produced nonzero syndrome");
        return cw;
    }
    const FieldTables& f = ppc_.field;
    cw.assign(ppc_.n_sym(), 0);
    for (size_t j = 0; j < free_cols_.size(); ++j)
        cw[free_cols_[j]] = j < info.size() ? info[j] : 0;
    for (size_t r = 0; r < pivot_cols_.size(); ++r) {
        gf_elem acc = 0;
        for (size_t j = 0; j < free_cols_.size(); ++j) acc ^= f.mul(dense_r_[r][j], cw[free_cols_[j]]);
        cw[pivot_cols_[r]] = acc;
    }
    return cw;
}

// ---------------------------------------------------------------------------
// Ensembles

void EnsembleConfig::validate() const {
    if (q < 2 || (q & (q - 1)) != 0) throw std::invalid_argument("ensemble: q must be a power of two");
    if ((1 << m) != q) throw std::invalid_argument("ensemble: q != 2^m");
    if (J < 1 || K < 1 || L_strip < 1) throw std::invalid_argument("ensemble: J, K, L must be positive");
    if (static_cast<int>(K_list.size()) != J)
        throw std::invalid_argument("ensemble: K_list must have J entries");
    for (int k : K_list)
        if (k < 1 || k > K) throw std::invalid_argument("ensemble: need 1 <= K_i <= K");
}

EnsembleConfig parse_ensemble_config(const std::string& text) {
    std::istringstream in(text);
    EnsembleConfig cfg;
    if (!(in >> cfg.q >> cfg.J >> cfg.K >> cfg.L_strip))
        throw std::invalid_argument("ensemble config: expected 'q J K L_strip' then K_list");
    cfg.m = 0;
    while ((1 << cfg.m) < cfg.q) ++cfg.m;
    cfg.K_list.resize(cfg.J);
    for (int j = 0; j < cfg.J; ++j)
        if (!(in >> cfg.K_list[j]))
            throw std::invalid_argument("ensemble config: K_list needs J entries");
    cfg.validate();
    return cfg;
}

EnsembleConfig load_ensemble_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open ensemble config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_ensemble_config(ss.str());
}

QaryParityCheck sample_ensemble_matrix(const EnsembleConfig& cfg, const FieldTables& field, Rng& rng) {
    cfg.validate();
    const int N = cfg.N();
    QaryParityCheck h;
    h.field = field;
    h.n_sym = N;
    h.r_sym = cfg.J * cfg.L_strip;
    h.row_entries.assign(h.r_sym, {});
    std::vector<int> perm(N);
    for (int j = 0; j < cfg.J; ++j) {
        for (int i = 0; i < N; ++i) perm[i] = i;
        for (int i = N - 1; i > 0; --i)
            std::swap(perm[i], perm[rng.next_below(i + 1)]);
        for (int pre = 0; pre < N; ++pre) {
            if (pre / cfg.L_strip >= cfg.K_list[j]) continue;  // zero block
            int row = j * cfg.L_strip + pre % cfg.L_strip;
            gf_elem lab = cfg.q == 2 ? 1 : static_cast<gf_elem>(1 + rng.next_below(cfg.q - 1));
            h.row_entries[row].emplace_back(perm[pre], lab);
        }
    }
    for (auto& row : h.row_entries) std::sort(row.begin(), row.end());
    return h;
}

BinaryParityCheck sample_ensemble_matrix_binary(const EnsembleConfig& cfg, const FieldTables& field,
                                                Rng& rng) {
    cfg.validate();
    const int N = cfg.N();
    const int m = cfg.m;
    const int n = N * m;
    BinaryParityCheck b;
    b.n_bits = n;
    b.r_bits = cfg.J * cfg.L_strip * m;
    b.row_cols.assign(b.r_bits, {});
    std::vector<int> perm(n);
    for (int j = 0; j < cfg.J; ++j) {
        // labeled q-ary strip in pre-permutation block form, binarized
        std::vector<std::vector<int>> strip(cfg.L_strip * m);
        for (int pre = 0; pre < N; ++pre) {
            if (pre / cfg.L_strip >= cfg.K_list[j]) continue;
            int qrow = pre % cfg.L_strip;
            gf_elem lab = cfg.q == 2 ? 1 : static_cast<gf_elem>(1 + rng.next_below(cfg.q - 1));
            CompanionMatrix cm = companion_matrix(lab, field);
            for (int i = 0; i < m; ++i)
                for (int jj = 0; jj < m; ++jj)
                    if ((cm.rows[i] >> jj) & 1) strip[qrow * m + i].push_back(pre * m + jj);
        }
        // independent uniform permutation of the n binary columns
        for (int i = 0; i < n; ++i) perm[i] = i;
        for (int i = n - 1; i > 0; --i)
            std::swap(perm[i], perm[rng.next_below(i + 1)]);
        for (int r = 0; r < cfg.L_strip * m; ++r) {
            auto& out = b.row_cols[j * cfg.L_strip * m + r];
            for (int c : strip[r]) out.push_back(perm[c]);
            std::sort(out.begin(), out.end());
        }
    }
    return b;
}

}  // namespace nbcm
