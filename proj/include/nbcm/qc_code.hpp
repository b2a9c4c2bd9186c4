#pragma once
// NB QC-LDPC codes given by base/degree/coefficient matrices, their lifted
// q-ary and binary-image parity-check matrices, systematic encoding, and
// sampling from the strip-structured random ensembles.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nbcm/galois.hpp"
#include "nbcm/numerics.hpp"

namespace nbcm {

inline constexpr int ABSENT = -1;

struct PolynomialParityCheck {
    int rows = 0;  // c - b
    int cols = 0;  // c
    int lifting = 1;
    int max_degree = 0;  // nu, largest present exponent
    FieldTables field;
    std::vector<std::vector<int>> base;      // 0/1
    std::vector<std::vector<int>> degrees;   // H_w, ABSENT where base is 0
    std::vector<std::vector<int>> coeffs;    // H_c as field elements, ABSENT where base is 0

    int b() const { return cols - rows; }
    double rate() const { return double(b()) / cols; }
    int n_sym() const { return cols * lifting; }
    int k_sym() const { return b() * lifting; }
};

struct QaryEntry {
    int row;
    int col;
    gf_elem value;
};

struct QaryParityCheck {
    int n_sym = 0;
    int r_sym = 0;
    FieldTables field;
    std::vector<std::vector<std::pair<int, gf_elem>>> row_entries;  // per row: (col, value)

    std::vector<QaryEntry> entries() const;
    // H x over GF(q); zero vector iff x is a codeword
    std::vector<gf_elem> syndrome(const std::vector<gf_elem>& x) const;
    bool in_code(const std::vector<gf_elem>& x) const;
    std::vector<int> column_weights() const;
};

struct BinaryParityCheck {
    int n_bits = 0;
    int r_bits = 0;
    std::vector<std::vector<int>> row_cols;  // per row: sorted column indices

    std::vector<int> syndrome(const std::vector<int>& bits) const;
    bool in_code(const std::vector<int>& bits) const;
};

// Parses the plain-text code definition format:
//   line 1:            m c b L
//   next c-b lines:    H_w rows (integers, -1 = absent)
//   blank line
//   next c-b lines:    H_c rows (`a^k`, `a`, `1`, or `-1`)
PolynomialParityCheck parse_code_definition(const std::string& text);
PolynomialParityCheck load_code_definition(const std::string& path);

QaryParityCheck lift(const PolynomialParityCheck& ppc);
BinaryParityCheck binary_image(const QaryParityCheck& qpc, const FieldTables& field);

// Systematic encoder; first b*L symbols of the output equal info. Uses the
// bidiagonal back-substitution when the parity part has the (h0 | H_bd)
// structure with matching shifts, otherwise a dense generator obtained by
// Gaussian elimination on the lifted matrix. Throws if the parity part is
// rank-deficient.
class Encoder {
  public:
    explicit Encoder(const PolynomialParityCheck& ppc);
    std::vector<gf_elem> encode(const std::vector<gf_elem>& info) const;
    bool structured() const { return structured_; }
    const QaryParityCheck& lifted() const { return qpc_; }
    const PolynomialParityCheck& code() const { return ppc_; }

    // true when every info symbol lands at its own codeword position
    // (always the case on the structured path)
    bool strictly_systematic() const;

  private:
    PolynomialParityCheck ppc_;
    QaryParityCheck qpc_;
    bool structured_ = false;
    // dense fallback: RREF rows over the free columns; pivots preferentially
    // sit in the parity block and fall back to info columns if it is singular
    std::vector<std::vector<gf_elem>> dense_r_;
    std::vector<int> pivot_cols_;
    std::vector<int> free_cols_;

    std::vector<gf_elem> encode_structured(const std::vector<gf_elem>& info) const;
};

// Strip ensembles of Eq.-style almost regular codes. Strip i is a uniform
// column permutation of (I ... I 0 ... 0) with K_i identity blocks; nonzero
// entries carry i.i.d. uniform nonzero labels (ensemble N). Ensemble B
// binarizes each labeled strip first and then permutes its binary columns.
struct EnsembleConfig {
    int q = 0;
    int m = 0;  // q = 2^m
    int J = 0;
    int K = 0;
    std::vector<int> K_list;
    int L_strip = 0;

    int N() const { return K * L_strip; }
    int n_bits() const { return N() * m; }
    int r_sym() const { return J * L_strip; }
    double avg_column_weight() const {
        int s = 0;
        for (int k : K_list) s += k;
        return double(s) / K;
    }
    void validate() const;
};

EnsembleConfig parse_ensemble_config(const std::string& text);
EnsembleConfig load_ensemble_config(const std::string& path);

QaryParityCheck sample_ensemble_matrix(const EnsembleConfig& cfg, const FieldTables& field, Rng& rng);
BinaryParityCheck sample_ensemble_matrix_binary(const EnsembleConfig& cfg, const FieldTables& field, Rng& rng);

}  // namespace nbcm
