#pragma once
// Soft demapping: per-signal posteriors, Gray bit LLRs, and the q-ary symbol
// metric vectors for the four mappings. A metric vector holds one log-domain
// entry per field element, normalized so the entry of symbol 0 is 0.

#include <vector>

#include "nbcm/pam_map.hpp"

namespace nbcm {

inline constexpr double LLR_MAX = 50.0;

struct LlrVector {
    std::vector<double> values;  // length q, values[0] == 0

    int argmax() const {
        int best = 0;
        for (int v = 1; v < static_cast<int>(values.size()); ++v)
            if (values[v] > values[best]) best = v;  // lowest index wins ties
        return best;
    }
};

// log P(label | r) over the M labels (label packs (s, a1..) with s as MSB),
// normalized to sum 1; stable via max subtraction.
std::vector<double> label_log_posteriors(double r, int p, double sigma);

// posteriors over signal points in label order, linear domain
std::vector<double> signal_posteriors(double r, int M, double sigma);

// (sign LLR, p-1 amplitude LLRs) from label posteriors
std::vector<double> bit_llrs(const std::vector<double>& label_logpost, int p);

// One LlrVector per code symbol; received.size() * p must equal N * m.
std::vector<LlrVector> symbol_metrics(const std::vector<double>& received,
                                      const MappingScheme& scheme, double sigma);

}  // namespace nbcm
