#pragma once
// q-ary sum-product decoder: flooding schedule, Walsh-Hadamard check nodes,
// syndrome-based early stop. One DecoderState per in-flight frame.

#include <vector>

#include "nbcm/demapper.hpp"
#include "nbcm/qc_code.hpp"

namespace nbcm {

// in-place unnormalized Walsh-Hadamard butterfly; wht(wht(x)) = 2^m x
void wht(std::vector<double>& values);

struct DecodeResult {
    std::vector<int> symbols;
    bool converged = false;
    int iterations = 0;
};

DecodeResult qspa_decode(const QaryParityCheck& code, const std::vector<LlrVector>& channel_metrics,
                         int max_iters = 100);

}  // namespace nbcm
