#include "nbcm/awgn.hpp"

#include <stdexcept>

namespace nbcm {

double sigma_from_snr(double snr_db, int M) {
    if (M != 4 && M != 8 && M != 16) throw std::invalid_argument("sigma_from_snr: M in {4,8,16}");
    ChannelConfig cfg{snr_db, M};
    return cfg.sigma();
}

double snr_from_sigma(double sigma, int M) {
    ChannelConfig cfg{0.0, M};
    return 10.0 * std::log10(cfg.es() / (sigma * sigma));
}

std::vector<double> transmit(const std::vector<int>& signals, const ChannelConfig& cfg, Rng& rng) {
    std::vector<double> r(signals.size());
    const double s = cfg.sigma();
    for (size_t i = 0; i < signals.size(); ++i) r[i] = signals[i] + s * rng.next_gaussian();
    return r;
}

}  // namespace nbcm
