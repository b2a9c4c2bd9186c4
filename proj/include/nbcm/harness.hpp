#pragma once
// Monte Carlo FER campaigns: encode -> map -> AWGN -> demap -> decode loops
// with per-frame seeding, incremental persistence and resume.

#include <cstdint>
#include <string>
#include <vector>

#include "nbcm/awgn.hpp"
#include "nbcm/pam_map.hpp"
#include "nbcm/qc_code.hpp"
#include "nbcm/qspa.hpp"

namespace nbcm {

struct SimConfig {
    std::string code_file;
    MappingKind mapping = MappingKind::BICM;
    int pam = 4;
    std::vector<double> snr_grid_db;
    int max_iters = 100;
    int target_block_errors = 50;
    long max_frames = 10000000;
    std::uint64_t master_seed = 1;
    int workers = 1;
    std::string out_prefix;  // writes <prefix>.csv and <prefix>.json
};

struct FerRecord {
    double snr_db = 0.0;
    long frames = 0;
    long block_errors = 0;
    double fer = 0.0;
    double fer_stderr = 0.0;
    double avg_iterations = 0.0;
    std::uint64_t seed = 0;
    double wall_time_s = 0.0;  // not part of the determinism contract

    bool same_counts(const FerRecord& o) const {
        return snr_db == o.snr_db && frames == o.frames && block_errors == o.block_errors &&
               fer == o.fer && avg_iterations == o.avg_iterations && seed == o.seed;
    }
};

// Per-frame seed: a pure function of (master seed, SNR index, frame index),
// which makes error counts independent of worker count and scheduling.
inline std::uint64_t frame_seed(std::uint64_t master, int snr_index, long frame_index) {
    return splitmix64(splitmix64(master ^ (0x9E3779B97F4A7C15ULL * (snr_index + 1))) +
                      static_cast<std::uint64_t>(frame_index));
}

FerRecord run_fer_point(const Encoder& encoder, const MappingScheme& scheme, double snr_db,
                        const SimConfig& cfg, int snr_index);

// Runs every SNR point, appending to <out_prefix>.csv after each; on restart,
// points already in the CSV are kept and skipped. Writes a JSON manifest with
// the configuration, seeds and build revision.
std::vector<FerRecord> run_campaign(const SimConfig& cfg);

std::vector<double> parse_snr_grid(const std::string& spec);  // "a:step:b" or "a,b,c"

}  // namespace nbcm
