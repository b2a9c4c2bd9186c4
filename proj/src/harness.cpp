#include "nbcm/harness.hpp"

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "nbcm/demapper.hpp"
#include "json.hpp"

#ifndef NBCM_GIT_DESCRIBE
#define NBCM_GIT_DESCRIBE "unknown"
#endif

namespace nbcm {

namespace {

struct FrameOutcome {
    bool error;
    int iterations;
};

// one frame: random info -> encode -> map -> AWGN -> demap -> decode
FrameOutcome run_frame(const Encoder& encoder, const MappingScheme& scheme,
                       const ChannelConfig& chan, int max_iters, std::uint64_t seed) {
    const PolynomialParityCheck& code = encoder.code();
    const int q = code.field.q;
    const int m = code.field.m;
    Rng rng(seed);

    std::vector<gf_elem> info(code.k_sym());
    for (auto& v : info) v = static_cast<gf_elem>(rng.next_below(q));
    std::vector<gf_elem> cw = encoder.encode(info);

    std::vector<int> bits(cw.size() * m);
    for (size_t s = 0; s < cw.size(); ++s)
        for (int j = 0; j < m; ++j) bits[s * m + j] = (cw[s] >> j) & 1;

    std::vector<int> signals = map_codeword(bits, scheme);
    std::vector<double> received = transmit(signals, chan, rng);
    std::vector<LlrVector> metrics = symbol_metrics(received, scheme, chan.sigma());
    DecodeResult dec = qspa_decode(encoder.lifted(), metrics, max_iters);

    bool err = !dec.converged;
    if (!err)
        for (size_t s = 0; s < cw.size(); ++s)
            if (dec.symbols[s] != cw[s]) {
                err = true;
                break;
            }
    return {err, dec.iterations};
}

}  // namespace

FerRecord run_fer_point(const Encoder& encoder, const MappingScheme& scheme, double snr_db,
                        const SimConfig& cfg, int snr_index) {
    const auto t0 = std::chrono::steady_clock::now();
    ChannelConfig chan{snr_db, scheme.M()};

    // Frames are dispatched in index order; counting stops at the smallest
    // frame index f* whose prefix [0..f*] reaches the error target, so the
    // record is identical for any worker count.
    std::mutex mu;
    std::map<long, FrameOutcome> pending;  // reorder buffer
    long next_to_count = 0;
    long next_to_issue = 0;
    long errors = 0;
    long counted = 0;
    long long iter_sum = 0;
    bool done = false;

    auto count_ready = [&]() {
        for (auto it = pending.begin(); it != pending.end() && it->first == next_to_count;) {
            errors += it->second.error ? 1 : 0;
            iter_sum += it->second.iterations;
            ++counted;
            ++next_to_count;
            it = pending.erase(it);
            if (errors >= cfg.target_block_errors || counted >= cfg.max_frames) {
                done = true;
                break;
            }
        }
    };

    int workers = std::max(1, cfg.workers);
    std::vector<std::thread> pool;
    for (int wk = 0; wk < workers; ++wk) {
        pool.emplace_back([&]() {
            while (true) {
                long idx;
                {
                    std::lock_guard<std::mutex> lock(mu);
                    if (done || next_to_issue >= cfg.max_frames) return;
                    idx = next_to_issue++;
                }
                FrameOutcome out =
                    run_frame(encoder, scheme, chan, cfg.max_iters, frame_seed(cfg.master_seed, snr_index, idx));
                {
                    std::lock_guard<std::mutex> lock(mu);
                    pending.emplace(idx, out);
                    count_ready();
                    if (done) return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();

    FerRecord rec;
    rec.snr_db = snr_db;
    rec.frames = counted;
    rec.block_errors = errors;
    rec.fer = counted > 0 ? static_cast<double>(errors) / counted : 0.0;
    rec.fer_stderr = counted > 0 ? std::sqrt(rec.fer * (1.0 - rec.fer) / counted) : 0.0;
    rec.avg_iterations = counted > 0 ? static_cast<double>(iter_sum) / counted : 0.0;
    rec.seed = cfg.master_seed;
    rec.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

namespace {

const char* kCsvHeader = "snr_db,frames,block_errors,fer,fer_stderr,avg_iterations,seed,wall_time_s";

std::string csv_line(const FerRecord& r) {
    std::ostringstream os;
    os.precision(12);
    os << r.snr_db << "," << r.frames << "," << r.block_errors << "," << r.fer << ","
       << r.fer_stderr << "," << r.avg_iterations << "," << r.seed << "," << r.wall_time_s;
    return os.str();
}

std::map<double, FerRecord> read_existing_csv(const std::string& path) {
    std::map<double, FerRecord> out;
    std::ifstream in(path);
    if (!in) return out;
    std::string line;
    if (!std::getline(in, line)) return out;
    if (line != kCsvHeader) throw std::runtime_error("resume: unrecognized header in " + path);
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        FerRecord r;
        char comma;
        std::istringstream ss(line);
        for (auto& ch : line)
            if (ch == ',') ch = ' ';
        std::istringstream fs(line);
        (void)comma;
        if (!(fs >> r.snr_db >> r.frames >> r.block_errors >> r.fer >> r.fer_stderr >>
              r.avg_iterations >> r.seed >> r.wall_time_s))
            throw std::runtime_error("resume: corrupt line " + std::to_string(lineno) + " in " + path +
                                     " (refusing to overwrite)");
        (void)ss;
        out[r.snr_db] = r;
    }
    return out;
}

}  // namespace

std::vector<double> parse_snr_grid(const std::string& spec) {
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        double a, step, b;
        char c1, c2;
        std::istringstream ss(spec);
        if (!(ss >> a >> c1 >> step >> c2 >> b) || c1 != ':' || c2 != ':' || step <= 0)
            throw std::invalid_argument("snr grid: expected a:step:b");
        for (double v = a; v <= b + 1e-9; v += step) out.push_back(v);
        return out;
    }
    std::string item;
    std::istringstream ss(spec);
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stod(item));
    return out;
}

std::vector<FerRecord> run_campaign(const SimConfig& cfg) {
    if (cfg.snr_grid_db.empty()) return {};
    PolynomialParityCheck code = load_code_definition(cfg.code_file);
    MappingScheme scheme{cfg.mapping, code.field.m, 0};
    scheme.p = 0;
    while ((1 << scheme.p) < cfg.pam) ++scheme.p;
    scheme.validate();
    Encoder encoder(code);

    std::map<double, FerRecord> existing;
    std::string csv_path, json_path;
    if (!cfg.out_prefix.empty()) {
        csv_path = cfg.out_prefix + ".csv";
        json_path = cfg.out_prefix + ".json";
        existing = read_existing_csv(csv_path);
    }

    // manifest first, so interrupted runs are reconstructible
    if (!json_path.empty()) {
        nlohmann::json j;
        j["code_file"] = cfg.code_file;
        j["mapping"] = to_string(cfg.mapping);
        j["pam"] = cfg.pam;
        j["snr_grid_db"] = cfg.snr_grid_db;
        j["max_iters"] = cfg.max_iters;
        j["target_block_errors"] = cfg.target_block_errors;
        j["max_frames"] = cfg.max_frames;
        j["master_seed"] = cfg.master_seed;
        j["workers"] = cfg.workers;
        j["build"] = NBCM_GIT_DESCRIBE;
        std::vector<std::uint64_t> seeds;
        for (size_t i = 0; i < cfg.snr_grid_db.size(); ++i)
            seeds.push_back(frame_seed(cfg.master_seed, static_cast<int>(i), 0));
        j["first_frame_seeds"] = seeds;
        std::ofstream out(json_path);
        if (!out) throw std::runtime_error("cannot write " + json_path);
        out << j.dump(2) << "\n";
    }

    bool fresh = existing.empty();
    if (!csv_path.empty() && fresh) {
        std::ofstream out(csv_path);
        if (!out) throw std::runtime_error("cannot write " + csv_path);
        out << kCsvHeader << "\n";
    }

    std::vector<FerRecord> records;
    for (size_t i = 0; i < cfg.snr_grid_db.size(); ++i) {
        double snr = cfg.snr_grid_db[i];
        auto it = existing.find(snr);
        if (it != existing.end()) {
            records.push_back(it->second);  // completed point, skipped on resume
            continue;
        }
        FerRecord rec = run_fer_point(encoder, scheme, snr, cfg, static_cast<int>(i));
        records.push_back(rec);
        if (!csv_path.empty()) {
            std::ofstream out(csv_path, std::ios::app);
            out << csv_line(rec) << "\n";
        }
    }
    return records;
}

}  // namespace nbcm
