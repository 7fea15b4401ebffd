#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coop2mac/fd.hpp"
#include "coop2mac/geometry.hpp"
#include "coop2mac/hd.hpp"
#include "coop2mac/model.hpp"

namespace coop2mac {

enum class SweepMode { FD, HD, Both };
enum class Sampling { Grid, Random };

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

struct SweepSpec {
    SweepMode mode = SweepMode::Both;
    Sampling sampling = Sampling::Random;
    Interval beta_max{0.0, 3.0};
    Interval beta_min{0.0, 3.0};
    Interval beta_1{0.0, 3.0};
    Interval beta_2{0.0, 3.0};
    std::vector<double> snr_db = {10.0, 20.0, 30.0, 40.0, 60.0};
    int count = 100;          // random sampling only
    int grid_steps = 7;       // points per non-degenerate dimension
    std::uint64_t seed = 1;
};

void validate_spec(const SweepSpec& spec);

struct SweepRow {
    int idx = 0;
    double snr_db = 0.0;
    GdofExponents exponents{};
    bool swapped = false;
    std::string mode;  // "fd" or "hd"
    GapReport report{};
    bool violated = false;
    std::string violation;
    // HD extras (zero for FD rows).
    double c1 = 0.0, cmax = 0.0, v = 0.0, gamma_star_mu0 = 0.0;
};

struct SweepReport {
    std::vector<SweepRow> rows;
    double max_gap_fd = 0.0;
    double max_gap_hd = 0.0;
    int argmax_fd_idx = -1;
    int argmax_hd_idx = -1;
    int violation_count = 0;
};

// Evaluates the gap audits over the sampled channels; embarrassingly parallel,
// worker count capped by COOP2MAC_THREADS, output ordered by sample index.
SweepReport run_sweep(const SweepSpec& spec);

struct ChannelSample {
    GdofExponents exponents{};
    std::array<double, 4> phases{};
    bool swapped = false;
    double snr_db = 0.0;
};

// The exponent draw for one sample index (exposed for reproducibility tests).
ChannelSample sample_channel(const SweepSpec& spec, int idx);

int sample_count(const SweepSpec& spec);

int worker_count();

double db_to_linear(double snr_db);

// --- serialization ---

// Floats are printed with 9 significant digits everywhere.
std::string fmt9(double x);

nlohmann::json region_to_json(const RateRegion& region);
std::string region_vertices_csv(const RateRegion& region);

nlohmann::json channel_to_json(const ChannelGains& g);
ChannelGains channel_from_json(const nlohmann::json& j);

std::string sweep_csv(const SweepReport& report);
nlohmann::json sweep_summary_json(const SweepReport& report);

// --- self-audit (oracle equivalence and structural inclusions) ---

struct AuditOptions {
    int channels = 100;
    int chain_draws_per_channel = 10;
    std::uint64_t seed = 1;
};

// Returns the number of failed checks; prints one line per failure.
int run_self_audit(const AuditOptions& opt);

}  // namespace coop2mac
