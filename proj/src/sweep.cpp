#include "coop2mac/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <sstream>
#include <thread>

namespace coop2mac {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t idx) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(idx + 1)));
}

int dim_points(const Interval& iv, int grid_steps) {
    return iv.hi > iv.lo ? grid_steps : 1;
}

double r9(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return std::strtod(buf, nullptr);
}

bool region_subset(const RateRegion& a, const RateRegion& b, double tol) {
    return std::all_of(a.vertices().begin(), a.vertices().end(),
                       [&](const RatePair& v) { return b.contains(v, tol); });
}

}  // namespace

double db_to_linear(double snr_db) { return std::pow(10.0, snr_db / 10.0); }

std::string fmt9(double x) {
    if (x == 0.0) x = 0.0;  // collapse -0
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

void validate_spec(const SweepSpec& spec) {
    for (const Interval& iv : {spec.beta_max, spec.beta_min, spec.beta_1, spec.beta_2}) {
        if (!(0.0 <= iv.lo && iv.lo <= iv.hi && iv.hi <= 8.0)) {
            throw std::invalid_argument("sweep: beta intervals must satisfy 0 <= lo <= hi <= 8");
        }
    }
    if (spec.count < 1) throw std::invalid_argument("sweep: count must be >= 1");
    if (spec.grid_steps < 1) throw std::invalid_argument("sweep: grid_steps must be >= 1");
    if (spec.snr_db.empty()) throw std::invalid_argument("sweep: snr list must be nonempty");
    for (double db : spec.snr_db) {
        if (!(db > 0.0)) throw std::invalid_argument("sweep: snr entries must be > 0 dB");
    }
}

int sample_count(const SweepSpec& spec) {
    if (spec.sampling == Sampling::Random) return spec.count;
    long long total = static_cast<long long>(spec.snr_db.size());
    for (const Interval& iv : {spec.beta_max, spec.beta_min, spec.beta_1, spec.beta_2}) {
        total *= dim_points(iv, spec.grid_steps);
    }
    return static_cast<int>(total);
}

ChannelSample sample_channel(const SweepSpec& spec, int idx) {
    ChannelSample out;
    if (spec.sampling == Sampling::Random) {
        auto rng = sample_rng(spec.seed, static_cast<std::uint64_t>(idx));
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        auto draw = [&](const Interval& iv) { return iv.lo + (iv.hi - iv.lo) * uni(rng); };
        out.exponents.beta_max = draw(spec.beta_max);
        out.exponents.beta_min = draw(spec.beta_min);
        out.exponents.beta_1 = draw(spec.beta_1);
        out.exponents.beta_2 = draw(spec.beta_2);
        out.snr_db = spec.snr_db[rng() % spec.snr_db.size()];
        for (auto& p : out.phases) p = 2.0 * M_PI * uni(rng);
    } else {
        const std::array<const Interval*, 4> ivs = {&spec.beta_max, &spec.beta_min,
                                                    &spec.beta_1, &spec.beta_2};
        std::array<double, 4> betas{};
        long long rem = idx;
        for (int d = 3; d >= 0; --d) {
            const int np = dim_points(*ivs[d], spec.grid_steps);
            const int k = static_cast<int>(rem % np);
            rem /= np;
            betas[d] = np == 1 ? ivs[d]->lo
                               : ivs[d]->lo + (ivs[d]->hi - ivs[d]->lo) * k / (np - 1);
        }
        out.snr_db = spec.snr_db[rem % spec.snr_db.size()];
        out.exponents.beta_max = betas[0];
        out.exponents.beta_min = betas[1];
        out.exponents.beta_1 = betas[2];
        out.exponents.beta_2 = betas[3];
    }
    if (out.exponents.beta_max < out.exponents.beta_min) {
        std::swap(out.exponents.beta_max, out.exponents.beta_min);
        std::swap(out.exponents.beta_1, out.exponents.beta_2);
        out.swapped = true;
    }
    out.exponents.snr = db_to_linear(out.snr_db);
    return out;
}

int worker_count() {
    if (const char* env = std::getenv("COOP2MAC_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return std::min(n, 64);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 16u));
}

SweepReport run_sweep(const SweepSpec& spec) {
    validate_spec(spec);
    entropy_leakage_constants();  // compute the shared constants before the workers start

    const int n = sample_count(spec);
    const bool do_fd = spec.mode != SweepMode::HD;
    const bool do_hd = spec.mode != SweepMode::FD;
    const int rows_per_sample = (do_fd ? 1 : 0) + (do_hd ? 1 : 0);

    SweepReport report;
    report.rows.resize(static_cast<std::size_t>(n) * rows_per_sample);

    auto process = [&](int idx) {
        const ChannelSample cs = sample_channel(spec, idx);
        const ChannelGains g = gains_from_exponents(cs.exponents);
        const ChannelGains g_phased = gains_from_exponents(cs.exponents, cs.phases);
        std::size_t slot = static_cast<std::size_t>(idx) * rows_per_sample;
        auto fill = [&](const char* mode, auto&& audit_fn) {
            SweepRow& row = report.rows[slot++];
            row.idx = idx;
            row.snr_db = cs.snr_db;
            row.exponents = cs.exponents;
            row.swapped = cs.swapped;
            row.mode = mode;
            try {
                row.report = audit_fn(g);
                // Regions depend on magnitudes only; the phased re-run is a
                // property check, not a separate result.
                const GapReport phased = audit_fn(g_phased);
                if (std::abs(phased.region_gap_bits - row.report.region_gap_bits) > 1e-9) {
                    row.violated = true;
                    row.violation = "phase dependence detected";
                }
            } catch (const GapViolation& e) {
                row.violated = true;
                row.violation = e.what();
                row.report.channel = g;
                row.report.region_gap_bits = std::numeric_limits<double>::quiet_NaN();
            }
        };
        if (do_fd) fill("fd", [](const ChannelGains& c) { return fd_gap_audit(c); });
        if (do_hd) {
            fill("hd", [](const ChannelGains& c) { return hd_gap_audit(c); });
            SweepRow& row = report.rows[slot - 1];
            const HdOuterParams p = hd_outer_params(g);
            row.c1 = p.c1;
            row.cmax = p.cmax;
            row.v = p.v;
            row.gamma_star_mu0 = hd_optimal_gamma(g, 0.0);
        }
    };

    const int workers = std::min(worker_count(), std::max(1, n));
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) process(i);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) process(i);
            });
        }
        for (auto& t : pool) t.join();
    }

    for (const SweepRow& row : report.rows) {
        if (row.violated) {
            ++report.violation_count;
            continue;
        }
        if (row.mode == "fd" && row.report.region_gap_bits > report.max_gap_fd) {
            report.max_gap_fd = row.report.region_gap_bits;
            report.argmax_fd_idx = row.idx;
        }
        if (row.mode == "hd" && row.report.region_gap_bits > report.max_gap_hd) {
            report.max_gap_hd = row.report.region_gap_bits;
            report.argmax_hd_idx = row.idx;
        }
    }
    return report;
}

nlohmann::json region_to_json(const RateRegion& region) {
    nlohmann::json j;
    j["halfspaces"] = nlohmann::json::array();
    for (const auto& h : region.halfspaces()) {
        j["halfspaces"].push_back({{"a1", r9(h.a1)}, {"a2", r9(h.a2)}, {"c", r9(h.c)}});
    }
    j["vertices"] = nlohmann::json::array();
    for (const auto& v : region.vertices()) {
        j["vertices"].push_back({r9(v.r1), r9(v.r2)});
    }
    return j;
}

std::string region_vertices_csv(const RateRegion& region) {
    std::ostringstream os;
    os << "r1_bits,r2_bits\n";
    for (const auto& v : region.vertices()) {
        os << fmt9(v.r1) << "," << fmt9(v.r2) << "\n";
    }
    return os.str();
}

nlohmann::json channel_to_json(const ChannelGains& g) {
    return {{"h_max_sq", r9(g.h_max_sq)}, {"h_min_sq", r9(g.h_min_sq)},
            {"h_1_sq", r9(g.h_1_sq)},     {"h_2_sq", r9(g.h_2_sq)},
            {"phase_max", r9(g.phase_max)}, {"phase_min", r9(g.phase_min)},
            {"phase_1", r9(g.phase_1)},   {"phase_2", r9(g.phase_2)}};
}

ChannelGains channel_from_json(const nlohmann::json& j) {
    if (j.contains("snr")) {
        GdofExponents e;
        e.snr = j.at("snr").get<double>();
        e.beta_max = j.at("beta_max").get<double>();
        e.beta_min = j.at("beta_min").get<double>();
        e.beta_1 = j.at("beta_1").get<double>();
        e.beta_2 = j.value("beta_2", 0.0);
        return gains_from_exponents(e);
    }
    ChannelGains g;
    g.h_max_sq = j.at("h_max_sq").get<double>();
    g.h_min_sq = j.at("h_min_sq").get<double>();
    g.h_1_sq = j.at("h_1_sq").get<double>();
    g.h_2_sq = j.value("h_2_sq", 0.0);
    g.phase_max = j.value("phase_max", 0.0);
    g.phase_min = j.value("phase_min", 0.0);
    g.phase_1 = j.value("phase_1", 0.0);
    g.phase_2 = j.value("phase_2", 0.0);
    validate_gains(g);
    return g;
}

std::string sweep_csv(const SweepReport& report) {
    std::ostringstream os;
    os << "idx,snr_db,bmax,bmin,b1,b2,mode,regime,gap_bits,corner_deltas,"
          "c1,cmax,v,gamma_star_mu0,hd_gap\n";
    for (const SweepRow& row : report.rows) {
        os << row.idx << "," << fmt9(row.snr_db) << "," << fmt9(row.exponents.beta_max) << ","
           << fmt9(row.exponents.beta_min) << "," << fmt9(row.exponents.beta_1) << ","
           << fmt9(row.exponents.beta_2) << "," << row.mode << "," << row.report.regime << ","
           << (row.violated ? "violation" : fmt9(row.report.region_gap_bits)) << ",";
        bool first = true;
        for (const auto& cd : row.report.corners) {
            os << (first ? "" : ";") << cd.label << "=" << fmt9(cd.delta_bits);
            first = false;
        }
        if (row.mode == "hd") {
            os << "," << fmt9(row.c1) << "," << fmt9(row.cmax) << "," << fmt9(row.v) << ","
               << fmt9(row.gamma_star_mu0) << ","
               << (row.violated ? "violation" : fmt9(row.report.region_gap_bits));
        } else {
            os << ",,,,,";
        }
        os << "\n";
    }
    return os.str();
}

nlohmann::json sweep_summary_json(const SweepReport& report) {
    nlohmann::json j;
    j["rows"] = report.rows.size();
    j["violation_count"] = report.violation_count;
    j["max_gap_fd"] = r9(report.max_gap_fd);
    j["max_gap_hd"] = r9(report.max_gap_hd);
    j["argmax_fd_idx"] = report.argmax_fd_idx;
    j["argmax_hd_idx"] = report.argmax_hd_idx;
    return j;
}

int run_self_audit(const AuditOptions& opt) {
    int failures = 0;
    auto fail = [&](int idx, const std::string& what) {
        ++failures;
        std::fprintf(stderr, "audit failure at channel %d: %s\n", idx, what.c_str());
    };

    SweepSpec spec;
    spec.count = opt.channels;
    spec.seed = opt.seed;

    for (int idx = 0; idx < opt.channels; ++idx) {
        const ChannelSample cs = sample_channel(spec, idx);
        const ChannelGains g = gains_from_exponents(cs.exponents, cs.phases);

        // (i) rho-grid maximization of the cut-set bounds vs the closed-form
        // outer facets.
        {
            const double align = -(g.phase_max - g.phase_min);
            double best_r2 = 0.0, best_sum = 0.0;
            const int steps = 10000;
            for (int i = 0; i <= steps; ++i) {
                const double r = static_cast<double>(i) / steps;
                const CutsetBounds b = fd_cutset_at_rho(g, std::polar(r, align));
                best_r2 = std::max(best_r2, b.r2);
                best_sum = std::max(best_sum, b.sum);
            }
            // Facet constants before canonicalization; the region may clip the
            // R2 face below this when the sum face is tighter.
            const double facet_r2 = std::log2(1.0 + g.h_1_sq + g.h_min_sq);
            const double facet_sum =
                std::log2(1.0 + g.h_max_sq + g.h_min_sq +
                          2.0 * std::sqrt(g.h_max_sq * g.h_min_sq));
            if (std::abs(best_r2 - facet_r2) > 1e-6) fail(idx, "rho-grid R2 facet mismatch");
            if (std::abs(best_sum - facet_sum) > 1e-6) fail(idx, "rho-grid sum facet mismatch");
        }

        // (ii) printed scheme rates vs the log-det mutual-information oracle.
        {
            const Regime3Rates r3 = fd_regime3_rates(g);
            const double d1 = r3.delta1, d2 = r3.delta2;
            const double mi_a = gaussian_mi_scalar((1.0 - d1) * g.h_max_sq,
                                                   1.0 + d1 * g.h_max_sq + g.h_min_sq);
            const double mi_b2d =
                gaussian_mi_scalar(d1 * g.h_max_sq, 1.0 + g.h_min_sq);
            const double mi_b1d = gaussian_mi_scalar((1.0 - d2) * g.h_min_sq,
                                                     1.0 + d2 * g.h_min_sq);
            const double mi_b1u = gaussian_mi_scalar((1.0 - d2) * g.h_1_sq,
                                                     1.0 + d2 * g.h_1_sq);
            const double mi_b2u = gaussian_mi_scalar(d2 * g.h_1_sq, 1.0);
            if (std::abs(mi_a - r3.r_a_dest) > 1e-9) fail(idx, "oracle R_a mismatch");
            if (std::abs(mi_b2d - r3.r_b2_dest) > 1e-9) fail(idx, "oracle R_b2 dest mismatch");
            if (std::abs(mi_b1d - r3.r_b1_dest) > 1e-9) fail(idx, "oracle R_b1 dest mismatch");
            if (std::abs(mi_b1u - r3.r_b1_user1) > 1e-9) fail(idx, "oracle R_b1 user1 mismatch");
            if (std::abs(mi_b2u - r3.r_b2_user1) > 1e-9) fail(idx, "oracle R_b2 user1 mismatch");
        }

        // (iii) gamma-grid maximization vs the closed-form outer support.
        {
            const HdOuterParams p = hd_outer_params(g);
            const double denom = p.cmax + p.c1;
            const double gamma_kink = denom > 0.0 ? p.cmax / denom : 0.0;
            for (double mu : {0.0, 0.1, 0.3, 0.45, 0.5, 0.75, 1.0}) {
                double grid_best = 0.0;
                const int steps = 100000;
                for (int i = 0; i <= steps + 1; ++i) {
                    // The support is piecewise linear in gamma; the kink where
                    // the R2 and sum faces meet is appended to the grid.
                    const double gamma = i <= steps ? static_cast<double>(i) / steps : gamma_kink;
                    const double b2 = p.v + gamma * p.c1;
                    const double bs = p.v + (1.0 - gamma) * p.cmax;
                    const double r2 = std::min(b2, bs);
                    const double corner = mu * std::max(0.0, bs - r2) + (1.0 - mu) * r2;
                    grid_best = std::max({grid_best, mu * bs, corner, (1.0 - mu) * r2});
                }
                if (std::abs(grid_best - hd_weighted_sum(g, mu)) > 1e-6) {
                    fail(idx, "gamma-grid support mismatch at mu=" + fmt9(mu));
                }
            }
        }

        // (iv) chain ordering for random (schedule, power, rho) draws.
        {
            auto rng = sample_rng(opt.seed ^ 0xC0FFEEULL, static_cast<std::uint64_t>(idx));
            std::uniform_real_distribution<double> uni(0.0, 1.0);
            for (int d = 0; d < opt.chain_draws_per_channel; ++d) {
                HdSchedule s;
                std::array<double, 4> gs;
                double tot = 0.0;
                for (auto& x : gs) {
                    x = -std::log(std::max(uni(rng), 1e-300));
                    tot += x;
                }
                s.g00 = gs[0] / tot;
                s.g01 = gs[1] / tot;
                s.g10 = gs[2] / tot;
                s.g11 = gs[3] / tot;
                const std::array<double, 4> gamma = {s.g00, s.g01, s.g10, s.g11};
                for (int k = 0; k < 2; ++k) {
                    std::array<double, 4> delta;
                    double dt = 0.0;
                    for (auto& x : delta) {
                        x = -std::log(std::max(uni(rng), 1e-300));
                        dt += x;
                    }
                    auto& p = k == 0 ? s.p1 : s.p2;
                    for (int i = 0; i < 4; ++i) {
                        p[i] = gamma[i] > 1e-12 ? delta[i] / dt / gamma[i] : 0.0;
                    }
                }
                for (auto& r : s.rho) r = 2.0 * uni(rng) - 1.0;
                const ChainAudit audit = hd_chain_audit(g, s);
                if (!audit.ordered) fail(idx, "chain ordering violated");
            }
        }

        // structural inclusions and h2 invariance
        {
            const RateRegion nc = no_coop_region(g);
            const RateRegion fin = fd_inner(g);
            const RateRegion fout = fd_outer(g);
            const RateRegion ideal = ideal_coop_region(g);
            const RateRegion hin = hd_inner(g);
            const RateRegion hout = hd_outer(g);
            if (!region_subset(nc, fin, kGeomTol)) fail(idx, "no_coop not in fd_inner");
            if (!region_subset(fin, fout, kGeomTol)) fail(idx, "fd_inner not in fd_outer");
            if (!region_subset(fout, ideal, kGeomTol)) fail(idx, "fd_outer not in ideal");
            if (!region_subset(hin, hout, kGeomTol)) fail(idx, "hd_inner not in hd_outer");
            const HdOuterParams p = hd_outer_params(g);
            const double hm = p.cmax + p.c1 > 0.0 ? p.cmax * p.c1 / (p.cmax + p.c1) : 0.0;
            const RateRegion ohd2 = RateRegion::from_halfspaces({{1.0, 1.0, p.v + hm}});
            if (!region_subset(ohd2, hout, 1e-6)) fail(idx, "O^(HD 2) not in O^(HD 1)");

            for (double scale : {1e-3, 1e3}) {
                ChannelGains g2 = g;
                g2.h_2_sq = g.h_2_sq * scale + (g.h_2_sq == 0.0 ? scale : 0.0);
                for (double mu : {0.0, 0.25, 0.5, 0.75, 1.0}) {
                    if (std::abs(fd_outer(g2).support(mu).value - fout.support(mu).value) > 1e-9 ||
                        std::abs(fd_inner(g2).support(mu).value - fin.support(mu).value) > 1e-9 ||
                        std::abs(hd_outer(g2).support(mu).value - hout.support(mu).value) > 1e-9 ||
                        std::abs(hd_inner(g2).support(mu).value - hin.support(mu).value) > 1e-9) {
                        fail(idx, "region depends on h_2");
                    }
                }
            }
        }
    }
    return failures;
}

}  // namespace coop2mac
