// coop2mac: capacity-region bounds, constant-gap certification sweeps, and a
// deterministic binary-vector scheme simulator for the cooperative two-user
// Gaussian MAC.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "coop2mac/fd.hpp"
#include "coop2mac/geometry.hpp"
#include "coop2mac/hd.hpp"
#include "coop2mac/lda.hpp"
#include "coop2mac/model.hpp"
#include "coop2mac/sweep.hpp"

namespace {

using nlohmann::json;
using namespace coop2mac;

double r9(double x) { return std::stod(fmt9(x)); }

// Expands `--config file.json` into ordinary argv tokens at its position so
// every flag has a single source of truth. The file holds one flat object:
// scalars become `--key value`, arrays repeat the flag, `true` a bare flag.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> out;
    for (int i = 1; i < argc; ++i) {
        std::string tok = argv[i];
        if (tok != "--config") {
            out.push_back(std::move(tok));
            continue;
        }
        if (i + 1 >= argc) throw CLI::ParseError("--config requires a file path", 2);
        std::ifstream in(argv[++i]);
        if (!in) throw CLI::ParseError(std::string("cannot open config file: ") + argv[i], 2);
        json cfg = json::parse(in);
        if (!cfg.is_object()) throw CLI::ParseError("config file must hold a JSON object", 2);
        for (const auto& [key, val] : cfg.items()) {
            const std::string flag = "--" + key;
            auto push_scalar = [&](const json& v) {
                out.push_back(flag);
                if (v.is_string()) out.push_back(v.get<std::string>());
                else out.push_back(v.dump());
            };
            if (val.is_array()) {
                for (const auto& v : val) push_scalar(v);
            } else if (val.is_boolean()) {
                if (val.get<bool>()) out.push_back(flag);
            } else {
                push_scalar(val);
            }
        }
    }
    return out;
}

json schedule_to_json(const HdSchedule& s) {
    json j;
    j["gamma"] = {r9(s.g00), r9(s.g01), r9(s.g10), r9(s.g11)};
    j["p1"] = {r9(s.p1[0]), r9(s.p1[1]), r9(s.p1[2]), r9(s.p1[3])};
    j["p2"] = {r9(s.p2[0]), r9(s.p2[1]), r9(s.p2[2]), r9(s.p2[3])};
    j["rho"] = {r9(s.rho[0]), r9(s.rho[1]), r9(s.rho[2]), r9(s.rho[3])};
    return j;
}

std::string bits_hex(const BitVec& v) {
    if (v.empty()) return "-";
    std::string out;
    int acc = 0, nb = 0;
    auto flush = [&] {
        out.push_back("0123456789abcdef"[acc]);
        acc = 0;
        nb = 0;
    };
    for (std::uint8_t b : v) {
        acc = (acc << 1) | b;
        if (++nb == 4) flush();
    }
    if (nb > 0) {
        acc <<= (4 - nb);
        flush();
    }
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

struct ChannelFlags {
    double hmax_sq = -1.0, hmin_sq = -1.0, h1_sq = -1.0, h2_sq = -1.0;
    double phase_max = 0.0, phase_min = 0.0, phase_1 = 0.0, phase_2 = 0.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--hmax-sq", hmax_sq, "strong direct gain |h_max|^2")->required();
        cmd->add_option("--hmin-sq", hmin_sq, "weak direct gain |h_min|^2")->required();
        cmd->add_option("--h1-sq", h1_sq, "cooperation link gain |h_1|^2")->required();
        cmd->add_option("--h2-sq", h2_sq, "reverse link gain |h_2|^2")->required();
        cmd->add_option("--phase-max", phase_max, "phase of h_max (radians)");
        cmd->add_option("--phase-min", phase_min, "phase of h_min (radians)");
        cmd->add_option("--phase-1", phase_1, "phase of h_1 (radians)");
        cmd->add_option("--phase-2", phase_2, "phase of h_2 (radians)");
    }

    ChannelGains gains() const {
        ChannelGains raw{hmax_sq, hmin_sq, h1_sq, h2_sq, phase_max, phase_min, phase_1, phase_2};
        auto [g, swapped] = normalize_gains(raw);
        (void)swapped;
        validate_gains(g);
        return g;
    }
};

Interval to_interval(const std::vector<double>& v, const char* name) {
    if (v.size() == 1) return {v[0], v[0]};
    if (v.size() == 2 && v[0] <= v[1]) return {v[0], v[1]};
    throw CLI::ParseError(std::string(name) + " takes one value or an ordered pair", 2);
}

json gap_report_json(const GapReport& rep) {
    json j;
    j["regime"] = rep.regime;
    j["region_gap_bits"] = r9(rep.region_gap_bits);
    j["corners"] = json::array();
    for (const auto& c : rep.corners) {
        j["corners"].push_back(
            {{"label", c.label}, {"delta_bits", r9(c.delta_bits)}, {"bound_bits", r9(c.bound_bits)}});
    }
    return j;
}

int cmd_constants(const std::string& out_path) {
    const LeakageConstants& k = entropy_leakage_constants();
    json j;
    j["v1"] = r9(k.v1);
    j["v2"] = r9(k.v2);
    j["v12"] = r9(k.v12);
    j["argmax_v1"] = schedule_to_json(k.argmax_v1);
    j["argmax_v2"] = schedule_to_json(k.argmax_v2);
    j["argmax_v12"] = schedule_to_json(k.argmax_v12);
    j["closed_form_v1"] = schedule_to_json(k.closed_form_v1);
    j["closed_form_v12"] = schedule_to_json(k.closed_form_v12);
    const std::string text = j.dump(2) + "\n";
    std::cout << text;
    if (!out_path.empty()) write_text(out_path, text);
    return 0;
}

int cmd_region(const ChannelFlags& ch, const std::string& mode, const std::string& out_prefix) {
    const ChannelGains g = ch.gains();
    const bool fd = mode != "hd";
    const bool hd = mode != "fd";
    json j;
    j["channel"] = channel_to_json(g);
    int status = 0;
    auto emit = [&](const char* tag, const RateRegion& inner, const RateRegion& outer,
                    const GapReport& rep) {
        json m;
        m["inner"] = region_to_json(inner);
        m["outer"] = region_to_json(outer);
        m["gap"] = gap_report_json(rep);
        j[tag] = std::move(m);
        if (!out_prefix.empty()) {
            write_text(out_prefix + "_" + tag + "_inner.csv", region_vertices_csv(inner));
            write_text(out_prefix + "_" + tag + "_outer.csv", region_vertices_csv(outer));
        }
    };
    try {
        if (fd) emit("fd", fd_inner(g), fd_outer(g), fd_gap_audit(g));
        if (hd) emit("hd", hd_inner(g), hd_outer(g), hd_gap_audit(g));
    } catch (const GapViolation& e) {
        std::cerr << "gap violation: " << e.what() << "\n";
        status = 1;
    }
    std::cout << j.dump(2) << "\n";
    return status;
}

int cmd_gap_sweep(const SweepSpec& spec, double fd_limit, double hd_limit,
                  const std::string& csv_path, const std::string& summary_path) {
    const SweepReport report = run_sweep(spec);
    const std::string csv = sweep_csv(report);
    if (!csv_path.empty()) write_text(csv_path, csv);
    json summary = sweep_summary_json(report);
    const std::string text = summary.dump(2) + "\n";
    std::cout << text;
    if (!summary_path.empty()) write_text(summary_path, text);

    int status = 0;
    for (const SweepRow& row : report.rows) {
        if (row.violated) {
            std::cerr << "violation at idx " << row.idx << " (" << row.mode
                      << "): " << row.violation << "\n";
            status = 1;
        }
    }
    if (report.max_gap_fd > fd_limit) {
        std::cerr << "fd gap " << fmt9(report.max_gap_fd) << " exceeds " << fmt9(fd_limit)
                  << " at idx " << report.argmax_fd_idx << "\n";
        status = 1;
    }
    if (report.max_gap_hd > hd_limit) {
        std::cerr << "hd gap " << fmt9(report.max_gap_hd) << " exceeds " << fmt9(hd_limit)
                  << " at idx " << report.argmax_hd_idx << "\n";
        status = 1;
    }
    return status;
}

int cmd_lda(int bmax, int bmin, int b1, int slots, std::uint64_t seed, const std::string& log_path) {
    const LdaChannel ch{bmax, bmin, b1};
    LdaResult res;
    try {
        res = lda_scheme_run(ch, slots, seed);
    } catch (const std::exception& e) {
        std::cerr << "lda failure: " << e.what() << "\n";
        return 1;
    }
    json j;
    j["r1_steady"] = r9(res.r1_steady);
    j["r2_steady"] = r9(res.r2_steady);
    j["r1_total"] = r9(res.r1_total);
    j["r2_total"] = r9(res.r2_total);
    j["decode_errors"] = res.decode_errors;
    std::cout << j.dump(2) << "\n";
    if (!log_path.empty()) {
        std::ostringstream out;
        out << "slot,a_bits_hex,b1_bits_hex,b2_bits_hex,ok\n";
        for (const LdaSlotRecord& rec : res.log.slots) {
            out << rec.slot << ',' << bits_hex(rec.a_sent) << ',' << bits_hex(rec.b1_sent) << ','
                << bits_hex(rec.b2_sent) << ',' << (rec.ok ? 1 : 0) << "\n";
        }
        write_text(log_path, out.str());
    }
    return 0;
}

int cmd_gdof(double bmax, double bmin, double b1, double b2, const std::string& mode,
             const std::vector<double>& snr_list, const std::string& out_path) {
    GdofExponents e{bmax, bmin, b1, b2, 0.0};
    const GdofCornerSet corners = gdof_corners(e);
    json j;
    j["corners"] = json::array();
    for (int i = 0; i < 8; ++i) {
        j["corners"].push_back(
            {{"label", "V" + std::to_string(i)}, {"r1", r9(corners.v[i].r1)}, {"r2", r9(corners.v[i].r2)}});
    }
    std::cout << j.dump(2) << "\n";

    std::ostringstream out;
    out << "snr,label,r1,r2\n";
    auto emit_mode = [&](DuplexMode m, const char* tag) {
        const auto traj = gdof_limit_oracle(e, m, snr_list);
        for (const auto& pt : traj) {
            for (std::size_t i = 0; i < pt.outer_norm.size(); ++i)
                out << fmt9(pt.snr) << ',' << tag << "_outer" << i << ',' << fmt9(pt.outer_norm[i].r1)
                    << ',' << fmt9(pt.outer_norm[i].r2) << "\n";
            for (std::size_t i = 0; i < pt.inner_norm.size(); ++i)
                out << fmt9(pt.snr) << ',' << tag << "_inner" << i << ',' << fmt9(pt.inner_norm[i].r1)
                    << ',' << fmt9(pt.inner_norm[i].r2) << "\n";
        }
    };
    if (mode != "hd") emit_mode(DuplexMode::FD, "fd");
    if (mode != "fd") emit_mode(DuplexMode::HD, "hd");
    if (!out_path.empty()) write_text(out_path, out.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Capacity bounds and constant-gap certification for the cooperative two-user MAC"};
    app.require_subcommand(1);

    // constants
    std::string constants_out;
    CLI::App* constants = app.add_subcommand("constants", "entropy-leakage constants v1, v2, v12");
    constants->add_option("--out", constants_out, "write the JSON report to this path");

    // region
    ChannelFlags region_ch;
    std::string region_mode = "both", region_out;
    CLI::App* region = app.add_subcommand("region", "inner/outer regions for one channel");
    region_ch.attach(region);
    region->add_option("--mode", region_mode)->check(CLI::IsMember({"fd", "hd", "both"}));
    region->add_option("--out", region_out, "prefix for vertex CSV files");

    // gap-sweep
    std::vector<double> sw_bmax = {0.0, 3.0}, sw_bmin = {0.0, 3.0}, sw_b1 = {0.0, 3.0},
                        sw_b2 = {0.0, 3.0};
    std::vector<double> sw_snr_db = {10.0, 20.0, 30.0, 40.0, 60.0};
    std::string sw_mode = "both", sw_sampling = "random", sw_csv, sw_summary;
    int sw_count = 100, sw_grid_steps = 7;
    std::uint64_t sw_seed = 1;
    double sw_fd_limit = 2.0 + 1e-6, sw_hd_limit = 4.8219 + 1e-6;
    CLI::App* sweep = app.add_subcommand("gap-sweep", "randomized constant-gap certification");
    sweep->add_option("--mode", sw_mode)->check(CLI::IsMember({"fd", "hd", "both"}));
    sweep->add_option("--sampling", sw_sampling)->check(CLI::IsMember({"random", "grid"}));
    sweep->add_option("--bmax", sw_bmax, "beta_max value or range")->expected(1, 2);
    sweep->add_option("--bmin", sw_bmin, "beta_min value or range")->expected(1, 2);
    sweep->add_option("--b1", sw_b1, "beta_1 value or range")->expected(1, 2);
    sweep->add_option("--b2", sw_b2, "beta_2 value or range")->expected(1, 2);
    sweep->add_option("--snr-db", sw_snr_db, "SNR grid in dB")->expected(-1);
    sweep->add_option("--count", sw_count, "random sample count");
    sweep->add_option("--grid-steps", sw_grid_steps, "points per grid dimension");
    sweep->add_option("--seed", sw_seed);
    sweep->add_option("--fd-limit", sw_fd_limit, "assert max FD gap below this");
    sweep->add_option("--hd-limit", sw_hd_limit, "assert max HD gap below this");
    sweep->add_option("--csv", sw_csv, "per-channel rows CSV path");
    sweep->add_option("--summary", sw_summary, "summary JSON path");

    // lda
    int lda_bmax = 0, lda_bmin = 0, lda_b1 = 0, lda_slots = 100;
    std::uint64_t lda_seed = 1;
    std::string lda_log;
    CLI::App* lda = app.add_subcommand("lda", "binary-vector scheme simulation");
    lda->add_option("--bmax", lda_bmax)->required();
    lda->add_option("--bmin", lda_bmin)->required();
    lda->add_option("--b1", lda_b1)->required();
    lda->add_option("--slots", lda_slots);
    lda->add_option("--seed", lda_seed);
    lda->add_option("--log", lda_log, "per-slot log CSV path");

    // gdof
    double gd_bmax = 0.0, gd_bmin = 0.0, gd_b1 = 0.0, gd_b2 = 0.0;
    std::string gd_mode = "both", gd_out;
    std::vector<double> gd_snr = {1e3, 1e6, 1e9, 1e12};
    CLI::App* gdof = app.add_subcommand("gdof", "corner points and high-SNR trajectories");
    gdof->add_option("--bmax", gd_bmax)->required();
    gdof->add_option("--bmin", gd_bmin)->required();
    gdof->add_option("--b1", gd_b1)->required();
    gdof->add_option("--b2", gd_b2);
    gdof->add_option("--mode", gd_mode)->check(CLI::IsMember({"fd", "hd", "both"}));
    gdof->add_option("--snr", gd_snr, "linear SNR list for trajectories")->expected(-1);
    gdof->add_option("--out", gd_out, "trajectory CSV path");

    // audit
    AuditOptions audit_opt;
    CLI::App* audit = app.add_subcommand("audit", "oracle-equivalence and inclusion checks");
    audit->add_option("--channels", audit_opt.channels);
    audit->add_option("--chain-draws", audit_opt.chain_draws_per_channel);
    audit->add_option("--seed", audit_opt.seed);

    std::vector<std::string> args;
    try {
        args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());  // CLI11 consumes back-to-front
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (constants->parsed()) return cmd_constants(constants_out);
        if (region->parsed()) return cmd_region(region_ch, region_mode, region_out);
        if (sweep->parsed()) {
            SweepSpec spec;
            spec.mode = sw_mode == "fd" ? SweepMode::FD
                        : sw_mode == "hd" ? SweepMode::HD
                                          : SweepMode::Both;
            spec.sampling = sw_sampling == "grid" ? Sampling::Grid : Sampling::Random;
            spec.beta_max = to_interval(sw_bmax, "--bmax");
            spec.beta_min = to_interval(sw_bmin, "--bmin");
            spec.beta_1 = to_interval(sw_b1, "--b1");
            spec.beta_2 = to_interval(sw_b2, "--b2");
            spec.snr_db = sw_snr_db;
            spec.count = sw_count;
            spec.grid_steps = sw_grid_steps;
            spec.seed = sw_seed;
            return cmd_gap_sweep(spec, sw_fd_limit, sw_hd_limit, sw_csv, sw_summary);
        }
        if (lda->parsed()) return cmd_lda(lda_bmax, lda_bmin, lda_b1, lda_slots, lda_seed, lda_log);
        if (gdof->parsed()) return cmd_gdof(gd_bmax, gd_bmin, gd_b1, gd_b2, gd_mode, gd_snr, gd_out);
        if (audit->parsed()) {
            const int failures = run_self_audit(audit_opt);
            if (failures > 0) {
                std::cerr << failures << " audit check(s) failed\n";
                return 1;
            }
            std::cout << "audit ok\n";
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
