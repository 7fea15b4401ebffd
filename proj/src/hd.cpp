#include "coop2mac/hd.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace coop2mac {

namespace {

constexpr double kLn2 = 0.6931471805599453;

double log2_1p(double x) { return std::log1p(x) / kLn2; }

// -x*log2(x), continuously extended to 0 at x=0.
double xlg(double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; }

double joint_entropy(const HdSchedule& s) {
    return xlg(s.g00) + xlg(s.g01) + xlg(s.g10) + xlg(s.g11);
}

double entropy_s1(const HdSchedule& s) {
    return xlg(s.g00 + s.g01) + xlg(s.g10 + s.g11);
}

double entropy_s2(const HdSchedule& s) {
    return xlg(s.g00 + s.g10) + xlg(s.g01 + s.g11);
}

// Nelder-Mead on the 3 free schedule probabilities (g01, g10, g11), g00
// implicit; out-of-simplex points are penalized.
std::array<double, 3> refine_simplex_max(const std::function<double(const HdSchedule&)>& objective,
                                         std::array<double, 3> start, double scale) {
    auto eval = [&](const std::array<double, 3>& x) {
        const double g00 = 1.0 - x[0] - x[1] - x[2];
        double violation = std::max(0.0, -g00);
        for (double xi : x) violation += std::max(0.0, -xi);
        if (violation > 0.0) return -1e9 * (1.0 + violation);
        HdSchedule s;
        s.g01 = x[0];
        s.g10 = x[1];
        s.g11 = x[2];
        s.g00 = g00;
        return objective(s);
    };

    std::array<std::array<double, 3>, 4> simplex;
    std::array<double, 4> f;
    simplex[0] = start;
    for (int i = 1; i < 4; ++i) {
        simplex[i] = start;
        simplex[i][i - 1] += scale;
    }
    for (int i = 0; i < 4; ++i) f[i] = eval(simplex[i]);

    for (int iter = 0; iter < 2000; ++iter) {
        std::array<int, 4> order = {0, 1, 2, 3};
        std::sort(order.begin(), order.end(), [&](int a, int b) { return f[a] > f[b]; });
        std::array<std::array<double, 3>, 4> sx;
        std::array<double, 4> sf;
        for (int i = 0; i < 4; ++i) {
            sx[i] = simplex[order[i]];
            sf[i] = f[order[i]];
        }
        simplex = sx;
        f = sf;
        if (f[0] - f[3] < 1e-14) break;

        std::array<double, 3> centroid{};
        for (int i = 0; i < 3; ++i) {
            for (int d = 0; d < 3; ++d) centroid[d] += simplex[i][d] / 3.0;
        }
        auto blend = [&](double coef) {
            std::array<double, 3> p;
            for (int d = 0; d < 3; ++d) p[d] = centroid[d] + coef * (centroid[d] - simplex[3][d]);
            return p;
        };
        const auto refl = blend(1.0);
        const double fr = eval(refl);
        if (fr > f[0]) {
            const auto exp_ = blend(2.0);
            const double fe = eval(exp_);
            simplex[3] = fe > fr ? exp_ : refl;
            f[3] = std::max(fe, fr);
        } else if (fr > f[2]) {
            simplex[3] = refl;
            f[3] = fr;
        } else {
            const auto con = blend(-0.5);
            const double fc = eval(con);
            if (fc > f[3]) {
                simplex[3] = con;
                f[3] = fc;
            } else {
                for (int i = 1; i < 4; ++i) {
                    for (int d = 0; d < 3; ++d) {
                        simplex[i][d] = 0.5 * (simplex[i][d] + simplex[0][d]);
                    }
                    f[i] = eval(simplex[i]);
                }
            }
        }
    }
    std::array<int, 4> order = {0, 1, 2, 3};
    std::sort(order.begin(), order.end(), [&](int a, int b) { return f[a] > f[b]; });
    return simplex[order[0]];
}

HdSchedule schedule_from_free(const std::array<double, 3>& x) {
    HdSchedule s;
    s.g01 = std::max(0.0, x[0]);
    s.g10 = std::max(0.0, x[1]);
    s.g11 = std::max(0.0, x[2]);
    s.g00 = std::max(0.0, 1.0 - s.g01 - s.g10 - s.g11);
    return s;
}

LeakageConstants compute_leakage_constants() {
    LeakageConstants lc;

    // Coarse simplex grid; all addends are multiples of 1/N, precomputed.
    const int n = 500;
    std::vector<double> xlg_table(n + 1);
    for (int i = 0; i <= n; ++i) xlg_table[i] = xlg(static_cast<double>(i) / n);

    double best1 = -1.0, best2 = -1.0, best12 = -1.0;
    std::array<int, 3> arg1{}, arg2{}, arg12{};
    for (int i = 0; i <= n; ++i) {          // g01
        for (int j = 0; j <= n - i; ++j) {  // g10
            for (int k = 0; k <= n - i - j; ++k) {  // g11
                const int m = n - i - j - k;        // g00
                const double hj = xlg_table[m] + xlg_table[i] + xlg_table[j] + xlg_table[k];
                const double h1 = xlg_table[m + i] + xlg_table[j + k];
                const double h2 = xlg_table[m + j] + xlg_table[i + k];
                const double o1 = (hj - h2) + xlg_table[j] + xlg_table[k];
                const double o2 = (hj - h1) + xlg_table[i] + xlg_table[k];
                const double o12 = hj + xlg_table[j] + xlg_table[i] + xlg_table[k] +
                                   static_cast<double>(k) / n;
                if (o1 > best1) {
                    best1 = o1;
                    arg1 = {i, j, k};
                }
                if (o2 > best2) {
                    best2 = o2;
                    arg2 = {i, j, k};
                }
                if (o12 > best12) {
                    best12 = o12;
                    arg12 = {i, j, k};
                }
            }
        }
    }

    const double step = 1.0 / n;
    auto refine = [&](const std::function<double(const HdSchedule&)>& obj,
                      const std::array<int, 3>& arg) {
        std::array<double, 3> x = {arg[0] * step, arg[1] * step, arg[2] * step};
        return schedule_from_free(refine_simplex_max(obj, x, 2.0 * step));
    };

    lc.argmax_v1 = refine(leakage_v1_objective, arg1);
    lc.argmax_v2 = refine(leakage_v2_objective, arg2);
    lc.argmax_v12 = refine(leakage_v12_objective, arg12);
    lc.v1 = leakage_v1_objective(lc.argmax_v1);
    lc.v2 = leakage_v2_objective(lc.argmax_v2);
    lc.v12 = leakage_v12_objective(lc.argmax_v12);

    // Stationary family for v1: g00 = g01 = t^2 e, g10 = g11 = t,
    // with 2 e t^2 + 2 t = 1.
    {
        const double e = std::exp(1.0);
        const double t = (-1.0 + std::sqrt(1.0 + 2.0 * e)) / (2.0 * e);
        lc.closed_form_v1 = HdSchedule{t * t * e, t * t * e, t, t};
    }
    // Stationary family for v12: g00 = t^2 e, g01 = g10 = t, g11 = t sqrt(2),
    // with e t^2 + (2 + sqrt(2)) t = 1.
    {
        const double e = std::exp(1.0);
        const double b = 2.0 + std::sqrt(2.0);
        const double t = (-b + std::sqrt(b * b + 4.0 * e)) / (2.0 * e);
        lc.closed_form_v12 = HdSchedule{t * t * e, t, t, t * std::sqrt(2.0)};
    }
    return lc;
}

}  // namespace

void validate_schedule(const HdSchedule& s) {
    const double sum = s.g00 + s.g01 + s.g10 + s.g11;
    for (double g : {s.g00, s.g01, s.g10, s.g11}) {
        if (!(g >= 0.0) || !std::isfinite(g)) {
            throw std::invalid_argument("schedule: probabilities must be finite and >= 0");
        }
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("schedule: probabilities must sum to 1");
    }
    const std::array<double, 4> gs = {s.g00, s.g01, s.g10, s.g11};
    for (int k = 0; k < 2; ++k) {
        const auto& p = k == 0 ? s.p1 : s.p2;
        double avg = 0.0;
        for (int i = 0; i < 4; ++i) {
            if (!(p[i] >= 0.0) || !std::isfinite(p[i])) {
                throw std::invalid_argument("schedule: powers must be finite and >= 0");
            }
            avg += gs[i] * p[i];
        }
        if (avg > 1.0 + 1e-9) {
            throw std::invalid_argument("schedule: average power exceeds 1");
        }
    }
    for (double r : s.rho) {
        if (!(std::abs(r) <= 1.0)) {
            throw std::invalid_argument("schedule: |rho| must be <= 1");
        }
    }
}

double leakage_v1_objective(const HdSchedule& s) {
    return (joint_entropy(s) - entropy_s2(s)) + xlg(s.g10) + xlg(s.g11);
}

double leakage_v2_objective(const HdSchedule& s) {
    return (joint_entropy(s) - entropy_s1(s)) + xlg(s.g01) + xlg(s.g11);
}

double leakage_v12_objective(const HdSchedule& s) {
    return joint_entropy(s) + xlg(s.g10) + xlg(s.g01) + xlg(s.g11) + s.g11;
}

const LeakageConstants& entropy_leakage_constants() {
    static const LeakageConstants lc = compute_leakage_constants();
    return lc;
}

HdOuterParams hd_outer_params(const ChannelGains& g) {
    const LeakageConstants& lc = entropy_leakage_constants();
    HdOuterParams p;
    p.v1 = lc.v1;
    p.v2 = lc.v2;
    p.v12 = lc.v12;
    const double nf = 1.0 + g.h_min_sq;  // effective noise floor seen past the weak user
    p.c1 = log2_1p(g.h_1_sq / nf);
    p.cmax = log2_1p(g.h_max_sq / nf);
    p.v = p.v12 + log2_1p(g.h_min_sq);
    return p;
}

RateRegion hd_outer(const ChannelGains& g) {
    const HdOuterParams p = hd_outer_params(g);
    const double denom = p.cmax + p.c1;
    // The slice corner traces a straight segment from (cmax, v) at gamma = 0
    // to (0, v + cmax*c1/(cmax+c1)) at the kink where both faces meet; larger
    // listen fractions are dominated. The union is therefore an exact hull of
    // three points.
    const double harmonic = denom > 0.0 ? p.cmax * p.c1 / denom : 0.0;
    const std::array<RatePair, 3> pts = {RatePair{p.v + p.cmax, 0.0},
                                         RatePair{p.cmax, p.v},
                                         RatePair{0.0, p.v + harmonic}};
    return RateRegion::from_points(pts);
}

ChainAudit hd_chain_audit(const ChannelGains& g, const HdSchedule& s) {
    validate_schedule(s);
    const HdOuterParams pr = hd_outer_params(g);
    const double l0 = log2_1p(g.h_min_sq);
    const double lmax = log2_1p(g.h_max_sq);
    const double lsum = log2_1p(g.h_max_sq + g.h_min_sq);
    const double l1 = log2_1p(g.h_1_sq + g.h_min_sq);
    const double l2 = log2_1p(g.h_2_sq + g.h_max_sq);

    const double h1 = joint_entropy(s) - entropy_s2(s);
    const double h2 = joint_entropy(s) - entropy_s1(s);
    const double h12 = joint_entropy(s);

    ChainAudit audit;

    // (a): exact conditional mutual informations at the given (P, rho),
    // evaluated through the log-det oracle. All I_{0j}^{(1)}, I_{i0}^{(2)} and
    // I_00^{(12)} vanish.
    {
        const double p1_10 = s.p1[2], p1_11 = s.p1[3];
        const double p2_01 = s.p2[1], p2_11 = s.p2[3];
        const double v10 = (1.0 - s.rho[2] * s.rho[2]) * p1_10;
        const double v11_1 = (1.0 - s.rho[3] * s.rho[3]) * p1_11;
        const double v01 = (1.0 - s.rho[1] * s.rho[1]) * p2_01;
        const double v11_2 = (1.0 - s.rho[3] * s.rho[3]) * p2_11;

        // I_10^(1): strong user transmits, weak user listens; outputs (Y3, Y2).
        // The two-antenna covariance is identity plus a rank-one term, so the
        // log-det collapses to a scalar sufficient statistic; evaluating it
        // directly avoids the determinant cancellation at large per-state
        // powers.
        const double i10_1 = gaussian_mi_scalar((g.h_max_sq + g.h_2_sq) * v10, 1.0);
        const double i11_1 = gaussian_mi_scalar(g.h_max_sq * v11_1, 1.0);

        const double i01_2 = gaussian_mi_scalar((g.h_min_sq + g.h_1_sq) * v01, 1.0);
        const double i11_2 = gaussian_mi_scalar(g.h_min_sq * v11_2, 1.0);

        const double i01_12 = gaussian_mi_scalar(g.h_min_sq * p2_01, 1.0);
        const double i10_12 = gaussian_mi_scalar(g.h_max_sq * p1_10, 1.0);
        const double coh = 2.0 * s.rho[3] * std::sqrt(g.h_max_sq * p1_11 * g.h_min_sq * p2_11) *
                           std::cos(g.phase_max - g.phase_min);
        const double i11_12 = gaussian_mi_scalar(
            std::max(0.0, g.h_max_sq * p1_11 + g.h_min_sq * p2_11 + coh), 1.0);

        audit.a.r1 = h1 + s.g10 * i10_1 + s.g11 * i11_1;
        audit.a.r2 = h2 + s.g01 * i01_2 + s.g11 * i11_2;
        audit.a.sum = h12 + s.g01 * i01_12 + s.g10 * i10_12 + s.g11 * i11_12;
    }

    // (b): leakage substitution P = delta/gamma, coherent gain absorbed into
    // the gamma_11*log(2) term of the sum bound.
    audit.b.r1 = h1 + xlg(s.g10) + xlg(s.g11) + s.g10 * l2 + s.g11 * lmax;
    audit.b.r2 = h2 + xlg(s.g01) + xlg(s.g11) + s.g01 * l1 + s.g11 * l0;
    audit.b.sum = h12 + xlg(s.g10) + xlg(s.g01) + xlg(s.g11) + s.g11 +
                  s.g01 * l0 + s.g10 * lmax + s.g11 * lsum;

    // (c): R1 dropped, leakage replaced by the v constants, listen fraction
    // gamma = gamma_01.
    const double gamma = s.g01;
    audit.c.r2 = pr.v2 + gamma * l1 + (1.0 - gamma) * l0;
    audit.c.sum = pr.v12 + gamma * l0 + (1.0 - gamma) * lsum;

    // (d): final outer-bound form.
    audit.d.r2 = pr.v + gamma * pr.c1;
    audit.d.sum = pr.v + (1.0 - gamma) * pr.cmax;

    const double tol = 1e-9;
    audit.ordered = audit.a.r1 <= audit.b.r1 + tol &&
                    audit.a.r2 <= audit.b.r2 + tol && audit.b.r2 <= audit.c.r2 + tol &&
                    audit.c.r2 <= audit.d.r2 + tol &&
                    audit.a.sum <= audit.b.sum + tol && audit.b.sum <= audit.c.sum + tol &&
                    audit.c.sum <= audit.d.sum + tol;
    return audit;
}

double hd_relay_rate(const ChannelGains& g) {
    const HdOuterParams p = hd_outer_params(g);
    const double denom = p.cmax + p.c1;
    const double harmonic = denom > 0.0 ? p.cmax * p.c1 / denom : 0.0;
    return std::max(0.0, log2_1p(g.h_min_sq) - 1.0 + harmonic);
}

RateRegion hd_inner(const ChannelGains& g) {
    const std::array<RateRegion, 1> base = {no_coop_region(g)};
    const std::array<RatePair, 1> pts = {RatePair{0.0, hd_relay_rate(g)}};
    return convex_union(base, pts);
}

double hd_optimal_gamma(const ChannelGains& g, double mu) {
    if (mu >= 0.5) return 0.0;
    const HdOuterParams p = hd_outer_params(g);
    if ((1.0 - 2.0 * mu) * p.c1 - mu * p.cmax <= 0.0) return 0.0;
    return p.cmax / (p.cmax + p.c1);
}

double hd_weighted_sum(const ChannelGains& g, double mu) {
    const HdOuterParams p = hd_outer_params(g);
    if (mu >= 0.5) return mu * (p.v + p.cmax);
    const double gamma = hd_optimal_gamma(g, mu);
    return (1.0 - mu) * p.v + mu * (1.0 - gamma) * p.cmax + (1.0 - 2.0 * mu) * gamma * p.c1;
}

GapReport hd_gap_audit(const ChannelGains& g) {
    GapReport rep;
    rep.channel = g;
    rep.regime = to_string(fd_regime(g).tag);

    const HdOuterParams p = hd_outer_params(g);
    const RateRegion inner = hd_inner(g);

    // Direction breakpoints: outer support kinks, inner facet normals, endpoints.
    std::vector<double> mus = {0.0, 0.5, 1.0};
    const double denom = p.cmax + 2.0 * p.c1;
    if (denom > 0.0) mus.push_back(p.c1 / denom);
    for (const auto& h : inner.halfspaces()) mus.push_back(h.a1 / (h.a1 + h.a2));
    for (int i = 0; i <= 200; ++i) mus.push_back(i / 200.0);

    const double mu_c = denom > 0.0 ? p.c1 / denom : 0.0;
    double gap = 0.0, gap_relay = 0.0, gap_no_coop = 0.0, gap_high = 0.0;
    double worst_mu = 0.0;
    for (double mu : mus) {
        const double diff = hd_weighted_sum(g, mu) - inner.support(mu).value;
        if (diff > gap) {
            gap = diff;
            worst_mu = mu;
        }
        if (mu < mu_c) {
            gap_relay = std::max(gap_relay, diff);
        } else if (mu < 0.5) {
            gap_no_coop = std::max(gap_no_coop, diff);
        } else {
            gap_high = std::max(gap_high, diff);
        }
    }
    rep.region_gap_bits = gap;
    rep.corners.push_back({"piece_relay", gap_relay, p.v12 + 1.0});
    rep.corners.push_back({"piece_no_coop", gap_no_coop, p.v12});
    rep.corners.push_back({"piece_mu_high", gap_high, p.v12 + 1.0});

    if (g.h_1_sq <= g.h_min_sq) {
        // No-cooperation is within 1 bit of the FD cut-set here, hence of any
        // valid HD outer bound; certified by the literal diagonal-shift check.
        const bool ok = check_shift_gap_literal(no_coop_region(g), fd_outer(g), 1.0 + 1e-6);
        rep.corners.push_back({"no_coop_literal_1bit", ok ? 0.0 : 1.0, 0.5});
        if (!ok) {
            throw GapViolation("hd_gap_audit: literal 1-bit no-cooperation check failed");
        }
    }

    if (gap > p.v12 + 1.0 + 1e-6) {
        throw GapViolation("hd_gap_audit: gap exceeds v12 + 1 bits at mu = " +
                           std::to_string(worst_mu));
    }
    return rep;
}

}  // namespace coop2mac
