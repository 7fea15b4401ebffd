#pragma once

#include <array>
#include <limits>

#include "coop2mac/fd.hpp"
#include "coop2mac/geometry.hpp"
#include "coop2mac/model.hpp"

namespace coop2mac {

// Joint listen/transmit state probabilities gamma_ij = P[S1=i, S2=j] with
// optional per-state powers and input correlations. The average power of each
// user, sum_ij gamma_ij * P_{k,ij}, must not exceed 1.
struct HdSchedule {
    double g00 = 0.0, g01 = 0.0, g10 = 0.0, g11 = 0.0;
    // Index order: 00, 01, 10, 11.
    std::array<double, 4> p1 = {1.0, 1.0, 1.0, 1.0};
    std::array<double, 4> p2 = {1.0, 1.0, 1.0, 1.0};
    std::array<double, 4> rho = {0.0, 0.0, 0.0, 0.0};
};

void validate_schedule(const HdSchedule& s);

// State-entropy-plus-power-leakage maxima over the schedule simplex.
struct LeakageConstants {
    double v1 = 0.0, v2 = 0.0, v12 = 0.0;
    HdSchedule argmax_v1, argmax_v2, argmax_v12;
    // The stationary families with closed-form t, for cross-checking.
    HdSchedule closed_form_v1, closed_form_v12;
};

// Channel independent; computed once per process and cached.
const LeakageConstants& entropy_leakage_constants();

// Leakage objectives evaluated at a concrete schedule (bits).
double leakage_v1_objective(const HdSchedule& s);
double leakage_v2_objective(const HdSchedule& s);
double leakage_v12_objective(const HdSchedule& s);

struct HdOuterParams {
    double v1 = 0.0, v2 = 0.0, v12 = 0.0;
    double v = 0.0;     // v12 + log2(1+|h_min|^2)
    double c1 = 0.0;    // log2(1+|h_1|^2/(1+|h_min|^2))
    double cmax = 0.0;  // log2(1+|h_max|^2/(1+|h_min|^2))
};

HdOuterParams hd_outer_params(const ChannelGains& g);

// Union over listen fractions gamma of {R2 <= v + gamma*c1,
// R1+R2 <= v + (1-gamma)*cmax}; region object for serialization and plots,
// all gap arithmetic goes through hd_weighted_sum.
RateRegion hd_outer(const ChannelGains& g);

struct ChainBounds {
    double r1 = std::numeric_limits<double>::infinity();
    double r2 = 0.0;
    double sum = 0.0;
};

// The relaxation chain evaluated at one concrete (gamma, P, rho): exact
// conditional Gaussian mutual informations (a), the -log gamma leakage
// substitution (b), the v-constant bound with R1 dropped (c), and the final
// outer-bound form (d).
struct ChainAudit {
    ChainBounds a, b, c, d;
    bool ordered = false;
};

ChainAudit hd_chain_audit(const ChannelGains& g, const HdSchedule& s);

// R2 of the pure-relay point V6: log2(1+|h_min|^2) - 1 + cmax*c1/(cmax+c1),
// clamped at 0.
double hd_relay_rate(const ChannelGains& g);

RateRegion hd_inner(const ChannelGains& g);

// Closed-form optimal listen fraction for the weighted-sum direction mu.
double hd_optimal_gamma(const ChannelGains& g, double mu);

// Support value p(mu) of the half-duplex outer bound, closed form.
double hd_weighted_sum(const ChannelGains& g, double mu);

// Certifies the 4.82-bit gap (v12 + 1) between hd_inner and the closed-form
// outer support over all directions; for |h_1|^2 <= |h_min|^2 additionally
// certifies the literal 1-bit no-cooperation argument against the FD cut-set.
GapReport hd_gap_audit(const ChannelGains& g);

}  // namespace coop2mac
