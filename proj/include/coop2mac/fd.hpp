#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "coop2mac/geometry.hpp"
#include "coop2mac/model.hpp"

namespace coop2mac {

enum class FdRegimeTag { Regime1, Regime2, Regime3 };

std::string to_string(FdRegimeTag tag);

// Regime classification of the cooperation link strength |h_1|^2 against
// t_low = |h_min|^2 and t_high = |h_max|^2 + 2|h_min||h_max|; boundaries
// belong to the lower regime.
struct FdRegime {
    FdRegimeTag tag = FdRegimeTag::Regime1;
    double t_low = 0.0;
    double t_high = 0.0;
};

// Power splits and stream rates of the superposition scheme. Each stream rate
// is the minimum of its relay-side and destination-side decoding constraints,
// clamped at 0; both sides are kept for auditing.
struct Regime3Rates {
    double delta1 = 0.0;  // fraction of user 1 power on the relayed stream
    double delta2 = 0.0;  // fraction of user 2 power on the ahead-of-time stream
    double r_a = 0.0;
    double r_b1 = 0.0;
    double r_b2 = 0.0;
    double r1_prime = 0.0;  // = r_a
    double r2_prime = 0.0;  // = r_b1 + r_b2
    // Individual decoding constraints (unclamped may be clamped at 0).
    double r_a_dest = 0.0;
    double r_b2_dest = 0.0;
    double r_b1_dest = 0.0;
    double r_b1_user1 = 0.0;
    double r_b2_user1 = 0.0;
    bool user1_side_binds = false;  // some stream limited by the relay side
};

struct FdCorner {
    double t2 = 0.0;        // bits
    RatePair point{};       // (R1'', R2'')
};

struct CornerDelta {
    std::string label;
    double delta_bits = 0.0;
    double bound_bits = 0.0;  // the asserted ceiling for this delta
};

struct GapReport {
    ChannelGains channel{};
    std::string regime;
    std::vector<CornerDelta> corners;
    double region_gap_bits = 0.0;
};

struct GapViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CutsetBounds {
    double r1 = 0.0;
    double r2 = 0.0;
    double sum = 0.0;
};

RateRegion no_coop_region(const ChannelGains& g);
RateRegion ideal_coop_region(const ChannelGains& g);

// Cut-set bounds at input correlation rho, |rho| <= 1.
CutsetBounds fd_cutset_at_rho(const ChannelGains& g, std::complex<double> rho);

// Cut-set outer bound maximized over rho:
// {R2 <= log2(1+|h_1|^2+|h_min|^2), R1+R2 <= log2(1+(|h_max|+|h_min|)^2)}.
RateRegion fd_outer(const ChannelGains& g);

FdRegime fd_regime(const ChannelGains& g);
FdCorner fd_corner_v3(const ChannelGains& g);
Regime3Rates fd_regime3_rates(const ChannelGains& g);

// Best of direct transmission and decode-forward relaying for the weak user
// when the strong user carries no data of its own (corner V5).
double fd_relay_inner_rate(const ChannelGains& g);

RateRegion fd_inner(const ChannelGains& g);

// Certifies the 2-bit gap between fd_inner and fd_outer, with per-corner
// deltas per regime. Throws GapViolation if the region gap exceeds 2 bits.
GapReport fd_gap_audit(const ChannelGains& g);

// I(X;Y) = log2 det(cov_y) - log2 det(cov_y_given_x) for jointly Gaussian
// variables; rejects non-PSD covariances.
double gaussian_mi_oracle(const Eigen::MatrixXd& cov_y, const Eigen::MatrixXd& cov_y_given_x);

// Convenience oracle for a scalar observation: one decoded stream group and a
// residual interference-plus-noise power (noise variance included).
double gaussian_mi_scalar(double signal_power, double interference_plus_noise_power);

}  // namespace coop2mac
