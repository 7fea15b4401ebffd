#include "coop2mac/fd.hpp"

#include <array>
#include <cmath>

namespace coop2mac {

namespace {

constexpr double kLn2 = 0.6931471805599453;

double log2_1p(double x) { return std::log1p(x) / kLn2; }

}  // namespace

std::string to_string(FdRegimeTag tag) {
    switch (tag) {
        case FdRegimeTag::Regime1: return "regime1";
        case FdRegimeTag::Regime2: return "regime2";
        case FdRegimeTag::Regime3: return "regime3";
    }
    return "unknown";
}

RateRegion no_coop_region(const ChannelGains& g) {
    return RateRegion::from_halfspaces({
        {1.0, 0.0, log2_1p(g.h_max_sq)},
        {0.0, 1.0, log2_1p(g.h_min_sq)},
        {1.0, 1.0, log2_1p(g.h_max_sq + g.h_min_sq)},
    });
}

RateRegion ideal_coop_region(const ChannelGains& g) {
    const double s = std::sqrt(g.h_max_sq) + std::sqrt(g.h_min_sq);
    return RateRegion::from_halfspaces({{1.0, 1.0, log2_1p(s * s)}});
}

CutsetBounds fd_cutset_at_rho(const ChannelGains& g, std::complex<double> rho) {
    const double rho_sq = std::norm(rho);
    if (rho_sq > 1.0 + 1e-12) {
        throw std::invalid_argument("fd_cutset_at_rho: |rho| must be <= 1");
    }
    const std::complex<double> h_max =
        std::polar(std::sqrt(g.h_max_sq), g.phase_max);
    const std::complex<double> h_min =
        std::polar(std::sqrt(g.h_min_sq), g.phase_min);
    CutsetBounds b;
    b.r1 = log2_1p((g.h_max_sq + g.h_2_sq) * (1.0 - rho_sq));
    b.r2 = log2_1p((g.h_min_sq + g.h_1_sq) * (1.0 - rho_sq));
    b.sum = log2_1p(g.h_max_sq + g.h_min_sq +
                    2.0 * std::real(rho * h_max * std::conj(h_min)));
    return b;
}

RateRegion fd_outer(const ChannelGains& g) {
    const double s = std::sqrt(g.h_max_sq) + std::sqrt(g.h_min_sq);
    return RateRegion::from_halfspaces({
        {0.0, 1.0, log2_1p(g.h_1_sq + g.h_min_sq)},
        {1.0, 1.0, log2_1p(s * s)},
    });
}

FdRegime fd_regime(const ChannelGains& g) {
    FdRegime r;
    r.t_low = g.h_min_sq;
    r.t_high = g.h_max_sq + 2.0 * std::sqrt(g.h_min_sq * g.h_max_sq);
    if (g.h_1_sq <= r.t_low) {
        r.tag = FdRegimeTag::Regime1;
    } else if (g.h_1_sq > r.t_high) {
        r.tag = FdRegimeTag::Regime2;
    } else {
        r.tag = FdRegimeTag::Regime3;
    }
    return r;
}

FdCorner fd_corner_v3(const ChannelGains& g) {
    const double s = std::sqrt(g.h_max_sq) + std::sqrt(g.h_min_sq);
    FdCorner c;
    c.t2 = log2_1p(std::min(g.h_1_sq + g.h_min_sq, s * s));
    c.point.r2 = c.t2;
    c.point.r1 = std::max(0.0, log2_1p(s * s) - c.t2);
    return c;
}

Regime3Rates fd_regime3_rates(const ChannelGains& g) {
    Regime3Rates r;
    const double denom = g.h_max_sq + 2.0 * std::sqrt(g.h_min_sq * g.h_max_sq);
    r.delta1 = denom > 0.0 ? std::min(1.0, g.h_1_sq / denom) : 0.0;
    r.delta2 = g.h_min_sq > 1.0 ? 1.0 / g.h_min_sq : 1.0;

    // At user 1: decode X_b1 treating X_b2 as noise, then X_b2.
    r.r_b1_user1 = std::max(0.0, log2_1p(g.h_1_sq) - log2_1p(r.delta2 * g.h_1_sq));
    r.r_b2_user1 = log2_1p(r.delta2 * g.h_1_sq);

    // At the destination: successively decode X_a, X_b2, X_b1 with the
    // one-slot-ahead stream X_b2[t+1] (power delta2*|h_min|^2 <= 1) as noise.
    const double floor_a = g.h_min_sq + r.delta1 * g.h_max_sq;
    r.r_a_dest = std::max(0.0, log2_1p(g.h_max_sq + g.h_min_sq) - log2_1p(floor_a));
    r.r_b2_dest = std::max(0.0, log2_1p(floor_a) - log2_1p(g.h_min_sq));
    r.r_b1_dest = std::max(0.0, log2_1p(g.h_min_sq) - log2_1p(r.delta2 * g.h_min_sq));

    r.r_a = r.r_a_dest;
    r.r_b1 = std::max(0.0, std::min(r.r_b1_user1, r.r_b1_dest));
    r.r_b2 = std::max(0.0, std::min(r.r_b2_user1, r.r_b2_dest));
    if (g.h_min_sq <= 1.0) r.r_b1 = 0.0;
    r.r1_prime = r.r_a;
    r.r2_prime = r.r_b1 + r.r_b2;
    r.user1_side_binds = (r.r_b1_user1 < r.r_b1_dest - 1e-12 && r.r_b1 > 0.0) ||
                         (r.r_b2_user1 < r.r_b2_dest - 1e-12 && r.r_b2 > 0.0);
    return r;
}

double fd_relay_inner_rate(const ChannelGains& g) {
    const double direct = log2_1p(g.h_min_sq);
    const double coh = 2.0 * std::sqrt(g.h_max_sq * g.h_min_sq);
    auto df = [&](double rho) {
        return std::min(log2_1p((1.0 - rho * rho) * g.h_1_sq),
                        log2_1p(g.h_max_sq + g.h_min_sq + rho * coh));
    };
    // Golden-section maximization of the unimodal decode-forward tradeoff.
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 0.0, hi = 1.0;
    double x1 = hi - invphi * (hi - lo), x2 = lo + invphi * (hi - lo);
    double f1 = df(x1), f2 = df(x2);
    while (hi - lo > 1e-10) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = df(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = df(x1);
        }
    }
    return std::max({direct, df(0.0), df(0.5 * (lo + hi))});
}

RateRegion fd_inner(const ChannelGains& g) {
    const Regime3Rates r3 = fd_regime3_rates(g);
    const std::array<RateRegion, 1> base = {no_coop_region(g)};
    const std::array<RatePair, 2> pts = {
        RatePair{r3.r1_prime, r3.r2_prime},
        RatePair{0.0, fd_relay_inner_rate(g)},
    };
    return convex_union(base, pts);
}

GapReport fd_gap_audit(const ChannelGains& g) {
    GapReport rep;
    rep.channel = g;
    const FdRegime regime = fd_regime(g);
    rep.regime = to_string(regime.tag);

    const RateRegion inner = fd_inner(g);
    const RateRegion outer = fd_outer(g);
    rep.region_gap_bits = region_gap(inner, outer);

    const double sum_cap = outer.support(1.0).value;
    rep.corners.push_back({"V1", sum_cap - log2_1p(g.h_max_sq), 2.0});
    rep.corners.push_back({"V5", outer.support(0.0).value - fd_relay_inner_rate(g), 1.0});

    const FdCorner v3 = fd_corner_v3(g);
    if (regime.tag == FdRegimeTag::Regime3) {
        const Regime3Rates r3 = fd_regime3_rates(g);
        rep.corners.push_back({"V3_R2", v3.point.r2 - r3.r2_prime, 2.0});
        rep.corners.push_back({"V3_R1", v3.point.r1 - r3.r1_prime, 1.0});
    } else if (regime.tag == FdRegimeTag::Regime1) {
        // No-cooperation corner V2 = (log(1+hmax^2+hmin^2)-log(1+hmin^2), log(1+hmin^2)).
        const double r2_nc = log2_1p(g.h_min_sq);
        const double r1_nc = log2_1p(g.h_max_sq + g.h_min_sq) - r2_nc;
        rep.corners.push_back({"V3_R2", v3.point.r2 - r2_nc, 1.0});
        rep.corners.push_back({"V3_R1", v3.point.r1 - r1_nc, 1.0});
    }

    if (rep.region_gap_bits > 2.0 + kGeomTol) {
        throw GapViolation("fd_gap_audit: region gap exceeds 2 bits");
    }
    return rep;
}

double gaussian_mi_oracle(const Eigen::MatrixXd& cov_y, const Eigen::MatrixXd& cov_y_given_x) {
    auto log2_det_psd = [](const Eigen::MatrixXd& m) {
        if (m.rows() != m.cols()) {
            throw std::invalid_argument("gaussian_mi_oracle: covariance must be square");
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
        const auto& ev = es.eigenvalues();
        const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
        double acc = 0.0;
        for (Eigen::Index i = 0; i < ev.size(); ++i) {
            if (ev[i] < -1e-9 * scale) {
                throw std::invalid_argument("gaussian_mi_oracle: covariance not PSD");
            }
            acc += std::log2(std::max(ev[i], 0.0));
        }
        return acc;
    };
    return log2_det_psd(cov_y) - log2_det_psd(cov_y_given_x);
}

double gaussian_mi_scalar(double signal_power, double interference_plus_noise_power) {
    Eigen::MatrixXd cov_y(1, 1), cov_res(1, 1);
    cov_y(0, 0) = signal_power + interference_plus_noise_power;
    cov_res(0, 0) = interference_plus_noise_power;
    return gaussian_mi_oracle(cov_y, cov_res);
}

}  // namespace coop2mac
