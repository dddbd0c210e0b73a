#include "dlcz/correlation.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "dlcz/error.hpp"

namespace dlcz {

namespace {

CorrelationEstimate ratio_estimate(std::uint64_t joint, std::uint64_t a, std::uint64_t b,
                                   std::uint64_t n_trials, double singles_weight) {
    CorrelationEstimate e;
    e.joint = joint;
    e.singles_a = a;
    e.singles_b = b;
    const double scale = static_cast<double>(n_trials) / (static_cast<double>(a) * b);
    const double effective_joint = joint > 0 ? static_cast<double>(joint) : 1.0;
    const double rel = std::sqrt(1.0 / effective_joint + singles_weight / static_cast<double>(a) +
                                 singles_weight / static_cast<double>(b));
    e.low_statistics = joint == 0;
    e.g = static_cast<double>(joint) * scale;
    e.sigma = effective_joint * scale * rel;
    return e;
}

}  // namespace

CorrelationEstimate g2_cross(const CountRecord& r) {
    if (r.n1 == 0 || r.n2 == 0) {
        throw EmptyChannelError(
            fmt::format("cross-correlation needs counts on both channels (N1 = {}, N2 = {})",
                        r.n1, r.n2));
    }
    return ratio_estimate(r.n12, r.n1, r.n2, r.n_trials, 1.0);
}

CorrelationEstimate g2_auto(const CountRecord& r, Channel channel) {
    const bool stokes = channel == Channel::stokes;
    const std::uint64_t singles = stokes ? r.n1 : r.n2;
    const std::uint64_t pairs = stokes ? r.n1_pairs : r.n2_pairs;
    if (singles == 0) {
        throw EmptyChannelError(
            fmt::format("auto-correlation needs counts on the {} channel", to_string(channel)));
    }
    // N^2 enters twice; a weight of 2 per singles factor gives 4/N overall.
    return ratio_estimate(pairs, singles, singles, r.n_trials, 2.0);
}

double analytic_g2(double p, double eta_ret, double eta1, double eta2, double b1, double b2) {
    const auto fraction = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (!(p >= 0.0) || !std::isfinite(p)) throw DomainError("p must be >= 0");
    if (!fraction(eta_ret) || !fraction(eta1) || !fraction(eta2)) {
        throw DomainError("efficiencies must lie in [0, 1]");
    }
    if (!(b1 >= 0.0) || !(b2 >= 0.0)) throw DomainError("backgrounds must be >= 0");

    const double signal1 = p * eta1;
    const double signal2 = p * eta_ret * eta2;
    const double s1 = signal1 + b1;
    const double s2 = signal2 + b2;
    if (!(s1 > 0.0) || !(s2 > 0.0)) {
        throw DomainError("g12 undefined: a channel has zero mean count");
    }
    if (std::isinf(b1) || std::isinf(b2)) return 1.0;
    // <n1 n2> - <n1><n2> = eta1 eta_ret eta2 Var(m) = eta1 eta_ret eta2 p (1 + p)
    const double covariance = eta1 * eta_ret * eta2 * p * (1.0 + p);
    return 1.0 + covariance / (s1 * s2);
}

CauchySchwarzResult cauchy_schwarz(const CorrelationEstimate& g12, const CorrelationEstimate& g11,
                                   const CorrelationEstimate& g22) {
    CauchySchwarzResult out{};
    out.shortcut_nonclassical = g12.g > 2.0;
    out.shortcut_sigmas = g12.sigma > 0.0 ? (g12.g - 2.0) / g12.sigma
                                          : (g12.g > 2.0 ? std::numeric_limits<double>::infinity()
                                                         : 0.0);
    out.determinate = g11.g > 0.0 && g22.g > 0.0;
    if (!out.determinate) {
        out.ratio = std::numeric_limits<double>::quiet_NaN();
        out.sigma = std::numeric_limits<double>::quiet_NaN();
        out.nonclassical = false;
        out.confidence_sigmas = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    out.ratio = g12.g * g12.g / (g11.g * g22.g);
    const double rel12 = g12.g > 0.0 ? g12.sigma / g12.g : 0.0;
    const double rel = std::sqrt(4.0 * rel12 * rel12 + std::pow(g11.sigma / g11.g, 2) +
                                 std::pow(g22.sigma / g22.g, 2));
    out.sigma = out.ratio * rel;
    out.nonclassical = out.ratio > 1.0;
    if (out.sigma > 0.0) {
        out.confidence_sigmas = (out.ratio - 1.0) / out.sigma;
    } else {
        out.confidence_sigmas = out.ratio > 1.0 ? std::numeric_limits<double>::infinity()
                                : out.ratio < 1.0 ? -std::numeric_limits<double>::infinity()
                                                  : 0.0;
    }
    return out;
}

}  // namespace dlcz
