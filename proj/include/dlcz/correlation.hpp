#pragma once

#include <cstdint>

#include "dlcz/config.hpp"

namespace dlcz {

/// Counting statistics accumulated over trials. n12 is the trial-wise sum
/// of n1 * n2; the pair sums are sum n (n - 1) within one channel.
struct CountRecord {
    std::uint64_t n_trials = 0;
    std::uint64_t n1 = 0;
    std::uint64_t n2 = 0;
    std::uint64_t n12 = 0;
    std::uint64_t n1_pairs = 0;
    std::uint64_t n2_pairs = 0;

    void add_trial(std::uint64_t stokes, std::uint64_t antistokes) noexcept {
        ++n_trials;
        n1 += stokes;
        n2 += antistokes;
        n12 += stokes * antistokes;
        n1_pairs += stokes * (stokes - (stokes > 0 ? 1 : 0));
        n2_pairs += antistokes * (antistokes - (antistokes > 0 ? 1 : 0));
    }

    CountRecord& operator+=(const CountRecord& o) noexcept {
        n_trials += o.n_trials;
        n1 += o.n1;
        n2 += o.n2;
        n12 += o.n12;
        n1_pairs += o.n1_pairs;
        n2_pairs += o.n2_pairs;
        return *this;
    }

    friend CountRecord operator+(CountRecord a, const CountRecord& b) noexcept { return a += b; }
    friend bool operator==(const CountRecord&, const CountRecord&) = default;
};

struct CorrelationEstimate {
    double g = 0.0;
    double sigma = 0.0;
    /// Coincidences (or within-channel pairs) and the two singles totals.
    std::uint64_t joint = 0;
    std::uint64_t singles_a = 0;
    std::uint64_t singles_b = 0;
    /// Set when the joint count was zero; g is then reported as 0 and sigma is
    /// evaluated as if one joint event had been seen.
    bool low_statistics = false;
};

/// g12 = N12 n / (N1 N2), sigma = g sqrt(1/N12 + 1/N1 + 1/N2).
/// Throws EmptyChannelError when either singles total is zero.
CorrelationEstimate g2_cross(const CountRecord& record);

/// Within-channel g = N_pairs n / N^2 with sigma = g sqrt(1/N_pairs + 4/N).
CorrelationEstimate g2_auto(const CountRecord& record, Channel channel);

/// Closed-form g12 of the emission model: Bose-Einstein excitation number
/// with mean p, independent binomial losses eta1 (Stokes) and
/// eta_ret * eta2 (anti-Stokes), and independent Poisson backgrounds b1, b2
/// per window. Dead time is not included.
double analytic_g2(double p, double eta_ret, double eta1, double eta2, double b1, double b2);

struct CauchySchwarzResult {
    double ratio;                 // R = g12^2 / (g11 g22)
    double sigma;                 // first-order propagated uncertainty of R
    bool nonclassical;            // R > 1
    double confidence_sigmas;     // (R - 1) / sigma
    bool determinate;             // false when an auto-correlation is zero
    bool shortcut_nonclassical;   // g12 > 2, assuming thermal autos
    double shortcut_sigmas;       // (g12 - 2) / sigma_g12

    bool nonclassical_at(double sigmas) const noexcept {
        return determinate && nonclassical && confidence_sigmas > sigmas;
    }
};

CauchySchwarzResult cauchy_schwarz(const CorrelationEstimate& g12, const CorrelationEstimate& g11,
                                   const CorrelationEstimate& g22);

}  // namespace dlcz
