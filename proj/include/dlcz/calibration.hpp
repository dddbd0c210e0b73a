#pragma once

#include "dlcz/config.hpp"

namespace dlcz {

/// Measured quantities the unobserved model parameters are fitted to.
struct RateAnchors {
    double stokes_per_shot = 0.005;        // all detected Stokes events per write pulse
    double antistokes_per_shot = 2e-4;     // all detected anti-Stokes events per read pulse
    double stokes_signal_to_crf = 10.0;    // Stokes signal over fluorescence, per shot
    /// Share of the anti-Stokes detections that is retrieved signal, at zero
    /// storage gap.
    double antistokes_signal_fraction = 0.2;
    double crossing_delay = 4e-6;          // storage gap where g12 falls to crossing_g
    double crossing_g = 2.0;
};

struct CalibrationResult {
    double excitation_probability;
    double intrinsic_retrieval_efficiency;
    double crf_stokes_window;       // at the CRF reference pressure
    double crf_antistokes_window;   // at the CRF reference pressure
    double tau_combined;
    double theta_write_stokes;
};

/// Solves p, eta0, the CRF rates, the memory lifetime and the write-Stokes
/// angle that produces it, in that order:
///  - Stokes: p eta1 (1 + 1/snr) + dark + leakage = stokes_per_shot
///  - anti-Stokes: p eta0 eta2 = fraction * antistokes_per_shot, and the rest
///    less dark and leakage is fluorescence
///  - tau: analytic_g2 at crossing_delay equals crossing_g (bisection)
///  - theta: 1/tau_fringe = 1/tau - 1/tau_transit - 1/tau_other.
/// Dead time is neglected. Throws CalibrationError when an anchor cannot be
/// met by the apparatus in `base`.
CalibrationResult calibrate(const ExperimentConfig& base, const RateAnchors& anchors = {});

/// `base` with the calibrated values written in: p, eta0, CRF rates,
/// theta_write_stokes = theta_read_antistokes, and the spectral SNR targets.
ExperimentConfig apply_calibration(const ExperimentConfig& base, const CalibrationResult& result,
                                   const RateAnchors& anchors = {});

}  // namespace dlcz
