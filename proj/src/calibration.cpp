#include "dlcz/calibration.hpp"

#include <cmath>

#include <fmt/format.h>

#include "dlcz/correlation.hpp"
#include "dlcz/decoherence.hpp"
#include "dlcz/emission.hpp"
#include "dlcz/error.hpp"

namespace dlcz {

CalibrationResult calibrate(const ExperimentConfig& base, const RateAnchors& a) {
    const double eta1 = base.stokes_chain.overall_efficiency();
    const double eta2 = base.antistokes_chain.overall_efficiency();
    const double crf_scale = base.noise.crf_scale(base.cell.buffer_pressure);
    const double b1_fixed = dark_counts_per_window(base.stokes_chain, base.pulses.write_duration) +
                            base.noise.leakage_stokes;
    const double b2_fixed = dark_counts_per_window(base.antistokes_chain, base.pulses.read_duration) +
                            base.noise.leakage_antistokes;
    if (!(eta1 > 0.0 && eta2 > 0.0)) {
        throw CalibrationError("calibration needs nonzero detection efficiencies");
    }
    if (!(a.stokes_signal_to_crf > 0.0)) {
        throw CalibrationError("Stokes signal-to-fluorescence anchor must be > 0");
    }
    if (!(a.antistokes_signal_fraction > 0.0 && a.antistokes_signal_fraction < 1.0)) {
        throw CalibrationError("anti-Stokes signal fraction must lie in (0, 1)");
    }

    CalibrationResult r{};
    const double stokes_signal = (a.stokes_per_shot - b1_fixed) / (1.0 + 1.0 / a.stokes_signal_to_crf);
    if (!(stokes_signal > 0.0)) {
        throw CalibrationError(fmt::format(
            "Stokes anchor {} per shot is below the dark and leakage floor {}", a.stokes_per_shot,
            b1_fixed));
    }
    r.excitation_probability = stokes_signal / eta1;
    const double stokes_crf = stokes_signal / a.stokes_signal_to_crf;
    r.crf_stokes_window = stokes_crf / crf_scale;

    const double antistokes_signal = a.antistokes_signal_fraction * a.antistokes_per_shot;
    const double antistokes_crf = a.antistokes_per_shot - antistokes_signal - b2_fixed;
    if (antistokes_crf < 0.0) {
        throw CalibrationError(fmt::format(
            "anti-Stokes anchor leaves {} per shot for fluorescence", antistokes_crf));
    }
    r.crf_antistokes_window = antistokes_crf / crf_scale;
    r.intrinsic_retrieval_efficiency = antistokes_signal / (r.excitation_probability * eta2);
    if (r.intrinsic_retrieval_efficiency > 1.0) {
        throw CalibrationError(fmt::format("anti-Stokes anchor needs eta0 = {} > 1",
                                           r.intrinsic_retrieval_efficiency));
    }

    const double p = r.excitation_probability;
    const double b1 = stokes_crf + b1_fixed;
    const double b2 = antistokes_crf + b2_fixed;
    const double eta0 = r.intrinsic_retrieval_efficiency;
    const auto g_at = [&](double tau) {
        return analytic_g2(p, eta0 * std::exp(-a.crossing_delay / tau), eta1, eta2, b1, b2);
    };
    if (!(analytic_g2(p, eta0, eta1, eta2, b1, b2) > a.crossing_g)) {
        throw CalibrationError(fmt::format(
            "g12 at zero delay is {}, never reaching {}", analytic_g2(p, eta0, eta1, eta2, b1, b2),
            a.crossing_g));
    }
    // g decreases with delay/tau, so bisect on log tau.
    double lo = std::log(1e-12);
    double hi = std::log(1e3);
    for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g_at(std::exp(mid)) > a.crossing_g ? hi : lo) = mid;
    }
    r.tau_combined = std::exp(0.5 * (lo + hi));

    const DecoherenceBudget budget = decoherence_budget(base);
    const double fringe_rate =
        1.0 / r.tau_combined - 1.0 / budget.tau_transit() - budget.tau_other().rate();
    if (!(fringe_rate > 0.0)) {
        throw CalibrationError(fmt::format(
            "memory lifetime {} s exceeds what transit ({} s) and other decay allow",
            r.tau_combined, budget.tau_transit()));
    }
    const double diffusion =
        diffusion_coefficient(base.cell.buffer_species, base.cell.buffer_pressure,
                              base.cell.temperature, base.diffusion);
    const double k = std::sqrt(fringe_rate / diffusion);
    const double s = k * base.geometry.photon_wavelength / (2.0 * constants::pi);
    if (!(s <= 1.0)) {
        throw CalibrationError("required spin-wave wavelength is shorter than the optical one");
    }
    r.theta_write_stokes = std::asin(s);
    return r;
}

ExperimentConfig apply_calibration(const ExperimentConfig& base, const CalibrationResult& r,
                                   const RateAnchors& a) {
    ExperimentConfig c = base;
    c.excitation_probability = r.excitation_probability;
    c.intrinsic_retrieval_efficiency = r.intrinsic_retrieval_efficiency;
    c.noise.crf_stokes_window = r.crf_stokes_window;
    c.noise.crf_antistokes_window = r.crf_antistokes_window;
    c.geometry.theta_write_stokes = r.theta_write_stokes;
    c.geometry.theta_read_antistokes = r.theta_write_stokes;
    c.spectrum.stokes_snr = Extent::finite(a.stokes_signal_to_crf);
    c.spectrum.antistokes_snr =
        Extent::finite(a.antistokes_signal_fraction * a.antistokes_per_shot /
                       (r.crf_antistokes_window *
                        base.noise.crf_scale(base.cell.buffer_pressure)));
    return c;
}

}  // namespace dlcz
