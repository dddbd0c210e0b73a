#include "dlcz/spectral.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "dlcz/decoherence.hpp"
#include "dlcz/error.hpp"

namespace dlcz {

namespace {

constexpr double integration_tolerance = 1e-4;

struct Line {
    int ground;   // 1 or 2
    int excited;  // 1 or 2
};

Line line_levels(FluorescenceLine l) {
    switch (l) {
        case FluorescenceLine::e1_g1: return {1, 1};
        case FluorescenceLine::e2_g1: return {1, 2};
        case FluorescenceLine::e1_g2: return {2, 1};
        case FluorescenceLine::e2_g2: return {2, 2};
    }
    return {1, 1};
}

std::string line_name(FluorescenceLine l) {
    const Line levels = line_levels(l);
    return fmt::format("crf_e{}_g{}", levels.excited, levels.ground);
}

/// Relative D1 hyperfine transition strengths of 87Rb from each ground level.
double transition_strength(int ground, int excited) {
    if (ground == 1) return excited == 1 ? 1.0 / 6.0 : 5.0 / 6.0;
    return 0.5;
}

double line_frequency(const ExperimentConfig& c, int ground, int excited) {
    const double nu_11 = constants::speed_of_light / c.geometry.photon_wavelength;
    return nu_11 + (excited == 2 ? c.excited_splitting : 0.0) -
           (ground == 2 ? c.hyperfine_ground_splitting : 0.0);
}

double gaussian_density(double x, double fwhm) {
    const double sigma = fwhm / (2.0 * std::sqrt(2.0 * std::log(2.0)));
    return std::exp(-0.5 * x * x / (sigma * sigma)) / (sigma * std::sqrt(2.0 * constants::pi));
}

double fluorescence_fwhm(const ExperimentConfig& c, const CrfCalibration& cal) {
    if (cal.fluorescence_fwhm) return *cal.fluorescence_fwhm;
    return doppler_fwhm(c.cell.temperature, constants::speed_of_light / c.geometry.photon_wavelength);
}

/// Doppler-wing excitation of the beam driving `channel` when detuned by
/// `detuning` from its reference line.
double doppler_wing(const ExperimentConfig& c, Channel channel, double detuning,
                    const CrfCalibration& cal) {
    ExperimentConfig shifted = c;
    (channel == Channel::stokes ? shifted.write : shifted.read).detuning = detuning;
    const FieldFrequencies nu = field_frequencies(shifted);
    const int ground = channel == Channel::stokes ? 1 : 2;
    const double beam = channel == Channel::stokes ? nu.write : nu.read;
    const double width = fluorescence_fwhm(c, cal);
    double total = 0.0;
    for (int excited : {1, 2}) {
        total += transition_strength(ground, excited) *
                 gaussian_density(beam - line_frequency(c, ground, excited), width);
    }
    return total;
}

double signal_rate(const ExperimentConfig& c, Channel channel) {
    const double p = c.excitation_probability;
    if (channel == Channel::stokes) {
        return p * c.stokes_chain.overall_efficiency() * c.pulses.repetition_rate;
    }
    const double eta_ret = retrieval_efficiency(c.pulses.storage_gap(), decoherence_budget(c),
                                                c.intrinsic_retrieval_efficiency);
    return p * eta_ret * c.antistokes_chain.overall_efficiency() * c.pulses.repetition_rate;
}

/// Spectrum of `channel` with the driving beam at `detuning`; the signal and
/// fluorescence strengths are referred to the calibration at the configured
/// detuning.
SpectralModel spectrum_at(Channel channel, const ExperimentConfig& c, const CrfCalibration& cal,
                          double detuning) {
    cal.validate();
    const bool stokes = channel == Channel::stokes;
    const double reference_detuning = stokes ? c.write.detuning : c.read.detuning;
    const EtalonFilter& filter = stokes ? c.stokes_filter : c.antistokes_filter;
    const auto& weights = stokes ? cal.stokes_line_weights : cal.antistokes_line_weights;
    const Extent& target_snr = stokes ? cal.stokes_snr : cal.antistokes_snr;

    ExperimentConfig shifted = c;
    (stokes ? shifted.write : shifted.read).detuning = detuning;

    SpectralModel model;
    model.filter = filter;
    const double signal_reference = signal_rate(c, channel);
    const double raman_scale = std::pow(reference_detuning / detuning, 2);
    model.components.push_back({ComponentKind::signal, "signal", 0.0, cal.signal_linewidth,
                                LineShape::lorentzian, signal_reference * raman_scale, std::nullopt});

    const double width = fluorescence_fwhm(c, cal);
    const auto unit_line = [&](const ExperimentConfig& cfg, FluorescenceLine l) {
        return SpectralComponent{ComponentKind::fluorescence, line_name(l),
                                 line_offset(cfg, channel, l), width, LineShape::gaussian, 1.0, l};
    };

    // Absolute fluorescence scale from the SNR target at the reference
    // detuning and reference pressure, etalon on the signal.
    double scale = 0.0;
    double unit_fluorescence = 0.0;
    for (FluorescenceLine l : all_fluorescence_lines) {
        const double w = weights[static_cast<std::size_t>(l)];
        if (w > 0.0) {
            unit_fluorescence += w * transmitted_fraction(unit_line(c, l), filter,
                                                          filter.center_offset);
        }
    }
    if (target_snr.is_finite() && unit_fluorescence > 0.0) {
        ExperimentConfig anchor = c;
        anchor.cell.buffer_pressure = c.noise.crf_reference_pressure;
        const double anchor_signal = signal_rate(anchor, channel);
        if (!(anchor_signal > 0.0)) {
            throw CalibrationError(fmt::format(
                "cannot anchor {} fluorescence to SNR {}: the signal rate is zero",
                to_string(channel), target_snr.value()));
        }
        const double signal_through =
            anchor_signal *
            transmitted_fraction(model.components.front(), filter, filter.center_offset);
        scale = signal_through / (target_snr.value() * unit_fluorescence);
    }

    const double wing = doppler_wing(c, channel, detuning, cal) /
                        doppler_wing(c, channel, reference_detuning, cal);
    const double pressure = c.noise.crf_scale(c.cell.buffer_pressure);
    for (FluorescenceLine l : all_fluorescence_lines) {
        const double w = weights[static_cast<std::size_t>(l)];
        if (w <= 0.0 || scale <= 0.0) continue;
        SpectralComponent comp = unit_line(shifted, l);
        comp.weight = scale * w * wing * pressure;
        model.components.push_back(std::move(comp));
    }
    return model;
}

}  // namespace

double SpectralComponent::density(double nu) const {
    const double x = nu - center;
    if (shape == LineShape::gaussian) return gaussian_density(x, fwhm);
    const double gamma = 0.5 * fwhm;
    return gamma / (constants::pi * (x * x + gamma * gamma));
}

void SpectralComponent::validate() const {
    if (!(fwhm > 0.0)) throw ValidationError("SpectralComponent.fwhm", "must be > 0");
    if (!(weight >= 0.0)) throw ValidationError("SpectralComponent.weight", "must be >= 0");
}

void SpectralModel::validate() const {
    if (components.empty()) throw ValidationError("SpectralModel.components", "must be nonempty");
    for (const auto& c : components) c.validate();
    filter.validate();
}

double doppler_fwhm(double temperature, double frequency) {
    if (!(temperature > 0.0)) throw DomainError("temperature must be > 0");
    return frequency * std::sqrt(8.0 * constants::boltzmann * temperature * std::log(2.0) /
                                 (constants::rb87_mass * constants::speed_of_light *
                                  constants::speed_of_light));
}

double line_offset(const ExperimentConfig& c, Channel channel, FluorescenceLine line) {
    const FieldFrequencies nu = field_frequencies(c);
    const Line levels = line_levels(line);
    const double signal = channel == Channel::stokes ? nu.stokes : nu.antistokes;
    return line_frequency(c, levels.ground, levels.excited) - signal;
}

double transmitted_fraction(const SpectralComponent& comp, const EtalonFilter& filter,
                            double etalon_center) {
    const double fsr = filter.fsr();
    const double lo = etalon_center - 0.5 * fsr;
    const double hi = etalon_center + 0.5 * fsr;

    // Periodise the line shape so that one FSR of integration covers the
    // whole real line.
    const auto periodic_density = [&](double nu) {
        const double x = std::remainder(nu - comp.center, fsr);
        if (comp.shape == LineShape::lorentzian) {
            const double z = constants::pi * comp.fwhm / fsr;  // 2 pi gamma / fsr
            const double w = 2.0 * constants::pi * x / fsr;
            const double sh = std::sinh(0.5 * z);
            const double sn = std::sin(0.5 * w);
            return std::sinh(z) / (fsr * 2.0 * (sh * sh + sn * sn));
        }
        const int reach = static_cast<int>(std::ceil(12.0 * comp.fwhm / fsr)) + 1;
        double sum = 0.0;
        for (int k = -reach; k <= reach; ++k) sum += gaussian_density(x + k * fsr, comp.fwhm);
        return sum;
    };
    const auto integrand = [&](double nu) {
        return periodic_density(nu) * etalon_transmission(nu - etalon_center, filter);
    };

    std::vector<double> breaks{lo, hi};
    const double line_in_window = etalon_center + std::remainder(comp.center - etalon_center, fsr);
    for (double scale : {0.0, 0.5, 2.0, 8.0, 32.0}) {
        for (double sign : {-1.0, 1.0}) {
            breaks.push_back(etalon_center + sign * scale * filter.fwhm);
            breaks.push_back(line_in_window + sign * scale * comp.fwhm);
        }
    }
    std::erase_if(breaks, [&](double b) { return b < lo || b > hi; });
    std::sort(breaks.begin(), breaks.end());
    // Breakpoints a few ulps apart leave slivers on which the integrand is a
    // step function of rounding noise and never converges.
    const double min_width = 1e-9 * fsr;
    breaks.erase(std::unique(breaks.begin(), breaks.end(),
                             [&](double a, double b) { return b - a < min_width; }),
                 breaks.end());
    breaks.back() = hi;

    using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;
    double total = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        double piece_error = 0.0;
        total += Quadrature::integrate(integrand, breaks[i], breaks[i + 1], 15, 1e-10,
                                       &piece_error);
        error += piece_error;
    }
    if (!std::isfinite(total) || error > integration_tolerance * std::abs(total) + 1e-300) {
        throw IntegrationError(fmt::format(
            "transmission integral of '{}' at etalon center {} Hz did not converge: "
            "value {}, error estimate {}, {} sub-intervals",
            comp.name, etalon_center, total, error, breaks.size() - 1));
    }
    return total;
}

SpectralModel build_channel_spectrum(Channel channel, const ExperimentConfig& config,
                                     const std::optional<CrfCalibration>& calibration) {
    if (!calibration) {
        throw CalibrationError(fmt::format("no CRF calibration supplied for the {} channel",
                                           to_string(channel)));
    }
    const double detuning = channel == Channel::stokes ? config.write.detuning
                                                       : config.read.detuning;
    return spectrum_at(channel, config, *calibration, detuning);
}

SpectralModel build_channel_spectrum(Channel channel, const ExperimentConfig& config) {
    return build_channel_spectrum(channel, config, config.spectrum);
}

std::vector<ScanPoint> scan(const SpectralModel& model, std::span<const double> centers,
                            double integration) {
    if (centers.empty()) throw DomainError("scan needs at least one etalon center");
    if (!(integration > 0.0)) throw DomainError("integration time must be > 0");
    model.validate();
    std::vector<ScanPoint> points;
    points.reserve(centers.size());
    for (double center : centers) {
        ScanPoint p{center, 0.0, {}};
        p.per_component.reserve(model.components.size());
        for (const auto& comp : model.components) {
            const double counts =
                comp.weight > 0.0
                    ? integration * comp.weight * transmitted_fraction(comp, model.filter, center)
                    : 0.0;
            p.per_component.push_back(counts);
            p.expected_counts += counts;
        }
        points.push_back(std::move(p));
    }
    return points;
}

Extent snr(double write_detuning, const ExperimentConfig& config,
           const CrfCalibration& calibration) {
    const double magnitude = std::abs(write_detuning);
    if (!(magnitude > 0.3e9 && magnitude < 3e9)) {
        throw DomainError(fmt::format(
            "SNR model covers detunings of 0.3 to 3 GHz, got {} GHz", magnitude * 1e-9));
    }
    const double sign = config.write.detuning < 0.0 ? -1.0 : 1.0;
    const SpectralModel model = spectrum_at(Channel::stokes, config, calibration, sign * magnitude);
    double signal = 0.0;
    double fluorescence = 0.0;
    for (const auto& comp : model.components) {
        const double through =
            comp.weight * transmitted_fraction(comp, model.filter, model.filter.center_offset);
        (comp.kind == ComponentKind::signal ? signal : fluorescence) += through;
    }
    if (fluorescence <= 0.0) return Extent::unbounded();
    return Extent::finite(signal / fluorescence);
}

}  // namespace dlcz
