#include "dlcz/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "dlcz/correlation.hpp"
#include "dlcz/decoherence.hpp"
#include "dlcz/emission.hpp"
#include "dlcz/error.hpp"
#include "dlcz/geometry.hpp"
#include "dlcz/spectral.hpp"

namespace dlcz::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError(fmt::format("'{}' is not a number", text));
    }
    return v;
}

/// Splits "a<sep>b<sep>c unit" into numbers and the unit's SI factor.
std::pair<std::vector<double>, double> split_numbers(std::string_view text, char sep,
                                                     Dimension dim) {
    text = trim(text);
    const auto last = text.find_last_of("0123456789.");
    if (last == std::string_view::npos) throw ParseError(fmt::format("no numbers in '{}'", text));
    const std::string unit(trim(text.substr(last + 1)));
    const double factor = parse_quantity("1 " + unit, dim);
    std::vector<double> numbers;
    std::string_view body = text.substr(0, last + 1);
    while (true) {
        const auto pos = body.find(sep);
        numbers.push_back(parse_number(body.substr(0, pos)));
        if (pos == std::string_view::npos) break;
        body.remove_prefix(pos + 1);
    }
    return {numbers, factor};
}

std::ofstream open_output(const std::string& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error(fmt::format("cannot write '{}'", path));
    return file;
}

std::string format_value(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return fmt::format("{}", v);
}

struct Options {
    std::string config_path{paper_default_name};
    std::uint64_t seed = 1;
    std::uint64_t trials = 1'000'000;
    std::string delays = "0:8:0.5 us";
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::string out_path;
    bool control = false;
    std::string dump_events_path;
    std::string centers = "-10:10:0.02 GHz";
    std::string pressures;
    std::string channel = "stokes";
    double integration = 1.0;
    std::string preset;
};

std::string comment_line(const ExperimentConfig& config, const Options& o,
                         std::string_view extra) {
    return fmt::format("# dlcz-sim {} config_hash={:016x} seed={}{}\n", version,
                       config_hash(config), o.seed, extra);
}

// --- g2-scan ----------------------------------------------------------------

struct G2Plan {
    ExperimentConfig config;
    std::vector<double> delays;
};

void run_g2_scan(const G2Plan& plan, const Options& o, std::ostream& out, std::ostream& err) {
    const RunMode mode = o.control ? RunMode::control : RunMode::signal;
    out << comment_line(plan.config, o,
                        fmt::format(" trials={} mode={}", o.trials,
                                    o.control ? "control" : "signal"));
    out << "delay_us,g12,sigma_g12,g11,g22,R,nonclassical,N1,N2,N12,n_trials\n";
    for (std::size_t i = 0; i < plan.delays.size(); ++i) {
        const double delay = plan.delays[i];
        const TrialModel model = TrialModel::from(plan.config, delay, mode);
        const std::uint64_t point_seed = mix_seed(o.seed, i);
        if (i == 0 && !o.dump_events_path.empty()) {
            auto dump = open_output(o.dump_events_path);
            dump_events(model, o.trials, point_seed, dump);
        }
        const CountRecord r = simulate_run(model, o.trials, point_seed, o.workers);

        double g12 = std::nan(""), s12 = std::nan(""), g11 = std::nan(""), g22 = std::nan("");
        double ratio = std::nan("");
        bool nonclassical = false;
        if (r.n1 > 0 && r.n2 > 0) {
            const auto e12 = g2_cross(r);
            const auto e11 = g2_auto(r, Channel::stokes);
            const auto e22 = g2_auto(r, Channel::anti_stokes);
            const auto cs = cauchy_schwarz(e12, e11, e22);
            g12 = e12.g;
            s12 = e12.sigma;
            g11 = e11.g;
            g22 = e22.g;
            ratio = cs.ratio;
            nonclassical = cs.nonclassical_at(3.0);
        }
        out << fmt::format("{:.6g},{},{},{},{},{},{},{},{},{},{}\n", delay * 1e6,
                           format_value(g12), format_value(s12), format_value(g11),
                           format_value(g22), format_value(ratio), nonclassical ? 1 : 0, r.n1,
                           r.n2, r.n12, r.n_trials);
        err << fmt::format("g2-scan: point {}/{} delay {:.6g} us g12 {:.4g}\n", i + 1,
                           plan.delays.size(), delay * 1e6, g12);
    }
}

// --- spectrum-scan ----------------------------------------------------------

struct SpectrumPlan {
    ExperimentConfig config;
    std::vector<Channel> channels;
    std::vector<double> pressures;
    std::vector<double> centers;
};

void run_spectrum_scan(const SpectrumPlan& plan, const Options& o, std::ostream& out) {
    out << comment_line(plan.config, o, fmt::format(" integration_s={}", o.integration));
    out << "channel,pressure_torr,etalon_center_ghz,expected_counts,signal";
    out << ",crf_e1_g1,crf_e2_g1,crf_e1_g2,crf_e2_g2\n";
    for (Channel channel : plan.channels) {
        for (double pressure : plan.pressures) {
            ExperimentConfig c = plan.config;
            c.cell.buffer_pressure = pressure;
            const SpectralModel model = build_channel_spectrum(channel, c);
            const auto points = scan(model, plan.centers, o.integration);
            for (const auto& p : points) {
                std::array<double, 5> columns{};
                for (std::size_t k = 0; k < model.components.size(); ++k) {
                    const auto& comp = model.components[k];
                    const std::size_t slot =
                        comp.line ? static_cast<std::size_t>(*comp.line) + 1 : 0;
                    columns[slot] += p.per_component[k];
                }
                out << fmt::format("{},{:.6g},{:.6f},{},{},{},{},{},{}\n", to_string(channel),
                                   pressure / constants::torr, p.etalon_center * 1e-9,
                                   format_value(p.expected_counts), format_value(columns[0]),
                                   format_value(columns[1]), format_value(columns[2]),
                                   format_value(columns[3]), format_value(columns[4]));
            }
        }
    }
}

// --- phase-match ------------------------------------------------------------

struct PhasePreset {
    std::string name;
    GeometryConfig geometry;
};

/// Named layouts: the photons collinear with their beams at the configured
/// write-read angle, forward or with the read beam reversed. "config" uses
/// the configured angles as they are.
PhasePreset phase_preset(std::string_view name, const ExperimentConfig& config) {
    if (name == "config") return {"config", config.geometry};
    GeometryConfig g = config.geometry;
    g.propagation = parse_propagation_mode(name);
    g.theta_write_stokes = 0.0;
    g.theta_read_antistokes = 0.0;
    return {std::string(to_string(g.propagation)), g};
}

void run_phase_match(const ExperimentConfig& config, const std::vector<PhasePreset>& presets,
                     const Options& o, std::ostream& out, std::ostream& err) {
    out << comment_line(config, o, "");
    out << "preset,delta_k_per_m,coherence_length_m,cell_length_m,verdict\n";
    const FieldFrequencies nu = field_frequencies(config);
    for (const PhasePreset& preset : presets) {
        const FieldWaveVectors k = layout_wave_vectors(preset.geometry, preset.geometry.propagation, nu);
        const PhaseMismatch pm = phase_mismatch(k.write, k.read, k.stokes, k.antistokes);
        const bool pass = pm.satisfied_over(config.cell.length);
        out << fmt::format("{},{},{},{},{}\n", preset.name, format_value(pm.magnitude),
                           format_value(pm.coherence_length.or_infinity()),
                           format_value(config.cell.length), pass ? "PASS" : "FAIL");
        err << fmt::format("{}: |dk| = {:.4g} rad/m, coherence length {:.4g} m vs cell {} m: {}\n",
                           preset.name, pm.magnitude, pm.coherence_length.or_infinity(),
                           config.cell.length, pass ? "PASS" : "FAIL");
    }
}

// --- params -----------------------------------------------------------------

void run_params(const ExperimentConfig& c, const Options& o, std::ostream& out) {
    out << comment_line(c, o, "");
    out << "name,value\n";
    const auto row = [&](std::string_view name, double v) {
        out << fmt::format("{},{}\n", name, format_value(v));
    };

    out << "# module: core-config\n";
    row("write_intensity_w_per_m2", beam_intensity(c.write.power, c.write.waist));
    row("read_intensity_w_per_m2", beam_intensity(c.read.power, c.read.waist));
    row("atomic_density_per_m3", c.cell.atomic_density());
    const double diffusion = diffusion_coefficient(c.cell.buffer_species, c.cell.buffer_pressure,
                                                   c.cell.temperature, c.diffusion);
    row("diffusion_m2_per_s", diffusion);
    const FieldFrequencies nu = field_frequencies(c);
    row("write_frequency_hz", nu.write);
    row("read_frequency_hz", nu.read);
    row("stokes_frequency_hz", nu.stokes);
    row("antistokes_frequency_hz", nu.antistokes);

    out << "# module: geometry\n";
    row("spin_wave_wavelength_m",
        spin_wave_wavelength(c.geometry.theta_write_stokes, c.geometry.photon_wavelength)
            .or_infinity());
    const double half_angle = c.geometry.collection_half_angle.value_or(c.write.waist / c.cell.length);
    row("collection_half_angle_rad", half_angle);
    row("spatial_mode_count",
        static_cast<double>(spatial_mode_count(c.write.waist, half_angle, c.geometry.photon_wavelength)));
    const FieldWaveVectors k = layout_wave_vectors(c.geometry, c.geometry.propagation, nu);
    const PhaseMismatch pm = phase_mismatch(k.write, k.read, k.stokes, k.antistokes);
    row("phase_mismatch_per_m", pm.magnitude);
    row("coherence_length_m", pm.coherence_length.or_infinity());

    out << "# module: decoherence\n";
    const DecoherenceBudget budget = decoherence_budget(c);
    row("tau_fringe_s", budget.tau_fringe().or_infinity());
    row("tau_transit_s", budget.tau_transit());
    row("tau_other_s", budget.tau_other().or_infinity());
    row("tau_combined_s", budget.tau_combined());
    const double gap = c.pulses.storage_gap();
    const double eta_ret = retrieval_efficiency(gap, budget, c.intrinsic_retrieval_efficiency);
    row("storage_gap_s", gap);
    row("retrieval_efficiency", eta_ret);

    out << "# module: emission-model\n";
    const TrialModel model = TrialModel::from(c, gap);
    const double p = c.excitation_probability;
    const double eta1 = model.stokes.efficiency;
    const double eta2 = model.antistokes.efficiency;
    const double b1 = model.stokes.background_total;
    const double b2 = model.antistokes.background_total;
    row("excitation_probability", p);
    row("stokes_efficiency", eta1);
    row("antistokes_efficiency", eta2);
    row("dark_stokes_per_window", dark_counts_per_window(c.stokes_chain, c.pulses.write_duration));
    row("dark_antistokes_per_window",
        dark_counts_per_window(c.antistokes_chain, c.pulses.read_duration));
    row("crf_stokes_per_window", c.noise.crf_stokes_window * c.noise.crf_scale(c.cell.buffer_pressure));
    row("crf_antistokes_per_window",
        c.noise.crf_antistokes_window * c.noise.crf_scale(c.cell.buffer_pressure));
    row("stokes_background_per_window", b1);
    row("antistokes_background_per_window", b2);
    const double s1 = p * eta1 + b1;
    const double s2 = p * eta_ret * eta2 + b2;
    row("stokes_detections_per_shot", s1);
    row("antistokes_detections_per_shot", s2);
    // Thermal signal plus Poisson background: <n(n-1)> = 2 (p eta)^2 + 2 p eta b + b^2.
    row("stokes_pair_detections_per_shot", 2 * p * p * eta1 * eta1 + 2 * p * eta1 * b1 + b1 * b1);
    row("stokes_detections_per_shot_squared", s1 * s1);

    out << "# module: spectral-filter\n";
    row("stokes_etalon_fsr_hz", c.stokes_filter.fsr());
    row("antistokes_etalon_fsr_hz", c.antistokes_filter.fsr());
    row("doppler_fwhm_hz",
        doppler_fwhm(c.cell.temperature, constants::speed_of_light / c.geometry.photon_wavelength));
    const double detuning = std::abs(c.write.detuning);
    if (detuning > 0.3e9 && detuning < 3e9) {
        row("stokes_snr_at_write_detuning", snr(detuning, c, c.spectrum).or_infinity());
    }

    out << "# module: correlation-stats\n";
    row("analytic_g12_at_storage_gap", analytic_g2(p, eta_ret, eta1, eta2, b1, b2));
}

}  // namespace

std::vector<double> parse_grid(std::string_view text, Dimension dim) {
    const auto [numbers, factor] = split_numbers(text, ':', dim);
    if (numbers.size() != 3) {
        throw ParseError(fmt::format("grid '{}' must have the form start:stop:step unit", text));
    }
    const double start = numbers[0], stop = numbers[1], step = numbers[2];
    if (!(step > 0.0)) throw DomainError(fmt::format("grid step must be > 0 in '{}'", text));
    if (stop < start) throw DomainError(fmt::format("grid '{}' is empty", text));
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> grid;
    grid.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        grid.push_back((start + static_cast<double>(i) * step) * factor);
    }
    return grid;
}

std::uint64_t config_hash(const ExperimentConfig& config) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : serialize(config)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Monte Carlo simulator for DLCZ quantum memory in warm buffer-gas vapour",
                 "dlcz-sim"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(version));
    Options o;

    const auto common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "INI config file or 'paper-default'");
        sub->add_option("--seed", o.seed, "64-bit run seed");
        sub->add_option("--out", o.out_path, "CSV output path (default stdout)");
    };

    auto* g2 = app.add_subcommand("g2-scan", "g12, g11, g22 and Cauchy-Schwarz vs storage delay");
    common(g2);
    g2->add_option("--trials", o.trials, "trials per delay point")->check(CLI::PositiveNumber);
    g2->add_option("--delays", o.delays, "storage gaps, start:stop:step unit");
    g2->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
    g2->add_flag("--control", o.control, "anti-Stokes etalon on the fluorescence");
    g2->add_option("--dump-events", o.dump_events_path, "event CSV for the first delay point");

    auto* spectrum = app.add_subcommand("spectrum-scan", "expected counts vs etalon tuning");
    common(spectrum);
    spectrum->add_option("--centers", o.centers, "etalon centers, start:stop:step unit");
    spectrum->add_option("--pressures", o.pressures, "comma list with unit, e.g. '1,10 Torr'");
    spectrum->add_option("--channel", o.channel, "stokes, anti_stokes or both");
    spectrum->add_option("--integration", o.integration, "seconds per point")
        ->check(CLI::PositiveNumber);

    auto* phase = app.add_subcommand("phase-match", "phase mismatch and coherence length");
    common(phase);
    phase->add_option("--preset", o.preset, "co_propagating, counter_propagating or config (default all)");

    auto* params = app.add_subcommand("params", "derived quantities as name,value CSV");
    common(params);

    // Usage and configuration stage: any failure here exits with 2.
    ExperimentConfig config;
    G2Plan g2_plan;
    SpectrumPlan spectrum_plan;
    std::vector<PhasePreset> presets;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        if (!reversed.empty()) reversed.pop_back();
        app.parse(reversed);
        config = load_config_file(o.config_path);
        for (const auto& w : config.validate()) err << "warning: " << w << '\n';
        if (g2->parsed()) {
            g2_plan = {config, parse_grid(o.delays, Dimension::time)};
            for (double d : g2_plan.delays) {
                if (d < 0.0) throw DomainError("storage delays must be >= 0");
            }
        } else if (spectrum->parsed()) {
            spectrum_plan.config = config;
            if (o.channel == "both") {
                spectrum_plan.channels = {Channel::stokes, Channel::anti_stokes};
            } else {
                spectrum_plan.channels = {parse_channel(o.channel)};
            }
            if (o.pressures.empty()) {
                spectrum_plan.pressures = {config.cell.buffer_pressure};
            } else {
                const auto [numbers, factor] = split_numbers(o.pressures, ',', Dimension::pressure);
                for (double n : numbers) {
                    if (!(n > 0.0)) throw DomainError("pressures must be > 0");
                    spectrum_plan.pressures.push_back(n * factor);
                }
            }
            if (trim(o.centers).empty()) throw DomainError("no etalon centers given");
            spectrum_plan.centers = parse_grid(o.centers, Dimension::frequency);
        } else if (phase->parsed()) {
            if (o.preset.empty()) {
                for (std::string_view name : {"co_propagating", "counter_propagating", "config"}) {
                    presets.push_back(phase_preset(name, config));
                }
            } else {
                presets.push_back(phase_preset(o.preset, config));
            }
        }
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return success;
    } catch (const CLI::CallForVersion&) {
        out << version << '\n';
        return success;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return usage_failure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return usage_failure;
    }

    try {
        std::ofstream file;
        std::ostream* sink = &out;
        if (!o.out_path.empty()) {
            file = open_output(o.out_path);
            sink = &file;
        }
        if (g2->parsed()) {
            run_g2_scan(g2_plan, o, *sink, err);
        } else if (spectrum->parsed()) {
            run_spectrum_scan(spectrum_plan, o, *sink);
        } else if (phase->parsed()) {
            run_phase_match(config, presets, o, *sink, err);
        } else {
            run_params(config, o, *sink);
        }
        sink->flush();
        if (!*sink) throw Error("failed writing output");
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return runtime_failure;
    }
    return success;
}

}  // namespace dlcz::cli
