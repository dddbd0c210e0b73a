#include "dlcz/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "dlcz/error.hpp"

namespace dlcz {

namespace pt = boost::property_tree;

namespace {

void require(bool ok, const char* field, const std::string& message) {
    if (!ok) throw ValidationError(field, message);
}

bool is_fraction(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

// ---------------------------------------------------------------------------
// derived physical quantities

double beam_intensity(double power, double waist) {
    if (!(waist > 0.0)) throw DomainError(fmt::format("beam waist must be > 0, got {}", waist));
    if (power < 0.0) throw DomainError(fmt::format("beam power must be >= 0, got {}", power));
    return power / (constants::pi * waist * waist);
}

double rb_number_density(double temperature) {
    if (!(temperature > 250.0 && temperature < 450.0)) {
        throw DomainError(fmt::format(
            "vapour-pressure model valid for 250 K < T < 450 K, got {} K", temperature));
    }
    // Alcock, Itkin and Horrigan (1984) correlation for rubidium, log10 of
    // pressure in Torr, solid below the 312.46 K melting point.
    constexpr double melting_point = 312.46;
    const double log10_torr = temperature < melting_point
                                  ? 2.881 + 4.857 - 4215.0 / temperature
                                  : 2.881 + 4.312 - 4040.0 / temperature;
    const double pressure = std::pow(10.0, log10_torr) * constants::torr;
    return pressure / (constants::boltzmann * temperature);
}

double diffusion_coefficient(BufferGas species, double pressure, double temperature,
                             const DiffusionReference& ref) {
    if (species != BufferGas::Ne) throw DomainError("unknown buffer-gas species");
    if (!(pressure > 0.0)) throw DomainError(fmt::format("pressure must be > 0, got {}", pressure));
    if (!(temperature > 0.0)) {
        throw DomainError(fmt::format("temperature must be > 0, got {}", temperature));
    }
    return ref.d0 * (ref.p0 / pressure) * std::pow(temperature / ref.t0, 1.5);
}

FieldFrequencies field_frequencies(const ExperimentConfig& c) {
    const double nu_11 = constants::speed_of_light / c.geometry.photon_wavelength;
    const double ground = c.hyperfine_ground_splitting;
    const auto excited = [&](ReferenceLine l) {
        return l == ReferenceLine::F1_excited ? 0.0 : c.excited_splitting;
    };
    FieldFrequencies nu{};
    nu.write = nu_11 + excited(c.write.reference_line) + c.write.detuning;
    nu.read = nu_11 - ground + excited(c.read.reference_line) + c.read.detuning;
    nu.stokes = nu.write - ground;
    nu.antistokes = nu.read + ground;
    return nu;
}

// ---------------------------------------------------------------------------
// invariants

void VaporCell::validate() const {
    require(length > 0.0, "VaporCell.length", "must be > 0");
    require(temperature > 0.0, "VaporCell.temperature", "must be > 0");
    require(buffer_pressure > 0.0, "VaporCell.buffer_pressure", "must be > 0");
    if (atomic_density_override) {
        require(*atomic_density_override > 0.0, "VaporCell.atomic_density_override", "must be > 0");
    }
}

double VaporCell::atomic_density() const {
    return atomic_density_override ? *atomic_density_override : rb_number_density(temperature);
}

void Beam::validate() const {
    require(power >= 0.0, "Beam.power", "must be >= 0");
    require(waist > 0.0, "Beam.waist", "must be > 0");
    require(wavelength > 0.0, "Beam.wavelength", "must be > 0");
    require(std::isfinite(detuning), "Beam.detuning", "must be finite");
}

double Beam::intensity() const { return beam_intensity(power, waist); }

void PulseSequence::validate() const {
    require(write_duration > 0.0, "PulseSequence.write_duration", "must be > 0");
    require(read_duration > 0.0, "PulseSequence.read_duration", "must be > 0");
    require(pump_gap_before_write > 0.0, "PulseSequence.pump_gap_before_write", "must be > 0");
    require(repetition_rate > 0.0, "PulseSequence.repetition_rate", "must be > 0");
    require(write_read_delay >= write_duration, "PulseSequence.write_read_delay",
            "read pulse overlaps the write pulse (delay < write_duration)");
    const double cycle = pump_gap_before_write + write_read_delay + read_duration;
    require(cycle <= 1.0 / repetition_rate, "PulseSequence.repetition_rate",
            fmt::format("cycle of {} s does not fit the {} s period", cycle, 1.0 / repetition_rate));
}

void DetectionChain::validate() const {
    require(is_fraction(path_transmission), "DetectionChain.path_transmission", "must lie in [0, 1]");
    require(is_fraction(detector_efficiency), "DetectionChain.detector_efficiency",
            "must lie in [0, 1]");
    require(dark_rate >= 0.0, "DetectionChain.dark_rate", "must be >= 0");
    require(dead_time >= 0.0, "DetectionChain.dead_time", "must be >= 0");
}

void DiffusionReference::validate() const {
    require(d0 > 0.0, "DiffusionReference.d0", "must be > 0");
    require(p0 > 0.0, "DiffusionReference.p0", "must be > 0");
    require(t0 > 0.0, "DiffusionReference.t0", "must be > 0");
}

void NoiseRates::validate() const {
    require(crf_stokes_window >= 0.0, "NoiseRates.crf_stokes_window", "must be >= 0");
    require(crf_antistokes_window >= 0.0, "NoiseRates.crf_antistokes_window", "must be >= 0");
    require(leakage_stokes >= 0.0, "NoiseRates.leakage_stokes", "must be >= 0");
    require(leakage_antistokes >= 0.0, "NoiseRates.leakage_antistokes", "must be >= 0");
    require(std::isfinite(crf_pressure_exponent), "NoiseRates.crf_pressure_exponent",
            "must be finite");
    require(crf_reference_pressure > 0.0, "NoiseRates.crf_reference_pressure", "must be > 0");
}

double NoiseRates::crf_scale(double pressure) const {
    return std::pow(pressure / crf_reference_pressure, crf_pressure_exponent);
}

void CrfCalibration::validate() const {
    for (double w : stokes_line_weights) {
        require(w >= 0.0, "CrfCalibration.stokes_line_weights", "weights must be >= 0");
    }
    for (double w : antistokes_line_weights) {
        require(w >= 0.0, "CrfCalibration.antistokes_line_weights", "weights must be >= 0");
    }
    require(signal_linewidth > 0.0, "CrfCalibration.signal_linewidth", "must be > 0");
    if (fluorescence_fwhm) {
        require(*fluorescence_fwhm > 0.0, "CrfCalibration.fluorescence_fwhm", "must be > 0");
    }
}

void EtalonFilter::validate() const {
    require(finesse > 1.0, "EtalonFilter.finesse", "must be > 1");
    require(fwhm > 0.0, "EtalonFilter.fwhm", "must be > 0");
    require(peak_transmission > 0.0 && peak_transmission <= 1.0, "EtalonFilter.peak_transmission",
            "must lie in (0, 1]");
    require(std::isfinite(center_offset), "EtalonFilter.center_offset", "must be finite");
}

void GeometryConfig::validate() const {
    const auto angle_ok = [](double a) { return a >= 0.0 && a <= constants::pi; };
    require(angle_ok(theta_write_stokes), "GeometryConfig.theta_write_stokes", "must lie in [0, pi]");
    require(angle_ok(theta_read_antistokes), "GeometryConfig.theta_read_antistokes",
            "must lie in [0, pi]");
    require(angle_ok(theta_write_read), "GeometryConfig.theta_write_read", "must lie in [0, pi]");
    require(photon_wavelength > 0.0, "GeometryConfig.photon_wavelength", "must be > 0");
    if (collection_half_angle) {
        require(*collection_half_angle > 0.0 && *collection_half_angle < constants::pi / 2,
                "GeometryConfig.collection_half_angle", "must lie in (0, pi/2)");
    }
}

std::vector<std::string> ExperimentConfig::validate() const {
    cell.validate();
    write.validate();
    read.validate();
    require(write.role == BeamRole::write, "Beam.role", "write beam must have role 'write'");
    require(read.role == BeamRole::read, "Beam.role", "read beam must have role 'read'");
    pulses.validate();
    stokes_chain.validate();
    antistokes_chain.validate();
    require(stokes_chain.channel == Channel::stokes, "DetectionChain.channel",
            "Stokes chain must be on the stokes channel");
    require(antistokes_chain.channel == Channel::anti_stokes, "DetectionChain.channel",
            "anti-Stokes chain must be on the anti_stokes channel");
    stokes_filter.validate();
    antistokes_filter.validate();
    geometry.validate();
    noise.validate();
    spectrum.validate();
    diffusion.validate();
    require(excitation_probability >= 0.0 && std::isfinite(excitation_probability),
            "ExperimentConfig.excitation_probability", "must be >= 0");
    require(is_fraction(intrinsic_retrieval_efficiency),
            "ExperimentConfig.intrinsic_retrieval_efficiency", "must lie in [0, 1]");
    require(hyperfine_ground_splitting > 0.0, "ExperimentConfig.hyperfine_ground_splitting",
            "must be > 0");
    require(excited_splitting > 0.0, "ExperimentConfig.excited_splitting", "must be > 0");

    std::vector<std::string> warnings;
    if (excitation_probability >= 1.0) {
        warnings.push_back(fmt::format(
            "excitation_probability = {} >= 1: outside the nearly single-photon regime",
            excitation_probability));
    }
    return warnings;
}

// ---------------------------------------------------------------------------
// presets

ExperimentConfig paper_default() {
    ExperimentConfig c;
    c.cell = VaporCell{0.075, constants::zero_celsius + 37.0, BufferGas::Ne,
                       10.0 * constants::torr, std::nullopt};
    c.write = Beam{BeamRole::write, 0.6e-3, 1.3e-3, 795e-9, -1.3e9, ReferenceLine::F1_excited};
    c.read = Beam{BeamRole::read, 1.2e-3, 1.3e-3, 795e-9, 1.08e9, ReferenceLine::F2_excited};
    c.pulses = PulseSequence{1e-6, 1e-6, 1e-6, 400e-9, 20e3};
    c.stokes_chain = DetectionChain{Channel::stokes, 0.30, 0.60, 100.0, 80e-9};
    c.antistokes_chain = DetectionChain{Channel::anti_stokes, 0.15, 0.60, 100.0, 80e-9};
    c.stokes_filter = EtalonFilter{100.0, 100e6, 1.0, 0.0};
    c.antistokes_filter = EtalonFilter{100.0, 130e6, 1.0, 0.0};

    // Calibrated values; calibrate(paper_default()) reproduces them.
    constexpr double theta_ws = 2.336322701e-3;
    c.geometry = GeometryConfig{theta_ws, theta_ws, 6e-3, PropagationMode::co_propagating,
                                795e-9, std::nullopt};
    c.excitation_probability = 0.02474747475;
    c.intrinsic_retrieval_efficiency = 0.01795918367;
    c.noise = NoiseRates{};
    c.noise.crf_stokes_window = 4.454545455e-4;
    c.noise.crf_antistokes_window = 6.0e-5;

    c.spectrum.stokes_snr = Extent::finite(10.0);
    c.spectrum.antistokes_snr = Extent::finite(2.0 / 3.0);
    return c;
}

// ---------------------------------------------------------------------------
// INI documents

namespace {

class DocumentReader {
public:
    DocumentReader(const pt::ptree& tree, bool all_optional)
        : tree_(tree), all_optional_(all_optional) {}

    template <typename Parse>
    void read(const std::string& section, const std::string& key, bool required, Parse&& parse) {
        const std::string path = section.empty() ? key : section + "." + key;
        used_.insert(path);
        const auto node = tree_.get_optional<std::string>(pt::ptree::path_type(path, '.'));
        if (!node) {
            if (required && !all_optional_) {
                throw ParseError(fmt::format("missing required key '{}'", path));
            }
            return;
        }
        try {
            parse(*node);
        } catch (const UnitError& e) {
            throw UnitError(fmt::format("{}: {}", path, e.what()));
        } catch (const ParseError& e) {
            throw ParseError(fmt::format("{}: {}", path, e.what()));
        } catch (const DomainError& e) {
            throw ParseError(fmt::format("{}: {}", path, e.what()));
        }
    }

    void quantity(const std::string& section, const std::string& key, Dimension dim, double& out,
                  bool required = true) {
        read(section, key, required, [&](const std::string& v) { out = parse_quantity(v, dim); });
    }

    void reject_unknown_keys() const {
        for (const auto& [name, child] : tree_) {
            if (child.empty()) {
                if (!used_.count(name)) throw ParseError(fmt::format("unknown key '{}'", name));
                continue;
            }
            for (const auto& [key, leaf] : child) {
                const std::string path = name + "." + key;
                if (!used_.count(path)) throw ParseError(fmt::format("unknown key '{}'", path));
            }
        }
    }

private:
    const pt::ptree& tree_;
    bool all_optional_;
    std::set<std::string> used_;
};

std::string trimmed(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

ReferenceLine parse_reference_line(const std::string& v) {
    const auto s = trimmed(v);
    if (s == "F1_excited") return ReferenceLine::F1_excited;
    if (s == "F2_excited") return ReferenceLine::F2_excited;
    throw ParseError(fmt::format("unknown reference line '{}'", s));
}

BufferGas parse_buffer_gas(const std::string& v) {
    if (trimmed(v) == "Ne") return BufferGas::Ne;
    throw ParseError(fmt::format("unknown buffer species '{}'", trimmed(v)));
}

std::array<double, 4> parse_weights(const std::string& v) {
    std::array<double, 4> w{};
    std::stringstream ss(v);
    std::string item;
    std::size_t i = 0;
    while (std::getline(ss, item, ',')) {
        if (i == w.size()) throw ParseError("expected exactly 4 line weights");
        w[i++] = parse_quantity(item, Dimension::dimensionless);
    }
    if (i != w.size()) throw ParseError("expected exactly 4 line weights");
    return w;
}

void read_beam(DocumentReader& r, const std::string& section, Beam& b) {
    r.quantity(section, "power", Dimension::power, b.power);
    r.quantity(section, "waist", Dimension::length, b.waist);
    r.quantity(section, "wavelength", Dimension::length, b.wavelength);
    r.quantity(section, "detuning", Dimension::frequency, b.detuning);
    r.read(section, "reference_line", true,
           [&](const std::string& v) { b.reference_line = parse_reference_line(v); });
}

void read_chain(DocumentReader& r, const std::string& section, DetectionChain& d) {
    r.quantity(section, "path_transmission", Dimension::dimensionless, d.path_transmission);
    r.quantity(section, "detector_efficiency", Dimension::dimensionless, d.detector_efficiency);
    r.quantity(section, "dark_rate", Dimension::frequency, d.dark_rate);
    r.quantity(section, "dead_time", Dimension::time, d.dead_time);
}

void read_filter(DocumentReader& r, const std::string& section, EtalonFilter& f) {
    r.quantity(section, "finesse", Dimension::dimensionless, f.finesse);
    r.quantity(section, "fwhm", Dimension::frequency, f.fwhm);
    r.quantity(section, "peak_transmission", Dimension::dimensionless, f.peak_transmission, false);
    r.quantity(section, "center_offset", Dimension::frequency, f.center_offset, false);
}

}  // namespace

ExperimentConfig load_config(std::string_view text) {
    pt::ptree tree;
    try {
        std::istringstream in{std::string(text)};
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ParseError(fmt::format("malformed config document: {}", e.what()));
    }

    bool from_preset = false;
    ExperimentConfig c;
    if (const auto preset = tree.get_optional<std::string>("preset")) {
        if (trimmed(*preset) != paper_default_name) {
            throw ParseError(fmt::format("unknown preset '{}'", trimmed(*preset)));
        }
        c = paper_default();
        from_preset = true;
    }
    c.write.role = BeamRole::write;
    c.read.role = BeamRole::read;
    c.stokes_chain.channel = Channel::stokes;
    c.antistokes_chain.channel = Channel::anti_stokes;

    DocumentReader r(tree, from_preset);
    r.read("", "preset", false, [](const std::string&) {});

    r.quantity("cell", "length", Dimension::length, c.cell.length);
    r.quantity("cell", "temperature", Dimension::temperature, c.cell.temperature);
    r.read("cell", "buffer_species", true,
           [&](const std::string& v) { c.cell.buffer_species = parse_buffer_gas(v); });
    r.quantity("cell", "buffer_pressure", Dimension::pressure, c.cell.buffer_pressure);
    r.read("cell", "atomic_density", false, [&](const std::string& v) {
        c.cell.atomic_density_override = parse_quantity(v, Dimension::number_density);
    });

    read_beam(r, "write", c.write);
    read_beam(r, "read", c.read);

    r.quantity("pulses", "write_duration", Dimension::time, c.pulses.write_duration);
    r.quantity("pulses", "read_duration", Dimension::time, c.pulses.read_duration);
    r.quantity("pulses", "write_read_delay", Dimension::time, c.pulses.write_read_delay);
    r.quantity("pulses", "pump_gap_before_write", Dimension::time, c.pulses.pump_gap_before_write);
    r.quantity("pulses", "repetition_rate", Dimension::frequency, c.pulses.repetition_rate);

    read_chain(r, "stokes_detector", c.stokes_chain);
    read_chain(r, "antistokes_detector", c.antistokes_chain);
    read_filter(r, "stokes_filter", c.stokes_filter);
    read_filter(r, "antistokes_filter", c.antistokes_filter);

    r.quantity("geometry", "theta_write_stokes", Dimension::angle, c.geometry.theta_write_stokes);
    r.quantity("geometry", "theta_read_antistokes", Dimension::angle,
               c.geometry.theta_read_antistokes);
    r.quantity("geometry", "theta_write_read", Dimension::angle, c.geometry.theta_write_read);
    r.read("geometry", "propagation", true, [&](const std::string& v) {
        c.geometry.propagation = parse_propagation_mode(trimmed(v));
    });
    r.quantity("geometry", "photon_wavelength", Dimension::length, c.geometry.photon_wavelength,
               false);
    r.read("geometry", "collection_half_angle", false, [&](const std::string& v) {
        c.geometry.collection_half_angle = parse_quantity(v, Dimension::angle);
    });

    r.quantity("model", "excitation_probability", Dimension::dimensionless,
               c.excitation_probability);
    r.quantity("model", "intrinsic_retrieval_efficiency", Dimension::dimensionless,
               c.intrinsic_retrieval_efficiency);
    r.read("model", "tau_other", false,
           [&](const std::string& v) { c.tau_other = parse_extent(v, Dimension::time); });
    r.quantity("model", "hyperfine_ground_splitting", Dimension::frequency,
               c.hyperfine_ground_splitting, false);
    r.quantity("model", "excited_splitting", Dimension::frequency, c.excited_splitting, false);

    r.quantity("diffusion", "d0", Dimension::diffusivity, c.diffusion.d0, false);
    r.quantity("diffusion", "p0", Dimension::pressure, c.diffusion.p0, false);
    r.quantity("diffusion", "t0", Dimension::temperature, c.diffusion.t0, false);

    r.quantity("noise", "crf_stokes", Dimension::dimensionless, c.noise.crf_stokes_window, false);
    r.quantity("noise", "crf_antistokes", Dimension::dimensionless, c.noise.crf_antistokes_window,
               false);
    r.quantity("noise", "leakage_stokes", Dimension::dimensionless, c.noise.leakage_stokes, false);
    r.quantity("noise", "leakage_antistokes", Dimension::dimensionless,
               c.noise.leakage_antistokes, false);
    r.quantity("noise", "crf_pressure_exponent", Dimension::dimensionless,
               c.noise.crf_pressure_exponent, false);
    r.quantity("noise", "crf_reference_pressure", Dimension::pressure,
               c.noise.crf_reference_pressure, false);

    r.read("spectrum", "stokes_snr", false, [&](const std::string& v) {
        c.spectrum.stokes_snr = parse_extent(v, Dimension::dimensionless);
    });
    r.read("spectrum", "antistokes_snr", false, [&](const std::string& v) {
        c.spectrum.antistokes_snr = parse_extent(v, Dimension::dimensionless);
    });
    r.read("spectrum", "stokes_line_weights", false,
           [&](const std::string& v) { c.spectrum.stokes_line_weights = parse_weights(v); });
    r.read("spectrum", "antistokes_line_weights", false,
           [&](const std::string& v) { c.spectrum.antistokes_line_weights = parse_weights(v); });
    r.quantity("spectrum", "signal_linewidth", Dimension::frequency, c.spectrum.signal_linewidth,
               false);
    r.read("spectrum", "fluorescence_fwhm", false, [&](const std::string& v) {
        c.spectrum.fluorescence_fwhm = parse_quantity(v, Dimension::frequency);
    });

    r.reject_unknown_keys();
    c.validate();
    return c;
}

ExperimentConfig load_config_file(const std::string& path) {
    if (path == paper_default_name) return paper_default();
    std::ifstream in(path);
    if (!in) throw ParseError(fmt::format("cannot open config file '{}'", path));
    std::stringstream buffer;
    buffer << in.rdbuf();
    return load_config(buffer.str());
}

std::string serialize(const ExperimentConfig& c) {
    std::string out;
    const auto line = [&](std::string_view key, const std::string& value) {
        out += fmt::format("{} = {}\n", key, value);
    };
    const auto q = [](double v, Dimension d) { return format_quantity(v, d); };
    const auto section = [&](std::string_view name) {
        if (!out.empty()) out += '\n';
        out += fmt::format("[{}]\n", name);
    };
    const auto weights = [](const std::array<double, 4>& w) {
        return fmt::format("{}, {}, {}, {}", w[0], w[1], w[2], w[3]);
    };

    section("cell");
    line("length", q(c.cell.length, Dimension::length));
    line("temperature", q(c.cell.temperature, Dimension::temperature));
    line("buffer_species", std::string(to_string(c.cell.buffer_species)));
    line("buffer_pressure", q(c.cell.buffer_pressure, Dimension::pressure));
    if (c.cell.atomic_density_override) {
        line("atomic_density", q(*c.cell.atomic_density_override, Dimension::number_density));
    }
    for (const auto* beam : {&c.write, &c.read}) {
        section(beam == &c.write ? "write" : "read");
        line("power", q(beam->power, Dimension::power));
        line("waist", q(beam->waist, Dimension::length));
        line("wavelength", q(beam->wavelength, Dimension::length));
        line("detuning", q(beam->detuning, Dimension::frequency));
        line("reference_line", std::string(to_string(beam->reference_line)));
    }
    section("pulses");
    line("write_duration", q(c.pulses.write_duration, Dimension::time));
    line("read_duration", q(c.pulses.read_duration, Dimension::time));
    line("write_read_delay", q(c.pulses.write_read_delay, Dimension::time));
    line("pump_gap_before_write", q(c.pulses.pump_gap_before_write, Dimension::time));
    line("repetition_rate", q(c.pulses.repetition_rate, Dimension::frequency));
    for (const auto* chain : {&c.stokes_chain, &c.antistokes_chain}) {
        section(chain == &c.stokes_chain ? "stokes_detector" : "antistokes_detector");
        line("path_transmission", q(chain->path_transmission, Dimension::dimensionless));
        line("detector_efficiency", q(chain->detector_efficiency, Dimension::dimensionless));
        line("dark_rate", q(chain->dark_rate, Dimension::frequency));
        line("dead_time", q(chain->dead_time, Dimension::time));
    }
    for (const auto* filter : {&c.stokes_filter, &c.antistokes_filter}) {
        section(filter == &c.stokes_filter ? "stokes_filter" : "antistokes_filter");
        line("finesse", q(filter->finesse, Dimension::dimensionless));
        line("fwhm", q(filter->fwhm, Dimension::frequency));
        line("peak_transmission", q(filter->peak_transmission, Dimension::dimensionless));
        line("center_offset", q(filter->center_offset, Dimension::frequency));
    }
    section("geometry");
    line("theta_write_stokes", q(c.geometry.theta_write_stokes, Dimension::angle));
    line("theta_read_antistokes", q(c.geometry.theta_read_antistokes, Dimension::angle));
    line("theta_write_read", q(c.geometry.theta_write_read, Dimension::angle));
    line("propagation", std::string(to_string(c.geometry.propagation)));
    line("photon_wavelength", q(c.geometry.photon_wavelength, Dimension::length));
    if (c.geometry.collection_half_angle) {
        line("collection_half_angle", q(*c.geometry.collection_half_angle, Dimension::angle));
    }
    section("model");
    line("excitation_probability", q(c.excitation_probability, Dimension::dimensionless));
    line("intrinsic_retrieval_efficiency",
         q(c.intrinsic_retrieval_efficiency, Dimension::dimensionless));
    line("tau_other", format_extent(c.tau_other, Dimension::time));
    line("hyperfine_ground_splitting", q(c.hyperfine_ground_splitting, Dimension::frequency));
    line("excited_splitting", q(c.excited_splitting, Dimension::frequency));
    section("diffusion");
    line("d0", q(c.diffusion.d0, Dimension::diffusivity));
    line("p0", q(c.diffusion.p0, Dimension::pressure));
    line("t0", q(c.diffusion.t0, Dimension::temperature));
    section("noise");
    line("crf_stokes", q(c.noise.crf_stokes_window, Dimension::dimensionless));
    line("crf_antistokes", q(c.noise.crf_antistokes_window, Dimension::dimensionless));
    line("leakage_stokes", q(c.noise.leakage_stokes, Dimension::dimensionless));
    line("leakage_antistokes", q(c.noise.leakage_antistokes, Dimension::dimensionless));
    line("crf_pressure_exponent", q(c.noise.crf_pressure_exponent, Dimension::dimensionless));
    line("crf_reference_pressure", q(c.noise.crf_reference_pressure, Dimension::pressure));
    section("spectrum");
    line("stokes_snr", format_extent(c.spectrum.stokes_snr, Dimension::dimensionless));
    line("antistokes_snr", format_extent(c.spectrum.antistokes_snr, Dimension::dimensionless));
    line("stokes_line_weights", weights(c.spectrum.stokes_line_weights));
    line("antistokes_line_weights", weights(c.spectrum.antistokes_line_weights));
    line("signal_linewidth", q(c.spectrum.signal_linewidth, Dimension::frequency));
    if (c.spectrum.fluorescence_fwhm) {
        line("fluorescence_fwhm", q(*c.spectrum.fluorescence_fwhm, Dimension::frequency));
    }
    return out;
}

std::string_view to_string(BufferGas) { return "Ne"; }

std::string_view to_string(ReferenceLine l) {
    return l == ReferenceLine::F1_excited ? "F1_excited" : "F2_excited";
}

std::string_view to_string(Channel c) { return c == Channel::stokes ? "stokes" : "anti_stokes"; }

Channel parse_channel(std::string_view name) {
    if (name == "stokes") return Channel::stokes;
    if (name == "anti_stokes" || name == "antistokes") return Channel::anti_stokes;
    throw DomainError(fmt::format("unknown channel '{}'", name));
}

}  // namespace dlcz
