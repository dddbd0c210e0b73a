#include "dlcz/units.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "dlcz/error.hpp"

namespace dlcz {

namespace {

struct UnitEntry {
    std::string_view symbol;
    double scale;
    double offset = 0.0;  // only temperature uses this
};

using namespace std::string_view_literals;

constexpr std::array length_units{
    UnitEntry{"m"sv, 1.0},    UnitEntry{"cm"sv, 1e-2}, UnitEntry{"mm"sv, 1e-3},
    UnitEntry{"um"sv, 1e-6},  UnitEntry{"µm"sv, 1e-6}, UnitEntry{"nm"sv, 1e-9},
};
constexpr std::array time_units{
    UnitEntry{"s"sv, 1.0},   UnitEntry{"ms"sv, 1e-3}, UnitEntry{"us"sv, 1e-6},
    UnitEntry{"µs"sv, 1e-6}, UnitEntry{"ns"sv, 1e-9}, UnitEntry{"ps"sv, 1e-12},
};
constexpr std::array frequency_units{
    UnitEntry{"Hz"sv, 1.0},  UnitEntry{"cps"sv, 1.0}, UnitEntry{"kHz"sv, 1e3},
    UnitEntry{"MHz"sv, 1e6}, UnitEntry{"GHz"sv, 1e9},
};
constexpr std::array power_units{
    UnitEntry{"W"sv, 1.0}, UnitEntry{"mW"sv, 1e-3}, UnitEntry{"uW"sv, 1e-6},
    UnitEntry{"µW"sv, 1e-6},
};
constexpr std::array temperature_units{
    UnitEntry{"K"sv, 1.0},
    UnitEntry{"C"sv, 1.0, constants::zero_celsius},
    UnitEntry{"degC"sv, 1.0, constants::zero_celsius},
};
constexpr std::array pressure_units{
    UnitEntry{"Pa"sv, 1.0},           UnitEntry{"kPa"sv, 1e3},
    UnitEntry{"Torr"sv, constants::torr}, UnitEntry{"mTorr"sv, 1e-3 * constants::torr},
    UnitEntry{"atm"sv, constants::atm},   UnitEntry{"bar"sv, 1e5},
    UnitEntry{"mbar"sv, 1e2},
};
constexpr std::array angle_units{
    UnitEntry{"rad"sv, 1.0}, UnitEntry{"mrad"sv, 1e-3}, UnitEntry{"urad"sv, 1e-6},
    UnitEntry{"deg"sv, constants::pi / 180.0},
};
constexpr std::array diffusivity_units{
    UnitEntry{"m^2/s"sv, 1.0}, UnitEntry{"cm^2/s"sv, 1e-4},
};
constexpr std::array density_units{
    UnitEntry{"m^-3"sv, 1.0}, UnitEntry{"cm^-3"sv, 1e6},
};
constexpr std::array dimensionless_units{
    UnitEntry{""sv, 1.0}, UnitEntry{"%"sv, 1e-2},
};

template <std::size_t N>
std::pair<const UnitEntry*, const UnitEntry*> span_of(const std::array<UnitEntry, N>& a) {
    return {a.data(), a.data() + N};
}

std::pair<const UnitEntry*, const UnitEntry*> units_for(Dimension d) {
    switch (d) {
        case Dimension::dimensionless: return span_of(dimensionless_units);
        case Dimension::length: return span_of(length_units);
        case Dimension::time: return span_of(time_units);
        case Dimension::frequency: return span_of(frequency_units);
        case Dimension::power: return span_of(power_units);
        case Dimension::temperature: return span_of(temperature_units);
        case Dimension::pressure: return span_of(pressure_units);
        case Dimension::angle: return span_of(angle_units);
        case Dimension::diffusivity: return span_of(diffusivity_units);
        case Dimension::number_density: return span_of(density_units);
    }
    throw UnitError("unknown dimension");
}

std::string_view trim(std::string_view s) {
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

}  // namespace

Extent Extent::finite(double value) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw DomainError(fmt::format("finite extent must be positive, got {}", value));
    }
    return Extent(value);
}

double Extent::value() const {
    if (unbounded_) throw DomainError("extent is unbounded");
    return value_;
}

std::string_view to_string(Dimension d) {
    switch (d) {
        case Dimension::dimensionless: return "dimensionless";
        case Dimension::length: return "length";
        case Dimension::time: return "time";
        case Dimension::frequency: return "frequency";
        case Dimension::power: return "power";
        case Dimension::temperature: return "temperature";
        case Dimension::pressure: return "pressure";
        case Dimension::angle: return "angle";
        case Dimension::diffusivity: return "diffusivity";
        case Dimension::number_density: return "number density";
    }
    return "?";
}

double parse_quantity(std::string_view text, Dimension dim) {
    const std::string_view s = trim(text);
    double number = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), number);
    if (ec != std::errc{} || end == s.data()) {
        throw ParseError(fmt::format("'{}' does not start with a number", s));
    }
    const std::string_view unit = trim(std::string_view(end, s.data() + s.size() - end));
    const auto [first, last] = units_for(dim);
    const auto it = std::find_if(first, last, [&](const UnitEntry& u) { return u.symbol == unit; });
    if (it == last) {
        if (unit.empty()) {
            throw UnitError(fmt::format("'{}' is missing a {} unit", s, to_string(dim)));
        }
        throw UnitError(fmt::format("unknown {} unit '{}' in '{}'", to_string(dim), unit, s));
    }
    return number * it->scale + it->offset;
}

Extent parse_extent(std::string_view text, Dimension dim) {
    const std::string_view s = trim(text);
    if (s == "unbounded" || s == "inf") return Extent::unbounded();
    return Extent::finite(parse_quantity(s, dim));
}

std::string format_quantity(double value_si, Dimension dim) {
    const std::string_view unit = units_for(dim).first->symbol;
    if (unit.empty()) return fmt::format("{}", value_si);
    return fmt::format("{} {}", value_si, unit);
}

std::string format_extent(const Extent& e, Dimension dim) {
    return e.is_unbounded() ? std::string("unbounded") : format_quantity(e.value(), dim);
}

}  // namespace dlcz
