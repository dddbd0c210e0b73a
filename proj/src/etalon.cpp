#include "dlcz/etalon.hpp"

#include <cmath>

#include "dlcz/units.hpp"

namespace dlcz {

double etalon_transmission(double nu, const EtalonFilter& f) {
    const double coefficient = 2.0 * f.finesse / constants::pi;
    // Reduce the phase into one period first so that T(nu + fsr) == T(nu)
    // holds to rounding, independent of |nu|.
    const double phase = constants::pi * std::remainder(nu, f.fsr()) / f.fsr();
    const double s = std::sin(phase);
    return f.peak_transmission / (1.0 + coefficient * coefficient * s * s);
}

}  // namespace dlcz
