#include "ecotour/energy.hpp"

#include <cmath>

namespace ecotour {

Turn classify_turn(double bearing_in_deg, double bearing_out_deg, double threshold_deg) {
    double d = bearing_out_deg - bearing_in_deg;
    d = std::fmod(d, 360.0);
    if (d > 180.0) d -= 360.0;
    if (d <= -180.0) d += 360.0;
    if (d >= threshold_deg) return Turn::Left;
    if (d <= -threshold_deg) return Turn::Right;
    return Turn::Straight;
}

bool is_conflicting_left(int incoming_arcs, int outgoing_arcs) {
    return incoming_arcs >= 2 || outgoing_arcs >= 2;
}

double edge_energy(double length_m, double speed_mps, double gradient_rad,
                   const EnergyParams& p) {
    const double grade = p.mass_kg * p.gravity *
                         (p.rolling_coeff * std::cos(gradient_rad) + std::sin(gradient_rad));
    const double v = speed_mps + p.wind_speed_mps;
    const double drag = 0.5 * p.air_density * p.drag_coeff * p.frontal_area_m2 * v * v;
    const double inertial = (p.mass_kg + p.equiv_mass_kg) * p.accel_mps2;
    double joules = (grade + drag + inertial) * length_m;
    if (joules < 0.0) joules *= p.regen_factor;
    return joules / 3.6e6;
}

} // namespace ecotour
