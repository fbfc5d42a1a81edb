#pragma once

namespace ecotour {

// longitudinal-dynamics parameters of the vehicle model
struct EnergyParams {
    double mass_kg = 27216.0;       // gross vehicle mass
    double gravity = 9.8;           // m/s^2
    double rolling_coeff = 0.0058;  // dimensionless rolling resistance
    double air_density = 1.1;       // kg/m^3
    double drag_coeff = 0.6;
    double frontal_area_m2 = 5.4;   // m^2
    double wind_speed_mps = 0.0;    // headwind, added to vehicle speed
    double accel_mps2 = 0.0;        // sustained acceleration term
    double equiv_mass_kg = 0.0;     // rotational-inertia equivalent mass
    double regen_factor = 0.7;      // fraction of negative traction recovered
};

enum class Turn { Left, Right, Straight };

// Classifies the movement between two directed road edges from their
// bearings (degrees, counterclockwise positive). The heading change is
// normalized to (-180, 180]; boundary angles count as turns.
Turn classify_turn(double bearing_in_deg, double bearing_out_deg, double threshold_deg);

// A left movement only costs a turn when the intersection admits conflicting
// traffic: at least two incoming or at least two outgoing arcs.
bool is_conflicting_left(int incoming_arcs, int outgoing_arcs);

// Traction energy for one edge in kWh. Negative raw energy (downhill regen)
// is scaled by the regen factor.
double edge_energy(double length_m, double speed_mps, double gradient_rad,
                   const EnergyParams& params);

} // namespace ecotour
