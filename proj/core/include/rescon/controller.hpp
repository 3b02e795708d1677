#pragma once

#include "rescon/nussbaum.hpp"
#include "rescon/plant.hpp"

namespace rescon {

/// Per-agent design parameters of the two-step backstepping law.
struct ControllerParams {
    double c1 = 0.2;
    double c2 = 0.2;
    double gamma = 1.5;     // adaptive-gain rate
    double epsilon = 0.1;   // target band for the inner tracking error
    double varsigma = 0.9;  // deadzone factor, in (0, 1)
    NussbaumSpec nussbaum;

    /// gamma may be zero only when the adaptive gain is disabled.
    void validate(bool adaptive_gain_enabled = true) const;

    bool operator==(const ControllerParams&) const = default;
};

struct ControllerOptions {
    // Use L^2 instead of L in the z1^2 z2 / 4 term of the actual control.
    bool squared_gain_term = false;
    // false freezes L at its initial value.
    bool adaptive_gain_enabled = true;

    bool operator==(const ControllerOptions&) const = default;
};

struct ControllerState {
    double L = 1.0;
    double F1 = 0.0;
    double F2 = 0.0;
};

/// Everything the local controller may read: its corrupted output and state
/// and its own reference state. True states, plant coefficients and attack
/// weights are deliberately absent.
struct LocalMeasurement {
    double y_check = 0.0;
    double x2_check = 0.0;
    double s = 0.0;
};

/// Partial derivatives of v1(x1_check, s, L, F1).
struct VirtualPartials {
    double d_x1 = 0.0;
    double d_s = 0.0;
    double d_L = 0.0;
    double d_F1 = 0.0;
};

struct ControllerSignals {
    double e = 0.0;
    double z1 = 0.0;
    double z2 = 0.0;
    double beta1 = 0.0;
    double v1 = 0.0;
    double beta2 = 0.0;
    double u = 0.0;
    double L_rate = 0.0;
    double F1_rate = 0.0;
    double F2_rate = 0.0;
    double phi2 = 0.0;
    VirtualPartials partials;
};

/// gamma * max(e^2 - varsigma * epsilon^2, 0).
double adaptive_gain_rate(double e, const ControllerParams& p);

/// c1 e + (L z1 / 4)(phi1^2 + 2 + x1^2) + gamma (e^2 + epsilon^2) z1 / L^2,
/// with e = y_check - s and z1 = L e.
double beta1(double y_check, double s, double L, const ControllerParams& p, const BoundingFunction& phi1);

struct VirtualControl {
    double v1 = 0.0;
    double F1_rate = 0.0;
};

/// v1 = N(F1) beta1 and F1' = L z1 beta1 = L^2 e beta1.
VirtualControl virtual_control(double beta1, double e, const ControllerState& st, const ControllerParams& p);

VirtualPartials v1_partials(double y_check, double s, const ControllerState& st, const ControllerParams& p,
                            const BoundingFunction& phi1);

/// Aggregated bound used by the second step; always positive.
double phi2_aggregate(double x1_check, double x2_check, const VirtualPartials& dv, double F1_rate,
                      double L_rate, const BoundingFunction& phi1, const BoundingFunction& phi2);

struct ControlInput {
    double u = 0.0;
    double F2_rate = 0.0;
    double beta2 = 0.0;
};

/// beta2 = c2 z2 + z2 Phi2 + L z1^2 z2 / 4 (L^2 with squared_gain_term),
/// u = N(F2) beta2, F2' = z2 beta2.
ControlInput control_input(double z1, double z2, const ControllerState& st, double phi2,
                           const ControllerParams& p, bool squared_gain_term);

/// Full law for one agent at one instant. Throws OverflowError when a
/// Nussbaum gain has left the representable range.
ControllerSignals evaluate_controller(const LocalMeasurement& m, const ControllerState& st,
                                      const ControllerParams& p, const ControllerOptions& opt,
                                      const BoundingFunction& phi1, const BoundingFunction& phi2);

}  // namespace rescon
