#include "rescon/controller.hpp"

#include <algorithm>
#include <stdexcept>

namespace rescon {

void ControllerParams::validate(bool adaptive_gain_enabled) const {
    if (!(c1 > 0.0)) throw std::invalid_argument("controller.c1 must be > 0");
    if (!(c2 > 0.0)) throw std::invalid_argument("controller.c2 must be > 0");
    if (adaptive_gain_enabled ? !(gamma > 0.0) : !(gamma >= 0.0))
        throw std::invalid_argument("controller.gamma must be > 0");
    if (!(epsilon > 0.0)) throw std::invalid_argument("controller.epsilon must be > 0");
    if (!(varsigma > 0.0 && varsigma < 1.0)) throw std::invalid_argument("controller.varsigma must lie in (0, 1)");
    nussbaum.validate();
}

double adaptive_gain_rate(double e, const ControllerParams& p) {
    return p.gamma * std::max(e * e - p.varsigma * p.epsilon * p.epsilon, 0.0);
}

namespace {

// Pieces of beta1 written in terms of e, L and x1 = y_check.
struct Beta1Terms {
    double e;
    double a;      // phi1^2 + 2 + x1^2
    double da_dx;  // d a / d x1
};

Beta1Terms beta1_terms(double y_check, double s, const BoundingFunction& phi1) {
    const double ph = phi1.value(y_check);
    return {y_check - s, ph * ph + 2.0 + y_check * y_check,
            2.0 * ph * phi1.derivative(y_check) + 2.0 * y_check};
}

}  // namespace

double beta1(double y_check, double s, double L, const ControllerParams& p, const BoundingFunction& phi1) {
    const Beta1Terms t = beta1_terms(y_check, s, phi1);
    const double z1 = L * t.e;
    const double eps2 = p.epsilon * p.epsilon;
    return p.c1 * t.e + 0.25 * L * z1 * t.a + p.gamma * (t.e * t.e + eps2) * z1 / (L * L);
}

VirtualControl virtual_control(double b1, double e, const ControllerState& st, const ControllerParams& p) {
    return {eval(p.nussbaum, st.F1) * b1, st.L * st.L * e * b1};
}

VirtualPartials v1_partials(double y_check, double s, const ControllerState& st, const ControllerParams& p,
                            const BoundingFunction& phi1) {
    const Beta1Terms t = beta1_terms(y_check, s, phi1);
    const double L = st.L;
    const double e = t.e;
    const double eps2 = p.epsilon * p.epsilon;

    // beta1 = c1 e + L^2 e a / 4 + gamma (e^3 + eps^2 e) / L
    const double db_de = p.c1 + 0.25 * L * L * t.a + p.gamma * (3.0 * e * e + eps2) / L;
    const double db_dx = db_de + 0.25 * L * L * e * t.da_dx;
    const double db_dL = 0.5 * L * e * t.a - p.gamma * (e * e + eps2) * e / (L * L);
    const double b1 = beta1(y_check, s, L, p, phi1);

    const double n = eval(p.nussbaum, st.F1);
    return {n * db_dx, -n * db_de, n * db_dL, eval_derivative(p.nussbaum, st.F1) * b1};
}

double phi2_aggregate(double x1_check, double x2_check, const VirtualPartials& dv, double F1_rate,
                      double L_rate, const BoundingFunction& phi1, const BoundingFunction& phi2) {
    const double xs[2] = {x1_check, x2_check};
    const double p2 = phi2.value(xs);
    const double p1 = phi1.value(x1_check);
    const double f_term = dv.d_F1 * F1_rate;
    const double l_term = dv.d_L * L_rate;
    return 0.25 * (p2 * p2 + 1.0 + x2_check * x2_check) + dv.d_s * dv.d_s + f_term * f_term +
           dv.d_x1 * dv.d_x1 * 0.25 * (p1 * p1 + 1.0 + x1_check * x1_check) + l_term * l_term;
}

ControlInput control_input(double z1, double z2, const ControllerState& st, double phi2,
                           const ControllerParams& p, bool squared_gain_term) {
    const double gain = squared_gain_term ? st.L * st.L : st.L;
    const double b2 = p.c2 * z2 + z2 * phi2 + 0.25 * gain * z1 * z1 * z2;
    return {eval(p.nussbaum, st.F2) * b2, z2 * b2, b2};
}

ControllerSignals evaluate_controller(const LocalMeasurement& m, const ControllerState& st,
                                      const ControllerParams& p, const ControllerOptions& opt,
                                      const BoundingFunction& phi1, const BoundingFunction& phi2) {
    ControllerSignals out;
    out.e = m.y_check - m.s;
    out.z1 = st.L * out.e;
    out.L_rate = opt.adaptive_gain_enabled ? adaptive_gain_rate(out.e, p) : 0.0;
    out.beta1 = beta1(m.y_check, m.s, st.L, p, phi1);

    const VirtualControl vc = virtual_control(out.beta1, out.e, st, p);
    out.v1 = vc.v1;
    out.F1_rate = vc.F1_rate;
    out.z2 = m.x2_check - out.v1;

    out.partials = v1_partials(m.y_check, m.s, st, p, phi1);
    out.phi2 = phi2_aggregate(m.y_check, m.x2_check, out.partials, out.F1_rate, out.L_rate, phi1, phi2);

    const ControlInput ci = control_input(out.z1, out.z2, st, out.phi2, p, opt.squared_gain_term);
    out.u = ci.u;
    out.F2_rate = ci.F2_rate;
    out.beta2 = ci.beta2;
    return out;
}

}  // namespace rescon
