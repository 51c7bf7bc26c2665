#pragma once

// Infinitely long dielectric shell r1 < r < r2 rotating rigidly about its
// axis in a uniform axial magnetic induction B0.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "emforms/errors.hpp"
#include "emforms/junction.hpp"
#include "emforms/matching.hpp"
#include "emforms/moving_media.hpp"
#include "emforms/quadrature.hpp"
#include "emforms/scenarios/solution.hpp"
#include "emforms/spacetime.hpp"

namespace emforms {

struct CylinderScenario {
    double r1 = 0.0;
    double r2 = 0.0;
    double omega = 0.0;
    double B0 = 0.0;
    MaterialParams mat;

    void validate() const {
        mat.validate();
        if (!std::isfinite(r1) || !std::isfinite(r2) || !(r1 > 0.0) || !(r2 > r1))
            throw GeometryError("cylinder: radii must satisfy 0 < r1 < r2");
        if (!std::isfinite(omega) || !std::isfinite(B0)) throw Error("cylinder: omega and B0 must be finite");
        if (!(std::abs(omega) * r2 < mat.c)) throw DomainError("cylinder: the shell reaches the light cylinder (|omega| r2 >= c)");
    }
};

namespace cylinder {

inline ScalarField r() { return coord(1); }

/// r²Ω² − c², the denominator shared by the interior closed forms.
inline ScalarField light_factor(const CylinderScenario& sc) {
    const auto rr = r();
    return rr * rr * ScalarField(sc.omega * sc.omega) - ScalarField(sc.mat.c * sc.mat.c);
}

inline DifferentialForm F_out(const CylinderScenario& sc) {
    return DifferentialForm::basis(ChartKind::cylindrical, MultiIndex{1, 2}, ScalarField(sc.mat.c * sc.B0) * r());
}

inline DifferentialForm G_out(const CylinderScenario& sc) { return ScalarField(sc.mat.eps0) * F_out(sc); }

/// Interior Maxwell 2-form with the matched constants substituted.
inline DifferentialForm F_in(const CylinderScenario& sc) {
    const double c = sc.mat.c, e = sc.mat.eps_r, em = sc.mat.eps_mu(), W = sc.omega;
    const auto D = light_factor(sc);
    const auto rr = r();
    DifferentialForm F(ChartKind::cylindrical, 2);
    F.add_to(MultiIndex{0, 1}, ScalarField(c * c * c * sc.B0 * W * (1.0 - em) / e) * rr / D);
    F.add_to(MultiIndex{1, 2}, ScalarField(c * sc.B0 / e) * rr * (rr * rr * ScalarField(W * W) - ScalarField(c * c * em)) / D);
    return F;
}

inline DifferentialForm G_in(const CylinderScenario& sc) { return G_out(sc); }

/// Interior family before matching, in the integration constants C1, C2.
/// Singular at Ω = 0 and at ε_rμ_r = 1.
inline DifferentialForm F_in_family(const CylinderScenario& sc, double C1, double C2) {
    const double c = sc.mat.c, em = sc.mat.eps_mu(), W = sc.omega;
    if (W == 0.0 || em == 1.0) throw DomainError("cylinder: the constant family is singular at omega = 0 or eps_r mu_r = 1");
    const auto rr = r();
    const auto D = light_factor(sc);
    DifferentialForm F(ChartKind::cylindrical, 2);
    F.add_to(MultiIndex{0, 1}, -(ScalarField(C1) + rr * rr * ScalarField(C2)) / (rr * D));
    const auto num = ScalarField(W * W * C1) * (rr * rr * ScalarField(em * W * W) - ScalarField(2.0 * em * c * c - c * c)) +
                     ScalarField(c * c * C2) * (rr * rr * ScalarField(W * W) - ScalarField(c * c * em));
    F.add_to(MultiIndex{1, 2}, num * rr / (ScalarField((em - 1.0) * W * c * c * c * c) * D));
    return F;
}

inline DifferentialForm G_in_family(const CylinderScenario& sc, double C1, double C2) {
    const double c = sc.mat.c, e = sc.mat.eps_r, em = sc.mat.eps_mu(), W = sc.omega, e0 = sc.mat.eps0;
    if (W == 0.0 || em == 1.0) throw DomainError("cylinder: the constant family is singular at omega = 0 or eps_r mu_r = 1");
    const auto rr = r();
    DifferentialForm G(ChartKind::cylindrical, 2);
    G.add_to(MultiIndex{0, 1}, ScalarField(C1 * e0 * e / (c * c)) / rr);
    G.add_to(MultiIndex{1, 2}, rr * ScalarField(e0 * e * (C1 * em * W * W + C2 * c * c) / ((em - 1.0) * c * c * c * c * W)));
    return G;
}

/// Excitation of the interior ansatz F = α dt∧dr + β dr∧dθ, for given α, β.
inline DifferentialForm G_from_ansatz(const CylinderScenario& sc, const ScalarField& alpha, const ScalarField& beta) {
    const double c = sc.mat.c, m = sc.mat.mu_r, em = sc.mat.eps_mu(), W = sc.omega, e0 = sc.mat.eps0;
    const auto rr = r();
    const auto D = ScalarField(m) * light_factor(sc);
    DifferentialForm G(ChartKind::cylindrical, 2);
    G.add_to(MultiIndex{0, 1}, ScalarField(e0) * (alpha * (rr * rr * ScalarField(W * W) - ScalarField(c * c * em)) + beta * ScalarField(c * c * W * (em - 1.0))) / D);
    G.add_to(MultiIndex{1, 2}, ScalarField(e0) * (alpha * rr * rr * ScalarField(W * (1.0 - em)) + beta * (rr * rr * ScalarField(W * W * em) - ScalarField(c * c))) / D);
    return G;
}

inline double C2_closed_form(const CylinderScenario& sc) {
    const double c = sc.mat.c;
    return c * c * c * sc.B0 * sc.omega * (sc.mat.eps_mu() - 1.0) / sc.mat.eps_r;
}

/// Observer-frame 1-forms relative to the laboratory frame.
inline EMDecomposition closed_form_interior(const CylinderScenario& sc) {
    const double c = sc.mat.c, e = sc.mat.eps_r, em = sc.mat.eps_mu(), W = sc.omega;
    const auto rr = r();
    const auto D = light_factor(sc);
    const ChartKind k = ChartKind::cylindrical;
    EMDecomposition out{DifferentialForm(k, 1), DifferentialForm(k, 1), DifferentialForm(k, 1), DifferentialForm(k, 1), lab_frame(cylindrical_chart(c))};
    out.e.add_to(MultiIndex{1}, ScalarField(-c * c * sc.B0 * W * (em - 1.0) / e) * rr / D);
    out.b.add_to(MultiIndex{3}, ScalarField(sc.B0 / e) * (rr * rr * ScalarField(W * W) - ScalarField(em * c * c)) / D);
    out.h.add_to(MultiIndex{3}, ScalarField(sc.B0 / sc.mat.mu0));
    return out;
}

inline EMDecomposition closed_form_exterior(const CylinderScenario& sc) {
    const ChartKind k = ChartKind::cylindrical;
    EMDecomposition out{DifferentialForm(k, 1), DifferentialForm(k, 1), DifferentialForm(k, 1), DifferentialForm(k, 1), lab_frame(cylindrical_chart(sc.mat.c))};
    out.b.add_to(MultiIndex{3}, ScalarField(sc.B0));
    out.h.add_to(MultiIndex{3}, ScalarField(sc.B0 / sc.mat.mu0));
    return out;
}

}  // namespace cylinder

/// Builds the cylinder solution. The interior excitation is parametrized as
/// G_in = (k1/r) dt∧dr + k2 r dr∧dθ, which solves d⋆G = 0 for any k1, k2;
/// F_in follows from the inverse constitutive map. (k1, k2) are fitted to the
/// junction conditions at both interfaces and converted to (C1, C2).
inline std::pair<FieldSolution, MatchingConstants> solve_cylinder(const CylinderScenario& sc, std::size_t interface_samples = 8,
                                                                 std::uint64_t seed = 7) {
    sc.validate();
    const Chart chart = cylindrical_chart(sc.mat.c);
    const auto U = lab_frame(chart);
    const auto V = rotating_velocity(chart, sc.omega, chart.azimuth_index);
    const auto F_out = cylinder::F_out(sc);
    const auto G_out = cylinder::G_out(sc);
    const auto rr = cylinder::r();

    auto G_of = [&](std::span<const double> k) {
        DifferentialForm G(ChartKind::cylindrical, 2);
        G.add_to(MultiIndex{0, 1}, ScalarField(k[0]) / rr);
        G.add_to(MultiIndex{1, 2}, ScalarField(k[1]) * rr);
        return G;
    };

    std::vector<Interface> ifaces{radial_interface(ChartKind::cylindrical, sc.r1, "r1"), radial_interface(ChartKind::cylindrical, sc.r2, "r2")};
    std::vector<MatchingCondition> conds;
    for (std::size_t n = 0; n < ifaces.size(); ++n) {
        const double R = n == 0 ? sc.r1 : sc.r2;
        const auto samples = sample_radial_interface(ChartKind::cylindrical, R, std::max<std::size_t>(interface_samples, 4), seed + n);
        const auto dphi = exterior_derivative(DifferentialForm::scalar(ChartKind::cylindrical, ifaces[n].phi));
        conds.push_back({"F_jump@" + ifaces[n].name,
                         [&, dphi](std::span<const double> k) { return wedge(F_out - invert_constitutive(G_of(k), V, sc.mat, chart), dphi); },
                         &chart.metric, samples});
        conds.push_back({"starG_jump@" + ifaces[n].name,
                         [&, dphi](std::span<const double> k) { return wedge(hodge_star(chart.metric, G_out - G_of(k)), dphi); },
                         &chart.metric, samples});
    }
    const auto sys = assemble_matching_system(conds, 2);
    const auto fit = solve_least_squares(sys.A, sys.b, 1e-9, "solve_cylinder");
    const double k1 = fit.x(0), k2 = fit.x(1);

    const double c = sc.mat.c, e = sc.mat.eps_r, em = sc.mat.eps_mu(), W = sc.omega, e0 = sc.mat.eps0;
    MatchingConstants mc;
    mc.scenario = "cylinder";
    mc.C1 = k1 * c * c / (e0 * e);
    mc.C2 = k2 * (em - 1.0) * c * c * W / (e0 * e) - mc.C1 * em * W * W / (c * c);
    mc.fit_residual = fit.relative_residual;
    mc.equations = static_cast<long>(fit.rows_used);

    FieldSolution sol;
    sol.chart = chart;
    sol.F_in = cylinder::F_in(sc);
    sol.G_in = cylinder::G_in(sc);
    sol.F_out = F_out;
    sol.G_out = G_out;
    sol.interfaces = ifaces;
    sol.interface_radii = {sc.r1, sc.r2};
    sol.regions = {{"interior", true, sc.r1, sc.r2}, {"core", false, 1e-3 * sc.r1, sc.r1}, {"outer", false, sc.r2, 3.0 * sc.r2}};
    sol.V = V;
    sol.mat = sc.mat;
    sol.order = SolutionOrder::exact;
    sol.omega = sc.omega;
    sol.length_scale = sc.r2;
    (void)U;
    return {sol, mc};
}

/// Interior fields rebuilt from fitted excitation constants (the numeric
/// path that solve_cylinder cross-checks against the closed forms).
inline std::pair<DifferentialForm, DifferentialForm> cylinder_interior_from_constants(const CylinderScenario& sc, const MatchingConstants& mc) {
    const Chart chart = cylindrical_chart(sc.mat.c);
    const auto V = rotating_velocity(chart, sc.omega, chart.azimuth_index);
    const double c = sc.mat.c, e = sc.mat.eps_r, em = sc.mat.eps_mu(), W = sc.omega, e0 = sc.mat.eps0;
    const double k1 = mc.C1 * e0 * e / (c * c);
    // k2 from C2 is singular when (εμ − 1)Ω = 0; the matched value is then ε₀cB₀.
    const double k2 = (em - 1.0) * W != 0.0 ? (mc.C2 + mc.C1 * em * W * W / (c * c)) * e0 * e / ((em - 1.0) * c * c * W) : e0 * c * sc.B0;
    const auto rr = cylinder::r();
    DifferentialForm G(ChartKind::cylindrical, 2);
    G.add_to(MultiIndex{0, 1}, ScalarField(k1) / rr);
    G.add_to(MultiIndex{1, 2}, ScalarField(k2) * rr);
    return {invert_constitutive(G, V, sc.mat, chart), G};
}

struct CylinderSources {
    DifferentialForm current{ChartKind::cylindrical, 2};
    DifferentialForm charge{ChartKind::cylindrical, 3};
    DifferentialForm p{ChartKind::cylindrical, 1};
    DifferentialForm m{ChartKind::cylindrical, 1};
};

/// Closed-form interior polarisation, magnetisation and bound sources
/// relative to the laboratory frame.
inline CylinderSources cylinder_bound_sources(const CylinderScenario& sc) {
    sc.validate();
    const double c = sc.mat.c, e = sc.mat.eps_r, mu = sc.mat.mu_r, em = sc.mat.eps_mu(), W = sc.omega, e0 = sc.mat.eps0, B0 = sc.B0;
    const auto rr = cylinder::r();
    const auto D = cylinder::light_factor(sc);
    CylinderSources s;
    s.p.add_to(MultiIndex{1}, ScalarField((mu - 1.0 / e) * c * c * W * e0 * B0) * rr / D);
    s.m.add_to(MultiIndex{3}, ScalarField(e0 * c * c * B0 / e) * (ScalarField(c * c * e * (mu - 1.0)) + rr * rr * ScalarField(W * W * (e - 1.0))) / D);
    // dz∧dr∧dθ = +dr∧dθ∧dz and dz∧dr = −dr∧dz.
    s.charge.add_to(MultiIndex{1, 2, 3}, ScalarField(-2.0 * c * c * c * c * W * e0 * B0 * (em - 1.0) / e) * rr / (D * D));
    s.current.add_to(MultiIndex{1, 3}, -(ScalarField(2.0 * c * c * c * e0 * B0 * W * W * (em - 1.0) / e) * rr / (D * D)));
    return s;
}

/// Same quantities computed from Π_in = G_in − ε₀F_in with the generic
/// moving-media operations.
inline CylinderSources cylinder_bound_sources_from_fields(const CylinderScenario& sc, const FieldSolution& sol) {
    const auto U = lab_frame(sol.chart);
    const auto Pi = polarization(sol.F_in, sol.G_in, sc.mat.eps0);
    const auto bs = bound_sources(Pi, U, sol.chart);
    const auto pm = decompose(Pi, U, sol.chart, FieldKind::excitation);
    CylinderSources s;
    s.current = bs.current;
    s.charge = bs.charge;
    s.p = pm.first;
    s.m = pm.second;
    return s;
}

enum class V12Mode { exact, leading_order };

/// Radial potential difference ∫ e_r dr from r1 to r2 (sign chosen so the
/// leading order is μ_r(1 − 1/(μ_rε_r))(Ω/2)B0(r2² − r1²)).
inline double wilson_wilson_V12(const CylinderScenario& sc, V12Mode mode) {
    sc.validate();
    const double e = sc.mat.eps_r, mu = sc.mat.mu_r;
    if (mode == V12Mode::leading_order) return mu * (1.0 - 1.0 / (mu * e)) * (sc.omega / 2.0) * sc.B0 * (sc.r2 * sc.r2 - sc.r1 * sc.r1);
    if (sc.omega == 0.0) return 0.0;
    const auto er = cylinder::closed_form_interior(sc).e.component(MultiIndex{1});
    const auto q = integrate_adaptive([&](double x) { return er(Event{{0.0, x, 0.0, 0.0}}); }, sc.r1, sc.r2, 1e-12);
    return q.value;
}

/// The Pellegrini–Swift prediction μ_r(1/ε_r − 1) r Ω B0 (signed).
inline double pellegrini_swift_field(const CylinderScenario& sc, double radius) {
    sc.validate();
    if (!(radius >= sc.r1 && radius <= sc.r2)) throw GeometryError("pellegrini_swift_field: radius outside the shell");
    return sc.mat.mu_r * (1.0 / sc.mat.eps_r - 1.0) * radius * sc.omega * sc.B0;
}

/// Leading-order Wilson–Wilson field magnitude μ_r(1 − 1/(μ_rε_r)) r Ω B0.
inline double wilson_wilson_field(const CylinderScenario& sc, double radius) {
    return sc.mat.mu_r * (1.0 - 1.0 / sc.mat.eps_mu()) * radius * sc.omega * sc.B0;
}

struct ComparatorReport {
    double radius = 0.0;
    double wilson_wilson = 0.0;
    double pellegrini_swift = 0.0;
    /// pellegrini_swift / wilson_wilson, and its algebraic value μ_r(1 − ε_r)/(ε_rμ_r − 1).
    double ratio = 0.0;
    double expected_ratio = 0.0;
    bool distinct = false;
};

inline ComparatorReport compare_predictions(const CylinderScenario& sc, double radius) {
    ComparatorReport rep;
    rep.radius = radius;
    rep.wilson_wilson = wilson_wilson_field(sc, radius);
    rep.pellegrini_swift = pellegrini_swift_field(sc, radius);
    const double em = sc.mat.eps_mu();
    if (em != 1.0) rep.expected_ratio = sc.mat.mu_r * (1.0 - sc.mat.eps_r) / (em - 1.0);
    if (rep.wilson_wilson != 0.0) rep.ratio = rep.pellegrini_swift / rep.wilson_wilson;
    rep.distinct = rep.wilson_wilson != rep.pellegrini_swift;
    return rep;
}

/// Leading-order interior fields for rΩ ≪ c.
inline std::pair<DifferentialForm, DifferentialForm> nonrelativistic_limit(const CylinderScenario& sc) {
    const auto rr = cylinder::r();
    DifferentialForm e(ChartKind::cylindrical, 1), b(ChartKind::cylindrical, 1);
    e.add_to(MultiIndex{1}, ScalarField(sc.B0 * (sc.mat.eps_mu() - 1.0) * sc.omega / sc.mat.eps_r) * rr);
    b.add_to(MultiIndex{3}, ScalarField(sc.mat.mu_r * sc.B0));
    return {e, b};
}

}  // namespace emforms
