#pragma once

// Dielectric sphere of radius a rotating about the direction of a uniform
// static electric field E0, solved to first order in aΩ/c.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "emforms/errors.hpp"
#include "emforms/junction.hpp"
#include "emforms/matching.hpp"
#include "emforms/moving_media.hpp"
#include "emforms/scenarios/solution.hpp"
#include "emforms/spacetime.hpp"

namespace emforms {

struct SphereScenario {
    double a = 0.0;
    double omega = 0.0;
    double E0 = 0.0;
    MaterialParams mat;

    void validate() const {
        mat.validate();
        if (!std::isfinite(a) || !(a > 0.0)) throw GeometryError("sphere: radius must be positive");
        if (!std::isfinite(omega) || !std::isfinite(E0)) throw Error("sphere: omega and E0 must be finite");
        if (!(std::abs(omega) * a < mat.c)) throw DomainError("sphere: the equator reaches the light cylinder (|omega| a >= c)");
    }

    std::vector<std::string> warnings() const {
        std::vector<std::string> w;
        if (std::abs(omega) * a > 0.1 * mat.c) w.push_back("sphere: |omega| a exceeds 0.1 c; the first-order solution is unreliable");
        return w;
    }
};

namespace sphere {

inline ScalarField r() { return coord(1); }
inline ScalarField cos_t() { return cos(coord(2)); }
inline ScalarField sin_t() { return sin(coord(2)); }

/// First-order velocity perturbation W = (1/c) ∂_φ, with V = U + ΩW + O(Ω²).
inline VectorField4 velocity_perturbation(const Chart& chart) {
    VectorField4 w;
    w.chart = chart.kind;
    w.components[3] = ScalarField(1.0 / chart.c);
    return w;
}

/// A = f dt  →  F = df ∧ dt;  A = f dφ  →  F = df ∧ dφ.
inline DifferentialForm d_of(const ScalarField& f, int along) {
    return wedge(exterior_derivative(DifferentialForm::scalar(ChartKind::spherical, f)), dx(ChartKind::spherical, along));
}

/// Order-0 and order-1 parts of F in each region for given constants.
struct OrderedFields {
    DifferentialForm F0_in{ChartKind::spherical, 2}, F1_in{ChartKind::spherical, 2};
    DifferentialForm F0_out{ChartKind::spherical, 2}, F1_out{ChartKind::spherical, 2};
};

inline OrderedFields fields_for(double E0, double K0, double K1, double P0, double P1) {
    const auto rr = r(), ct = cos_t(), st = sin_t();
    OrderedFields f;
    f.F0_in = d_of(ScalarField(K0) * rr * ct, 0);
    f.F1_in = d_of(ScalarField(K1) * rr * rr * rr * ct * st * st, 3);
    f.F0_out = d_of((ScalarField(E0) * rr + ScalarField(P0) / (rr * rr)) * ct, 0);
    f.F1_out = d_of(ScalarField(P1) * ct * st * st / (rr * rr), 3);
    return f;
}

/// Reference closed forms for the constants. The K1 and P1 found by matching
/// are smaller by the factor 3/(2μ_r + 3).
inline MatchingConstants reference_constants(const SphereScenario& sc) {
    const double e = sc.mat.eps_r, em = sc.mat.eps_mu(), c = sc.mat.c, E0 = sc.E0, a = sc.a;
    MatchingConstants mc;
    mc.scenario = "sphere";
    mc.K0 = 3.0 * E0 / (e + 2.0);
    mc.K1 = E0 * (em - 1.0) / (c * c * (2.0 + e));
    mc.P0 = -E0 * a * a * a * (e - 1.0) / (2.0 + e);
    mc.P1 = a * a * a * a * a * mc.K1;
    return mc;
}

/// Closed-form first-order interior and exterior fields relative to the
/// laboratory frame.
inline EMDecomposition reference_interior(const SphereScenario& sc) {
    const double c = sc.mat.c, e = sc.mat.eps_r, em = sc.mat.eps_mu(), E0 = sc.E0, W = sc.omega;
    const auto rr = r(), ct = cos_t(), st = sin_t();
    const ChartKind k = ChartKind::spherical;
    EMDecomposition out{DifferentialForm(k, 1), DifferentialForm(k, 1), DifferentialForm(k, 1), DifferentialForm(k, 1), lab_frame(spherical_chart(c))};
    const double ke = 3.0 * E0 / (c * (e + 2.0));
    out.e.add_to(MultiIndex{2}, ScalarField(ke) * st * rr);
    out.e.add_to(MultiIndex{1}, -(ScalarField(ke) * ct));
    const double kb = E0 * W * (em - 1.0) / (c * c * c * (e + 2.0));
    out.b.add_to(MultiIndex{1}, ScalarField(kb) * rr * (ScalarField(3.0) * ct * ct - ScalarField(1.0)));
    out.b.add_to(MultiIndex{2}, -(ScalarField(3.0 * kb) * rr * ct * st * rr));
    return out;
}

inline EMDecomposition reference_exterior(const SphereScenario& sc) {
    const double c = sc.mat.c, e = sc.mat.eps_r, em = sc.mat.eps_mu(), E0 = sc.E0, W = sc.omega, a = sc.a;
    const auto rr = r(), ct = cos_t(), st = sin_t();
    const ChartKind k = ChartKind::spherical;
    EMDecomposition out{DifferentialForm(k, 1), DifferentialForm(k, 1), DifferentialForm(k, 1), DifferentialForm(k, 1), lab_frame(spherical_chart(c))};
    const double kd = E0 * a * a * a * (1.0 - e) / (c * (e + 2.0));
    const auto r3 = rr * rr * rr;
    out.e.add_to(MultiIndex{2}, ScalarField(E0 / c) * rr * st + ScalarField(kd) * rr * st / r3);
    out.e.add_to(MultiIndex{1}, -(ScalarField(E0 / c) * ct) + ScalarField(2.0 * kd) * ct / r3);
    const double kb = E0 * W * a * a * a * a * a * (em - 1.0) / (c * c * c * (e + 2.0));
    const auto r4 = r3 * rr;
    out.b.add_to(MultiIndex{1}, ScalarField(kb) * (ScalarField(3.0) * ct * ct - ScalarField(1.0)) / r4);
    out.b.add_to(MultiIndex{2}, ScalarField(2.0 * kb) * ct * st * rr / r4);
    return out;
}

}  // namespace sphere

/// First-order sphere solution. Potentials
///   A_in  = K0 r cosθ dt + Ω K1 r³ cosθ sin²θ dφ,
///   A_out = (E0 r + P0/r²) cosθ dt + Ω P1 cosθ sin²θ / r² dφ,
/// with G_in expanded to first order in Ω about the laboratory frame. The
/// junction conditions at r = a are imposed separately at orders Ω⁰ and Ω¹.
inline std::pair<FieldSolution, MatchingConstants> solve_sphere(const SphereScenario& sc, std::size_t interface_samples = 12,
                                                               std::uint64_t seed = 11) {
    sc.validate();
    const Chart chart = spherical_chart(sc.mat.c);
    const auto U = lab_frame(chart);
    const auto W = sphere::velocity_perturbation(chart);
    const auto iface = radial_interface(ChartKind::spherical, sc.a, "a");
    const auto dphi = exterior_derivative(DifferentialForm::scalar(ChartKind::spherical, iface.phi));
    const auto samples = sample_radial_interface(ChartKind::spherical, sc.a, std::max<std::size_t>(interface_samples, 4), seed);
    const double e0 = sc.mat.eps0;

    // Order Ω⁰: (K0, P0). The O(Ω) unknowns are many orders of magnitude
    // smaller, so they are fitted in a second pass with K0 fixed.
    auto order0 = [&](std::span<const double> x) {
        const auto f = sphere::fields_for(sc.E0, x[0], 0.0, x[1], 0.0);
        const auto G0 = apply_constitutive_first_order(f.F0_in, f.F1_in, U, W, sc.mat, chart).first;
        return std::array<DifferentialForm, 2>{wedge(f.F0_out - f.F0_in, dphi),
                                               wedge(hodge_star(chart.metric, ScalarField(e0) * f.F0_out - G0), dphi)};
    };
    std::vector<MatchingCondition> conds0{
        {"F_jump_order0", [&](std::span<const double> x) { return order0(x)[0]; }, &chart.metric, samples},
        {"starG_jump_order0", [&](std::span<const double> x) { return order0(x)[1]; }, &chart.metric, samples}};
    const auto sys0 = assemble_matching_system(conds0, 2);
    const auto fit0 = solve_least_squares(sys0.A, sys0.b, 1e-9, "solve_sphere (order 0)");
    const double K0 = fit0.x(0);

    auto order1 = [&](std::span<const double> x) {
        const auto f = sphere::fields_for(0.0, K0, x[0], 0.0, x[1]);
        const auto G1 = apply_constitutive_first_order(f.F0_in, f.F1_in, U, W, sc.mat, chart).second;
        return std::array<DifferentialForm, 2>{wedge(f.F1_out - f.F1_in, dphi),
                                               wedge(hodge_star(chart.metric, ScalarField(e0) * f.F1_out - G1), dphi)};
    };
    std::vector<MatchingCondition> conds1{
        {"F_jump_order1", [&](std::span<const double> x) { return order1(x)[0]; }, &chart.metric, samples},
        {"starG_jump_order1", [&](std::span<const double> x) { return order1(x)[1]; }, &chart.metric, samples}};
    const auto sys1 = assemble_matching_system(conds1, 2);

    MatchingConstants mc;
    mc.scenario = "sphere";
    mc.K0 = K0;
    mc.P0 = fit0.x(1);
    mc.fit_residual = fit0.relative_residual;
    mc.equations = static_cast<long>(fit0.rows_used);
    const auto fit1 = solve_least_squares(sys1.A, sys1.b, 1e-9, "solve_sphere (order 1)");
    mc.K1 = fit1.x(0);
    mc.P1 = fit1.x(1);
    mc.fit_residual = std::max(mc.fit_residual, fit1.relative_residual);
    mc.equations += static_cast<long>(fit1.rows_used);

    const auto f = sphere::fields_for(sc.E0, mc.K0, mc.K1, mc.P0, mc.P1);
    const auto [G0, G1] = apply_constitutive_first_order(f.F0_in, f.F1_in, U, W, sc.mat, chart);
    const ScalarField w(sc.omega);
    FieldSolution sol;
    sol.chart = chart;
    sol.F_in = f.F0_in + w * f.F1_in;
    sol.G_in = G0 + w * G1;
    sol.F_out = f.F0_out + w * f.F1_out;
    sol.G_out = ScalarField(e0) * sol.F_out;
    sol.interfaces = {iface};
    sol.interface_radii = {sc.a};
    sol.regions = {{"interior", true, 1e-3 * sc.a, sc.a}, {"exterior", false, sc.a, 5.0 * sc.a}};
    sol.V = rotating_velocity(chart, sc.omega, chart.azimuth_index);
    sol.mat = sc.mat;
    sol.order = SolutionOrder::first_order;
    sol.omega = sc.omega;
    sol.length_scale = sc.a;
    return {sol, mc};
}

}  // namespace emforms
