#pragma once

// Minkowski constitutive relation for moving isotropic media, observer-frame
// decompositions of F and G, polarisation and bound sources.

#include <cmath>
#include <span>
#include <string>
#include <utility>

#include "emforms/errors.hpp"
#include "emforms/form.hpp"
#include "emforms/spacetime.hpp"

namespace emforms {

/// SI vacuum constants. ε₀ is derived from μ₀ and c so that c²ε₀μ₀ = 1 holds
/// to rounding.
namespace si {
inline constexpr double c = 299792458.0;
inline constexpr double mu0 = 1.25663706212e-6;
inline constexpr double eps0 = 1.0 / (mu0 * c * c);
}  // namespace si

struct MaterialParams {
    double eps_r = 1.0;
    double mu_r = 1.0;
    double eps0 = si::eps0;
    double mu0 = si::mu0;
    double c = si::c;

    void validate() const {
        if (!(eps_r > 0.0) || !std::isfinite(eps_r)) throw Error("material: eps_r must be positive");
        if (!(mu_r > 0.0) || !std::isfinite(mu_r)) throw Error("material: mu_r must be positive");
        if (!(eps0 > 0.0) || !(mu0 > 0.0) || !(c > 0.0)) throw Error("material: vacuum constants must be positive");
        if (std::abs(c * c * eps0 * mu0 - 1.0) > 1e-12) throw Error("material: c² ε₀ μ₀ must equal 1");
    }
    double eps_mu() const { return eps_r * mu_r; }
};

enum class FieldKind { field, excitation };

/// Observer-frame 1-forms: (e, b) from F or (d, h) from G.
struct FramePair {
    DifferentialForm first;   // e or d
    DifferentialForm second;  // b or h
};

/// e, b, d, h relative to one frame U.
struct EMDecomposition {
    DifferentialForm e;
    DifferentialForm b;
    DifferentialForm d;
    DifferentialForm h;
    VectorField4 frame;
};

/// Minkowski relation G = ε₀[(ε_r − 1/μ_r)·(i_V F)∧Ṽ + (1/μ_r) F].
inline DifferentialForm apply_constitutive(const DifferentialForm& F, const VectorField4& V, const MaterialParams& mat, const Chart& chart) {
    if (F.grade() != 2) throw GradeError("apply_constitutive: F must be a 2-form");
    require_same_chart(F.chart(), V.chart, "apply_constitutive");
    const double mixing = mat.eps_r - 1.0 / mat.mu_r;
    DifferentialForm G = ScalarField(mat.eps0 / mat.mu_r) * F;
    if (mixing != 0.0) G += ScalarField(mat.eps0 * mixing) * wedge(interior_product(V, F), metric_dual(chart, V));
    return G;
}

/// Inverse Minkowski relation F = (1/ε₀)[(1/ε_r − μ_r)·(i_V G)∧Ṽ + μ_r G].
inline DifferentialForm invert_constitutive(const DifferentialForm& G, const VectorField4& V, const MaterialParams& mat, const Chart& chart) {
    if (G.grade() != 2) throw GradeError("invert_constitutive: G must be a 2-form");
    require_same_chart(G.chart(), V.chart, "invert_constitutive");
    const double mixing = 1.0 / mat.eps_r - mat.mu_r;
    DifferentialForm F = ScalarField(mat.mu_r / mat.eps0) * G;
    if (mixing != 0.0) F += ScalarField(mixing / mat.eps0) * wedge(interior_product(V, G), metric_dual(chart, V));
    return F;
}

/// First-order expansion of the constitutive map about a frame U.
///
/// With V = U + Ω W + O(Ω²) and F = F0 + Ω F1, returns (G0, G1) such that
/// G = G0 + Ω G1 + O(Ω²). W is the first-order velocity perturbation
/// (for rigid rotation, W = (1/c) ∂_φ).
inline std::pair<DifferentialForm, DifferentialForm> apply_constitutive_first_order(const DifferentialForm& F0, const DifferentialForm& F1,
                                                                                    const VectorField4& U, const VectorField4& W,
                                                                                    const MaterialParams& mat, const Chart& chart) {
    if (F0.grade() != 2 || F1.grade() != 2) throw GradeError("apply_constitutive_first_order: expected 2-forms");
    const double mixing = mat.eps_r - 1.0 / mat.mu_r;
    const auto Ut = metric_dual(chart, U);
    const auto Wt = metric_dual(chart, W);
    DifferentialForm G0 = ScalarField(mat.eps0 / mat.mu_r) * F0;
    DifferentialForm G1 = ScalarField(mat.eps0 / mat.mu_r) * F1;
    if (mixing != 0.0) {
        const ScalarField k = mat.eps0 * mixing;
        G0 += k * wedge(interior_product(U, F0), Ut);
        G1 += k * (wedge(interior_product(W, F0), Ut) + wedge(interior_product(U, F0), Wt) + wedge(interior_product(U, F1), Ut));
    }
    return {G0, G1};
}

/// Field: (e = i_U F, b = i_U⋆F / c). Excitation: (d = i_U G, h = c·i_U⋆G).
inline FramePair decompose(const DifferentialForm& form, const VectorField4& U, const Chart& chart, FieldKind kind) {
    if (form.grade() != 2) throw GradeError("decompose: expected a 2-form");
    require_same_chart(form.chart(), U.chart, "decompose");
    auto first = interior_product(U, form);
    auto star_part = interior_product(U, hodge_star(chart.metric, form));
    const double factor = kind == FieldKind::field ? 1.0 / chart.c : chart.c;
    return {first, ScalarField(factor) * star_part};
}

inline EMDecomposition decompose_all(const DifferentialForm& F, const DifferentialForm& G, const VectorField4& U, const Chart& chart) {
    auto eb = decompose(F, U, chart, FieldKind::field);
    auto dh = decompose(G, U, chart, FieldKind::excitation);
    return {eb.first, eb.second, dh.first, dh.second, U};
}

/// F = e∧Ũ − ⋆(c b∧Ũ). When `probes` is non-empty, the inputs are checked
/// for U-transversality there first.
inline DifferentialForm recompose(const DifferentialForm& e, const DifferentialForm& b, const VectorField4& U, const Chart& chart,
                                  std::span<const Event> probes = {}, double tolerance = 1e-12) {
    if (e.grade() != 1 || b.grade() != 1) throw GradeError("recompose: e and b must be 1-forms");
    require_same_chart(e.chart(), b.chart(), "recompose");
    require_same_chart(e.chart(), U.chart, "recompose");
    if (!probes.empty()) {
        const auto ie = interior_product(U, e);
        const auto ib = interior_product(U, b);
        for (const auto& p : probes) {
            const double se = max_abs(evaluate_orthonormal(e, chart.metric, p));
            const double sb = max_abs(evaluate_orthonormal(b, chart.metric, p));
            const double re = std::abs(ie.component(MultiIndex{})(p));
            const double rb = std::abs(ib.component(MultiIndex{})(p));
            if (re > tolerance * std::max(se, 1e-300) || rb > tolerance * std::max(sb, 1e-300))
                throw GeometryError("recompose: inputs are not transverse to the frame");
        }
    }
    const auto Ut = metric_dual(chart, U);
    return wedge(e, Ut) - hodge_star(chart.metric, wedge(ScalarField(chart.c) * b, Ut));
}

/// Π = G − ε₀F.
inline DifferentialForm polarization(const DifferentialForm& F, const DifferentialForm& G, double eps0) {
    if (F.grade() != 2 || G.grade() != 2) throw GradeError("polarization: expected 2-forms");
    require_same_chart(F.chart(), G.chart(), "polarization");
    return G - ScalarField(eps0) * F;
}

/// Bound current and charge of a polarisation 2-form relative to U.
struct BoundSources {
    DifferentialForm current;  // Ĵ^U, grade 2, i_U Ĵ^U = 0
    DifferentialForm charge;   // ρ̂^U, grade 3, i_U ρ̂^U = 0
    DifferentialForm total;    // ĵ = −d⋆Π, grade 3
};

/// ĵ = −d⋆Π split into Ĵ^U = i_U ĵ and the U-transverse part
/// ρ̂^U = ĵ + (i_U ĵ)∧Ũ, so that ĵ = ρ̂^U − Ĵ^U∧Ũ.
inline BoundSources bound_sources(const DifferentialForm& Pi, const VectorField4& U, const Chart& chart) {
    if (Pi.grade() != 2) throw GradeError("bound_sources: Π must be a 2-form");
    require_same_chart(Pi.chart(), U.chart, "bound_sources");
    const auto j = -exterior_derivative(hodge_star(chart.metric, Pi));
    const auto current = interior_product(U, j);
    const auto charge = j + wedge(current, metric_dual(chart, U));
    return {current, charge, j};
}

}  // namespace emforms
