#pragma once

// Junction conditions on a moving interface history Φ = 0:
//   [F]∧dΦ = 0  and  [⋆G]∧dΦ = 0,
// evaluated at sample events, plus the equivalent Gibbs 3-vector relations
// in the rest space of an observer U as an independent cross-check.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "emforms/errors.hpp"
#include "emforms/form.hpp"
#include "emforms/moving_media.hpp"
#include "emforms/random.hpp"
#include "emforms/spacetime.hpp"

namespace emforms {

/// Hypersurface Φ = 0. The medium ("inside") is the Φ < 0 side; jumps are
/// always taken as outside minus inside.
struct Interface {
    std::string name;
    ScalarField phi;
    ChartKind chart = ChartKind::cartesian;
};

/// Static surface r = R on a curvilinear chart.
inline Interface radial_interface(ChartKind chart, double radius, std::string name) {
    return {std::move(name), coord(1) - ScalarField(radius), chart};
}

struct ConditionResidual {
    std::string name;
    std::vector<double> abs;
    std::vector<double> rel;
    double max_abs = 0.0;
    double max_rel = 0.0;
};

struct JumpReport {
    std::string interface;
    std::vector<Event> samples;
    std::vector<ConditionResidual> conditions;
    double max_abs = 0.0;
    double max_rel = 0.0;

    const ConditionResidual& condition(const std::string& name) const {
        for (const auto& c : conditions)
            if (c.name == name) return c;
        throw Error("jump report has no condition '" + name + "'");
    }
};

namespace detail {

inline constexpr double kInterfaceTolerance = 1e-12;

inline std::vector<Event> canonical_samples(std::span<const Event> samples) {
    std::vector<Event> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    return sorted;
}

inline void require_on_interface(const Interface& iface, const Event& e) {
    const double phi = iface.phi(e);
    if (!(std::abs(phi) <= kInterfaceTolerance))
        throw GeometryError("sample event is off interface '" + iface.name + "' (|Phi| = " + std::to_string(std::abs(phi)) + ")");
}

inline void finish(JumpReport& report) {
    report.max_abs = 0.0;
    report.max_rel = 0.0;
    for (auto& c : report.conditions) {
        c.max_abs = c.abs.empty() ? 0.0 : *std::max_element(c.abs.begin(), c.abs.end());
        c.max_rel = c.rel.empty() ? 0.0 : *std::max_element(c.rel.begin(), c.rel.end());
        report.max_abs = std::max(report.max_abs, c.max_abs);
        report.max_rel = std::max(report.max_rel, c.max_rel);
    }
}

inline double norm(const std::map<MultiIndex, double>& vals) {
    double s = 0.0;
    for (const auto& [idx, v] : vals) s += v * v;
    return std::sqrt(s);
}

inline double safe_scale(double s) { return s > 0.0 ? s : 1.0; }

}  // namespace detail

/// Covariant residuals [F]∧dΦ and [⋆G]∧dΦ at each sample.
///
/// Absolute residuals are the largest orthonormal-coframe component of the
/// 3-form. Relative residuals divide by |dΦ| and by the field scale on the
/// two sides at that event (largest component of F, resp. ⋆G).
inline JumpReport covariant_jump_residual(const DifferentialForm& F_in, const DifferentialForm& F_out, const DifferentialForm& G_in,
                                          const DifferentialForm& G_out, const Interface& iface, const Chart& chart,
                                          std::span<const Event> samples) {
    for (const auto* f : {&F_in, &F_out, &G_in, &G_out}) {
        if (f->grade() != 2) throw GradeError("covariant_jump_residual: fields must be 2-forms");
        require_same_chart(f->chart(), chart.kind, "covariant_jump_residual");
    }
    require_same_chart(iface.chart, chart.kind, "covariant_jump_residual");

    const auto dphi = exterior_derivative(DifferentialForm::scalar(chart.kind, iface.phi));
    const auto star_G_in = hodge_star(chart.metric, G_in);
    const auto star_G_out = hodge_star(chart.metric, G_out);
    const auto jump_F = wedge(F_out - F_in, dphi);
    const auto jump_G = wedge(star_G_out - star_G_in, dphi);

    JumpReport report;
    report.interface = iface.name;
    report.samples = detail::canonical_samples(samples);
    ConditionResidual cf{"F_jump", {}, {}};
    ConditionResidual cg{"starG_jump", {}, {}};
    for (const auto& e : report.samples) {
        detail::require_on_interface(iface, e);
        const double dphi_norm = detail::norm(evaluate_orthonormal(dphi, chart.metric, e));
        if (!(dphi_norm > 0.0)) throw GeometryError("interface '" + iface.name + "' has degenerate dPhi at a sample");
        const double af = max_abs(evaluate_orthonormal(jump_F, chart.metric, e));
        const double ag = max_abs(evaluate_orthonormal(jump_G, chart.metric, e));
        const double sf = std::max(max_abs(evaluate_orthonormal(F_out, chart.metric, e)), max_abs(evaluate_orthonormal(F_in, chart.metric, e)));
        const double sg = std::max(max_abs(evaluate_orthonormal(star_G_out, chart.metric, e)), max_abs(evaluate_orthonormal(star_G_in, chart.metric, e)));
        cf.abs.push_back(af);
        cf.rel.push_back(af / (dphi_norm * detail::safe_scale(sf)));
        cg.abs.push_back(ag);
        cg.rel.push_back(ag / (dphi_norm * detail::safe_scale(sg)));
    }
    report.conditions = {std::move(cf), std::move(cg)};
    detail::finish(report);
    return report;
}

/// Orthonormal basis {E₁, E₂, E₃} of the rest space of U at an event,
/// obtained by Gram–Schmidt on the projected coordinate vectors ∂₁, ∂₂, ∂₃.
/// Columns are contravariant coordinate components.
struct SpatialFrame {
    std::array<std::array<double, 4>, 3> axes{};
    int handedness = 1;

    std::array<double, 3> components(const std::array<double, 4>& covector) const {
        std::array<double, 3> out{};
        for (std::size_t k = 0; k < 3; ++k)
            for (std::size_t a = 0; a < 4; ++a) out[k] += covector[a] * axes[k][a];
        return out;
    }
};

inline SpatialFrame spatial_frame(const VectorField4& U, const Chart& chart, const Event& e) {
    std::array<double, 4> g{};
    for (std::size_t a = 0; a < 4; ++a) g[a] = chart.metric.diag[a](e);
    const auto u = U(e);
    auto inner = [&](const std::array<double, 4>& x, const std::array<double, 4>& y) {
        double s = 0.0;
        for (std::size_t a = 0; a < 4; ++a) s += g[a] * x[a] * y[a];
        return s;
    };
    if (!(u[0] > 0.0) || std::abs(inner(u, u) + 1.0) > 1e-9) throw GeometryError("spatial_frame: U must be unit timelike and future pointing");
    SpatialFrame f;
    for (std::size_t k = 0; k < 3; ++k) {
        std::array<double, 4> x{};
        x[k + 1] = 1.0;
        const double gu = inner(u, x);
        for (std::size_t a = 0; a < 4; ++a) x[a] += gu * u[a];
        for (std::size_t j = 0; j < k; ++j) {
            const double p = inner(f.axes[j], x);
            for (std::size_t a = 0; a < 4; ++a) x[a] -= p * f.axes[j][a];
        }
        const double n = std::sqrt(inner(x, x));
        if (!(n > 0.0)) throw DegenerateMetric("spatial_frame: degenerate spatial metric");
        for (std::size_t a = 0; a < 4; ++a) x[a] /= n;
        f.axes[k] = x;
    }
    f.handedness = permutation_sign(chart.metric.orientation, {0, 1, 2, 3});
    return f;
}

struct NormalVelocity {
    /// Unit spatial normal as a 1-form (coordinate components), outward.
    std::array<double, 4> normal{};
    /// The same normal in the orthonormal spatial frame of U.
    std::array<double, 3> normal_frame{};
    /// Normal speed of the interface relative to U (m/s), outward positive.
    double v_n = 0.0;
};

/// Unit normal and normal velocity of Φ = 0 as seen by U at an event.
inline NormalVelocity interface_normal_velocity(const Interface& iface, const VectorField4& U, const Chart& chart, const Event& e) {
    require_same_chart(iface.chart, chart.kind, "interface_normal_velocity");
    require_same_chart(U.chart, chart.kind, "interface_normal_velocity");
    const auto dphi = iface.phi.partials(e);
    const auto u = U(e);
    double iu = 0.0;
    for (std::size_t a = 0; a < 4; ++a) iu += u[a] * dphi[a];
    std::array<double, 4> n{};
    for (std::size_t a = 0; a < 4; ++a) n[a] = dphi[a] + iu * chart.metric.diag[a](e) * u[a];
    const auto frame = spatial_frame(U, chart, e);
    auto nk = frame.components(n);
    const double len = std::sqrt(nk[0] * nk[0] + nk[1] * nk[1] + nk[2] * nk[2]);
    double scale = 0.0;
    for (double x : dphi) scale = std::max(scale, std::abs(x));
    if (!(len > 1e-14 * scale) || !(len > 0.0)) throw GeometryError("interface_normal_velocity: dPhi has no spatial part (purely temporal hypersurface)");
    NormalVelocity out;
    for (std::size_t a = 0; a < 4; ++a) out.normal[a] = n[a] / len;
    for (std::size_t k = 0; k < 3; ++k) out.normal_frame[k] = nk[k] / len;
    out.v_n = -iu * chart.c / len;
    return out;
}

namespace detail {

inline std::array<double, 3> frame_vector(const DifferentialForm& w, const SpatialFrame& f, const Event& e) {
    std::array<double, 4> cov{};
    for (const auto& [idx, comp] : w.components()) cov[static_cast<std::size_t>(idx.indices().front())] = comp(e);
    return f.components(cov);
}

inline std::array<double, 3> sub(const std::array<double, 3>& a, const std::array<double, 3>& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline double dot(const std::array<double, 3>& a, const std::array<double, 3>& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double length(const std::array<double, 3>& a) { return std::sqrt(dot(a, a)); }
inline std::array<double, 3> cross(const std::array<double, 3>& a, const std::array<double, 3>& b, int handedness) {
    const double s = handedness;
    return {s * (a[1] * b[2] - a[2] * b[1]), s * (a[2] * b[0] - a[0] * b[2]), s * (a[0] * b[1] - a[1] * b[0])};
}

}  // namespace detail

/// Gibbs-form jump relations in the rest space of U, for the 1-forms of the
/// library's decomposition (e = i_U F, b = i_U⋆F/c, d = i_U G, h = c·i_U⋆G):
///
///   N·[d] = 0,   v_N [d] − N×[h] = 0,   N·[b] = 0,   v_N [b] + N×[e] = 0.
///
/// The cross-product signs are those induced by [F]∧dΦ = 0 and [⋆G]∧dΦ = 0
/// for these sign conventions (e and d point opposite to the textbook E and
/// D, which turns the textbook relations into the ones above).
inline JumpReport gibbs_jump_residual(const EMDecomposition& in, const EMDecomposition& out, const Interface& iface, const VectorField4& U,
                                      const Chart& chart, std::span<const Event> samples) {
    for (const auto* w : {&in.e, &in.b, &in.d, &in.h, &out.e, &out.b, &out.d, &out.h}) {
        if (w->grade() != 1) throw GradeError("gibbs_jump_residual: decomposition fields must be 1-forms");
        require_same_chart(w->chart(), chart.kind, "gibbs_jump_residual");
    }
    JumpReport report;
    report.interface = iface.name;
    report.samples = detail::canonical_samples(samples);
    ConditionResidual nd{"normal_d", {}, {}};
    ConditionResidual th{"tangential_h", {}, {}};
    ConditionResidual nb{"normal_b", {}, {}};
    ConditionResidual te{"tangential_e", {}, {}};
    const double c = chart.c;
    for (const auto& ev : report.samples) {
        detail::require_on_interface(iface, ev);
        const auto nv = interface_normal_velocity(iface, U, chart, ev);
        const auto frame = spatial_frame(U, chart, ev);
        const auto& N = nv.normal_frame;
        const auto e_in = detail::frame_vector(in.e, frame, ev), e_out = detail::frame_vector(out.e, frame, ev);
        const auto b_in = detail::frame_vector(in.b, frame, ev), b_out = detail::frame_vector(out.b, frame, ev);
        const auto d_in = detail::frame_vector(in.d, frame, ev), d_out = detail::frame_vector(out.d, frame, ev);
        const auto h_in = detail::frame_vector(in.h, frame, ev), h_out = detail::frame_vector(out.h, frame, ev);
        const auto je = detail::sub(e_out, e_in), jb = detail::sub(b_out, b_in);
        const auto jd = detail::sub(d_out, d_in), jh = detail::sub(h_out, h_in);

        const double scale_dh = detail::safe_scale(std::max({c * detail::length(d_in), c * detail::length(d_out), detail::length(h_in), detail::length(h_out)}));
        const double scale_eb = detail::safe_scale(std::max({detail::length(e_in), detail::length(e_out), c * detail::length(b_in), c * detail::length(b_out)}));

        const auto nxh = detail::cross(N, jh, frame.handedness);
        const auto nxe = detail::cross(N, je, frame.handedness);
        std::array<double, 3> t_h{}, t_e{};
        for (std::size_t k = 0; k < 3; ++k) {
            t_h[k] = nv.v_n * jd[k] - nxh[k];
            t_e[k] = nv.v_n * jb[k] + nxe[k];
        }
        const double a_nd = std::abs(detail::dot(N, jd));
        const double a_th = detail::length(t_h);
        const double a_nb = std::abs(detail::dot(N, jb));
        const double a_te = detail::length(t_e);
        nd.abs.push_back(a_nd);
        nd.rel.push_back(c * a_nd / scale_dh);
        th.abs.push_back(a_th);
        th.rel.push_back(a_th / scale_dh);
        nb.abs.push_back(a_nb);
        nb.rel.push_back(c * a_nb / scale_eb);
        te.abs.push_back(a_te);
        te.rel.push_back(a_te / scale_eb);
    }
    report.conditions = {std::move(nd), std::move(th), std::move(nb), std::move(te)};
    detail::finish(report);
    return report;
}

/// Deterministic samples on r = R: half on a regular angular/axial grid,
/// half pseudorandom from `seed`. Cylinder events are (t, R, θ, z), sphere
/// events (t, R, θ, φ) with θ kept away from the poles.
inline std::vector<Event> sample_radial_interface(ChartKind chart, double radius, std::size_t count, std::uint64_t seed) {
    if (chart == ChartKind::cartesian) throw GeometryError("sample_radial_interface: needs a curvilinear chart");
    if (count == 0) return {};
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const std::size_t n_grid = (count + 1) / 2;
    std::vector<Event> out;
    out.reserve(count);
    for (std::size_t k = 0; k < n_grid; ++k) {
        const double frac = (static_cast<double>(k) + 0.5) / static_cast<double>(n_grid);
        if (chart == ChartKind::cylindrical) {
            const double z = (static_cast<double>(k % 4) - 1.5) * radius;
            out.push_back(Event{{0.0, radius, two_pi * frac, z}});
        } else {
            const double theta = std::numbers::pi * frac;
            const double phi = std::fmod(static_cast<double>(k) * 2.399963229728653, two_pi);
            out.push_back(Event{{0.0, radius, theta, phi}});
        }
    }
    DeterministicRng rng(seed);
    while (out.size() < count) {
        const double t = rng.uniform(0.0, 1e-6);
        if (chart == ChartKind::cylindrical) {
            const double theta = rng.uniform(0.0, two_pi);
            const double z = rng.uniform(-radius, radius);
            out.push_back(Event{{t, radius, theta, z}});
        } else {
            const double theta = rng.uniform(0.01, std::numbers::pi - 0.01);
            const double phi = rng.uniform(0.0, two_pi);
            out.push_back(Event{{t, radius, theta, phi}});
        }
    }
    return out;
}

}  // namespace emforms
