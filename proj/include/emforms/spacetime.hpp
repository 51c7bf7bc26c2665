#pragma once

// Flat Minkowski spacetime in Cartesian, cylindrical and spherical charts,
// observer frames, rigidly rotating medium velocities and index lowering.

#include <array>
#include <cmath>
#include <string>

#include "emforms/errors.hpp"
#include "emforms/form.hpp"

namespace emforms {

struct Chart {
    ChartKind kind = ChartKind::cartesian;
    std::array<std::string, 4> coordinate_names{};
    DiagonalMetric metric;
    double c = 1.0;
    /// Index of the azimuthal coordinate on curvilinear charts, −1 otherwise.
    int azimuth_index = -1;

    std::string name() const { return chart_name(kind); }
    bool contains(const Event& e) const { return in_domain(kind, e); }
};

namespace detail {
inline void require_positive_c(double c) {
    if (!(c > 0.0) || !std::isfinite(c)) throw Error("speed of light must be positive and finite");
}
}  // namespace detail

/// g = −c² dt² + dx² + dy² + dz².
inline Chart cartesian_chart(double c) {
    detail::require_positive_c(c);
    Chart ch;
    ch.kind = ChartKind::cartesian;
    ch.coordinate_names = {"t", "x", "y", "z"};
    ch.c = c;
    ch.metric.chart = ch.kind;
    ch.metric.diag = {ScalarField(-c * c), 1.0, 1.0, 1.0};
    ch.metric.sqrt_abs_det = c;
    return ch;
}

/// g = −c² dt² + dr² + r² dθ² + dz², coordinates (t, r, θ, z).
inline Chart cylindrical_chart(double c) {
    detail::require_positive_c(c);
    const auto r = coord(1);
    Chart ch;
    ch.kind = ChartKind::cylindrical;
    ch.coordinate_names = {"t", "r", "theta", "z"};
    ch.c = c;
    ch.azimuth_index = 2;
    ch.metric.chart = ch.kind;
    ch.metric.diag = {ScalarField(-c * c), 1.0, r * r, 1.0};
    ch.metric.sqrt_abs_det = c * r;
    return ch;
}

/// g = −c² dt² + dr² + r² dθ² + r² sin²θ dφ², coordinates (t, r, θ, φ).
inline Chart spherical_chart(double c) {
    detail::require_positive_c(c);
    const auto r = coord(1);
    const auto s = sin(coord(2));
    Chart ch;
    ch.kind = ChartKind::spherical;
    ch.coordinate_names = {"t", "r", "theta", "phi"};
    ch.c = c;
    ch.azimuth_index = 3;
    ch.metric.chart = ch.kind;
    ch.metric.diag = {ScalarField(-c * c), 1.0, r * r, r * r * s * s};
    ch.metric.sqrt_abs_det = c * r * r * s;
    return ch;
}

inline Chart chart_for(ChartKind kind, double c) {
    switch (kind) {
        case ChartKind::cartesian:
            return cartesian_chart(c);
        case ChartKind::cylindrical:
            return cylindrical_chart(c);
        case ChartKind::spherical:
            return spherical_chart(c);
    }
    throw Error("unknown chart kind");
}

/// The laboratory observer U = (1/c) ∂_t.
inline VectorField4 lab_frame(const Chart& chart) {
    VectorField4 u;
    u.chart = chart.kind;
    u.components = {ScalarField(1.0 / chart.c), 0.0, 0.0, 0.0};
    return u;
}

/// Rigid rotation V = (∂_t + Ω ∂_φ) / √(c² − g_φφ Ω²) about the chart's
/// polar axis. Evaluation at or beyond the light cylinder raises DomainError.
inline VectorField4 rotating_velocity(const Chart& chart, double omega, int azimuth_index) {
    if (chart.azimuth_index < 0) throw GeometryError("rotating_velocity: chart " + chart.name() + " has no azimuthal coordinate");
    if (azimuth_index != chart.azimuth_index)
        throw GeometryError("rotating_velocity: azimuth index " + std::to_string(azimuth_index) + " is not the azimuth of the " + chart.name() + " chart");
    if (!std::isfinite(omega)) throw Error("rotating_velocity: angular speed must be finite");
    const double c = chart.c;
    const auto& g_az = chart.metric.diag[static_cast<std::size_t>(azimuth_index)];
    const ScalarField margin = ScalarField(c * c) - g_az * ScalarField(omega * omega);
    ScalarField inv_norm = 1.0 / sqrt(margin);
    if (omega != 0.0) inv_norm = inv_norm.requiring_positive(margin, "rotating_velocity: event at or beyond the light cylinder");
    VectorField4 v;
    v.chart = chart.kind;
    v.components[0] = inv_norm;
    v.components[static_cast<std::size_t>(azimuth_index)] = ScalarField(omega) * inv_norm;
    return v;
}

/// Ṽ = g(V, ·), the metric dual 1-form.
inline DifferentialForm metric_dual(const Chart& chart, const VectorField4& v) {
    require_same_chart(chart.kind, v.chart, "metric_dual");
    DifferentialForm out(chart.kind, 1);
    for (int a = 0; a < 4; ++a) {
        out.add_to(MultiIndex{a}, chart.metric.diag[static_cast<std::size_t>(a)] * v.components[static_cast<std::size_t>(a)]);
    }
    return out;
}

/// Inverse of metric_dual: raise the index of a 1-form.
inline VectorField4 raise_index(const Chart& chart, const DifferentialForm& w) {
    require_same_chart(chart.kind, w.chart(), "raise_index");
    if (w.grade() != 1) throw GradeError("raise_index: expected a 1-form");
    VectorField4 v;
    v.chart = chart.kind;
    for (int a = 0; a < 4; ++a) {
        v.components[static_cast<std::size_t>(a)] = w.component(MultiIndex{a}) / chart.metric.diag[static_cast<std::size_t>(a)];
    }
    return v;
}

/// g(v, v) + 1 at an event; zero for a unit timelike field.
inline double unit_timelike_defect(const Chart& chart, const VectorField4& v, const Event& e) {
    return metric_inner(chart.metric, v, v)(e) + 1.0;
}

}  // namespace emforms
