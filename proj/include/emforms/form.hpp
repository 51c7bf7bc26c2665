#pragma once

// Exterior algebra over ScalarField coefficients on a 4D chart.

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "emforms/errors.hpp"
#include "emforms/multi_index.hpp"
#include "emforms/scalar_field.hpp"

namespace emforms {

enum class ChartKind { cartesian, cylindrical, spherical };

inline std::string chart_name(ChartKind k) {
    switch (k) {
        case ChartKind::cartesian:
            return "cartesian";
        case ChartKind::cylindrical:
            return "cylindrical";
        case ChartKind::spherical:
            return "spherical";
    }
    return "unknown";
}

inline ChartKind chart_from_name(const std::string& name) {
    if (name == "cartesian") return ChartKind::cartesian;
    if (name == "cylindrical") return ChartKind::cylindrical;
    if (name == "spherical") return ChartKind::spherical;
    throw ConfigError("unknown chart name '" + name + "'");
}

/// Valid coordinate domain: r > 0 on the curvilinear charts, and 0 < θ < π
/// on the spherical one.
inline bool in_domain(ChartKind k, const Event& e) {
    for (double x : e.coords)
        if (!std::isfinite(x)) return false;
    switch (k) {
        case ChartKind::cartesian:
            return true;
        case ChartKind::cylindrical:
            return e[1] > 0.0;
        case ChartKind::spherical:
            return e[1] > 0.0 && e[2] > 0.0 && e[2] < std::numbers::pi;
    }
    return false;
}

inline void require_same_chart(ChartKind a, ChartKind b, const char* what) {
    if (a != b) throw ChartMismatch(std::string(what) + ": operands on different charts (" + chart_name(a) + " vs " + chart_name(b) + ")");
}

/// Grade-p field Σ f_I dx^I. Absent multi-indices are zero; components that
/// are structurally the zero function are never stored.
class DifferentialForm {
public:
    DifferentialForm(ChartKind chart, int grade) : chart_(chart), grade_(grade) {
        if (grade < 0 || grade > 4) throw GradeError("form grade must lie in 0..4");
    }

    static DifferentialForm basis(ChartKind chart, MultiIndex idx, const ScalarField& coeff = 1.0) {
        DifferentialForm f(chart, idx.grade());
        f.add_to(idx, coeff);
        return f;
    }
    static DifferentialForm scalar(ChartKind chart, const ScalarField& f) { return basis(chart, MultiIndex{}, f); }

    ChartKind chart() const { return chart_; }
    int grade() const { return grade_; }
    const std::map<MultiIndex, ScalarField>& components() const { return comps_; }
    bool is_zero() const { return comps_.empty(); }

    ScalarField component(MultiIndex idx) const {
        auto it = comps_.find(idx);
        return it == comps_.end() ? ScalarField(0.0) : it->second;
    }

    /// Accumulate `coeff` into component `idx`.
    void add_to(MultiIndex idx, const ScalarField& coeff) {
        if (idx.grade() != grade_) throw GradeError("component multi-index " + idx.str() + " does not match form grade");
        if (coeff.is_zero()) return;
        auto it = comps_.find(idx);
        if (it == comps_.end()) {
            comps_.emplace(idx, coeff);
            return;
        }
        it->second = it->second + coeff;
        if (it->second.is_zero()) comps_.erase(it);
    }

    friend DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b) {
        a.require_compatible(b, "form addition");
        DifferentialForm out = a;
        for (const auto& [idx, f] : b.comps_) out.add_to(idx, f);
        return out;
    }
    friend DifferentialForm operator-(const DifferentialForm& a) {
        DifferentialForm out(a.chart_, a.grade_);
        for (const auto& [idx, f] : a.comps_) out.add_to(idx, -f);
        return out;
    }
    friend DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b) { return a + (-b); }
    friend DifferentialForm operator*(const ScalarField& s, const DifferentialForm& a) {
        DifferentialForm out(a.chart_, a.grade_);
        if (s.is_zero()) return out;
        for (const auto& [idx, f] : a.comps_) out.add_to(idx, s * f);
        return out;
    }
    friend DifferentialForm operator*(const DifferentialForm& a, const ScalarField& s) { return s * a; }
    DifferentialForm& operator+=(const DifferentialForm& o) { return *this = *this + o; }

private:
    void require_compatible(const DifferentialForm& b, const char* what) const {
        require_same_chart(chart_, b.chart_, what);
        if (grade_ != b.grade_) throw GradeError(std::string(what) + ": grade mismatch");
    }

    ChartKind chart_;
    int grade_;
    std::map<MultiIndex, ScalarField> comps_;
};

/// The coordinate 1-form dx^i.
inline DifferentialForm dx(ChartKind chart, int i) { return DifferentialForm::basis(chart, MultiIndex{i}); }

/// Contravariant vector field Σ v^a ∂/∂x^a.
struct VectorField4 {
    ChartKind chart = ChartKind::cartesian;
    std::array<ScalarField, 4> components{};

    std::array<double, 4> operator()(const Event& e) const {
        return {components[0](e), components[1](e), components[2](e), components[3](e)};
    }
};

/// Diagonal metric of signature (−,+,+,+) together with an orientation.
struct DiagonalMetric {
    ChartKind chart = ChartKind::cartesian;
    std::array<ScalarField, 4> diag{};
    /// √|det g|, supplied in closed form by the chart.
    ScalarField sqrt_abs_det;
    /// Coordinate order defining the positive volume form.
    std::array<int, 4> orientation{0, 1, 2, 3};
    /// |g_aa| below this makes the metric degenerate at an event.
    double degeneracy_floor = 1e-30;

    /// Throws DegenerateMetric when the signature or the floor fails at `e`.
    void check(const Event& e) const {
        if (!(diag[0](e) < 0.0)) throw DegenerateMetric("metric: g_00 must be negative");
        for (std::size_t i = 0; i < 4; ++i) {
            double gi = diag[i](e);
            if (std::abs(gi) < degeneracy_floor) throw DegenerateMetric("metric: |g_" + std::to_string(i) + std::to_string(i) + "| below floor");
            if (i > 0 && !(gi > 0.0)) throw DegenerateMetric("metric: spatial diagonal must be positive");
        }
    }

    /// g_aa wrapped so evaluation fails below the degeneracy floor.
    ScalarField guarded(int a) const {
        const auto& g = diag[static_cast<std::size_t>(a)];
        if (auto c = g.constant_value()) {
            if (std::abs(*c) < degeneracy_floor) throw DegenerateMetric("metric: constant diagonal entry below floor");
            return g;
        }
        return g.guarded(g, degeneracy_floor, "metric: |g_" + std::to_string(a) + std::to_string(a) + "| below floor");
    }
};

/// g(v, w) for a diagonal metric.
inline ScalarField metric_inner(const DiagonalMetric& g, const VectorField4& v, const VectorField4& w) {
    require_same_chart(v.chart, w.chart, "metric_inner");
    require_same_chart(g.chart, v.chart, "metric_inner");
    ScalarField s = 0.0;
    for (std::size_t a = 0; a < 4; ++a) s += g.diag[a] * v.components[a] * w.components[a];
    return s;
}

// ---------------------------------------------------------------------------
// Kernel operations.

/// a ∧ b. A product beyond grade 4 is the zero 4-form.
inline DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
    require_same_chart(a.chart(), b.chart(), "wedge");
    const int grade = a.grade() + b.grade();
    if (grade > 4) return DifferentialForm(a.chart(), 4);
    DifferentialForm out(a.chart(), grade);
    for (const auto& [ia, fa] : a.components()) {
        for (const auto& [ib, fb] : b.components()) {
            const int s = wedge_sign(ia, ib);
            if (s == 0) continue;
            auto idx = MultiIndex::from_bits(static_cast<std::uint8_t>(ia.bits() | ib.bits()));
            out.add_to(idx, s > 0 ? fa * fb : -(fa * fb));
        }
    }
    return out;
}

/// d a. The derivative of a 4-form is the zero 4-form.
inline DifferentialForm exterior_derivative(const DifferentialForm& a) {
    if (a.grade() == 4) return DifferentialForm(a.chart(), 4);
    DifferentialForm out(a.chart(), a.grade() + 1);
    for (const auto& [idx, f] : a.components()) {
        for (int k = 0; k < 4; ++k) {
            if (idx.contains(k)) continue;
            ScalarField df = f.partial(k);
            if (df.is_zero()) continue;
            const int s = wedge_sign(MultiIndex{k}, idx);
            auto target = MultiIndex::from_bits(static_cast<std::uint8_t>(idx.bits() | (1u << k)));
            out.add_to(target, s > 0 ? df : -df);
        }
    }
    return out;
}

/// i_v a. The contraction of a 0-form is the zero 0-form.
inline DifferentialForm interior_product(const VectorField4& v, const DifferentialForm& a) {
    require_same_chart(v.chart, a.chart(), "interior_product");
    if (a.grade() == 0) return DifferentialForm(a.chart(), 0);
    DifferentialForm out(a.chart(), a.grade() - 1);
    for (const auto& [idx, f] : a.components()) {
        int position = 0;
        for (int k : idx.indices()) {
            const auto& vk = v.components[static_cast<std::size_t>(k)];
            if (!vk.is_zero()) {
                ScalarField term = vk * f;
                out.add_to(idx.without(k), (position % 2) ? -term : term);
            }
            ++position;
        }
    }
    return out;
}

/// Hodge dual for a diagonal metric:
///   ⋆dx^I = sgn(I,J) · √|det g| / (g_{i₁i₁}⋯g_{i_pi_p}) · dx^J,
/// with J the increasing complement of I and sgn(I,J) the sign of the
/// permutation (I,J) relative to the metric's orientation order.
inline DifferentialForm hodge_star(const DiagonalMetric& g, const DifferentialForm& a) {
    require_same_chart(g.chart, a.chart(), "hodge_star");
    DifferentialForm out(a.chart(), 4 - a.grade());
    for (const auto& [idx, f] : a.components()) {
        MultiIndex comp = idx.complement();
        std::array<int, 4> seq{};
        std::size_t n = 0;
        for (int i : idx.indices()) seq[n++] = i;
        for (int j : comp.indices()) seq[n++] = j;
        const int sign = permutation_sign(seq, g.orientation);
        ScalarField denom = 1.0;
        for (int i : idx.indices()) denom *= g.guarded(i);
        ScalarField coeff = f * g.sqrt_abs_det / denom;
        out.add_to(comp, sign > 0 ? coeff : -coeff);
    }
    return out;
}

/// Σ c_k a_k over forms of one grade on one chart.
inline DifferentialForm linear_combine(std::span<const double> coeffs, std::span<const DifferentialForm> forms) {
    if (coeffs.size() != forms.size()) throw GradeError("linear_combine: coefficient/form count mismatch");
    if (forms.empty()) throw GradeError("linear_combine: no forms given");
    DifferentialForm out(forms[0].chart(), forms[0].grade());
    for (std::size_t k = 0; k < forms.size(); ++k) {
        require_same_chart(out.chart(), forms[k].chart(), "linear_combine");
        if (forms[k].grade() != out.grade()) throw GradeError("linear_combine: grade mismatch");
        if (coeffs[k] == 0.0) continue;
        out += ScalarField(coeffs[k]) * forms[k];
    }
    return out;
}

/// Numeric components at an event, every multi-index of the form's grade
/// present (zero where absent).
inline std::map<MultiIndex, double> evaluate(const DifferentialForm& a, const Event& e) {
    if (!in_domain(a.chart(), e)) throw DomainError("evaluate: event outside the " + chart_name(a.chart()) + " chart domain");
    std::map<MultiIndex, double> out;
    for (auto idx : multi_indices_of_grade(a.grade())) out[idx] = 0.0;
    for (const auto& [idx, f] : a.components()) out[idx] = f(e);
    return out;
}

/// Components in the orthonormal coframe {√|g_aa| dx^a} at an event.
inline std::map<MultiIndex, double> evaluate_orthonormal(const DifferentialForm& a, const DiagonalMetric& g, const Event& e) {
    require_same_chart(g.chart, a.chart(), "evaluate_orthonormal");
    auto vals = evaluate(a, e);
    std::array<double, 4> scale{};
    for (std::size_t i = 0; i < 4; ++i) scale[i] = std::sqrt(std::abs(g.diag[i](e)));
    for (auto& [idx, v] : vals) {
        for (int i : idx.indices()) v /= scale[static_cast<std::size_t>(i)];
    }
    return vals;
}

/// Largest absolute component.
inline double max_abs(const std::map<MultiIndex, double>& vals) {
    double m = 0.0;
    for (const auto& [idx, v] : vals) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace emforms
