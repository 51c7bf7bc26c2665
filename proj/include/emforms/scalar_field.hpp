#pragma once

// Scalar fields on a 4D chart with exact partial derivatives.
//
// A ScalarField is an immutable expression graph over the four chart
// coordinates. Values are computed by walking the graph with a scalar type T;
// partial derivatives are computed by walking it with forward-mode dual
// numbers Dual<T>. Derivative nodes nest duals, so second and third
// derivatives (needed by d∘d and by d⋆G of a potential-derived G) stay exact.

#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <type_traits>

#include "emforms/errors.hpp"

namespace emforms {

/// A point of the chart: coordinates (x⁰, x¹, x², x³) with x⁰ = t.
struct Event {
    std::array<double, 4> coords{};

    constexpr double operator[](std::size_t i) const { return coords[i]; }
    constexpr double& operator[](std::size_t i) { return coords[i]; }
    auto operator<=>(const Event&) const = default;
};

// ---------------------------------------------------------------------------
// Forward-mode dual numbers, one tangent direction, nestable.

template <class T>
struct Dual {
    T v{};
    T d{};
};

template <class T>
struct dual_depth : std::integral_constant<int, 0> {};
template <class T>
struct dual_depth<Dual<T>> : std::integral_constant<int, 1 + dual_depth<T>::value> {};

inline double primal(double x) { return x; }
template <class T>
double primal(const Dual<T>& x) {
    return primal(x.v);
}

template <class T>
T lift(double c) {
    if constexpr (std::is_same_v<T, double>) {
        return c;
    } else {
        using Inner = decltype(T{}.v);
        return T{lift<Inner>(c), lift<Inner>(0.0)};
    }
}

template <class T>
Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) {
    return {a.v + b.v, a.d + b.d};
}
template <class T>
Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) {
    return {a.v - b.v, a.d - b.d};
}
template <class T>
Dual<T> operator-(const Dual<T>& a) {
    return {-a.v, -a.d};
}
template <class T>
Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) {
    return {a.v * b.v, a.d * b.v + a.v * b.d};
}
template <class T>
Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
    T q = a.v / b.v;
    return {q, (a.d - q * b.d) / b.v};
}
template <class T>
Dual<T> sqrt(const Dual<T>& a) {
    using std::sqrt;
    T s = sqrt(a.v);
    return {s, a.d / (s + s)};
}
template <class T>
Dual<T> sin(const Dual<T>& a) {
    using std::cos;
    using std::sin;
    return {sin(a.v), a.d * cos(a.v)};
}
template <class T>
Dual<T> cos(const Dual<T>& a) {
    using std::cos;
    using std::sin;
    return {cos(a.v), -(a.d * sin(a.v))};
}
template <class T>
Dual<T> exp(const Dual<T>& a) {
    using std::exp;
    T e = exp(a.v);
    return {e, a.d * e};
}
template <class T>
Dual<T> log(const Dual<T>& a) {
    using std::log;
    return {log(a.v), a.d / a.v};
}

namespace detail {

/// Maximum nesting of derivative nodes inside one evaluation.
inline constexpr int kMaxDerivativeDepth = 4;

inline constexpr int kGuardMagnitude = 0;  // |check| >= floor, else DegenerateMetric
inline constexpr int kGuardPositive = 1;   // check > floor, else DomainError

enum class Op : std::uint8_t {
    constant,
    coordinate,
    add,
    sub,
    mul,
    div,
    neg,
    sqrt,
    sin,
    cos,
    exp,
    log,
    powi,
    partial,
    guard,
};

struct Node {
    Op op = Op::constant;
    double value = 0.0;  // constant value, or magnitude floor for guard
    int index = 0;       // coordinate index, derivative direction, exponent, or guard mode
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
    std::uint8_t deps = 0;  // bit k set when the node may depend on x^k
    std::string message;    // guard failure text
};

template <class T>
T powi(const T& x, int n) {
    if (n < 0) return lift<T>(1.0) / powi(x, -n);
    T result = lift<T>(1.0);
    T base = x;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return result;
}

template <class T>
T eval(const Node& n, const std::array<T, 4>& x) {
    using std::cos;
    using std::exp;
    using std::log;
    using std::sin;
    using std::sqrt;
    switch (n.op) {
        case Op::constant:
            return lift<T>(n.value);
        case Op::coordinate:
            return x[static_cast<std::size_t>(n.index)];
        case Op::add:
            return eval(*n.a, x) + eval(*n.b, x);
        case Op::sub:
            return eval(*n.a, x) - eval(*n.b, x);
        case Op::mul:
            return eval(*n.a, x) * eval(*n.b, x);
        case Op::div: {
            T den = eval(*n.b, x);
            if (primal(den) == 0.0) throw DomainError("scalar field: division by zero");
            return eval(*n.a, x) / den;
        }
        case Op::neg:
            return -eval(*n.a, x);
        case Op::sqrt: {
            T u = eval(*n.a, x);
            if (primal(u) < 0.0) throw DomainError("scalar field: sqrt of a negative value");
            return sqrt(u);
        }
        case Op::sin:
            return sin(eval(*n.a, x));
        case Op::cos:
            return cos(eval(*n.a, x));
        case Op::exp:
            return exp(eval(*n.a, x));
        case Op::log: {
            T u = eval(*n.a, x);
            if (primal(u) <= 0.0) throw DomainError("scalar field: log of a non-positive value");
            return log(u);
        }
        case Op::powi:
            return powi(eval(*n.a, x), n.index);
        case Op::partial:
            if constexpr (dual_depth<T>::value < kMaxDerivativeDepth) {
                std::array<Dual<T>, 4> y;
                for (std::size_t k = 0; k < 4; ++k) {
                    y[k] = Dual<T>{x[k], lift<T>(static_cast<int>(k) == n.index ? 1.0 : 0.0)};
                }
                return eval(*n.a, y).d;
            } else {
                throw Error("scalar field: derivative nesting exceeds supported depth");
            }
        case Op::guard: {
            std::array<double, 4> p{primal(x[0]), primal(x[1]), primal(x[2]), primal(x[3])};
            const double check = eval(*n.b, p);
            if (n.index == kGuardMagnitude && !(std::abs(check) >= n.value)) throw DegenerateMetric(n.message);
            if (n.index == kGuardPositive && !(check > n.value)) throw DomainError(n.message);
            return eval(*n.a, x);
        }
    }
    throw Error("scalar field: corrupt expression node");
}

}  // namespace detail

/// Real-valued function of an event, immutable and cheap to copy.
class ScalarField {
public:
    ScalarField() : ScalarField(0.0) {}
    ScalarField(double c) : node_(make_constant(c)) {}  // NOLINT: implicit by intent

    static ScalarField constant(double c) { return ScalarField(c); }

    static ScalarField coordinate(int i) {
        if (i < 0 || i > 3) throw Error("coordinate index out of range");
        auto n = std::make_shared<detail::Node>();
        n->op = detail::Op::coordinate;
        n->index = i;
        n->deps = static_cast<std::uint8_t>(1u << i);
        return ScalarField(std::move(n));
    }

    double operator()(const Event& e) const { return detail::eval(*node_, e.coords); }

    /// Evaluate with an arbitrary scalar type (double or nested Dual).
    template <class T>
    T eval(const std::array<T, 4>& x) const {
        return detail::eval(*node_, x);
    }

    /// All four partial derivatives at an event, computed with dual numbers.
    std::array<double, 4> partials(const Event& e) const {
        std::array<double, 4> out{};
        for (std::size_t k = 0; k < 4; ++k) {
            if (!(node_->deps & (1u << k))) continue;
            std::array<Dual<double>, 4> y;
            for (std::size_t j = 0; j < 4; ++j) y[j] = {e[j], j == k ? 1.0 : 0.0};
            out[k] = detail::eval(*node_, y).d;
        }
        return out;
    }

    /// The field ∂f/∂x^i, itself a ScalarField.
    ScalarField partial(int i) const {
        if (i < 0 || i > 3) throw Error("derivative index out of range");
        if (!(node_->deps & (1u << i))) return ScalarField(0.0);
        if (node_->op == detail::Op::coordinate) return ScalarField(1.0);
        auto n = std::make_shared<detail::Node>();
        n->op = detail::Op::partial;
        n->index = i;
        n->a = node_;
        n->deps = node_->deps;
        return ScalarField(std::move(n));
    }

    /// Wrap this field so that evaluation fails with DegenerateMetric whenever
    /// |check| drops below `floor` at the event.
    ScalarField guarded(const ScalarField& check, double floor, std::string message) const {
        return guard(check, floor, detail::kGuardMagnitude, std::move(message));
    }

    /// Wrap this field so that evaluation fails with DomainError unless
    /// check > 0 at the event.
    ScalarField requiring_positive(const ScalarField& check, std::string message) const {
        return guard(check, 0.0, detail::kGuardPositive, std::move(message));
    }

    /// True when the field is structurally the zero function.
    bool is_zero() const { return node_->op == detail::Op::constant && node_->value == 0.0; }
    std::optional<double> constant_value() const {
        if (node_->op == detail::Op::constant) return node_->value;
        return std::nullopt;
    }
    std::uint8_t dependencies() const { return node_->deps; }

    friend ScalarField operator+(const ScalarField& a, const ScalarField& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (auto ca = a.constant_value(), cb = b.constant_value(); ca && cb) return *ca + *cb;
        return binary(detail::Op::add, a, b);
    }
    friend ScalarField operator-(const ScalarField& a, const ScalarField& b) {
        if (b.is_zero()) return a;
        if (a.is_zero()) return -b;
        if (auto ca = a.constant_value(), cb = b.constant_value(); ca && cb) return *ca - *cb;
        return binary(detail::Op::sub, a, b);
    }
    friend ScalarField operator*(const ScalarField& a, const ScalarField& b) {
        if (a.is_zero() || b.is_zero()) return 0.0;
        auto ca = a.constant_value();
        auto cb = b.constant_value();
        if (ca && cb) return *ca * *cb;
        if (ca && *ca == 1.0) return b;
        if (cb && *cb == 1.0) return a;
        if (ca && *ca == -1.0) return -b;
        if (cb && *cb == -1.0) return -a;
        return binary(detail::Op::mul, a, b);
    }
    friend ScalarField operator/(const ScalarField& a, const ScalarField& b) {
        auto cb = b.constant_value();
        if (cb && *cb == 0.0) throw DomainError("scalar field: division by the zero constant");
        if (a.is_zero()) return 0.0;
        if (cb && *cb == 1.0) return a;
        if (auto ca = a.constant_value(); ca && cb) return *ca / *cb;
        return binary(detail::Op::div, a, b);
    }
    friend ScalarField operator-(const ScalarField& a) {
        if (auto ca = a.constant_value()) return -*ca;
        if (a.node_->op == detail::Op::neg) return ScalarField(a.node_->a);
        return unary(detail::Op::neg, a);
    }
    ScalarField& operator+=(const ScalarField& o) { return *this = *this + o; }
    ScalarField& operator-=(const ScalarField& o) { return *this = *this - o; }
    ScalarField& operator*=(const ScalarField& o) { return *this = *this * o; }

    friend ScalarField sqrt(const ScalarField& a) {
        if (auto ca = a.constant_value()) {
            if (*ca < 0.0) throw DomainError("scalar field: sqrt of a negative constant");
            return std::sqrt(*ca);
        }
        return unary(detail::Op::sqrt, a);
    }
    friend ScalarField sin(const ScalarField& a) {
        if (auto ca = a.constant_value()) return std::sin(*ca);
        return unary(detail::Op::sin, a);
    }
    friend ScalarField cos(const ScalarField& a) {
        if (auto ca = a.constant_value()) return std::cos(*ca);
        return unary(detail::Op::cos, a);
    }
    friend ScalarField exp(const ScalarField& a) {
        if (auto ca = a.constant_value()) return std::exp(*ca);
        return unary(detail::Op::exp, a);
    }
    friend ScalarField log(const ScalarField& a) {
        if (auto ca = a.constant_value()) {
            if (*ca <= 0.0) throw DomainError("scalar field: log of a non-positive constant");
            return std::log(*ca);
        }
        return unary(detail::Op::log, a);
    }
    friend ScalarField pow(const ScalarField& a, int n) {
        if (n == 0) return 1.0;
        if (n == 1) return a;
        if (a.is_zero()) {
            if (n < 0) throw DomainError("scalar field: negative power of zero");
            return 0.0;
        }
        if (auto ca = a.constant_value()) return detail::powi(*ca, n);
        auto node = std::make_shared<detail::Node>();
        node->op = detail::Op::powi;
        node->index = n;
        node->a = a.node_;
        node->deps = a.node_->deps;
        return ScalarField(std::move(node));
    }

private:
    ScalarField guard(const ScalarField& check, double floor, int mode, std::string message) const {
        auto n = std::make_shared<detail::Node>();
        n->op = detail::Op::guard;
        n->value = floor;
        n->index = mode;
        n->a = node_;
        n->b = check.node_;
        n->deps = node_->deps;
        n->message = std::move(message);
        return ScalarField(std::move(n));
    }

    explicit ScalarField(std::shared_ptr<const detail::Node> n) : node_(std::move(n)) {}

    static std::shared_ptr<const detail::Node> make_constant(double c) {
        auto n = std::make_shared<detail::Node>();
        n->op = detail::Op::constant;
        n->value = c;
        return n;
    }
    static ScalarField unary(detail::Op op, const ScalarField& a) {
        auto n = std::make_shared<detail::Node>();
        n->op = op;
        n->a = a.node_;
        n->deps = a.node_->deps;
        return ScalarField(std::move(n));
    }
    static ScalarField binary(detail::Op op, const ScalarField& a, const ScalarField& b) {
        auto n = std::make_shared<detail::Node>();
        n->op = op;
        n->a = a.node_;
        n->b = b.node_;
        n->deps = static_cast<std::uint8_t>(a.node_->deps | b.node_->deps);
        return ScalarField(std::move(n));
    }

    std::shared_ptr<const detail::Node> node_;
};

/// Shorthand for the coordinate functions t, x¹, x², x³.
inline ScalarField coord(int i) { return ScalarField::coordinate(i); }

}  // namespace emforms
