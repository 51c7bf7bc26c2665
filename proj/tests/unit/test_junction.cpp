#include <catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace emforms;

namespace {

CylinderScenario ww_cylinder() {
    CylinderScenario sc;
    sc.r1 = 0.02;
    sc.r2 = 0.04;
    sc.omega = 100.0;
    sc.B0 = 1.0;
    sc.mat.eps_r = 6.0;
    return sc;
}

// A moving plane x = w t in a c = 1.7 chart with jumps that satisfy the
// covariant conditions by construction: [F] = dΦ∧α, [⋆G] ∝ dΦ∧β.
struct MovingPlane {
    Chart chart = cartesian_chart(1.7);
    Interface iface;
    DifferentialForm F_in{ChartKind::cartesian, 2}, F_out{ChartKind::cartesian, 2}, G_in{ChartKind::cartesian, 2}, G_out{ChartKind::cartesian, 2};
    double w = 0.0;
};

MovingPlane moving_plane(DeterministicRng& rng, double w) {
    MovingPlane p;
    p.w = w;
    const auto k = ChartKind::cartesian;
    p.iface = Interface{"plane", coord(1) - ScalarField(w) * coord(0), k};
    const auto dphi = exterior_derivative(DifferentialForm::scalar(k, p.iface.phi));
    p.F_in = oracle::random_constant_form(rng, k, 2);
    p.G_in = oracle::random_constant_form(rng, k, 2);
    p.F_out = p.F_in + wedge(dphi, oracle::random_constant_form(rng, k, 1));
    p.G_out = p.G_in - hodge_star(p.chart.metric, wedge(dphi, oracle::random_constant_form(rng, k, 1)));
    return p;
}

std::vector<Event> plane_samples(DeterministicRng& rng, double w, std::size_t n) {
    std::vector<Event> out;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = rng.uniform(-1, 1);
        out.push_back(Event{{t, w * t, rng.uniform(-1, 1), rng.uniform(-1, 1)}});
    }
    return out;
}

std::array<double, 3> spatial(const DifferentialForm& w, const Event& e) {
    const auto v = evaluate(w, e);
    std::array<double, 3> out{};
    for (int i = 1; i <= 3; ++i) {
        auto it = v.find(MultiIndex{i});
        out[static_cast<std::size_t>(i - 1)] = it == v.end() ? 0.0 : it->second;
    }
    return out;
}

std::array<double, 3> cross(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace

TEST_CASE("identical fields have zero jump") {
    DeterministicRng rng(31);
    const auto ch = cylindrical_chart(si::c);
    const auto F = oracle::random_form(rng, ch.kind, 2);
    const auto G = oracle::random_form(rng, ch.kind, 2);
    const auto iface = radial_interface(ch.kind, 0.7, "r");
    const auto samples = sample_radial_interface(ch.kind, 0.7, 64, 3);
    const auto rep = covariant_jump_residual(F, F, G, G, iface, ch, samples);
    CHECK(rep.max_abs == 0.0);
    CHECK(rep.max_rel == 0.0);
    CHECK(rep.samples.size() == 64);
    const auto dec = decompose_all(F, G, lab_frame(ch), ch);
    const auto gib = gibbs_jump_residual(dec, dec, iface, lab_frame(ch), ch, samples);
    CHECK(gib.max_abs == 0.0);
    CHECK(gib.conditions.size() == 4);
}

TEST_CASE("samples must lie on the interface") {
    const auto ch = cylindrical_chart(1.0);
    const auto F = wedge(dx(ch.kind, 1), dx(ch.kind, 2));
    const auto iface = radial_interface(ch.kind, 0.5, "r");
    std::vector<Event> off{Event{{0, 0.5 + 1e-9, 0, 0}}};
    CHECK_THROWS_AS(covariant_jump_residual(F, F, F, F, iface, ch, off), GeometryError);
    std::vector<Event> on{Event{{0, 0.5, 0, 0}}};
    CHECK_NOTHROW(covariant_jump_residual(F, F, F, F, iface, ch, on));
    CHECK_THROWS_AS(covariant_jump_residual(dx(ch.kind, 1), F, F, F, iface, ch, on), GradeError);
    const Interface flat{"degenerate", ScalarField(0.0), ch.kind};
    CHECK_THROWS_AS(covariant_jump_residual(F, F, F, F, flat, ch, on), GeometryError);
}

TEST_CASE("default interface samples are on the interface and deterministic") {
    const auto a = sample_radial_interface(ChartKind::spherical, 0.3, 64, 9);
    const auto b = sample_radial_interface(ChartKind::spherical, 0.3, 64, 9);
    REQUIRE(a.size() == 64);
    CHECK(a == b);
    for (const auto& e : a) {
        CHECK(std::abs(e[1] - 0.3) <= 1e-12);
        CHECK(e[2] > 0.0);
        CHECK(e[2] < std::numbers::pi);
    }
    CHECK_THROWS_AS(sample_radial_interface(ChartKind::cartesian, 1.0, 4, 1), GeometryError);
}

TEST_CASE("normal velocity of static and moving interfaces") {
    const auto cyl = cylindrical_chart(si::c);
    const auto sph = spherical_chart(si::c);
    for (const auto& [ch, ev] : {std::pair{cyl, Event{{0, 0.04, 1.0, 0.2}}}, std::pair{sph, Event{{0, 0.04, 1.0, 0.2}}}}) {
        const auto nv = interface_normal_velocity(radial_interface(ch.kind, 0.04, "r"), lab_frame(ch), ch, ev);
        CHECK(nv.v_n == 0.0);
        CHECK(nv.normal[1] == Catch::Approx(1.0));
        CHECK(nv.normal[0] == 0.0);
        CHECK(nv.normal[2] == 0.0);
        CHECK(nv.normal[3] == 0.0);
    }
    DeterministicRng rng(32);
    for (int n = 0; n < 20; ++n) {
        const double w = rng.uniform(-0.5, 0.5) * si::c;
        const double r0 = rng.uniform(0.1, 1.0);
        const double t = rng.uniform(0.0, 1e-9);
        const Interface iface{"expanding", coord(1) - (ScalarField(r0) + ScalarField(w) * coord(0)), ChartKind::cylindrical};
        const Event e{{t, r0 + w * t, rng.uniform(0, 6), 0.0}};
        const auto nv = interface_normal_velocity(iface, lab_frame(cyl), cyl, e);
        CHECK(nv.v_n == Catch::Approx(w).epsilon(1e-12));
    }
    const Interface temporal{"instant", coord(0) - ScalarField(1.0), ChartKind::cylindrical};
    CHECK_THROWS_AS(interface_normal_velocity(temporal, lab_frame(cyl), cyl, Event{{1, 0.3, 0, 0}}), GeometryError);
}

TEST_CASE("Gibbs relations hold on a moving plane with covariantly consistent jumps") {
    DeterministicRng rng(33);
    for (int n = 0; n < 20; ++n) {
        const double w = rng.uniform(-0.8, 0.8) * 1.7;
        const auto p = moving_plane(rng, w);
        const auto samples = plane_samples(rng, w, 6);
        const auto U = lab_frame(p.chart);
        const auto cov = covariant_jump_residual(p.F_in, p.F_out, p.G_in, p.G_out, p.iface, p.chart, samples);
        CHECK(cov.max_rel <= 1e-14);
        const auto din = decompose_all(p.F_in, p.G_in, U, p.chart);
        const auto dout = decompose_all(p.F_out, p.G_out, U, p.chart);
        const auto gib = gibbs_jump_residual(din, dout, p.iface, U, p.chart, samples);
        CHECK(gib.max_rel <= 1e-13);
        const auto nv = interface_normal_velocity(p.iface, U, p.chart, samples.front());
        CHECK(nv.v_n == Catch::Approx(w).epsilon(1e-14).margin(1e-15));

        // The opposite cross-product signs do not vanish for the library's e, d.
        const Event& e = samples.front();
        const std::array<double, 3> N{1.0, 0.0, 0.0};
        const auto jd = spatial(dout.d - din.d, e), jh = spatial(dout.h - din.h, e);
        const auto jb = spatial(dout.b - din.b, e), je = spatial(dout.e - din.e, e);
        const auto nxh = cross(N, jh), nxe = cross(N, je);
        double flipped_h = 0.0, flipped_e = 0.0, scale_h = 0.0, scale_e = 0.0;
        for (std::size_t k = 0; k < 3; ++k) {
            flipped_h = std::max(flipped_h, std::abs(w * jd[k] + nxh[k]));
            flipped_e = std::max(flipped_e, std::abs(w * jb[k] - nxe[k]));
            scale_h = std::max(scale_h, std::abs(jh[k]));
            scale_e = std::max(scale_e, std::abs(je[k]));
        }
        CHECK(flipped_h > 1e-3 * scale_h);
        CHECK(flipped_e > 1e-3 * scale_e);
    }
}

TEST_CASE("Gibbs residuals are bounded by the covariant residuals") {
    DeterministicRng rng(34);
    for (int n = 0; n < 40; ++n) {
        const double w = rng.uniform(-0.8, 0.8) * 1.7;
        auto p = moving_plane(rng, w);
        const double delta = std::pow(10.0, rng.uniform(-8, -2));
        p.F_out = p.F_out + ScalarField(delta) * oracle::random_constant_form(rng, ChartKind::cartesian, 2);
        p.G_out = p.G_out + ScalarField(delta) * oracle::random_constant_form(rng, ChartKind::cartesian, 2);
        const auto samples = plane_samples(rng, w, 1);
        const auto U = lab_frame(p.chart);
        const auto cov = covariant_jump_residual(p.F_in, p.F_out, p.G_in, p.G_out, p.iface, p.chart, samples);
        const auto gib = gibbs_jump_residual(decompose_all(p.F_in, p.G_in, U, p.chart), decompose_all(p.F_out, p.G_out, U, p.chart), p.iface, U,
                                             p.chart, samples);
        // dΦ = −w dt + dx has orthonormal norm √(1 + w²/c²) and spatial part 1;
        // each Gibbs component sums at most two covariant components, and
        // vector lengths exceed max components by at most √3.
        const double c = p.chart.c;
        const double bound = 2.0 * std::sqrt(3.0) * std::sqrt(1.0 + w * w / (c * c));
        const double tau_F = cov.condition("F_jump").max_rel, tau_G = cov.condition("starG_jump").max_rel;
        CHECK(gib.condition("normal_b").max_rel <= bound * tau_F * (1 + 1e-9) + 1e-15);
        CHECK(gib.condition("tangential_e").max_rel <= bound * tau_F * (1 + 1e-9) + 1e-15);
        CHECK(gib.condition("normal_d").max_rel <= bound * tau_G * (1 + 1e-9) + 1e-15);
        CHECK(gib.condition("tangential_h").max_rel <= bound * tau_G * (1 + 1e-9) + 1e-15);
        CHECK(gib.max_rel > 0.0);
    }
}

TEST_CASE("junction residuals scale linearly and ignore sample order") {
    DeterministicRng rng(35);
    const auto ch = spherical_chart(2.0);
    const auto iface = radial_interface(ch.kind, 0.8, "a");
    auto samples = sample_radial_interface(ch.kind, 0.8, 32, 5);
    const auto Fi = oracle::random_form(rng, ch.kind, 2), Fo = oracle::random_form(rng, ch.kind, 2);
    const auto Gi = oracle::random_form(rng, ch.kind, 2), Go = oracle::random_form(rng, ch.kind, 2);
    const auto base = covariant_jump_residual(Fi, Fo, Gi, Go, iface, ch, samples);
    const double s = 37.5;
    const ScalarField S(s);
    const auto scaled = covariant_jump_residual(S * Fi, S * Fo, S * Gi, S * Go, iface, ch, samples);
    CHECK(scaled.max_abs == Catch::Approx(s * base.max_abs).epsilon(1e-13));
    CHECK(scaled.max_rel == Catch::Approx(base.max_rel).epsilon(1e-13));
    const auto U = lab_frame(ch);
    const auto gi = decompose_all(Fi, Gi, U, ch), go = decompose_all(Fo, Go, U, ch);
    const auto g1 = gibbs_jump_residual(gi, go, iface, U, ch, samples);
    const auto gs = gibbs_jump_residual(decompose_all(S * Fi, S * Gi, U, ch), decompose_all(S * Fo, S * Go, U, ch), iface, U, ch, samples);
    CHECK(gs.max_abs == Catch::Approx(s * g1.max_abs).epsilon(1e-13));

    std::reverse(samples.begin(), samples.end());
    std::swap(samples[3], samples[17]);
    const auto shuffled = covariant_jump_residual(Fi, Fo, Gi, Go, iface, ch, samples);
    CHECK(shuffled.max_abs == base.max_abs);
    CHECK(shuffled.max_rel == base.max_rel);
    CHECK(shuffled.samples == base.samples);
    CHECK(gibbs_jump_residual(gi, go, iface, U, ch, samples).max_abs == g1.max_abs);
}

TEST_CASE("matched cylinder satisfies the junction conditions at both radii") {
    const auto sc = ww_cylinder();
    const auto ch = cylindrical_chart(sc.mat.c);
    for (double R : {sc.r1, sc.r2}) {
        const auto iface = radial_interface(ch.kind, R, "r");
        const auto samples = sample_radial_interface(ch.kind, R, 64, 2);
        const auto cov = covariant_jump_residual(cylinder::F_in(sc), cylinder::F_out(sc), cylinder::G_in(sc), cylinder::G_out(sc), iface, ch, samples);
        CHECK(cov.max_rel <= 1e-10);
        const auto gib = gibbs_jump_residual(cylinder::closed_form_interior(sc), cylinder::closed_form_exterior(sc), iface, lab_frame(ch), ch, samples);
        CHECK(gib.condition("tangential_h").max_rel <= 1e-10);
        CHECK(gib.condition("tangential_e").max_rel <= 1e-10);
        CHECK(gib.max_rel <= 1e-10);
    }
}

TEST_CASE("perturbing C2 by one percent breaks the junction conditions") {
    const auto sc = ww_cylinder();
    const auto ch = cylindrical_chart(sc.mat.c);
    const double C2 = 1.01 * cylinder::C2_closed_form(sc);
    const auto iface = radial_interface(ch.kind, sc.r2, "r2");
    const auto samples = sample_radial_interface(ch.kind, sc.r2, 64, 2);
    const auto exact = covariant_jump_residual(cylinder::F_in_family(sc, 0.0, cylinder::C2_closed_form(sc)), cylinder::F_out(sc),
                                               cylinder::G_in_family(sc, 0.0, cylinder::C2_closed_form(sc)), cylinder::G_out(sc), iface, ch, samples);
    CHECK(exact.max_rel <= 1e-10);
    const auto bad = covariant_jump_residual(cylinder::F_in_family(sc, 0.0, C2), cylinder::F_out(sc), cylinder::G_in_family(sc, 0.0, C2),
                                             cylinder::G_out(sc), iface, ch, samples);
    CHECK(bad.max_rel > 1e-4);
    // [F]∧dr vanishes for any dt∧dr, dr∧dθ interior; ⋆G carries the constraint.
    CHECK(bad.condition("F_jump").max_abs == 0.0);
    CHECK(bad.condition("starG_jump").max_abs > 1e-4 * sc.mat.eps0 * std::abs(sc.mat.c * sc.B0));
}

TEST_CASE("matched first-order sphere satisfies the Gibbs relations at r = a") {
    SphereScenario sc;
    sc.a = 0.1;
    sc.omega = 1e-3 * si::c / sc.a;
    sc.E0 = 1e3;
    sc.mat.eps_r = 4.0;
    sc.mat.mu_r = 1.5;
    const auto [sol, mc] = solve_sphere(sc);
    const auto& ch = sol.chart;
    const auto U = lab_frame(ch);
    std::vector<Event> samples;
    for (int k = 0; k < 10; ++k) samples.push_back(Event{{0.0, sc.a, std::numbers::pi * (k + 0.5) / 10.0, 0.4 * k}});
    const auto iface = sol.interfaces.front();
    const auto gib = gibbs_jump_residual(decompose_all(sol.F_in, sol.G_in, U, ch), decompose_all(sol.F_out, sol.G_out, U, ch), iface, U, ch, samples);
    CHECK(gib.max_rel <= 1e-9);
    const auto cov = covariant_jump_residual(sol.F_in, sol.F_out, sol.G_in, sol.G_out, iface, ch, samples);
    CHECK(cov.max_rel <= 1e-9);
}

TEST_CASE("closed-form sphere constants violate the first-order junction conditions") {
    // With the exact constitutive map the matched constants leave an O(x²)
    // residual, x = aΩ/c; the closed-form K1 leaves an O(x) residual.
    SphereScenario sc;
    sc.a = 0.1;
    sc.E0 = 1e3;
    sc.mat.eps_r = 4.0;
    sc.mat.mu_r = 1.5;
    std::vector<double> xs, matched, reference;
    for (double x : {1e-5, 1e-4, 1e-3}) {
        sc.omega = x * si::c / sc.a;
        const auto mc = solve_sphere(sc).second;
        const auto pub = sphere::reference_constants(sc);
        const auto ch = spherical_chart(sc.mat.c);
        const auto V = rotating_velocity(ch, sc.omega, 3);
        const auto iface = radial_interface(ch.kind, sc.a, "a");
        const auto samples = sample_radial_interface(ch.kind, sc.a, 16, 4);
        auto residual = [&](const MatchingConstants& k) {
            const auto f = sphere::fields_for(sc.E0, k.K0, k.K1, k.P0, k.P1);
            const ScalarField w(sc.omega);
            const auto Fi = f.F0_in + w * f.F1_in, Fo = f.F0_out + w * f.F1_out;
            return covariant_jump_residual(Fi, Fo, apply_constitutive(Fi, V, sc.mat, ch), ScalarField(sc.mat.eps0) * Fo, iface, ch, samples)
                .condition("starG_jump")
                .max_rel;
        };
        xs.push_back(x);
        matched.push_back(residual(mc));
        reference.push_back(residual(pub));
    }
    CHECK(oracle::loglog_slope(xs, matched) == Catch::Approx(2.0).margin(0.1));
    CHECK(oracle::loglog_slope(xs, reference) == Catch::Approx(1.0).margin(0.1));
    CHECK(reference.front() > 100.0 * matched.front());
}
