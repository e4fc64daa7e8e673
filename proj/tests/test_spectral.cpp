#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "adns/rng.hpp"
#include "adns/spectral_ops.hpp"
#include "test_util.hpp"

using namespace adns;
using namespace adns::test;

TEST_CASE("leray projection fixes divergence-free fields") {
    const Grid g = Grid::make(16, 16);
    const SpectralVelocity u = random_divfree_field(g, 11, 2.0, 1.0);
    const SpectralVelocity pu = leray_project(u);
    CHECK(field_distance(u, pu) <= 1e-14 * std::sqrt(l2_norm_sq(u)));
}

TEST_CASE("leray projection annihilates gradients") {
    const Grid g = Grid::make(16, 16);
    // grad of a scalar: (i k1 psi, i k2 psi) per mode
    ScalarField psi(g);
    RngStream rng = make_stream(3, 0, StreamPurpose::scratch);
    for (int j1 = 0; j1 < g.n_h; ++j1)
        for (int j2 = 0; j2 < g.n_v; ++j2)
            psi.at(j1, j2) = Complex(rng.next_gaussian(), rng.next_gaussian());
    enforce_conjugate_symmetry(psi);
    apply_dealias_mask(psi);  // gradients are exact only off the Nyquist lines
    SpectralVelocity grad(partial_derivative(psi, 1), partial_derivative(psi, 2));
    const SpectralVelocity out = leray_project(grad);
    CHECK(std::sqrt(l2_norm_sq(out)) <= 1e-12 * std::max(1.0, std::sqrt(l2_norm_sq(grad))));
}

TEST_CASE("leray projection yields zero divergence on random fields") {
    const Grid g = Grid::make(16, 16);
    SpectralVelocity f(g);
    RngStream rng = make_stream(5, 0, StreamPurpose::scratch);
    for (int j1 = 0; j1 < g.n_h; ++j1)
        for (int j2 = 0; j2 < g.n_v; ++j2) {
            f.comp1().at(j1, j2) = Complex(rng.next_gaussian(), rng.next_gaussian());
            f.comp2().at(j1, j2) = Complex(rng.next_gaussian(), rng.next_gaussian());
        }
    enforce_conjugate_symmetry(f);
    const SpectralVelocity pf = leray_project(f);
    // direct evaluation of k . u_hat as the oracle
    CHECK(max_divergence(pf) <= 1e-12 * std::sqrt(l2_norm_sq(pf)));

    SUBCASE("idempotent") {
        const SpectralVelocity ppf = leray_project(pf);
        CHECK(field_distance(pf, ppf) <= 1e-14 * std::sqrt(l2_norm_sq(pf)));
    }
    SUBCASE("grid mismatch is a structural error") {
        SpectralVelocity other(Grid::make(32, 32));
        CHECK_THROWS_AS(SpectralVelocity(pf.comp1(), other.comp2()), GridMismatchError);
    }
}

TEST_CASE("partial derivative is the Fourier symbol") {
    const Grid g = Grid::make(16, 16);
    const double k = 2.0 * std::numbers::pi / g.box_length;
    const ScalarField f = make_mode(g, 1, 0, Complex(0.3, -0.2));
    const ScalarField d2 = partial_derivative(f, 1, 2);
    const Complex expected = -(k * k) * Complex(0.3, -0.2);
    CHECK(std::abs(d2.at(1, 0) - expected) <= 1e-15);

    SUBCASE("constant fields differentiate to zero") {
        const ScalarField c = make_mode(g, 0, 0, Complex(4.0, 0.0));
        CHECK(l2_norm_sq(partial_derivative(c, 1)) == 0.0);
        CHECK(l2_norm_sq(partial_derivative(c, 2)) == 0.0);
    }
    SUBCASE("mixed partials commute exactly") {
        ScalarField r(g);
        RngStream rng = make_stream(7, 0, StreamPurpose::scratch);
        for (int j1 = 0; j1 < g.n_h; ++j1)
            for (int j2 = 0; j2 < g.n_v; ++j2)
                r.at(j1, j2) = Complex(rng.next_gaussian(), rng.next_gaussian());
        enforce_conjugate_symmetry(r);
        const ScalarField d12 = partial_derivative(partial_derivative(r, 1), 2);
        const ScalarField d21 = partial_derivative(partial_derivative(r, 2), 1);
        // equal as real numbers; composition order reassociates the scalar
        // products, so allow one ulp
        for (int i = 0; i < g.size(); ++i)
            CHECK(std::abs(d12.data()[i] - d21.data()[i]) <=
                  1e-15 * (std::abs(d12.data()[i]) + 1e-30));
    }
}

TEST_CASE("curl of a streamfunction field is the Laplacian of the streamfunction") {
    const Grid g = Grid::make(32, 32);
    ScalarField psi(g);
    RngStream rng = make_stream(9, 0, StreamPurpose::scratch);
    for (int j1 = 0; j1 < g.n_h; ++j1)
        for (int j2 = 0; j2 < g.n_v; ++j2)
            psi.at(j1, j2) = Complex(rng.next_gaussian(), rng.next_gaussian());
    enforce_conjugate_symmetry(psi);
    apply_dealias_mask(psi);

    ScalarField mdpsi = partial_derivative(psi, 2);
    mdpsi *= -1.0;
    const SpectralVelocity u(mdpsi, partial_derivative(psi, 1));
    const ScalarField w = curl(u);

    ScalarField lap = partial_derivative(psi, 1, 2);
    lap += partial_derivative(psi, 2, 2);
    ScalarField diff = w;
    diff -= lap;
    CHECK(std::sqrt(l2_norm_sq(diff)) <= 1e-12 * std::max(1.0, std::sqrt(l2_norm_sq(lap))));

    SUBCASE("curl of zero is zero") {
        CHECK(l2_norm_sq(curl(SpectralVelocity(g))) == 0.0);
    }
}

TEST_CASE("two-dimensional identity: Laplacian u = grad-perp of curl u") {
    const Grid g = Grid::make(32, 32);
    const SpectralVelocity u = random_divfree_field(g, 13, 2.0, 1.0);
    const ScalarField w = curl(u);
    ScalarField md2w = partial_derivative(w, 2);
    md2w *= -1.0;
    const SpectralVelocity gperp(md2w, partial_derivative(w, 1));
    const SpectralVelocity lap = laplacian(u);
    for (int i = 0; i < g.size(); ++i) {
        CHECK(std::abs(gperp.comp1().data()[i] - lap.comp1().data()[i]) <= 1e-12);
        CHECK(std::abs(gperp.comp2().data()[i] - lap.comp2().data()[i]) <= 1e-12);
    }
}

TEST_CASE("Parseval pairing matches collocation quadrature") {
    const Grid g = Grid::make(32, 32);
    ScalarField f(g), h(g);
    RngStream rng = make_stream(17, 0, StreamPurpose::scratch);
    for (int j1 = 0; j1 < g.n_h; ++j1)
        for (int j2 = 0; j2 < g.n_v; ++j2) {
            f.at(j1, j2) = Complex(rng.next_gaussian(), rng.next_gaussian());
            h.at(j1, j2) = Complex(rng.next_gaussian(), rng.next_gaussian());
        }
    enforce_conjugate_symmetry(f);
    enforce_conjugate_symmetry(h);

    CHECK(rel_err(l2_inner(f, h), quadrature_inner(f, h)) <= 1e-10);
    CHECK(rel_err(l2_inner(f, f), l2_norm_sq(f)) <= 1e-12);

    SUBCASE("orthogonal single modes pair to zero") {
        const ScalarField a = make_mode(g, 1, 2, Complex(1.0, 0.5));
        const ScalarField b = make_mode(g, 2, 1, Complex(0.7, -0.1));
        CHECK(std::abs(l2_inner(a, b)) <= 1e-14);
    }
    SUBCASE("grid mismatch rejected") {
        const ScalarField other(Grid::make(16, 16));
        CHECK_THROWS_AS(l2_inner(f, other), GridMismatchError);
    }
}

TEST_CASE("anisotropic mixed norms") {
    const Grid g = Grid::make(32, 32);

    SUBCASE("constant field") {
        const ScalarField c = make_mode(g, 0, 0, Complex(1.5, 0.0));
        const double L = g.box_length;
        CHECK(rel_err(anisotropic_mixed_norm(c, OuterAxis::horizontal, 2, 2), 1.5 * L) <= 1e-12);
        CHECK(rel_err(anisotropic_mixed_norm(c, OuterAxis::horizontal, 0, 2), 1.5 * std::sqrt(L)) <=
              1e-12);
        CHECK(rel_err(anisotropic_mixed_norm(c, OuterAxis::horizontal, 0, 0), 1.5) <= 1e-12);
    }

    SUBCASE("field depending only on the vertical variable") {
        // f = 2 cos(k2 x2): the L_h-infinity of the L_v^2 line norms is the
        // one-dimensional L^2 norm.
        const ScalarField f = make_mode(g, 0, 3, Complex(1.0, 0.0));
        const double expected_1d = std::sqrt(2.0 * g.box_length);  // |2 cos|_{L2(0,L)}
        CHECK(rel_err(anisotropic_mixed_norm(f, OuterAxis::horizontal, 0, 2), expected_1d) <= 1e-12);
    }

    SUBCASE("random field matches the two-loop oracle") {
        SpectralVelocity u = random_divfree_field(g, 23, 2.0, 1.0);
        const ScalarField& f = u.comp1();
        for (OuterAxis outer : {OuterAxis::horizontal, OuterAxis::vertical})
            for (int p : {2, 0})
                for (int q : {2, 0})
                    CHECK(rel_err(anisotropic_mixed_norm(f, outer, p, q),
                                  mixed_norm_bruteforce(f, outer, p, q)) <= 1e-12);
    }

    SUBCASE("unsupported exponents") {
        const ScalarField c = make_mode(g, 0, 0, Complex(1.0, 0.0));
        CHECK_THROWS_AS(anisotropic_mixed_norm(c, OuterAxis::horizontal, 3, 2),
                        UnsupportedNormError);
    }

    SUBCASE("ordering relations on the periodic box") {
        const SpectralVelocity u = random_divfree_field(g, 29, 2.0, 1.0);
        const ScalarField& f = u.comp1();
        const double l2 = std::sqrt(l2_norm_sq(f));
        const double mixed22 = anisotropic_mixed_norm(f, OuterAxis::horizontal, 2, 2);
        CHECK(rel_err(mixed22, l2) <= 1e-10);
        const double inf2 = anisotropic_mixed_norm(f, OuterAxis::horizontal, 0, 2);
        CHECK(mixed22 <= std::sqrt(g.box_length) * inf2 * (1.0 + 1e-12));
    }
}

TEST_CASE("advection of a constant or by zero vanishes") {
    const Grid g = Grid::make(16, 16);
    const SpectralVelocity c = make_mode_velocity(g, 0, 0, Complex(2.0, 0.0), Complex(-1.0, 0.0));
    const SpectralVelocity v = random_divfree_field(g, 31, 2.0, 1.0);
    CHECK(l2_norm_sq(nonlinear_term(c, v)) <= 1e-28);
    CHECK(l2_norm_sq(nonlinear_term(v, SpectralVelocity(g))) == 0.0);
}

TEST_CASE("advection of a single-mode pair matches the hand convolution") {
    const Grid g = Grid::make(16, 16);
    // u at +-p with a f p, v at +-r with b f r (divergence-free choices)
    const int p1 = 1, p2 = 2, r1 = 3, r2 = -1;
    const Complex a1(0.4, 0.1), a2(-0.2, -0.05);  // a . p = 0: (0.4,0.1)*1 + (-0.2,-0.05)*2 = 0
    const Complex b1(0.1, -0.3), b2(0.3, -0.9);   // b . r = 0: 0.1*3 + 0.3*(-1)...

    // enforce orthogonality exactly: a = alpha * p_perp, b = beta * r_perp
    const Complex alpha(0.4, 0.1), beta(-0.2, 0.3);
    const Complex ua1 = alpha * double(-p2), ua2 = alpha * double(p1);
    const Complex vb1 = beta * double(-r2), vb2 = beta * double(r1);
    (void)a1; (void)a2; (void)b1; (void)b2;

    const SpectralVelocity u = make_mode_velocity(g, p1, p2, ua1, ua2);
    const SpectralVelocity v = make_mode_velocity(g, r1, r2, vb1, vb2);
    const SpectralVelocity got = nonlinear_term(u, v);

    // (v . grad)u = sum over p' in {+-p}, r' in {+-r} of (b(r') . i k(p')) a(p') e^{i(k(p')+k(r'))x}
    SpectralVelocity expected(g);
    const double ku = g.wavenumber_unit();
    auto add_term = [&](int pm1, int pm2, Complex pa1, Complex pa2, int rm1, int rm2, Complex rb1,
                        Complex rb2) {
        const Complex ip_dot_b = Complex(0, 1) * ku * (rb1 * double(pm1) + rb2 * double(pm2));
        const int m1 = pm1 + rm1, m2 = pm2 + rm2;
        const int j1 = m1 >= 0 ? m1 : m1 + g.n_h;
        const int j2 = m2 >= 0 ? m2 : m2 + g.n_v;
        expected.comp1().at(j1, j2) += ip_dot_b * pa1;
        expected.comp2().at(j1, j2) += ip_dot_b * pa2;
    };
    add_term(p1, p2, ua1, ua2, r1, r2, vb1, vb2);
    add_term(p1, p2, ua1, ua2, -r1, -r2, std::conj(vb1), std::conj(vb2));
    add_term(-p1, -p2, std::conj(ua1), std::conj(ua2), r1, r2, vb1, vb2);
    add_term(-p1, -p2, std::conj(ua1), std::conj(ua2), -r1, -r2, std::conj(vb1), std::conj(vb2));

    CHECK(field_distance(got, expected) <= 1e-13 * std::max(1.0, std::sqrt(l2_norm_sq(expected))));
}

TEST_CASE("nonlinear cancellation against the Laplacian") {
    SUBCASE("zero field") {
        CHECK(cancellation_residual(SpectralVelocity(Grid::make(16, 16))) == 0.0);
    }
    SUBCASE("unidirectional shear advects nothing") {
        const Grid g = Grid::make(32, 32);
        // u = (sin(2 pi x2 / L), 0): coefficients at m = (0, +-1)
        const SpectralVelocity u =
            make_mode_velocity(g, 0, 1, Complex(0.0, -0.5), Complex(0.0, 0.0));
        CHECK(std::abs(cancellation_residual(u)) <= 1e-14);
    }
    SUBCASE("random dealiased divergence-free fields at several resolutions") {
        for (int n : {16, 32, 64}) {
            const Grid g = Grid::make(n, n);
            const SpectralVelocity u = random_divfree_field(g, 41, 2.0, 1.0);
            const NormSnapshot s = norm_snapshot(u);
            const double h2 = std::sqrt(s.l2_sq + s.grad_sq + s.d1grad_sq + s.d1d2_sq);
            CHECK(std::abs(cancellation_residual(u)) <= 1e-10 * std::sqrt(s.l2_sq) * h2);
        }
    }
    SUBCASE("advection is L2-skew: (u . grad u, u) = 0") {
        const Grid g = Grid::make(32, 32);
        const SpectralVelocity u = random_divfree_field(g, 43, 2.0, 1.0);
        const double pairing = l2_inner(nonlinear_term(u, u), u);
        CHECK(std::abs(pairing) <= 1e-10 * std::pow(l2_norm_sq(u), 1.5));
    }
}

TEST_CASE("random divergence-free fields") {
    const Grid g = Grid::make(32, 32);
    SUBCASE("zero amplitude gives the zero field") {
        CHECK(l2_norm_sq(random_divfree_field(g, 1, 2.0, 0.0)) == 0.0);
    }
    SUBCASE("same seed reproduces bitwise") {
        const SpectralVelocity a = random_divfree_field(g, 77, 2.0, 1.0);
        const SpectralVelocity b = random_divfree_field(g, 77, 2.0, 1.0);
        for (int i = 0; i < g.size(); ++i) {
            CHECK(a.comp1().data()[i] == b.comp1().data()[i]);
            CHECK(a.comp2().data()[i] == b.comp2().data()[i]);
        }
    }
    SUBCASE("H1 norm is stable under refinement for s = 2") {
        const double h32 = std::sqrt(h1_norm_sq(random_divfree_field(g, 99, 2.0, 1.0)));
        const double h64 =
            std::sqrt(h1_norm_sq(random_divfree_field(Grid::make(64, 64), 99, 2.0, 1.0)));
        CHECK(h64 / h32 > 0.8);
        CHECK(h64 / h32 < 1.2);
    }
    SUBCASE("output is dealiased and divergence-free") {
        const SpectralVelocity u = random_divfree_field(g, 3, 2.0, 1.0);
        CHECK(max_divergence(u) <= 1e-12);
        for (int j1 = 0; j1 < g.n_h; ++j1)
            for (int j2 = 0; j2 < g.n_v; ++j2)
                if (!g.in_dealias_mask(j1, j2)) {
                    CHECK(u.comp1().at(j1, j2) == Complex(0.0, 0.0));
                    CHECK(u.comp2().at(j1, j2) == Complex(0.0, 0.0));
                }
    }
}

TEST_CASE("grid invariants") {
    CHECK_THROWS_AS(Grid::make(6, 16), std::invalid_argument);
    CHECK_THROWS_AS(Grid::make(16, 15), std::invalid_argument);
    CHECK_THROWS_AS(Grid::make(16, 16, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(Grid::make(16, 16, 1.0, 1.5), std::invalid_argument);
    const Grid g = Grid::make(16, 16);
    CHECK(g.mode1(0) == 0);
    CHECK(g.mode1(8) == -8);
    CHECK(g.mode1(15) == -1);
    CHECK(g.max_mode1() == 5);  // 2/3 rule on 16 modes
}
