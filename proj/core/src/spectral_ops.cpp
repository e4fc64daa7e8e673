#include "adns/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "adns/fft.hpp"
#include "adns/rng.hpp"

namespace adns {

namespace {

// (i k)^order for even/odd split: even orders are real, odd imaginary.
Complex derivative_symbol(double k, int order) {
    switch (order % 4) {
        case 0: return Complex(std::pow(k, order), 0.0);
        case 1: return Complex(0.0, std::pow(k, order));
        case 2: return Complex(-std::pow(k, order), 0.0);
        default: return Complex(0.0, -std::pow(k, order));
    }
}

bool is_nyquist(int mode, int n) { return mode == -n / 2; }

}  // namespace

SpectralVelocity leray_project(const SpectralVelocity& f) {
    const Grid& g = f.grid();
    SpectralVelocity out(g);
    for (int j1 = 0; j1 < g.n_h; ++j1) {
        const double k1 = g.k1(j1);
        for (int j2 = 0; j2 < g.n_v; ++j2) {
            const double k2 = g.k2(j2);
            const double ksq = k1 * k1 + k2 * k2;
            const int idx = g.index(j1, j2);
            const Complex f1 = f.comp1().data()[idx];
            const Complex f2 = f.comp2().data()[idx];
            if (ksq == 0.0) {
                out.comp1().data()[idx] = f1;
                out.comp2().data()[idx] = f2;
            } else {
                const Complex kdotf = (k1 * f1 + k2 * f2) / ksq;
                out.comp1().data()[idx] = f1 - k1 * kdotf;
                out.comp2().data()[idx] = f2 - k2 * kdotf;
            }
        }
    }
    return out;
}

ScalarField partial_derivative(const ScalarField& f, int axis, int order) {
    if (axis != 1 && axis != 2) throw std::invalid_argument("partial_derivative: axis must be 1 or 2");
    if (order < 0) throw std::invalid_argument("partial_derivative: order must be non-negative");
    const Grid& g = f.grid();
    ScalarField out(g);
    const bool zero_nyquist = (order % 2 == 1);
    for (int j1 = 0; j1 < g.n_h; ++j1) {
        for (int j2 = 0; j2 < g.n_v; ++j2) {
            const int idx = g.index(j1, j2);
            const double k = axis == 1 ? g.k1(j1) : g.k2(j2);
            const int m = axis == 1 ? g.mode1(j1) : g.mode2(j2);
            const int n = axis == 1 ? g.n_h : g.n_v;
            if (zero_nyquist && is_nyquist(m, n)) {
                out.data()[idx] = Complex{0.0, 0.0};
            } else {
                out.data()[idx] = derivative_symbol(k, order) * f.data()[idx];
            }
        }
    }
    return out;
}

SpectralVelocity partial_derivative(const SpectralVelocity& f, int axis, int order) {
    return SpectralVelocity(partial_derivative(f.comp1(), axis, order),
                            partial_derivative(f.comp2(), axis, order));
}

ScalarField curl(const SpectralVelocity& u) {
    ScalarField out = partial_derivative(u.comp2(), 1);
    out -= partial_derivative(u.comp1(), 2);
    return out;
}

SpectralVelocity laplacian(const SpectralVelocity& u) {
    const Grid& g = u.grid();
    SpectralVelocity out(g);
    for (int j1 = 0; j1 < g.n_h; ++j1) {
        const double k1 = g.k1(j1);
        for (int j2 = 0; j2 < g.n_v; ++j2) {
            const double k2 = g.k2(j2);
            const double msq = -(k1 * k1 + k2 * k2);
            const int idx = g.index(j1, j2);
            out.comp1().data()[idx] = msq * u.comp1().data()[idx];
            out.comp2().data()[idx] = msq * u.comp2().data()[idx];
        }
    }
    return out;
}

void apply_dealias_mask(ScalarField& f) {
    const Grid& g = f.grid();
    for (int j1 = 0; j1 < g.n_h; ++j1)
        for (int j2 = 0; j2 < g.n_v; ++j2)
            if (!g.in_dealias_mask(j1, j2)) f.data()[g.index(j1, j2)] = Complex{0.0, 0.0};
}

void apply_dealias_mask(SpectralVelocity& u) {
    apply_dealias_mask(u.comp1());
    apply_dealias_mask(u.comp2());
}

void enforce_conjugate_symmetry(ScalarField& f) {
    const Grid& g = f.grid();
    for (int j1 = 0; j1 < g.n_h; ++j1) {
        const int c1 = g.conj1(j1);
        for (int j2 = 0; j2 < g.n_v; ++j2) {
            const int c2 = g.conj2(j2);
            const int idx = g.index(j1, j2);
            const int cidx = g.index(c1, c2);
            if (idx == cidx) {
                f.data()[idx] = Complex(f.data()[idx].real(), 0.0);
            } else if (idx < cidx) {
                const Complex avg = 0.5 * (f.data()[idx] + std::conj(f.data()[cidx]));
                f.data()[idx] = avg;
                f.data()[cidx] = std::conj(avg);
            }
        }
    }
}

void enforce_conjugate_symmetry(SpectralVelocity& u) {
    enforce_conjugate_symmetry(u.comp1());
    enforce_conjugate_symmetry(u.comp2());
}

double max_divergence(const SpectralVelocity& u) {
    const Grid& g = u.grid();
    double worst = 0.0;
    for (int j1 = 0; j1 < g.n_h; ++j1) {
        const double k1 = g.k1(j1);
        for (int j2 = 0; j2 < g.n_v; ++j2) {
            const double k2 = g.k2(j2);
            const int idx = g.index(j1, j2);
            const Complex div = k1 * u.comp1().data()[idx] + k2 * u.comp2().data()[idx];
            worst = std::max(worst, std::abs(div));
        }
    }
    return worst;
}

double l2_inner(const ScalarField& f, const ScalarField& g) {
    f.check_grid(g.grid());
    const double area = f.grid().box_length * f.grid().box_length;
    Complex acc{0.0, 0.0};
    for (int i = 0; i < f.size(); ++i) acc += f.data()[i] * std::conj(g.data()[i]);
    return area * acc.real();
}

double l2_inner(const SpectralVelocity& f, const SpectralVelocity& g) {
    return l2_inner(f.comp1(), g.comp1()) + l2_inner(f.comp2(), g.comp2());
}

double l2_norm_sq(const ScalarField& f) {
    const double area = f.grid().box_length * f.grid().box_length;
    double acc = 0.0;
    for (int i = 0; i < f.size(); ++i) acc += std::norm(f.data()[i]);
    return area * acc;
}

double l2_norm_sq(const SpectralVelocity& f) { return l2_norm_sq(f.comp1()) + l2_norm_sq(f.comp2()); }

double h1_norm_sq(const SpectralVelocity& f) {
    const Grid& g = f.grid();
    const double area = g.box_length * g.box_length;
    double acc = 0.0;
    for (int j1 = 0; j1 < g.n_h; ++j1) {
        const double k1 = g.k1(j1);
        for (int j2 = 0; j2 < g.n_v; ++j2) {
            const double k2 = g.k2(j2);
            const int idx = g.index(j1, j2);
            const double w = 1.0 + k1 * k1 + k2 * k2;
            acc += w * (std::norm(f.comp1().data()[idx]) + std::norm(f.comp2().data()[idx]));
        }
    }
    return area * acc;
}

NormSnapshot norm_snapshot(const SpectralVelocity& u) {
    const Grid& g = u.grid();
    const double area = g.box_length * g.box_length;
    NormSnapshot s;
    for (int j1 = 0; j1 < g.n_h; ++j1) {
        const double k1sq = g.k1(j1) * g.k1(j1);
        for (int j2 = 0; j2 < g.n_v; ++j2) {
            const double k2sq = g.k2(j2) * g.k2(j2);
            const int idx = g.index(j1, j2);
            const double e = std::norm(u.comp1().data()[idx]) + std::norm(u.comp2().data()[idx]);
            s.l2_sq += e;
            s.d1_sq += k1sq * e;
            s.d2_sq += k2sq * e;
            s.d1grad_sq += k1sq * (k1sq + k2sq) * e;
            s.d1d2_sq += k1sq * k2sq * e;
        }
    }
    s.l2_sq *= area;
    s.d1_sq *= area;
    s.d2_sq *= area;
    s.d1grad_sq *= area;
    s.d1d2_sq *= area;
    s.grad_sq = s.d1_sq + s.d2_sq;
    return s;
}

namespace {

double line_norm(const std::vector<double>& vals, int q, double spacing) {
    if (q == 2) {
        double acc = 0.0;
        for (double v : vals) acc += v * v;
        return std::sqrt(spacing * acc);
    }
    double m = 0.0;
    for (double v : vals) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

double anisotropic_mixed_norm(const ScalarField& f, OuterAxis outer, int p_outer, int q_inner) {
    const bool p_ok = p_outer == 2 || p_outer == 0;
    const bool q_ok = q_inner == 2 || q_inner == 0;
    if (!p_ok || !q_ok)
        throw UnsupportedNormError("anisotropic_mixed_norm: exponents must be 2 or 0 (infinity)");
    const Grid& g = f.grid();
    const std::vector<double> vals = physical_values(f);
    const double dx_h = g.box_length / g.n_h;
    const double dx_v = g.box_length / g.n_v;

    const int n_outer = outer == OuterAxis::horizontal ? g.n_h : g.n_v;
    const int n_inner = outer == OuterAxis::horizontal ? g.n_v : g.n_h;
    const double d_inner = outer == OuterAxis::horizontal ? dx_v : dx_h;
    const double d_outer = outer == OuterAxis::horizontal ? dx_h : dx_v;

    std::vector<double> line(n_inner);
    std::vector<double> outer_vals(n_outer);
    for (int io = 0; io < n_outer; ++io) {
        for (int ii = 0; ii < n_inner; ++ii) {
            const int idx = outer == OuterAxis::horizontal ? io * g.n_v + ii : ii * g.n_v + io;
            line[ii] = vals[idx];
        }
        outer_vals[io] = line_norm(line, q_inner, d_inner);
    }
    return line_norm(outer_vals, p_outer, d_outer);
}

SpectralVelocity nonlinear_term(const SpectralVelocity& u, const SpectralVelocity& v) {
    u.check_grid(v.grid());
    const Grid& g = u.grid();
    const int n = g.size();
    auto fft = fft_for(g);

    // Physical samples of v and of the four derivatives of u.
    std::vector<Complex> v1(n), v2(n), d1u1(n), d2u1(n), d1u2(n), d2u2(n), work(n);
    fft->to_physical(v.comp1().data(), v1.data());
    fft->to_physical(v.comp2().data(), v2.data());
    auto deriv_to_phys = [&](const ScalarField& c, int axis, std::vector<Complex>& out) {
        ScalarField d = partial_derivative(c, axis);
        fft->to_physical(d.data(), out.data());
    };
    deriv_to_phys(u.comp1(), 1, d1u1);
    deriv_to_phys(u.comp1(), 2, d2u1);
    deriv_to_phys(u.comp2(), 1, d1u2);
    deriv_to_phys(u.comp2(), 2, d2u2);

    SpectralVelocity out(g);
    for (int i = 0; i < n; ++i)
        work[i] = Complex(v1[i].real() * d1u1[i].real() + v2[i].real() * d2u1[i].real(), 0.0);
    fft->to_spectral(work.data(), out.comp1().data());
    for (int i = 0; i < n; ++i)
        work[i] = Complex(v1[i].real() * d1u2[i].real() + v2[i].real() * d2u2[i].real(), 0.0);
    fft->to_spectral(work.data(), out.comp2().data());

    apply_dealias_mask(out);
    return out;
}

double cancellation_residual(const SpectralVelocity& u) {
    return l2_inner(nonlinear_term(u, u), laplacian(u));
}

std::vector<double> physical_values(const ScalarField& f) {
    auto fft = fft_for(f.grid());
    std::vector<Complex> phys(f.size());
    fft->to_physical(f.data(), phys.data());
    std::vector<double> out(f.size());
    for (int i = 0; i < f.size(); ++i) out[i] = phys[i].real();
    return out;
}

SpectralVelocity random_divfree_field(const Grid& grid, std::uint64_t seed, double spectrum_exponent,
                                      double amplitude) {
    if (!(spectrum_exponent > 0.0)) throw std::invalid_argument("random field: spectrum exponent must be > 0");
    if (amplitude < 0.0) throw std::invalid_argument("random field: amplitude must be >= 0");
    SpectralVelocity f(grid);
    RngStream rng = make_stream(seed, 0, StreamPurpose::initial_condition);
    for (int j1 = 0; j1 < grid.n_h; ++j1) {
        const double k1 = grid.k1(j1);
        for (int j2 = 0; j2 < grid.n_v; ++j2) {
            const double k2 = grid.k2(j2);
            const double sd = amplitude * std::pow(1.0 + k1 * k1 + k2 * k2, -0.5 * spectrum_exponent);
            // Fixed draw count per mode keeps the stream layout stable.
            const double a = rng.next_gaussian(), b = rng.next_gaussian();
            const double c = rng.next_gaussian(), d = rng.next_gaussian();
            const int idx = grid.index(j1, j2);
            f.comp1().data()[idx] = sd * Complex(a, b);
            f.comp2().data()[idx] = sd * Complex(c, d);
        }
    }
    enforce_conjugate_symmetry(f);
    f = leray_project(f);
    apply_dealias_mask(f);
    return f;
}

}  // namespace adns
