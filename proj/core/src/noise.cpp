#include "adns/noise.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "adns/errors.hpp"

namespace adns {

namespace {

// j-index of integer mode m on an n-point axis; caller checks range.
int mode_to_index(int m, int n) { return m >= 0 ? m : m + n; }

}  // namespace

NoiseOperator NoiseOperator::from_modes(const Grid& grid, const std::vector<NoiseMode>& modes) {
    NoiseOperator op;
    op.grid_ = grid;
    std::set<std::pair<int, int>> seen;
    for (const NoiseMode& m : modes) {
        if (m.m1 == 0 && m.m2 == 0)
            throw ConfigError("noise.modes: the zero wavevector carries no divergence-free mode");
        if (m.q < 0.0) throw ConfigError("noise.modes: q must be >= 0");
        const int lim1 = std::min(grid.max_mode1(), grid.n_h / 2 - 1);
        const int lim2 = std::min(grid.max_mode2(), grid.n_v / 2 - 1);
        if (std::abs(m.m1) > lim1 || std::abs(m.m2) > lim2)
            throw ConfigError("noise.modes: wavevector outside the dealiased band of the grid");
        if (!seen.insert({m.m1, m.m2}).second || seen.count({-m.m1, -m.m2}))
            throw ConfigError("noise.modes: duplicate wavevector (up to sign)");
        seen.insert({-m.m1, -m.m2});

        const double k1 = grid.wavenumber_unit() * m.m1;
        const double k2 = grid.wavenumber_unit() * m.m2;
        const double k_sq = k1 * k1 + k2 * k2;
        const double knorm = std::sqrt(k_sq);
        // Direction k-perp / |k| makes each image divergence-free.
        const double e1 = -k2 / knorm;
        const double e2 = k1 / knorm;
        // A cos(k.x) has H^1 norm sqrt((1 + |k|^2) L^2 / 2); normalize to 1.
        const double a = std::sqrt(2.0 / (1.0 + k_sq)) / grid.box_length;
        const double l2_sq = 1.0 / (1.0 + k_sq);
        const int idx_p = grid.index(mode_to_index(m.m1, grid.n_h), mode_to_index(m.m2, grid.n_v));
        const int idx_m = grid.index(mode_to_index(-m.m1, grid.n_h), mode_to_index(-m.m2, grid.n_v));
        const double amp = m.q / std::sqrt(2.0);

        Image cos_img;
        cos_img.idx_p = idx_p;
        cos_img.idx_m = idx_m;
        cos_img.c1_p = Complex(0.5 * a * e1, 0.0);
        cos_img.c2_p = Complex(0.5 * a * e2, 0.0);
        cos_img.c1_m = cos_img.c1_p;
        cos_img.c2_m = cos_img.c2_p;
        cos_img.amp = amp;
        cos_img.k_sq = k_sq;
        cos_img.l2_sq = l2_sq;
        op.images_.push_back(cos_img);

        Image sin_img = cos_img;
        sin_img.c1_p = Complex(0.0, -0.5 * a * e1);
        sin_img.c2_p = Complex(0.0, -0.5 * a * e2);
        sin_img.c1_m = std::conj(sin_img.c1_p);
        sin_img.c2_m = std::conj(sin_img.c2_p);
        op.images_.push_back(sin_img);
    }
    return op;
}

NoiseOperator NoiseOperator::decay_family(const Grid& grid, int count, double exponent,
                                          double base_amplitude) {
    if (count < 0) throw ConfigError("noise.decay: count must be >= 0");
    if (base_amplitude < 0.0) throw ConfigError("noise.decay: amplitude must be >= 0");
    auto wavevectors = canonical_wavevectors(count);
    std::vector<NoiseMode> modes;
    modes.reserve(count);
    for (int j = 0; j < count; ++j) {
        const double q = base_amplitude * std::pow(static_cast<double>(j + 1), -exponent);
        modes.push_back(NoiseMode{wavevectors[j].first, wavevectors[j].second, q});
    }
    return from_modes(grid, modes);
}

std::vector<std::pair<int, int>> canonical_wavevectors(int count) {
    // One representative per +-m pair: m1 > 0, or m1 == 0 and m2 > 0. The
    // search box grows until the count-th nearest vector provably lies inside.
    std::vector<std::pair<int, int>> reps;
    for (int radius = 1;; ++radius) {
        reps.clear();
        for (int m1 = -radius; m1 <= radius; ++m1)
            for (int m2 = -radius; m2 <= radius; ++m2) {
                if (m1 == 0 && m2 == 0) continue;
                if (m1 > 0 || (m1 == 0 && m2 > 0)) reps.push_back({m1, m2});
            }
        std::sort(reps.begin(), reps.end(), [](const auto& a, const auto& b) {
            const long ra = (long)a.first * a.first + (long)a.second * a.second;
            const long rb = (long)b.first * b.first + (long)b.second * b.second;
            if (ra != rb) return ra < rb;
            return a < b;
        });
        if (static_cast<int>(reps.size()) >= count) {
            const auto& last = reps[count > 0 ? count - 1 : 0];
            const long r_sq = (long)last.first * last.first + (long)last.second * last.second;
            if (r_sq <= (long)radius * radius) break;
        }
    }
    reps.resize(count);
    return reps;
}

NoiseOperator NoiseOperator::scaled(double factor) const {
    if (factor < 0.0) throw ConfigError("noise scale factor must be >= 0");
    NoiseOperator out = *this;
    for (Image& im : out.images_) im.amp *= factor;
    return out;
}

double NoiseOperator::hs_norm_sq(NoiseSpace space) const {
    double acc = 0.0;
    for (const Image& im : images_) {
        const double w = space == NoiseSpace::h1 ? 1.0 : im.l2_sq;
        acc += im.amp * im.amp * w;
    }
    return acc;
}

WienerIncrement NoiseOperator::sample_increment(RngStream& rng, double dt) const {
    if (!(dt > 0.0)) throw std::invalid_argument("sample_increment: dt must be positive");
    WienerIncrement inc;
    inc.xi.resize(images_.size());
    const double sd = std::sqrt(dt);
    for (std::size_t j = 0; j < images_.size(); ++j) inc.xi[j] = sd * rng.next_gaussian();
    return inc;
}

SpectralVelocity NoiseOperator::apply(const WienerIncrement& xi) const {
    SpectralVelocity out(grid_);
    add_scaled(out, xi);
    return out;
}

void NoiseOperator::add_scaled(SpectralVelocity& target, const WienerIncrement& xi) const {
    if (xi.xi.size() != images_.size())
        throw std::invalid_argument("noise increment does not match the operator's mode count");
    target.check_grid(grid_);
    Complex* c1 = target.comp1().data();
    Complex* c2 = target.comp2().data();
    for (std::size_t j = 0; j < images_.size(); ++j) {
        const Image& im = images_[j];
        const double w = im.amp * xi.xi[j];
        c1[im.idx_p] += w * im.c1_p;
        c2[im.idx_p] += w * im.c2_p;
        c1[im.idx_m] += w * im.c1_m;
        c2[im.idx_m] += w * im.c2_m;
    }
}

std::vector<double> NoiseOperator::pairings(const SpectralVelocity& z) const {
    z.check_grid(grid_);
    const double area = grid_.box_length * grid_.box_length;
    std::vector<double> out(images_.size());
    const Complex* z1 = z.comp1().data();
    const Complex* z2 = z.comp2().data();
    for (std::size_t j = 0; j < images_.size(); ++j) {
        const Image& im = images_[j];
        const Complex acc = im.c1_p * std::conj(z1[im.idx_p]) + im.c2_p * std::conj(z2[im.idx_p]) +
                            im.c1_m * std::conj(z1[im.idx_m]) + im.c2_m * std::conj(z2[im.idx_m]);
        out[j] = area * acc.real();
    }
    return out;
}

SpectralVelocity NoiseOperator::basis_image(int j) const {
    SpectralVelocity out(grid_);
    const Image& im = images_[j];
    out.comp1().data()[im.idx_p] = im.c1_p;
    out.comp2().data()[im.idx_p] = im.c2_p;
    out.comp1().data()[im.idx_m] += im.c1_m;
    out.comp2().data()[im.idx_m] += im.c2_m;
    return out;
}

}  // namespace adns
