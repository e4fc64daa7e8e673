#pragma once

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

namespace adns {

// Periodic collocation/mode grid on [0, L)^2. Axis 1 is horizontal, axis 2
// vertical. Retained integer modes per axis are m in [-n/2, n/2), stored in
// standard DFT order (m = j for j < n/2, m = j - n otherwise), row-major with
// the horizontal index as the slow one.
struct Grid {
    int n_h = 0;
    int n_v = 0;
    double box_length = 2.0 * std::numbers::pi;
    double dealias_fraction = 2.0 / 3.0;

    static Grid make(int n_h, int n_v, double box_length = 2.0 * std::numbers::pi,
                     double dealias_fraction = 2.0 / 3.0) {
        if (n_h < 8 || n_h % 2 != 0) throw std::invalid_argument("grid: n_h must be even and >= 8");
        if (n_v < 8 || n_v % 2 != 0) throw std::invalid_argument("grid: n_v must be even and >= 8");
        if (!(box_length > 0.0)) throw std::invalid_argument("grid: box_length must be positive");
        if (!(dealias_fraction > 0.0) || dealias_fraction > 1.0)
            throw std::invalid_argument("grid: dealias_fraction must lie in (0, 1]");
        return Grid{n_h, n_v, box_length, dealias_fraction};
    }

    int size() const { return n_h * n_v; }
    int index(int j1, int j2) const { return j1 * n_v + j2; }

    int mode1(int j1) const { return j1 < n_h / 2 ? j1 : j1 - n_h; }
    int mode2(int j2) const { return j2 < n_v / 2 ? j2 : j2 - n_v; }

    // j-index of the wrapped negative mode -m.
    int conj1(int j1) const { return j1 == 0 ? 0 : n_h - j1; }
    int conj2(int j2) const { return j2 == 0 ? 0 : n_v - j2; }

    double wavenumber_unit() const { return 2.0 * std::numbers::pi / box_length; }
    double k1(int j1) const { return wavenumber_unit() * mode1(j1); }
    double k2(int j2) const { return wavenumber_unit() * mode2(j2); }

    bool in_dealias_mask(int j1, int j2) const {
        return std::abs(mode1(j1)) <= dealias_fraction * (n_h / 2.0) &&
               std::abs(mode2(j2)) <= dealias_fraction * (n_v / 2.0);
    }

    // Largest retained |m| per axis under the mask.
    int max_mode1() const { return (int)std::floor(dealias_fraction * (n_h / 2.0) + 1e-12); }
    int max_mode2() const { return (int)std::floor(dealias_fraction * (n_v / 2.0) + 1e-12); }

    bool operator==(const Grid& o) const {
        return n_h == o.n_h && n_v == o.n_v && box_length == o.box_length &&
               dealias_fraction == o.dealias_fraction;
    }
    bool operator!=(const Grid& o) const { return !(*this == o); }
};

}  // namespace adns
