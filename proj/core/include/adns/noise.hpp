#pragma once

#include <cstdint>
#include <vector>

#include "adns/field.hpp"
#include "adns/rng.hpp"

namespace adns {

// One configured noise entry: integer wavevector and intensity q >= 0.
struct NoiseMode {
    int m1 = 0;
    int m2 = 0;
    double q = 0.0;
};

enum class NoiseSpace { l2, h1 };

// Gaussian increments, one per basis image, each N(0, dt).
struct WienerIncrement {
    std::vector<double> xi;
};

// Additive noise operator built from finitely many divergence-free Fourier
// modes. Each entry (m, q) contributes the cos(k.x) / sin(k.x) pair along
// k-perp/|k|, each image normalized to unit H^1 norm and scaled by q/sqrt(2),
// so the entry's total Hilbert-Schmidt weight is exactly q^2 and
// K = |sigma|^2_{L2(l2,H1)} = sum_entries q^2.
class NoiseOperator {
  public:
    NoiseOperator() = default;

    static NoiseOperator from_modes(const Grid& grid, const std::vector<NoiseMode>& modes);
    // q_j = base_amplitude * j^(-exponent) on the first `count` wavevectors of
    // a fixed enumeration of Z^2 \ {0} (by |m|^2, then lexicographic, one
    // representative per +-m pair).
    static NoiseOperator decay_family(const Grid& grid, int count, double exponent,
                                      double base_amplitude);

    const Grid& grid() const { return grid_; }
    bool empty() const { return images_.empty(); }
    int image_count() const { return static_cast<int>(images_.size()); }

    double hs_norm_sq(NoiseSpace space) const;
    double k_h1() const { return hs_norm_sq(NoiseSpace::h1); }
    double k_l2() const { return hs_norm_sq(NoiseSpace::l2); }

    // Same mode family with every amplitude multiplied by `factor`.
    NoiseOperator scaled(double factor) const;

    WienerIncrement sample_increment(RngStream& rng, double dt) const;

    // sum_j amp_j xi_j phi_j; divergence-free by construction.
    SpectralVelocity apply(const WienerIncrement& xi) const;
    void add_scaled(SpectralVelocity& target, const WienerIncrement& xi) const;

    // L^2 pairings (phi_j, z) per image; the ledger's martingale increments
    // are built from these ((grad phi_j, grad z) = |k_j|^2 (phi_j, z)).
    std::vector<double> pairings(const SpectralVelocity& z) const;

    double image_amplitude(int j) const { return images_[j].amp; }
    double image_k_sq(int j) const { return images_[j].k_sq; }
    SpectralVelocity basis_image(int j) const;  // unit H^1 field, unscaled

  private:
    struct Image {
        int idx_p = 0, idx_m = 0;           // storage indices of +-m
        Complex c1_p, c2_p, c1_m, c2_m;     // coefficients of the unit-H1 image
        double amp = 0.0;                   // q / sqrt(2)
        double k_sq = 0.0;
        double l2_sq = 1.0;                 // |phi|^2_{L2} = 1 / (1 + |k|^2)
    };

    Grid grid_;
    std::vector<Image> images_;
};

// Canonical wavevector enumeration used by decay_family.
std::vector<std::pair<int, int>> canonical_wavevectors(int count);

}  // namespace adns
