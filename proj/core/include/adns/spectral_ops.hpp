#pragma once

#include <cstdint>
#include <vector>

#include "adns/field.hpp"

namespace adns {

// Axis of the outer norm in an anisotropic mixed norm.
enum class OuterAxis { horizontal, vertical };

// --- modewise operators -----------------------------------------------------

// f - k (k . f) / |k|^2 per mode; the k = 0 mode passes through. Idempotent,
// annihilates gradients, output is divergence-free.
SpectralVelocity leray_project(const SpectralVelocity& f);

// Multiply by (i k_axis)^order. Odd orders zero the Nyquist line of the
// differentiated axis so real fields stay real.
ScalarField partial_derivative(const ScalarField& f, int axis, int order = 1);
SpectralVelocity partial_derivative(const SpectralVelocity& f, int axis, int order = 1);

// d1 u2 - d2 u1.
ScalarField curl(const SpectralVelocity& u);

SpectralVelocity laplacian(const SpectralVelocity& u);

void apply_dealias_mask(ScalarField& f);
void apply_dealias_mask(SpectralVelocity& u);

// Hermitian-symmetrize coefficients so the physical field is real.
void enforce_conjugate_symmetry(ScalarField& f);
void enforce_conjugate_symmetry(SpectralVelocity& u);

// max_k |k . u_hat(k)| — direct divergence diagnostic.
double max_divergence(const SpectralVelocity& u);

// --- inner products and norms -----------------------------------------------

// Parseval pairing L^2 sum_k f_hat conj(g_hat); real for real fields.
double l2_inner(const ScalarField& f, const ScalarField& g);
double l2_inner(const SpectralVelocity& f, const SpectralVelocity& g);

double l2_norm_sq(const ScalarField& f);
double l2_norm_sq(const SpectralVelocity& f);
double h1_norm_sq(const SpectralVelocity& f);  // sum (1 + |k|^2) |u_hat|^2 L^2

// All squared norms the energy ledger tracks, in one pass over modes.
struct NormSnapshot {
    double l2_sq = 0;      // |z|^2
    double d1_sq = 0;      // |d1 z|^2
    double d2_sq = 0;      // |d2 z|^2
    double grad_sq = 0;    // |grad z|^2
    double d1grad_sq = 0;  // |d1 grad z|^2
    double d1d2_sq = 0;    // |d1 d2 z|^2
};
NormSnapshot norm_snapshot(const SpectralVelocity& u);

// Mixed norm with outer exponent p over `outer` lines and inner exponent q
// along the other axis, evaluated on the collocation grid (grid maxima stand
// in for essential suprema). Only p, q in {2, infinity} are supported;
// pass 0 to mean infinity.
double anisotropic_mixed_norm(const ScalarField& f, OuterAxis outer, int p_outer, int q_inner);

// --- pseudospectral products --------------------------------------------------

// (v . grad) u computed in physical space, dealiased on return. Not
// Leray-projected; callers compose with leray_project.
SpectralVelocity nonlinear_term(const SpectralVelocity& u, const SpectralVelocity& v);

// ((u . grad) u, Laplacian u): exactly zero in the continuum, so this is a
// discretization residual.
double cancellation_residual(const SpectralVelocity& u);

// --- utilities ----------------------------------------------------------------

// Collocation values (real parts) in row-major point order.
std::vector<double> physical_values(const ScalarField& f);

// Gaussian coefficients with std amplitude * (1 + |k|^2)^(-spectrum_exponent/2),
// hermitized, Leray-projected, dealiased. Deterministic in the seed.
SpectralVelocity random_divfree_field(const Grid& grid, std::uint64_t seed, double spectrum_exponent,
                                      double amplitude);

}  // namespace adns
