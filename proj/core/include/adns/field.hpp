#pragma once

#include <complex>
#include <vector>

#include "adns/errors.hpp"
#include "adns/grid.hpp"

namespace adns {

using Complex = std::complex<double>;

// Scalar field stored as Fourier coefficients in DFT order. A field that
// represents a real function satisfies c(-m) = conj(c(m)).
class ScalarField {
  public:
    ScalarField() = default;
    explicit ScalarField(const Grid& g) : grid_(g), c_(g.size(), Complex{0.0, 0.0}) {}

    const Grid& grid() const { return grid_; }
    Complex& at(int j1, int j2) { return c_[grid_.index(j1, j2)]; }
    const Complex& at(int j1, int j2) const { return c_[grid_.index(j1, j2)]; }
    Complex* data() { return c_.data(); }
    const Complex* data() const { return c_.data(); }
    int size() const { return grid_.size(); }

    ScalarField& operator+=(const ScalarField& o) {
        check_grid(o.grid_);
        for (int i = 0; i < size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    ScalarField& operator-=(const ScalarField& o) {
        check_grid(o.grid_);
        for (int i = 0; i < size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    ScalarField& operator*=(double a) {
        for (auto& c : c_) c *= a;
        return *this;
    }

    void check_grid(const Grid& other) const {
        if (grid_ != other) throw GridMismatchError("scalar fields live on different grids");
    }

  private:
    Grid grid_;
    std::vector<Complex> c_;
};

// Two-component velocity field in spectral form. Divergence-freeness is a
// property maintained by the operations that promise it (Leray projection,
// noise synthesis, the time stepper), not by the type itself; outputs of the
// raw advection product are carried by the same type before projection.
class SpectralVelocity {
  public:
    SpectralVelocity() = default;
    explicit SpectralVelocity(const Grid& g) : c1_(g), c2_(g) {}
    SpectralVelocity(ScalarField c1, ScalarField c2) : c1_(std::move(c1)), c2_(std::move(c2)) {
        c1_.check_grid(c2_.grid());
    }

    const Grid& grid() const { return c1_.grid(); }
    ScalarField& comp1() { return c1_; }
    ScalarField& comp2() { return c2_; }
    const ScalarField& comp1() const { return c1_; }
    const ScalarField& comp2() const { return c2_; }

    SpectralVelocity& operator+=(const SpectralVelocity& o) {
        c1_ += o.c1_;
        c2_ += o.c2_;
        return *this;
    }
    SpectralVelocity& operator-=(const SpectralVelocity& o) {
        c1_ -= o.c1_;
        c2_ -= o.c2_;
        return *this;
    }
    SpectralVelocity& operator*=(double a) {
        c1_ *= a;
        c2_ *= a;
        return *this;
    }
    friend SpectralVelocity operator+(SpectralVelocity a, const SpectralVelocity& b) { return a += b; }
    friend SpectralVelocity operator-(SpectralVelocity a, const SpectralVelocity& b) { return a -= b; }
    friend SpectralVelocity operator*(double s, SpectralVelocity a) { return a *= s; }

    void check_grid(const Grid& other) const { c1_.check_grid(other); }

  private:
    ScalarField c1_, c2_;
};

}  // namespace adns
