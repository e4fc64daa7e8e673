#pragma once

#include <complex>
#include <memory>

#include "adns/grid.hpp"

namespace adns {

// Complex-to-complex 2D transforms for one grid size. Plans are created once
// (planner calls serialized internally) with FFTW_UNALIGNED, so execution on
// arbitrary distinct buffers is safe from multiple threads.
class Fft2D {
  public:
    Fft2D(int n_h, int n_v);
    ~Fft2D();
    Fft2D(const Fft2D&) = delete;
    Fft2D& operator=(const Fft2D&) = delete;

    // Synthesis: out[x] = sum_m in[m] exp(+i k_m . x).
    void to_physical(const std::complex<double>* in, std::complex<double>* out) const;
    // Analysis: out[m] = (1/N) sum_x in[x] exp(-i k_m . x).
    void to_spectral(const std::complex<double>* in, std::complex<double>* out) const;

    int size() const { return n_h_ * n_v_; }

  private:
    struct Plans;
    int n_h_, n_v_;
    std::unique_ptr<Plans> plans_;
};

// Process-wide plan cache keyed by (n_h, n_v).
std::shared_ptr<const Fft2D> fft_for(const Grid& grid);

}  // namespace adns
