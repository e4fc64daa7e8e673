#include "adns/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace adns {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

struct Fft2D::Plans {
    fftw_plan backward = nullptr;  // spectral -> physical, exp(+ikx), unnormalized
    fftw_plan forward = nullptr;   // physical -> spectral, exp(-ikx), scaled by 1/N
};

Fft2D::Fft2D(int n_h, int n_v) : n_h_(n_h), n_v_(n_v), plans_(std::make_unique<Plans>()) {
    std::vector<std::complex<double>> in(size()), out(size());
    std::lock_guard<std::mutex> lock(planner_mutex());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    plans_->backward = fftw_plan_dft_2d(n_h_, n_v_, reinterpret_cast<fftw_complex*>(in.data()),
                                        reinterpret_cast<fftw_complex*>(out.data()), FFTW_BACKWARD, flags);
    plans_->forward = fftw_plan_dft_2d(n_h_, n_v_, reinterpret_cast<fftw_complex*>(in.data()),
                                       reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD, flags);
}

Fft2D::~Fft2D() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plans_->backward);
    fftw_destroy_plan(plans_->forward);
}

void Fft2D::to_physical(const std::complex<double>* in, std::complex<double>* out) const {
    fftw_execute_dft(plans_->backward,
                     reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

void Fft2D::to_spectral(const std::complex<double>* in, std::complex<double>* out) const {
    fftw_execute_dft(plans_->forward,
                     reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
    const double scale = 1.0 / size();
    for (int i = 0; i < size(); ++i) out[i] *= scale;
}

std::shared_ptr<const Fft2D> fft_for(const Grid& grid) {
    static std::mutex cache_mutex;
    static std::map<std::pair<int, int>, std::shared_ptr<const Fft2D>> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto key = std::make_pair(grid.n_h, grid.n_v);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto fft = std::make_shared<const Fft2D>(grid.n_h, grid.n_v);
    cache.emplace(key, fft);
    return fft;
}

}  // namespace adns
