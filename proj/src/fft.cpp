#include "detail/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "boussinesq/errors.hpp"

namespace bq::detail {
namespace {

class PlanCache {
public:
    PlanCache() = default;
    PlanCache(const PlanCache&) = delete;
    PlanCache& operator=(const PlanCache&) = delete;
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(int n0, int n1, FftSign sign) {
        const auto key = std::make_tuple(n0, n1, sign == FftSign::Forward);
        std::lock_guard lock(mutex_);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        const std::size_t n = static_cast<std::size_t>(n0) * static_cast<std::size_t>(n1);
        std::vector<std::complex<double>> in(n), out(n);
        auto* pin = reinterpret_cast<fftw_complex*>(in.data());
        auto* pout = reinterpret_cast<fftw_complex*>(out.data());
        const int direction = sign == FftSign::Forward ? FFTW_FORWARD : FFTW_BACKWARD;
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        fftw_plan plan = n1 == 1 ? fftw_plan_dft_1d(n0, pin, pout, direction, flags)
                                 : fftw_plan_dft_2d(n0, n1, pin, pout, direction, flags);
        if (plan == nullptr) throw GridError("FFTW could not create a plan");
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::tuple<int, int, bool>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

}  // namespace

void fft(std::span<const std::complex<double>> in, std::span<std::complex<double>> out, int n0,
         int n1, FftSign sign) {
    const std::size_t n = static_cast<std::size_t>(n0) * static_cast<std::size_t>(n1);
    if (in.size() != n || out.size() != n) throw GridError("FFT buffer size mismatch");
    fftw_plan plan = cache().get(n0, n1, sign);
    // FFTW takes a non-const input pointer but leaves out-of-place input untouched.
    auto* pin = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data()));
    fftw_execute_dft(plan, pin, reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace bq::detail
