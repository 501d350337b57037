#include <atomic>
#include <stdexcept>
#include <string>

#include "wscov/kernels.hpp"

namespace wscov::kernels {

namespace {

struct KernelTable {
    Backend backend;
    ResolventSums (*resolvent)(std::span<const double>, std::span<const double>, cplx, cplx);
    WeightSum (*weights)(std::span<const double>, std::span<const double>, cplx);
};

constexpr KernelTable kScalar{Backend::scalar, &scalar::resolvent_sums, &scalar::weight_sum};
#if defined(__x86_64__) || defined(_M_X64)
constexpr KernelTable kAvx2{Backend::avx2, &avx2::resolvent_sums, &avx2::weight_sum};
#endif
#if defined(__aarch64__)
constexpr KernelTable kNeon{Backend::neon, &neon::resolvent_sums, &neon::weight_sum};
#endif

const KernelTable* table_for(Backend b) noexcept {
    switch (b) {
        case Backend::scalar:
            return &kScalar;
        case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
            return &kAvx2;
#else
            return nullptr;
#endif
        case Backend::neon:
#if defined(__aarch64__)
            return &kNeon;
#else
            return nullptr;
#endif
    }
    return nullptr;
}

std::atomic<const KernelTable*>& active_table() noexcept {
    static std::atomic<const KernelTable*> table{table_for(detect_backend())};
    return table;
}

}  // namespace

std::string_view backend_name(Backend b) noexcept {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "unknown";
}

bool backend_supported(Backend b) noexcept {
    switch (b) {
        case Backend::scalar:
            return true;
        case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Backend::neon:
#if defined(__aarch64__)
            return true;
#else
            return false;
#endif
    }
    return false;
}

Backend detect_backend() noexcept {
    if (backend_supported(Backend::avx2)) return Backend::avx2;
    if (backend_supported(Backend::neon)) return Backend::neon;
    return Backend::scalar;
}

Backend active_backend() noexcept { return active_table().load(std::memory_order_acquire)->backend; }

void set_backend(Backend b) {
    if (!backend_supported(b)) {
        throw std::invalid_argument("kernel backend '" + std::string(backend_name(b)) + "' is not supported on this CPU");
    }
    active_table().store(table_for(b), std::memory_order_release);
}

ResolventSums resolvent_sums(std::span<const double> taus, std::span<const double> weights, cplx t, cplx z) {
    return active_table().load(std::memory_order_acquire)->resolvent(taus, weights, t, z);
}

WeightSum weight_sum(std::span<const double> deltas, std::span<const double> weights, cplx k) {
    return active_table().load(std::memory_order_acquire)->weights(deltas, weights, k);
}

}  // namespace wscov::kernels
