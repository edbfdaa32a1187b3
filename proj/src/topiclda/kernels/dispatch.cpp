// Runtime kernel selection. The table pointer is process-global; callers
// that need a specific variant (tests, the TOPICLDA_KERNELS env override)
// switch it before any sampling starts.

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "topiclda/kernels/kernels_impl.hpp"

namespace topiclda::kernels {

namespace {

using detail::KernelTable;

bool cpu_has_avx2() {
#if TOPICLDA_HAVE_AVX2
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

bool cpu_has_neon() {
#if TOPICLDA_HAVE_NEON
    return true; // NEON is baseline on aarch64
#else
    return false;
#endif
}

const KernelTable* table_for(Level level) {
    switch (level) {
    case Level::scalar:
        return &detail::scalar_table();
    case Level::avx2:
#if TOPICLDA_HAVE_AVX2
        return &detail::avx2_table();
#else
        return nullptr;
#endif
    case Level::neon:
#if TOPICLDA_HAVE_NEON
        return &detail::neon_table();
#else
        return nullptr;
#endif
    }
    return nullptr;
}

Level best_supported() {
    if (cpu_has_avx2()) return Level::avx2;
    if (cpu_has_neon()) return Level::neon;
    return Level::scalar;
}

Level initial_level() {
    if (const char* env = std::getenv("TOPICLDA_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return Level::scalar;
        if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) return Level::avx2;
        if (std::strcmp(env, "neon") == 0 && cpu_has_neon()) return Level::neon;
        // "auto" and unrecognized values fall through
    }
    return best_supported();
}

struct Active {
    std::atomic<Level> level;
    std::atomic<const KernelTable*> table;
    Active() {
        Level l = initial_level();
        level.store(l);
        table.store(table_for(l));
    }
};

Active& active() {
    static Active a;
    return a;
}

const KernelTable& tab() { return *active().table.load(std::memory_order_relaxed); }

} // namespace

const char* level_name(Level level) {
    switch (level) {
    case Level::scalar: return "scalar";
    case Level::avx2: return "avx2";
    case Level::neon: return "neon";
    }
    return "?";
}

bool level_supported(Level level) {
    switch (level) {
    case Level::scalar: return true;
    case Level::avx2: return cpu_has_avx2();
    case Level::neon: return cpu_has_neon();
    }
    return false;
}

Level active_level() { return active().level.load(); }

bool set_level(Level level) {
    const KernelTable* t = level_supported(level) ? table_for(level) : nullptr;
    if (!t) return false;
    active().level.store(level);
    active().table.store(t);
    return true;
}

void topic_weights(const std::int32_t* n_dk, const std::int32_t* n_kw,
                   const std::int32_t* n_k, double alpha, double beta,
                   double vbeta, double* w, std::size_t k) {
    tab().topic_weights(n_dk, n_kw, n_k, alpha, beta, vbeta, w, k);
}

void topic_weights_fixed_phi(const std::int32_t* n_dk, const double* phi_w,
                             double alpha, double* w, std::size_t k) {
    tab().topic_weights_fixed_phi(n_dk, phi_w, alpha, w, k);
}

double dot(const double* x, const double* y, std::size_t n) {
    return tab().dot(x, y, n);
}

double sum_squares(const double* x, std::size_t n) {
    return tab().sum_squares(x, n);
}

CenteredMoments centered_moments(const double* x, const double* y,
                                 double mean_x, double mean_y, std::size_t n) {
    return tab().centered_moments(x, y, mean_x, mean_y, n);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    tab().axpy(a, x, y, n);
}

} // namespace topiclda::kernels
