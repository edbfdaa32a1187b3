#pragma once

// Internal: per-variant function table filled in by dispatch.cpp.

#include "topiclda/kernels/kernels.hpp"

namespace topiclda::kernels::detail {

struct KernelTable {
    void (*topic_weights)(const std::int32_t*, const std::int32_t*,
                          const std::int32_t*, double, double, double,
                          double*, std::size_t);
    void (*topic_weights_fixed_phi)(const std::int32_t*, const double*,
                                    double, double*, std::size_t);
    double (*dot)(const double*, const double*, std::size_t);
    double (*sum_squares)(const double*, std::size_t);
    CenteredMoments (*centered_moments)(const double*, const double*, double,
                                        double, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
};

const KernelTable& scalar_table();
#if TOPICLDA_HAVE_AVX2
const KernelTable& avx2_table();
#endif
#if TOPICLDA_HAVE_NEON
const KernelTable& neon_table();
#endif

} // namespace topiclda::kernels::detail
