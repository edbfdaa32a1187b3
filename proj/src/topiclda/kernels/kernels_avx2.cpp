// AVX2 kernel variants. Compiled with -mavx2 -ffp-contract=off; only
// reached after the runtime CPU check in dispatch.cpp. Each routine mirrors
// the scalar reference exactly: same per-lane IEEE ops, same reduction
// order, same sequential tail.

#include <immintrin.h>

#include "topiclda/kernels/kernels_impl.hpp"

namespace topiclda::kernels::detail {
namespace {

inline __m256d load_i32_as_f64(const std::int32_t* p) {
    return _mm256_cvtepi32_pd(_mm_loadu_si128(reinterpret_cast<const __m128i*>(p)));
}

// (s0+s2) + (s1+s3) for acc = [s0, s1, s2, s3]
inline double reduce_striped(__m256d acc) {
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    __m128d pair = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(pair) + _mm_cvtsd_f64(_mm_unpackhi_pd(pair, pair));
}

void topic_weights_avx2(const std::int32_t* n_dk, const std::int32_t* n_kw,
                        const std::int32_t* n_k, double alpha, double beta,
                        double vbeta, double* w, std::size_t k) {
    const __m256d va = _mm256_set1_pd(alpha);
    const __m256d vb = _mm256_set1_pd(beta);
    const __m256d vvb = _mm256_set1_pd(vbeta);
    std::size_t main = k - k % 4;
    std::size_t i = 0;
    for (; i < main; i += 4) {
        __m256d d = _mm256_add_pd(load_i32_as_f64(n_dk + i), va);
        __m256d t = _mm256_add_pd(load_i32_as_f64(n_kw + i), vb);
        __m256d z = _mm256_add_pd(load_i32_as_f64(n_k + i), vvb);
        _mm256_storeu_pd(w + i, _mm256_div_pd(_mm256_mul_pd(d, t), z));
    }
    for (; i < k; ++i) {
        w[i] = (static_cast<double>(n_dk[i]) + alpha) *
               (static_cast<double>(n_kw[i]) + beta) /
               (static_cast<double>(n_k[i]) + vbeta);
    }
}

void topic_weights_fixed_phi_avx2(const std::int32_t* n_dk,
                                  const double* phi_w, double alpha,
                                  double* w, std::size_t k) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t main = k - k % 4;
    std::size_t i = 0;
    for (; i < main; i += 4) {
        __m256d d = _mm256_add_pd(load_i32_as_f64(n_dk + i), va);
        _mm256_storeu_pd(w + i, _mm256_mul_pd(d, _mm256_loadu_pd(phi_w + i)));
    }
    for (; i < k; ++i) {
        w[i] = (static_cast<double>(n_dk[i]) + alpha) * phi_w[i];
    }
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t main = n - n % 4;
    std::size_t i = 0;
    for (; i < main; i += 4) {
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(x + i),
                                               _mm256_loadu_pd(y + i)));
    }
    double r = reduce_striped(acc);
    for (; i < n; ++i) r += x[i] * y[i];
    return r;
}

double sum_squares_avx2(const double* x, std::size_t n) {
    return dot_avx2(x, x, n);
}

CenteredMoments centered_moments_avx2(const double* x, const double* y,
                                      double mean_x, double mean_y,
                                      std::size_t n) {
    const __m256d mx = _mm256_set1_pd(mean_x);
    const __m256d my = _mm256_set1_pd(mean_y);
    __m256d axy = _mm256_setzero_pd();
    __m256d axx = _mm256_setzero_pd();
    __m256d ayy = _mm256_setzero_pd();
    std::size_t main = n - n % 4;
    std::size_t i = 0;
    for (; i < main; i += 4) {
        __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(x + i), mx);
        __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(y + i), my);
        axy = _mm256_add_pd(axy, _mm256_mul_pd(dx, dy));
        axx = _mm256_add_pd(axx, _mm256_mul_pd(dx, dx));
        ayy = _mm256_add_pd(ayy, _mm256_mul_pd(dy, dy));
    }
    CenteredMoments m;
    m.sxy = reduce_striped(axy);
    m.sxx = reduce_striped(axx);
    m.syy = reduce_striped(ayy);
    for (; i < n; ++i) {
        double dx = x[i] - mean_x;
        double dy = y[i] - mean_y;
        m.sxy += dx * dy;
        m.sxx += dx * dx;
        m.syy += dy * dy;
    }
    return m;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t main = n - n % 4;
    std::size_t i = 0;
    for (; i < main; i += 4) {
        __m256d yi = _mm256_loadu_pd(y + i);
        yi = _mm256_add_pd(yi, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
        _mm256_storeu_pd(y + i, yi);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

} // namespace

const KernelTable& avx2_table() {
    static const KernelTable table{
        topic_weights_avx2,  topic_weights_fixed_phi_avx2,
        dot_avx2,            sum_squares_avx2,
        centered_moments_avx2, axpy_avx2,
    };
    return table;
}

} // namespace topiclda::kernels::detail
