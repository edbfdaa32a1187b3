// NEON kernel variants (aarch64, 2-lane f64). Elementwise kernels process
// two lanes per step; the reductions keep two 2-lane accumulators so the
// combine order (s0+s2)+(s1+s3) matches the scalar reference bit for bit.

#include <arm_neon.h>

#include "topiclda/kernels/kernels_impl.hpp"

namespace topiclda::kernels::detail {
namespace {

inline float64x2_t load_i32_as_f64(const std::int32_t* p) {
    return vcvtq_f64_s64(vmovl_s32(vld1_s32(p)));
}

inline double reduce_striped(float64x2_t acc_a, float64x2_t acc_b) {
    float64x2_t pair = vaddq_f64(acc_a, acc_b); // [s0+s2, s1+s3]
    return vgetq_lane_f64(pair, 0) + vgetq_lane_f64(pair, 1);
}

void topic_weights_neon(const std::int32_t* n_dk, const std::int32_t* n_kw,
                        const std::int32_t* n_k, double alpha, double beta,
                        double vbeta, double* w, std::size_t k) {
    const float64x2_t va = vdupq_n_f64(alpha);
    const float64x2_t vb = vdupq_n_f64(beta);
    const float64x2_t vvb = vdupq_n_f64(vbeta);
    std::size_t main = k - k % 2;
    std::size_t i = 0;
    for (; i < main; i += 2) {
        float64x2_t d = vaddq_f64(load_i32_as_f64(n_dk + i), va);
        float64x2_t t = vaddq_f64(load_i32_as_f64(n_kw + i), vb);
        float64x2_t z = vaddq_f64(load_i32_as_f64(n_k + i), vvb);
        vst1q_f64(w + i, vdivq_f64(vmulq_f64(d, t), z));
    }
    for (; i < k; ++i) {
        w[i] = (static_cast<double>(n_dk[i]) + alpha) *
               (static_cast<double>(n_kw[i]) + beta) /
               (static_cast<double>(n_k[i]) + vbeta);
    }
}

void topic_weights_fixed_phi_neon(const std::int32_t* n_dk,
                                  const double* phi_w, double alpha,
                                  double* w, std::size_t k) {
    const float64x2_t va = vdupq_n_f64(alpha);
    std::size_t main = k - k % 2;
    std::size_t i = 0;
    for (; i < main; i += 2) {
        float64x2_t d = vaddq_f64(load_i32_as_f64(n_dk + i), va);
        vst1q_f64(w + i, vmulq_f64(d, vld1q_f64(phi_w + i)));
    }
    for (; i < k; ++i) {
        w[i] = (static_cast<double>(n_dk[i]) + alpha) * phi_w[i];
    }
}

double dot_neon(const double* x, const double* y, std::size_t n) {
    float64x2_t acc_a = vdupq_n_f64(0.0);
    float64x2_t acc_b = vdupq_n_f64(0.0);
    std::size_t main = n - n % 4;
    std::size_t i = 0;
    for (; i < main; i += 4) {
        acc_a = vaddq_f64(acc_a, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
        acc_b = vaddq_f64(acc_b, vmulq_f64(vld1q_f64(x + i + 2), vld1q_f64(y + i + 2)));
    }
    double r = reduce_striped(acc_a, acc_b);
    for (; i < n; ++i) r += x[i] * y[i];
    return r;
}

double sum_squares_neon(const double* x, std::size_t n) {
    return dot_neon(x, x, n);
}

CenteredMoments centered_moments_neon(const double* x, const double* y,
                                      double mean_x, double mean_y,
                                      std::size_t n) {
    const float64x2_t mx = vdupq_n_f64(mean_x);
    const float64x2_t my = vdupq_n_f64(mean_y);
    float64x2_t xy_a = vdupq_n_f64(0.0), xy_b = vdupq_n_f64(0.0);
    float64x2_t xx_a = vdupq_n_f64(0.0), xx_b = vdupq_n_f64(0.0);
    float64x2_t yy_a = vdupq_n_f64(0.0), yy_b = vdupq_n_f64(0.0);
    std::size_t main = n - n % 4;
    std::size_t i = 0;
    for (; i < main; i += 4) {
        float64x2_t dxa = vsubq_f64(vld1q_f64(x + i), mx);
        float64x2_t dya = vsubq_f64(vld1q_f64(y + i), my);
        float64x2_t dxb = vsubq_f64(vld1q_f64(x + i + 2), mx);
        float64x2_t dyb = vsubq_f64(vld1q_f64(y + i + 2), my);
        xy_a = vaddq_f64(xy_a, vmulq_f64(dxa, dya));
        xy_b = vaddq_f64(xy_b, vmulq_f64(dxb, dyb));
        xx_a = vaddq_f64(xx_a, vmulq_f64(dxa, dxa));
        xx_b = vaddq_f64(xx_b, vmulq_f64(dxb, dxb));
        yy_a = vaddq_f64(yy_a, vmulq_f64(dya, dya));
        yy_b = vaddq_f64(yy_b, vmulq_f64(dyb, dyb));
    }
    CenteredMoments m;
    m.sxy = reduce_striped(xy_a, xy_b);
    m.sxx = reduce_striped(xx_a, xx_b);
    m.syy = reduce_striped(yy_a, yy_b);
    for (; i < n; ++i) {
        double dx = x[i] - mean_x;
        double dy = y[i] - mean_y;
        m.sxy += dx * dy;
        m.sxx += dx * dx;
        m.syy += dy * dy;
    }
    return m;
}

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t main = n - n % 2;
    std::size_t i = 0;
    for (; i < main; i += 2) {
        float64x2_t yi = vld1q_f64(y + i);
        yi = vaddq_f64(yi, vmulq_f64(va, vld1q_f64(x + i)));
        vst1q_f64(y + i, yi);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

} // namespace

const KernelTable& neon_table() {
    static const KernelTable table{
        topic_weights_neon,  topic_weights_fixed_phi_neon,
        dot_neon,            sum_squares_neon,
        centered_moments_neon, axpy_neon,
    };
    return table;
}

} // namespace topiclda::kernels::detail
