// Scalar reference kernels. These define the semantics; the SIMD variants
// must reproduce them bit for bit. Reductions use four interleaved partial
// sums combined as (s0+s2)+(s1+s3) plus a sequential tail, which is the
// order a 4-lane vector accumulator naturally produces.

#include "topiclda/kernels/kernels_impl.hpp"

namespace topiclda::kernels::detail {
namespace {

void topic_weights_scalar(const std::int32_t* n_dk, const std::int32_t* n_kw,
                          const std::int32_t* n_k, double alpha, double beta,
                          double vbeta, double* w, std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
        w[i] = (static_cast<double>(n_dk[i]) + alpha) *
               (static_cast<double>(n_kw[i]) + beta) /
               (static_cast<double>(n_k[i]) + vbeta);
    }
}

void topic_weights_fixed_phi_scalar(const std::int32_t* n_dk,
                                    const double* phi_w, double alpha,
                                    double* w, std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
        w[i] = (static_cast<double>(n_dk[i]) + alpha) * phi_w[i];
    }
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t main = n - n % 4;
    std::size_t i = 0;
    for (; i < main; i += 4) {
        s0 += x[i] * y[i];
        s1 += x[i + 1] * y[i + 1];
        s2 += x[i + 2] * y[i + 2];
        s3 += x[i + 3] * y[i + 3];
    }
    double r = (s0 + s2) + (s1 + s3);
    for (; i < n; ++i) r += x[i] * y[i];
    return r;
}

double sum_squares_scalar(const double* x, std::size_t n) {
    return dot_scalar(x, x, n);
}

CenteredMoments centered_moments_scalar(const double* x, const double* y,
                                        double mean_x, double mean_y,
                                        std::size_t n) {
    double xy0 = 0.0, xy1 = 0.0, xy2 = 0.0, xy3 = 0.0;
    double xx0 = 0.0, xx1 = 0.0, xx2 = 0.0, xx3 = 0.0;
    double yy0 = 0.0, yy1 = 0.0, yy2 = 0.0, yy3 = 0.0;
    std::size_t main = n - n % 4;
    std::size_t i = 0;
    for (; i < main; i += 4) {
        double dx0 = x[i] - mean_x, dy0 = y[i] - mean_y;
        double dx1 = x[i + 1] - mean_x, dy1 = y[i + 1] - mean_y;
        double dx2 = x[i + 2] - mean_x, dy2 = y[i + 2] - mean_y;
        double dx3 = x[i + 3] - mean_x, dy3 = y[i + 3] - mean_y;
        xy0 += dx0 * dy0; xy1 += dx1 * dy1; xy2 += dx2 * dy2; xy3 += dx3 * dy3;
        xx0 += dx0 * dx0; xx1 += dx1 * dx1; xx2 += dx2 * dx2; xx3 += dx3 * dx3;
        yy0 += dy0 * dy0; yy1 += dy1 * dy1; yy2 += dy2 * dy2; yy3 += dy3 * dy3;
    }
    CenteredMoments m;
    m.sxy = (xy0 + xy2) + (xy1 + xy3);
    m.sxx = (xx0 + xx2) + (xx1 + xx3);
    m.syy = (yy0 + yy2) + (yy1 + yy3);
    for (; i < n; ++i) {
        double dx = x[i] - mean_x;
        double dy = y[i] - mean_y;
        m.sxy += dx * dy;
        m.sxx += dx * dx;
        m.syy += dy * dy;
    }
    return m;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

} // namespace

const KernelTable& scalar_table() {
    static const KernelTable table{
        topic_weights_scalar,  topic_weights_fixed_phi_scalar,
        dot_scalar,            sum_squares_scalar,
        centered_moments_scalar, axpy_scalar,
    };
    return table;
}

} // namespace topiclda::kernels::detail
