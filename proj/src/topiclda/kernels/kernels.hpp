#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

// Arithmetic inner loops of the sampler and the recommenders. Each kernel
// has a scalar reference implementation and SIMD variants (AVX2 on x86-64,
// NEON on aarch64) selected at runtime from CPU features.
//
// Every kernel is bit-exact across variants:
//   * the elementwise kernels use only IEEE add/mul/div, which are
//     correctly rounded per lane at any vector width;
//   * the reductions fix the accumulation order to four interleaved
//     partial sums combined as (s0+s2)+(s1+s3) followed by a sequential
//     tail, and the SIMD variants reproduce exactly that order.
// Sampler traces and written artifacts therefore do not depend on which
// variant ran; the equivalence tests assert equality on raw bits.

namespace topiclda::kernels {

enum class Level { scalar, avx2, neon };

const char* level_name(Level level);
bool level_supported(Level level);

// Active variant set. Defaults to the best supported level, or to the value
// of the TOPICLDA_KERNELS environment variable (scalar|avx2|neon|auto) when
// set. set_level returns false if the level is unsupported on this CPU.
Level active_level();
bool set_level(Level level);

// w[k] = (n_dk[k] + alpha) * (n_kw[k] + beta) / (n_k[k] + vbeta)
//
// The collapsed per-token conditional, unnormalized, over all K topics.
// Inputs are the doc-topic row, the word-topic row and the topic totals
// with the current token already removed.
void topic_weights(const std::int32_t* n_dk, const std::int32_t* n_kw,
                   const std::int32_t* n_k, double alpha, double beta,
                   double vbeta, double* w, std::size_t k);

// w[k] = (n_dk[k] + alpha) * phi_w[k]
//
// Fold-in conditional: topic-word distributions held fixed, phi_w is the
// column of phi for the current word (stored contiguously).
void topic_weights_fixed_phi(const std::int32_t* n_dk, const double* phi_w,
                             double alpha, double* w, std::size_t k);

// Striped reductions (fixed order, see above).
double dot(const double* x, const double* y, std::size_t n);
double sum_squares(const double* x, std::size_t n);

// Centered second moments for Pearson similarity.
struct CenteredMoments {
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
};
CenteredMoments centered_moments(const double* x, const double* y,
                                 double mean_x, double mean_y, std::size_t n);

// y[i] += a * x[i]
void axpy(double a, const double* x, double* y, std::size_t n);

} // namespace topiclda::kernels
