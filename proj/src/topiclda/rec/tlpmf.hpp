#pragma once

#include "topiclda/matrix.hpp"
#include "topiclda/rec/transfer.hpp"

namespace topiclda {

// Topic- and location-aware probabilistic matrix factorization, likelihood
// only: a Gaussian over each observed rating with mean
//   f_ij = TL_ij * (U_i . C_j)
// i.e. the PMF dot product modulated by the topic-location relevance weight.
struct TlpmfModel {
    Matrix users;  // U: M x F
    Matrix items;  // C: N x F
    Matrix tl;     // TL: M x N, entries in [0, 1]
    double sigma2 = 1.0;

    void validate() const;
};

// log p(R | U, C, TL, sigma^2)
//   = sum_{(i,j) observed} [ -1/2 log(2 pi sigma^2) - (r_ij - f_ij)^2 / (2 sigma^2) ]
// Empty observation sets yield 0.
double tlpmf_log_likelihood(const TlpmfModel& model,
                            const RatingObservations& obs);

} // namespace topiclda
