#pragma once

#include <cstdint>

#include "topiclda/error.hpp"

namespace topiclda {

struct LdaConfig {
    int topics = 100;          // K
    double alpha = 0.01;       // symmetric document-Dirichlet concentration
    double beta = 0.01;        // symmetric topic-word Dirichlet concentration
    int iterations = 1000;     // full Gibbs sweeps
    int burn_in = 200;         // sweeps before estimation samples are taken
    int sample_lag = 10;       // sweeps between averaged samples
    bool average_samples = false; // off by default: point estimates only
    std::uint64_t seed = 0;

    void validate() const {
        if (topics < 1) throw InvalidConfig("topics must be >= 1");
        if (!(alpha > 0.0)) throw InvalidConfig("alpha must be > 0");
        if (!(beta > 0.0)) throw InvalidConfig("beta must be > 0");
        if (iterations < 1) throw InvalidConfig("iterations must be >= 1");
        if (burn_in < 0 || burn_in >= iterations) {
            throw InvalidConfig("burn_in must satisfy 0 <= burn_in < iterations");
        }
        if (sample_lag < 1) throw InvalidConfig("sample_lag must be >= 1");
    }
};

} // namespace topiclda
