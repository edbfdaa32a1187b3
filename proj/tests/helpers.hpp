#pragma once

// Shared test utilities: corpus builders, synthetic generators, independent
// reference computations, file helpers, and a CLI runner.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "topiclda/lda/sampler.hpp"
#include "topiclda/matrix.hpp"
#include "topiclda/rng.hpp"
#include "topiclda/text/corpus.hpp"

namespace testutil {

using namespace topiclda;

// ---------------------------------------------------------------- corpora --
// Corpus from explicit token strings; vocabulary is term-sorted.
inline Corpus corpus_from_tokens(
    const std::vector<std::vector<std::string>>& docs) {
    std::vector<std::string> terms;
    for (const auto& doc : docs) {
        for (const auto& t : doc) terms.push_back(t);
    }
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    Vocabulary vocab(terms);
    Corpus corpus;
    corpus.vocabulary = vocab;
    for (std::size_t d = 0; d < docs.size(); ++d) {
        Document doc;
        doc.id = "d" + std::to_string(d);
        doc.year = 2013 + static_cast<int>(d % 5);
        for (const auto& t : docs[d]) doc.tokens.push_back(vocab.id_of(t));
        corpus.documents.push_back(std::move(doc));
    }
    return corpus;
}

// Random corpus over a vocabulary of size v: doc lengths in [1, max_len].
inline Corpus random_corpus(Rng& rng, std::size_t num_docs, std::size_t v,
                            std::size_t max_len) {
    std::vector<std::string> terms;
    for (std::size_t w = 0; w < v; ++w) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "w%03zu", w);
        terms.emplace_back(buf);
    }
    Corpus corpus;
    corpus.vocabulary = Vocabulary(terms);
    for (std::size_t d = 0; d < num_docs; ++d) {
        Document doc;
        doc.id = "d" + std::to_string(d);
        doc.year = 2013 + static_cast<int>(rng.next_index(5));
        auto len = 1 + rng.next_index(max_len);
        for (std::size_t n = 0; n < len; ++n) {
            doc.tokens.push_back(static_cast<std::int32_t>(rng.next_index(v)));
        }
        corpus.documents.push_back(std::move(doc));
    }
    return corpus;
}

// Dirichlet sampling through independent Gamma(alpha, 1) draws generated
// by Marsaglia-Tsang on top of the pinned Rng.
inline double gamma_draw(Rng& rng, double shape);

inline std::vector<double> dirichlet_draw(Rng& rng, std::size_t k, double alpha) {
    std::vector<double> x(k);
    double sum = 0.0;
    for (auto& v : x) {
        v = gamma_draw(rng, alpha);
        sum += v;
    }
    for (auto& v : x) v /= sum;
    return x;
}

inline double gamma_draw_impl(Rng& rng, double shape) {
    // Marsaglia & Tsang; shape >= 1
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        // normal via Box-Muller on pinned uniforms
        double u1 = rng.next_double();
        double u2 = rng.next_double();
        if (u1 <= 0.0) continue;
        double n = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
        double x = 1.0 + c * n;
        if (x <= 0.0) continue;
        double v = x * x * x;
        double u = rng.next_double();
        if (u < 1.0 - 0.0331 * n * n * n * n) return d * v;
        if (u > 0.0 && std::log(u) < 0.5 * n * n + d * (1.0 - v + std::log(v))) {
            return d * v;
        }
    }
}

inline double gamma_draw(Rng& rng, double shape) {
    if (shape >= 1.0) return gamma_draw_impl(rng, shape);
    // boost for shape < 1
    double g = gamma_draw_impl(rng, shape + 1.0);
    double u = rng.next_double();
    while (u <= 0.0) u = rng.next_double();
    return g * std::pow(u, 1.0 / shape);
}

struct SyntheticCorpus {
    Corpus corpus;
    Matrix phi_true; // K x V
};

inline SyntheticCorpus synthetic_corpus(std::uint64_t seed, std::size_t k,
                                        std::size_t v, std::size_t docs,
                                        std::size_t doc_len,
                                        double theta_alpha = 0.5) {
    Rng rng(seed);
    SyntheticCorpus out;
    out.phi_true = Matrix(k, v);
    // well-separated topics: each concentrates on its own block of words
    const std::size_t block = v / k;
    for (std::size_t t = 0; t < k; ++t) {
        auto w0 = t * block;
        auto w1 = (t + 1 == k) ? v : (t + 1) * block;
        auto inside = dirichlet_draw(rng, w1 - w0, 1.0);
        for (std::size_t w = w0; w < w1; ++w) {
            out.phi_true.at(t, w) = 0.98 * inside[w - w0];
        }
        // 2% mass spread uniformly outside the block
        const double spill = 0.02 / static_cast<double>(v - (w1 - w0));
        for (std::size_t w = 0; w < v; ++w) {
            if (w < w0 || w >= w1) out.phi_true.at(t, w) = spill;
        }
    }

    std::vector<std::string> terms;
    for (std::size_t w = 0; w < v; ++w) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "w%03zu", w);
        terms.emplace_back(buf);
    }
    out.corpus.vocabulary = Vocabulary(terms);

    auto sample_discrete = [&](std::span<const double> p) {
        double u = rng.next_double();
        double c = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            c += p[i];
            if (u < c) return i;
        }
        return p.size() - 1;
    };

    for (std::size_t d = 0; d < docs; ++d) {
        auto theta = dirichlet_draw(rng, k, theta_alpha);
        Document doc;
        doc.id = "d" + std::to_string(d);
        doc.year = 2013 + static_cast<int>(d % 5);
        for (std::size_t n = 0; n < doc_len; ++n) {
            auto topic = sample_discrete(theta);
            auto word = sample_discrete(out.phi_true.row(topic));
            doc.tokens.push_back(static_cast<std::int32_t>(word));
        }
        out.corpus.documents.push_back(std::move(doc));
    }
    return out;
}

// ------------------------------------------------------------- numerics ---
inline double total_variation(std::span<const double> p,
                              std::span<const double> q) {
    double tv = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) tv += std::abs(p[i] - q[i]);
    return 0.5 * tv;
}

// mean per-topic TV between rows of a and b under the best row permutation
inline double matched_mean_tv(const Matrix& a, const Matrix& b) {
    const auto k = a.rows();
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    double best = 1e300;
    do {
        double total = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            total += total_variation(a.row(i), b.row(perm[i]));
        }
        best = std::min(best, total / static_cast<double>(k));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// ------------------------------------------------------------ filesystem --
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        auto base = std::filesystem::temp_directory_path();
        for (int i = 0; i < 10000; ++i) {
            auto candidate = base / ("topiclda_" + tag + "_" + std::to_string(i));
            std::error_code ec;
            if (std::filesystem::create_directory(candidate, ec)) {
                path_ = candidate;
                return;
            }
        }
        throw std::runtime_error("cannot create temp dir");
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    std::filesystem::path path() const { return path_; }
    std::string file(const std::string& name) const {
        return (path_ / name).string();
    }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// ---------------------------------------------------------------- CLI -----
struct CliResult {
    int exit_code = -1;
    std::string stdout_text;
};

inline CliResult run_cli(const std::string& args, const TempDir& dir,
                         const std::string& extra_env = "") {
    auto out_file = dir.file("cli_stdout_tmp.txt");
    std::string cmd = extra_env + (extra_env.empty() ? "" : " ") +
                      std::string(TOPICLDA_CLI_PATH) + " " + args + " > " +
                      out_file + " 2> " + dir.file("cli_stderr_tmp.txt");
    int status = std::system(cmd.c_str());
    CliResult res;
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    res.stdout_text = slurp(out_file);
    return res;
}

} // namespace testutil
