#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wm/combinat.hpp"
#include "wm/word.hpp"

namespace wm {

using Complex = std::complex<double>;

inline constexpr std::size_t kTensorCap = std::size_t{1} << 24;
inline constexpr int kMatrixSideCap = 512;

// Dense row-major complex matrix.
struct CMatrix {
    int rows = 0, cols = 0;
    std::vector<Complex> a;

    CMatrix() = default;
    CMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * static_cast<size_t>(c)) {}
    Complex& operator()(int i, int j) { return a[static_cast<size_t>(i) * static_cast<size_t>(cols) + static_cast<size_t>(j)]; }
    Complex operator()(int i, int j) const { return a[static_cast<size_t>(i) * static_cast<size_t>(cols) + static_cast<size_t>(j)]; }
};

CMatrix multiply(const CMatrix& x, const CMatrix& y);
CMatrix adjoint(const CMatrix& x);
Complex trace(const CMatrix& x);

// Entries i.i.d. with real and imaginary parts N(0, 1/2). Row-major over the
// colors, color 0 slowest.
struct GaussianTensor {
    DimensionProfile dims;
    std::vector<Complex> entries;
};

// Stream is a function of (seed, index) only.
GaussianTensor sample_tensor(const DimensionProfile& dims, std::uint64_t seed, std::uint64_t index);

// W_I = [id_I (x) Tr_rest](X X^*), legs of I in increasing color order; with
// pi, W[j][j'] -> W[j o pi][j' o pi].
struct MarginalMatrix {
    std::vector<int> colors;
    std::vector<long> leg_dims;
    CMatrix m;
};

MarginalMatrix marginal(const GaussianTensor& x, const std::vector<int>& subset,
                        const std::optional<Permutation>& pi = std::nullopt);

// Tr W_p ._{sigma_{p-1}} ... ._{sigma_1} W_1 with the closing twist sigma_p:
// the b-th row leg of factor a is contracted with the sigma_a(b)-th column
// leg of factor a+1.
Complex twisted_trace_product(const std::vector<MarginalMatrix>& ms, const std::vector<Permutation>& sigmas);

struct MCEstimate {
    double mean = 0;
    double std_error = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    nlohmann::json to_json() const;
    static MCEstimate from_json(const nlohmann::json& j);
};

// Mean and standard error of per-sample values, summed pairwise.
MCEstimate summarize(const std::vector<double>& values, std::uint64_t seed);

MCEstimate mc_moment(const MarginalWord& word, const DimensionProfile& dims, std::uint64_t samples, std::uint64_t seed);
// E W_{i_1 i_p} W_{i_p i_{p-1}} ... W_{i_2 i_1} for W = X X^*, X of shape N x M.
MCEstimate mc_entrywise(long N, long M, const std::vector<int>& indices, std::uint64_t samples, std::uint64_t seed);

// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
struct EigenResult {
    std::vector<double> values;
    CMatrix vectors;  // columns
};
EigenResult hermitian_eigen(const CMatrix& a, double tol = 1e-12, int max_sweeps = 100);

struct HistSpec {
    enum class Mode { Bipartite, Product } mode = Mode::Bipartite;
    long N = 64, M = 64;              // bipartite: X is N x M, eigenvalues of W / N
    long NA = 32, m = 1, ND = 32;     // product: W_AB^{1/2} W_AC W_AB^{1/2} / (NA m)^2
    int bins = 50;
    std::uint64_t samples = 50;
    std::uint64_t seed = 0;
};

struct Histogram {
    std::vector<double> edges;    // bins + 1
    std::vector<double> density;  // integrates to 1 - atom
    double atom = 0;              // fraction of (numerically) zero eigenvalues
    std::vector<double> moments;  // empirical moments 1..4 of the pooled spectrum
    std::uint64_t eigenvalue_count = 0;

    // Moment from the histogram itself (midpoints), atom excluded.
    double histogram_moment(int p) const;
    std::string to_csv() const;
};

// Pooled, rescaled spectrum for a sampler spec.
std::vector<double> sample_spectrum(const HistSpec& spec);
Histogram eigen_hist(const HistSpec& spec);

}  // namespace wm
