#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sortlab/bench.hpp"
#include "sortlab/matrix.hpp"

// Exploratory factor analysis by principal components over the three decision
// variables of a MetricsMatrix: descriptives, correlation, sampling adequacy
// (Bartlett, KMO), Jacobi eigen-decomposition, loadings, Kaiser retention,
// varimax/promax rotation, regression score coefficients and per-run
// contributions.
//
// Every function takes its inputs by const reference and has no shared state.

namespace sortlab {

inline constexpr std::array<std::string_view, 3> kVariableNames = {
    "Time taken(nano second)",
    "Memory Consumed(bits)",
    "Total memory used(KB)",
};

/// n x 3 observation matrix in (time_ns, mem_consumed_bits, total_mem_kb) order.
Matrix to_observations(const MetricsMatrix& m);

struct DescriptiveStats {
    std::vector<double> mean;
    std::vector<double> sd;  // sample (n - 1)
};

/// Throws StatsError(DegenerateInput) with fewer than 2 rows.
DescriptiveStats descriptive_stats(const Matrix& data);

/// Pearson correlation of the columns of `data`. Needs at least 4 rows
/// (DegenerateInput otherwise); throws StatsError(ZeroVariance) naming the
/// first constant column, using `names` when given.
Matrix correlation_matrix(const Matrix& data, std::span<const std::string_view> names = {});

struct BartlettResult {
    double chi2 = 0.0;
    std::size_t df = 0;
    double p_value = 1.0;
};

/// Bartlett's test of sphericity for correlation matrix `r` estimated from
/// `n` observations.
BartlettResult bartlett_test(const Matrix& r, std::size_t n);

struct KmoResult {
    double overall = 0.0;
    std::vector<double> per_variable;
    /// Set when there are no off-diagonal correlations, so the ratio is 0/0
    /// and reported as 0.
    bool degenerate = false;
};

KmoResult kmo(const Matrix& r);

struct EigenDecomposition {
    std::vector<double> values;  // descending
    Matrix vectors;              // orthonormal columns, matching `values`
    int sweeps = 0;
};

/// Cyclic Jacobi on a symmetric matrix. Stops when the off-diagonal Frobenius
/// norm drops below 1e-12; throws StatsError(NoConvergence) after 100 sweeps.
/// Each eigenvector is signed so its largest-magnitude entry is positive.
EigenDecomposition pca_eigen(const Matrix& r);

/// Column j is eigenvector j scaled by sqrt(eigenvalue j). Eigenvalues in
/// (-1e-9, 0) are treated as 0; anything lower is a StatsError.
Matrix loadings(std::span<const double> eigenvalues, const Matrix& eigenvectors);

/// Row sums of squared loadings over the first m columns.
std::vector<double> communalities(const Matrix& loadings, std::size_t m);

/// Kaiser criterion: number of eigenvalues strictly above 1, at least 1.
std::size_t extract_factors(std::span<const double> eigenvalues);

/// Raw varimax criterion: sum over columns of the variance of squared loadings.
double varimax_criterion(const Matrix& loadings);

struct VarimaxResult {
    Matrix loadings;  // rotated, p x m
    Matrix rotation;  // orthogonal m x m with input * rotation == loadings
};

/// Kaiser's pairwise planar varimax. With `kaiser_normalize`, rows are scaled
/// to unit length during the rotation.
VarimaxResult varimax(const Matrix& loadings, bool kaiser_normalize = true);

struct PromaxResult {
    Matrix pattern;             // p x m
    Matrix structure;           // pattern * factor_correlation
    Matrix factor_correlation;  // m x m, unit diagonal
    Matrix transform;           // m x m with input * transform == pattern
};

/// Varimax followed by an oblique least-squares fit to the target
/// sign(x)|x|^kappa. A single factor comes back unchanged.
PromaxResult promax(const Matrix& loadings, double kappa = 4.0, bool kaiser_normalize = true);

/// Regression-method weights r^-1 * structure, where structure is
/// pattern * factor_correlation.
Matrix score_coefficients(const Matrix& r, const Matrix& pattern, const Matrix& factor_correlation);
Matrix score_coefficients(const Matrix& r, const Matrix& pattern);

enum class ScoreMode { zscore, paper_literal };

std::string_view to_string(ScoreMode mode) noexcept;

/// zscore: (x - mean) / sd. paper_literal: floor + (x + mean) / sd, the
/// standard-score formula exactly as it was printed (sign included).
Matrix standard_scores(const Matrix& data, ScoreMode mode, double floor = 1.0);

/// Per-observation factor contributions S * W. Throws ShapeMismatch when the
/// variable counts disagree.
Matrix assessor_contribution(const Matrix& weights, const Matrix& scores);

struct PercentContribution {
    std::vector<double> percent;
    std::vector<double> cumulative;
};

/// 100 * E_j / p and its running total.
PercentContribution eigen_percent(std::span<const double> eigenvalues, std::size_t p);

struct AnalysisOptions {
    ScoreMode score_mode = ScoreMode::zscore;
    double kappa = 4.0;
    bool kaiser_normalize = true;
};

struct FactorModel {
    std::string technique;
    std::size_t observations = 0;
    ScoreMode score_mode = ScoreMode::zscore;
    double kappa = 4.0;

    DescriptiveStats descriptives;
    Matrix correlation;
    BartlettResult bartlett;
    KmoResult kmo;

    std::vector<double> eigenvalues;
    Matrix eigenvectors;
    std::vector<double> percent;
    std::vector<double> cumulative_percent;
    Matrix loadings;  // all p components
    std::size_t retained = 0;
    std::vector<double> initial_communalities;
    std::vector<double> communalities;  // over the retained components

    Matrix pattern;
    Matrix structure;
    Matrix factor_correlation;
    std::vector<double> rotation_ssl;
    Matrix score_coefficients;
    Matrix contributions;  // observations x retained
};

/// Full pipeline for one technique. Throws StatsError(DegenerateInput,
/// "insufficient rows ...") below 4 rows.
FactorModel analyze(const MetricsMatrix& metrics, const AnalysisOptions& options = {});
FactorModel analyze(const Matrix& observations, std::string technique, const AnalysisOptions& options = {});

}  // namespace sortlab
