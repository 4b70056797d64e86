#include "sortlab/factor_analysis.hpp"

#include "sortlab/errors.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace sortlab {

namespace {

using Kind = StatsError::Kind;

constexpr double kEigenTolerance = 1e-12;
constexpr int kMaxSweeps = 100;
constexpr double kNegativeEigenvalueFloor = -1e-9;
constexpr int kMaxVarimaxIterations = 1000;
constexpr double kVarimaxGain = 1e-10;
constexpr std::size_t kMinRows = 4;
// Below this the smallest principal component is numerically zero and the
// inverse-based statistics (Bartlett, KMO, score weights) are meaningless.
constexpr double kSingularEigenvalue = 1e-12;

std::string column_name(std::span<const std::string_view> names, std::size_t k) {
    if (k < names.size()) {
        return std::string(names[k]);
    }
    return "column " + std::to_string(k);
}

// Names the variables that dominate the null-space eigenvector (last column).
std::string collinear_variables(const Matrix& vectors, std::span<const std::string_view> names) {
    const std::size_t last = vectors.cols() - 1;
    double biggest = 0.0;
    for (std::size_t i = 0; i < vectors.rows(); ++i) {
        biggest = std::max(biggest, std::abs(vectors(i, last)));
    }
    std::string out;
    for (std::size_t i = 0; i < vectors.rows(); ++i) {
        if (std::abs(vectors(i, last)) >= 0.25 * biggest) {
            out += (out.empty() ? "" : ", ") + column_name(names, i);
        }
    }
    return out;
}

double off_diagonal_norm(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (i != j) {
                s += a(i, j) * a(i, j);
            }
        }
    }
    return std::sqrt(s);
}

std::vector<double> row_norms(const Matrix& a) {
    std::vector<double> h(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (const double v : a.row(i)) {
            s += v * v;
        }
        h[i] = std::sqrt(s);
    }
    return h;
}

Matrix scale_rows(const Matrix& a, std::span<const double> factors, bool divide) {
    Matrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) = divide ? a(i, j) / factors[i] : a(i, j) * factors[i];
        }
    }
    return out;
}

std::vector<double> column_sums_of_squares(const Matrix& a) {
    std::vector<double> out(a.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out[j] += a(i, j) * a(i, j);
        }
    }
    return out;
}

}  // namespace

Matrix to_observations(const MetricsMatrix& m) {
    Matrix x(m.size(), MetricsMatrix::kVariables);
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t k = 0; k < MetricsMatrix::kVariables; ++k) {
            x(i, k) = m.value(i, k);
        }
    }
    return x;
}

DescriptiveStats descriptive_stats(const Matrix& data) {
    const std::size_t n = data.rows();
    if (n < 2) {
        throw StatsError(Kind::DegenerateInput, "descriptive statistics need at least 2 rows, got " +
                                                    std::to_string(n));
    }
    DescriptiveStats d;
    d.mean.assign(data.cols(), 0.0);
    d.sd.assign(data.cols(), 0.0);
    for (std::size_t k = 0; k < data.cols(); ++k) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sum += data(i, k);
        }
        const double mean = sum / static_cast<double>(n);
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double dev = data(i, k) - mean;
            ss += dev * dev;
        }
        d.mean[k] = mean;
        d.sd[k] = std::sqrt(ss / static_cast<double>(n - 1));
    }
    return d;
}

Matrix correlation_matrix(const Matrix& data, std::span<const std::string_view> names) {
    const std::size_t n = data.rows();
    const std::size_t p = data.cols();
    if (n < kMinRows) {
        throw StatsError(Kind::DegenerateInput, "insufficient rows for correlation: need at least " +
                                                    std::to_string(kMinRows) + ", got " + std::to_string(n));
    }
    const DescriptiveStats d = descriptive_stats(data);
    Matrix centered(n, p);
    std::vector<double> norm(p, 0.0);
    for (std::size_t k = 0; k < p; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            centered(i, k) = data(i, k) - d.mean[k];
            norm[k] += centered(i, k) * centered(i, k);
        }
        norm[k] = std::sqrt(norm[k]);
        if (norm[k] == 0.0 || !std::isfinite(norm[k])) {
            throw StatsError(Kind::ZeroVariance, "zero variance in " + column_name(names, k));
        }
    }
    Matrix r = Matrix::identity(p);
    for (std::size_t a = 0; a < p; ++a) {
        for (std::size_t b = a + 1; b < p; ++b) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                s += centered(i, a) * centered(i, b);
            }
            const double v = std::clamp(s / (norm[a] * norm[b]), -1.0, 1.0);
            r(a, b) = v;
            r(b, a) = v;
        }
    }
    return r;
}

BartlettResult bartlett_test(const Matrix& r, std::size_t n) {
    const std::size_t p = r.rows();
    if (!r.is_square() || p < 2) {
        throw StatsError(Kind::DegenerateInput, "Bartlett's test needs a square matrix with p >= 2");
    }
    if (n <= p) {
        throw StatsError(Kind::DegenerateInput, "Bartlett's test needs n > p");
    }
    const double det = determinant(r);
    if (!(det > 0.0)) {
        throw StatsError(Kind::SingularMatrix, "correlation matrix determinant is not positive");
    }
    const double pd = static_cast<double>(p);
    BartlettResult out;
    out.chi2 = -(static_cast<double>(n) - 1.0 - (2.0 * pd + 5.0) / 6.0) * std::log(det);
    if (out.chi2 == 0.0) {
        out.chi2 = 0.0;  // drop the sign of -0
    }
    out.df = p * (p - 1) / 2;
    const boost::math::chi_squared_distribution<double> dist(static_cast<double>(out.df));
    out.p_value = out.chi2 <= 0.0 ? 1.0 : boost::math::cdf(boost::math::complement(dist, out.chi2));
    return out;
}

KmoResult kmo(const Matrix& r) {
    const std::size_t p = r.rows();
    const Matrix s = inverse(r);
    KmoResult out;
    out.per_variable.assign(p, 0.0);
    double r_total = 0.0;
    double q_total = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
        double r_row = 0.0;
        double q_row = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
            if (i == j) {
                continue;
            }
            const double q = -s(i, j) / std::sqrt(s(i, i) * s(j, j));
            r_row += r(i, j) * r(i, j);
            q_row += q * q;
        }
        out.per_variable[i] = r_row + q_row > 0.0 ? r_row / (r_row + q_row) : 0.0;
        r_total += r_row;
        q_total += q_row;
    }
    if (r_total + q_total > 0.0) {
        out.overall = r_total / (r_total + q_total);
    } else {
        out.overall = 0.0;
        out.degenerate = true;
    }
    return out;
}

EigenDecomposition pca_eigen(const Matrix& r) {
    if (!r.is_square()) {
        throw StatsError(Kind::ShapeMismatch, "eigen-decomposition needs a square matrix");
    }
    const std::size_t n = r.rows();
    Matrix a = r;
    Matrix v = Matrix::identity(n);
    int sweeps = 0;
    while (off_diagonal_norm(a) >= kEigenTolerance) {
        if (sweeps == kMaxSweeps) {
            throw StatsError(Kind::NoConvergence, "Jacobi did not converge in " + std::to_string(kMaxSweeps) +
                                                      " sweeps");
        }
        ++sweeps;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) {
                    continue;
                }
                // Rotation annihilating a(p, q), smaller-angle root.
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&a](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

    EigenDecomposition out;
    out.sweeps = sweeps;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        out.values[j] = a(src, src);
        std::size_t biggest = 0;
        for (std::size_t k = 1; k < n; ++k) {
            if (std::abs(v(k, src)) > std::abs(v(biggest, src))) {
                biggest = k;
            }
        }
        const double sign = v(biggest, src) < 0.0 ? -1.0 : 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            out.vectors(k, j) = sign * v(k, src);
        }
    }
    return out;
}

Matrix loadings(std::span<const double> eigenvalues, const Matrix& eigenvectors) {
    if (eigenvalues.size() != eigenvectors.cols()) {
        throw StatsError(Kind::ShapeMismatch, "eigenvalue count does not match eigenvector columns");
    }
    Matrix a(eigenvectors.rows(), eigenvectors.cols());
    for (std::size_t j = 0; j < eigenvalues.size(); ++j) {
        double lambda = eigenvalues[j];
        if (lambda < kNegativeEigenvalueFloor) {
            throw StatsError(Kind::NegativeEigenvalue, "eigenvalue " + std::to_string(j + 1) + " is negative (" +
                                                           std::to_string(lambda) + ")");
        }
        lambda = std::max(lambda, 0.0);
        const double scale = std::sqrt(lambda);
        for (std::size_t i = 0; i < eigenvectors.rows(); ++i) {
            a(i, j) = eigenvectors(i, j) * scale;
        }
    }
    return a;
}

std::vector<double> communalities(const Matrix& a, std::size_t m) {
    m = std::min(m, a.cols());
    std::vector<double> h(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            h[i] += a(i, j) * a(i, j);
        }
    }
    return h;
}

std::size_t extract_factors(std::span<const double> eigenvalues) {
    const auto above = std::count_if(eigenvalues.begin(), eigenvalues.end(), [](double e) { return e > 1.0; });
    return std::max<std::size_t>(1, static_cast<std::size_t>(above));
}

double varimax_criterion(const Matrix& a) {
    const double p = static_cast<double>(a.rows());
    double total = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        double s2 = 0.0;
        double s4 = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            const double sq = a(i, j) * a(i, j);
            s2 += sq;
            s4 += sq * sq;
        }
        total += (p * s4 - s2 * s2) / (p * p);
    }
    return total;
}

VarimaxResult varimax(const Matrix& loadings, bool kaiser_normalize) {
    const std::size_t p = loadings.rows();
    const std::size_t m = loadings.cols();
    if (m <= 1) {
        return {loadings, Matrix::identity(m)};
    }

    std::vector<double> h;
    Matrix x = loadings;
    if (kaiser_normalize) {
        h = row_norms(loadings);
        for (std::size_t i = 0; i < p; ++i) {
            if (h[i] == 0.0) {
                throw StatsError(Kind::ZeroCommunalityRow,
                                 "row " + std::to_string(i) + " has zero communality; cannot Kaiser-normalize");
            }
        }
        x = scale_rows(loadings, h, true);
    }

    Matrix rot = Matrix::identity(m);
    const double pd = static_cast<double>(p);
    double criterion = varimax_criterion(x);
    for (int iter = 0; iter < kMaxVarimaxIterations; ++iter) {
        for (std::size_t j = 0; j + 1 < m; ++j) {
            for (std::size_t k = j + 1; k < m; ++k) {
                double sa = 0.0, sb = 0.0, sc = 0.0, sd = 0.0;
                for (std::size_t i = 0; i < p; ++i) {
                    const double u = x(i, j) * x(i, j) - x(i, k) * x(i, k);
                    const double v = 2.0 * x(i, j) * x(i, k);
                    sa += u;
                    sb += v;
                    sc += u * u - v * v;
                    sd += 2.0 * u * v;
                }
                const double num = sd - 2.0 * sa * sb / pd;
                const double den = sc - (sa * sa - sb * sb) / pd;
                const double phi = 0.25 * std::atan2(num, den);
                if (phi == 0.0) {
                    continue;
                }
                const double c = std::cos(phi);
                const double s = std::sin(phi);
                for (std::size_t i = 0; i < p; ++i) {
                    const double xj = x(i, j);
                    const double xk = x(i, k);
                    x(i, j) = c * xj + s * xk;
                    x(i, k) = -s * xj + c * xk;
                }
                for (std::size_t i = 0; i < m; ++i) {
                    const double rj = rot(i, j);
                    const double rk = rot(i, k);
                    rot(i, j) = c * rj + s * rk;
                    rot(i, k) = -s * rj + c * rk;
                }
            }
        }
        const double next = varimax_criterion(x);
        const double gain = next - criterion;
        criterion = next;
        if (gain < kVarimaxGain) {
            break;
        }
    }

    if (kaiser_normalize) {
        x = scale_rows(x, h, false);
    }
    return {std::move(x), std::move(rot)};
}

PromaxResult promax(const Matrix& loadings, double kappa, bool kaiser_normalize) {
    const std::size_t m = loadings.cols();
    if (m <= 1) {
        return {loadings, loadings, Matrix::identity(m), Matrix::identity(m)};
    }
    if (kappa < 1.0) {
        throw StatsError(Kind::DegenerateInput, "promax power must be >= 1");
    }

    const VarimaxResult vm = varimax(loadings, kaiser_normalize);
    std::vector<double> h;
    Matrix x = vm.loadings;
    if (kaiser_normalize) {
        h = row_norms(vm.loadings);
        x = scale_rows(vm.loadings, h, true);
    }

    Matrix target(x.rows(), m);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double v = x(i, j);
            target(i, j) = std::copysign(std::pow(std::abs(v), kappa), v);
        }
    }

    // least squares x * U ~= target, then rescale so factor variances are 1
    Matrix u;
    Matrix phi;
    try {
        const Matrix xt = x.transpose();
        u = inverse(xt * x) * (xt * target);
        const Matrix d = inverse(u.transpose() * u);
        for (std::size_t j = 0; j < m; ++j) {
            const double scale = std::sqrt(d(j, j));
            for (std::size_t i = 0; i < m; ++i) {
                u(i, j) *= scale;
            }
        }
        phi = inverse(u.transpose() * u);
    } catch (const StatsError& e) {
        if (e.kind() != Kind::SingularMatrix) {
            throw;
        }
        throw StatsError(Kind::SingularTransform, std::string("promax procrustes fit is singular: ") + e.what());
    }

    for (std::size_t i = 0; i < m; ++i) {
        phi(i, i) = 1.0;
        for (std::size_t j = i + 1; j < m; ++j) {
            const double sym = 0.5 * (phi(i, j) + phi(j, i));
            phi(i, j) = sym;
            phi(j, i) = sym;
        }
    }

    Matrix pattern = x * u;
    if (kaiser_normalize) {
        pattern = scale_rows(pattern, h, false);
    }
    PromaxResult out;
    out.structure = pattern * phi;
    out.pattern = std::move(pattern);
    out.factor_correlation = std::move(phi);
    out.transform = vm.rotation * u;
    return out;
}

Matrix score_coefficients(const Matrix& r, const Matrix& pattern, const Matrix& factor_correlation) {
    if (pattern.rows() != r.rows()) {
        throw StatsError(Kind::ShapeMismatch, "pattern rows do not match the correlation matrix");
    }
    return inverse(r) * (pattern * factor_correlation);
}

Matrix score_coefficients(const Matrix& r, const Matrix& pattern) {
    return score_coefficients(r, pattern, Matrix::identity(pattern.cols()));
}

std::string_view to_string(ScoreMode mode) noexcept {
    return mode == ScoreMode::zscore ? "zscore" : "paper-literal";
}

Matrix standard_scores(const Matrix& data, ScoreMode mode, double floor) {
    const DescriptiveStats d = descriptive_stats(data);
    for (std::size_t k = 0; k < data.cols(); ++k) {
        if (d.sd[k] == 0.0) {
            const std::string name = k < kVariableNames.size() && data.cols() == kVariableNames.size()
                                         ? std::string(kVariableNames[k])
                                         : "column " + std::to_string(k);
            throw StatsError(Kind::ZeroVariance, "zero variance in " + name);
        }
    }
    Matrix s(data.rows(), data.cols());
    for (std::size_t i = 0; i < data.rows(); ++i) {
        for (std::size_t k = 0; k < data.cols(); ++k) {
            s(i, k) = mode == ScoreMode::zscore ? (data(i, k) - d.mean[k]) / d.sd[k]
                                                : floor + (data(i, k) + d.mean[k]) / d.sd[k];
        }
    }
    return s;
}

Matrix assessor_contribution(const Matrix& weights, const Matrix& scores) {
    if (scores.cols() != weights.rows()) {
        throw StatsError(Kind::ShapeMismatch, "scores have " + std::to_string(scores.cols()) +
                                                  " variables but weights have " + std::to_string(weights.rows()));
    }
    return scores * weights;
}

PercentContribution eigen_percent(std::span<const double> eigenvalues, std::size_t p) {
    PercentContribution out;
    double running = 0.0;
    for (const double e : eigenvalues) {
        const double pct = 100.0 * e / static_cast<double>(p);
        running += pct;
        out.percent.push_back(pct);
        out.cumulative.push_back(running);
    }
    return out;
}

FactorModel analyze(const MetricsMatrix& metrics, const AnalysisOptions& options) {
    const std::string technique = metrics.rows.empty() ? "" : std::string(to_string(metrics.rows.front().technique));
    return analyze(to_observations(metrics), technique, options);
}

FactorModel analyze(const Matrix& observations, std::string technique, const AnalysisOptions& options) {
    if (observations.rows() < kMinRows) {
        throw StatsError(Kind::DegenerateInput, "insufficient rows: factor analysis needs at least " +
                                                    std::to_string(kMinRows) + ", got " +
                                                    std::to_string(observations.rows()));
    }
    const std::size_t p = observations.cols();
    std::span<const std::string_view> names;
    if (p == kVariableNames.size()) {
        names = kVariableNames;
    }

    FactorModel fm;
    fm.technique = std::move(technique);
    fm.observations = observations.rows();
    fm.score_mode = options.score_mode;
    fm.kappa = options.kappa;

    fm.descriptives = descriptive_stats(observations);
    fm.correlation = correlation_matrix(observations, names);
    EigenDecomposition eig = pca_eigen(fm.correlation);
    if (eig.values.back() <= kSingularEigenvalue) {
        throw StatsError(Kind::SingularMatrix, "correlation matrix is singular: " +
                                                   collinear_variables(eig.vectors, names) + " are collinear");
    }
    fm.bartlett = bartlett_test(fm.correlation, fm.observations);
    fm.kmo = kmo(fm.correlation);

    fm.eigenvalues = std::move(eig.values);
    fm.eigenvectors = std::move(eig.vectors);
    const PercentContribution pct = eigen_percent(fm.eigenvalues, p);
    fm.percent = pct.percent;
    fm.cumulative_percent = pct.cumulative;
    fm.loadings = loadings(fm.eigenvalues, fm.eigenvectors);
    fm.retained = extract_factors(fm.eigenvalues);
    fm.initial_communalities = communalities(fm.loadings, p);
    fm.communalities = communalities(fm.loadings, fm.retained);

    const Matrix extracted = fm.loadings.left_columns(fm.retained);
    PromaxResult rotated = promax(extracted, options.kappa, options.kaiser_normalize);
    fm.rotation_ssl = column_sums_of_squares(rotated.structure);
    fm.score_coefficients = score_coefficients(fm.correlation, rotated.pattern, rotated.factor_correlation);
    fm.pattern = std::move(rotated.pattern);
    fm.structure = std::move(rotated.structure);
    fm.factor_correlation = std::move(rotated.factor_correlation);

    const Matrix scores = standard_scores(observations, options.score_mode);
    fm.contributions = assessor_contribution(fm.score_coefficients, scores);
    return fm;
}

}  // namespace sortlab
