#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "sortlab/errors.hpp"
#include "sortlab/factor_analysis.hpp"
#include "sortlab/factor_json.hpp"

#include <cmath>
#include <numeric>
#include <random>

using namespace sortlab;

namespace {

Matrix from3(const oracle::M3& a) {
    Matrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            m(i, j) = a[i][j];
        }
    }
    return m;
}

oracle::M3 to3(const Matrix& m) {
    oracle::M3 a{};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            a[i][j] = m(i, j);
        }
    }
    return a;
}

Matrix column(std::initializer_list<double> values) {
    Matrix m(values.size(), 1);
    std::size_t i = 0;
    for (const double v : values) {
        m(i++, 0) = v;
    }
    return m;
}

Matrix equicorrelation(double rho) {
    return Matrix{{1, rho, rho}, {rho, 1, rho}, {rho, rho, 1}};
}

StatsError::Kind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const StatsError& e) {
        return e.kind();
    }
    FAIL("expected StatsError");
    return StatsError::Kind::DegenerateInput;
}

}  // namespace

TEST_CASE("descriptive statistics") {
    auto d = descriptive_stats(column({1, 2, 3}));
    CHECK(d.mean[0] == 2.0);
    CHECK(d.sd[0] == 1.0);
    d = descriptive_stats(column({5, 5, 5, 5}));
    CHECK(d.mean[0] == 5.0);
    CHECK(d.sd[0] == 0.0);
    CHECK(kind_of([] { descriptive_stats(column({1})); }) == StatsError::Kind::DegenerateInput);

    // two-pass reference in long double
    std::mt19937_64 rng(100);
    std::uniform_real_distribution<double> u(0.0, 1e6);
    Matrix x(100, 1);
    long double sum = 0;
    for (std::size_t i = 0; i < 100; ++i) {
        x(i, 0) = u(rng);
        sum += x(i, 0);
    }
    const long double mean = sum / 100;
    long double ss = 0;
    for (std::size_t i = 0; i < 100; ++i) {
        ss += (x(i, 0) - mean) * (x(i, 0) - mean);
    }
    d = descriptive_stats(x);
    CHECK(d.mean[0] == doctest::Approx(double(mean)).epsilon(1e-12));
    CHECK(d.sd[0] == doctest::Approx(double(std::sqrt(ss / 99))).epsilon(1e-12));
}

TEST_CASE("correlation matrix") {
    const Matrix same{{1, 1}, {2, 2}, {3, 3}, {5, 5}};
    CHECK(correlation_matrix(same)(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
    const Matrix neg{{1, -1}, {2, -2}, {3, -3}, {5, -5}};
    CHECK(correlation_matrix(neg)(0, 1) == doctest::Approx(-1.0).epsilon(1e-15));

    const Matrix fixture{{1, 2}, {2, 4}, {3, 6}, {4, 9}};
    const double expected = oracle::pearson_direct({1, 2, 3, 4}, {2, 4, 6, 9});
    const Matrix r = correlation_matrix(fixture);
    CHECK(std::abs(r(0, 1) - expected) < 1e-12);
    CHECK(r(1, 0) == r(0, 1));
    CHECK(r(0, 0) == 1.0);

    const Matrix flat{{1, 7}, {2, 7}, {3, 7}, {4, 7}};
    try {
        correlation_matrix(flat, std::vector<std::string_view>{"time", "memory"});
        FAIL("expected ZeroVariance");
    } catch (const StatsError& e) {
        CHECK(e.kind() == StatsError::Kind::ZeroVariance);
        CHECK(std::string(e.what()).find("memory") != std::string::npos);
    }
    CHECK(kind_of([] { correlation_matrix(Matrix{{1, 2}, {2, 3}, {3, 5}}); }) ==
          StatsError::Kind::DegenerateInput);
}

TEST_CASE("correlation is invariant to positive column scaling") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g;
    Matrix x(40, 3);
    for (std::size_t i = 0; i < 40; ++i) {
        const double f = g(rng);
        x(i, 0) = f + 0.3 * g(rng);
        x(i, 1) = 2 * f + g(rng);
        x(i, 2) = g(rng);
    }
    const Matrix r = correlation_matrix(x);
    Matrix scaled = x;
    for (std::size_t i = 0; i < 40; ++i) {
        scaled(i, 0) *= 1e6;
        scaled(i, 2) *= 0.001;
    }
    CHECK(max_abs_diff(correlation_matrix(scaled), r) < 1e-12);
}

TEST_CASE("Bartlett's test") {
    const auto id = bartlett_test(Matrix::identity(3), 50);
    CHECK(id.chi2 == 0.0);
    CHECK_FALSE(std::signbit(id.chi2));
    CHECK(id.p_value == 1.0);
    CHECK(id.df == 3);

    const Matrix r = equicorrelation(0.9);
    const auto b = bartlett_test(r, 30);
    const double expected = -(29.0 - 11.0 / 6.0) * std::log(oracle::det3_cofactor(to3(r)));
    CHECK(std::abs(b.chi2 - expected) < 1e-9);
    CHECK(b.p_value < 1e-6);

    CHECK(bartlett_test(Matrix::identity(4), 10).df == 6);
    CHECK(kind_of([] { bartlett_test(Matrix{{1, 1}, {1, 1}}, 10); }) == StatsError::Kind::SingularMatrix);
    CHECK(kind_of([] { bartlett_test(Matrix::identity(3), 3); }) == StatsError::Kind::DegenerateInput);
}

TEST_CASE("KMO") {
    const auto id = kmo(Matrix::identity(3));
    CHECK(id.overall == 0.0);
    CHECK(id.degenerate);

    const Matrix r = equicorrelation(0.5);
    const auto inv = oracle::inverse3_adjugate(to3(r));
    double rr = 0, qq = 0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (i != j) {
                const double q = -inv[i][j] / std::sqrt(inv[i][i] * inv[j][j]);
                rr += r(i, j) * r(i, j);
                qq += q * q;
            }
        }
    }
    const auto k = kmo(r);
    CHECK_FALSE(k.degenerate);
    CHECK(k.overall == doctest::Approx(rr / (rr + qq)).epsilon(1e-12));
    for (const double v : k.per_variable) {
        CHECK(v == doctest::Approx(rr / (rr + qq)).epsilon(1e-12));  // symmetric fixture
    }

    std::mt19937_64 rng(4);
    for (int i = 0; i < 50; ++i) {
        const auto kr = kmo(from3(oracle::random_correlation(rng)));
        CHECK(kr.overall >= 0.0);
        CHECK(kr.overall <= 1.0);
        for (const double v : kr.per_variable) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
}

TEST_CASE("Jacobi eigen-decomposition") {
    auto e = pca_eigen(Matrix::identity(3));
    CHECK(e.values == std::vector<double>{1, 1, 1});
    CHECK(e.vectors == Matrix::identity(3));

    e = pca_eigen(Matrix{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}});
    CHECK(std::abs(e.values[0] - 3) < 1e-9);
    CHECK(std::abs(e.values[1]) < 1e-9);
    CHECK(std::abs(e.values[2]) < 1e-9);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(e.vectors(i, 0) == doctest::Approx(1 / std::sqrt(3.0)));
    }

    std::mt19937_64 rng(12);
    for (int k = 0; k < 100; ++k) {
        const auto a = oracle::random_correlation(rng);
        const Matrix r = from3(a);
        const auto eig = pca_eigen(r);
        const auto cubic = oracle::symmetric_eigenvalues_cubic(a);
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(std::abs(eig.values[j] - cubic[j]) < 1e-9);
        }
        CHECK(std::abs(std::accumulate(eig.values.begin(), eig.values.end(), 0.0) - 3.0) < 1e-9);
        CHECK(std::is_sorted(eig.values.rbegin(), eig.values.rend()));
        // orthonormal columns, eigen residuals, sign convention
        CHECK(max_abs_diff(eig.vectors.transpose() * eig.vectors, Matrix::identity(3)) < 1e-9);
        const Matrix rv = r * eig.vectors;
        for (std::size_t j = 0; j < 3; ++j) {
            std::size_t big = 0;
            for (std::size_t i = 0; i < 3; ++i) {
                CHECK(std::abs(rv(i, j) - eig.values[j] * eig.vectors(i, j)) < 1e-9);
                if (std::abs(eig.vectors(i, j)) > std::abs(eig.vectors(big, j))) {
                    big = i;
                }
            }
            CHECK(eig.vectors(big, j) > 0.0);
        }
    }
}

TEST_CASE("loadings and communalities") {
    auto e = pca_eigen(Matrix::identity(3));
    CHECK(loadings(e.values, e.vectors) == Matrix::identity(3));

    e = pca_eigen(Matrix{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}});
    const Matrix a1 = loadings(e.values, e.vectors);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(a1(i, 0) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(a1(i, 1)) < 1e-7);
        CHECK(std::abs(a1(i, 2)) < 1e-7);
    }

    std::mt19937_64 rng(3);
    for (int k = 0; k < 20; ++k) {
        const Matrix r = from3(oracle::random_correlation(rng));
        const auto eig = pca_eigen(r);
        const Matrix a = loadings(eig.values, eig.vectors);
        CHECK(max_abs_diff(a * a.transpose(), r) < 1e-8);
        for (const double h : communalities(a, 3)) {
            CHECK(std::abs(h - 1.0) < 1e-9);
        }
        const auto h1 = communalities(a, 1);
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(h1[i] == doctest::Approx(a(i, 0) * a(i, 0)));
            CHECK(h1[i] <= 1.0 + 1e-9);
        }
    }
    CHECK(communalities(Matrix::identity(3), 1) == std::vector<double>{1, 0, 0});

    CHECK(loadings(std::vector<double>{1.0, -5e-10}, Matrix::identity(2))(1, 1) == 0.0);
    CHECK(kind_of([] { loadings(std::vector<double>{1.0, -1e-6}, Matrix::identity(2)); }) ==
          StatsError::Kind::NegativeEigenvalue);
}

TEST_CASE("Kaiser retention") {
    CHECK(extract_factors(std::vector<double>{2.969, 0.031, 2.519e-6}) == 1);
    CHECK(extract_factors(std::vector<double>{1, 1, 1}) == 1);
    CHECK(extract_factors(std::vector<double>{1.5, 1.2, 0.3}) == 2);
    CHECK(extract_factors(std::vector<double>{0.5, 0.3}) == 1);
}

TEST_CASE("varimax") {
    const Matrix single{{0.9}, {0.8}, {0.3}};
    CHECK(varimax(single).loadings == single);

    const Matrix simple{{1, 0}, {0, 1}, {1, 0}, {0, 1}};
    CHECK(max_abs_diff(varimax(simple, false).loadings, simple) < 1e-9);
    CHECK(max_abs_diff(varimax(simple, true).loadings, simple) < 1e-9);

    const Matrix a{{0.7, 0.4}, {0.6, 0.5}, {0.2, 0.8}};
    const auto vm = varimax(a, false);
    const auto crit = [](const Matrix& m) {
        return oracle::varimax_criterion2({m(0, 0), m(1, 0), m(2, 0)}, {m(0, 1), m(1, 1), m(2, 1)});
    };
    const double rotated = crit(vm.loadings);
    CHECK(rotated >= crit(a));
    for (int deg = 0; deg < 360; ++deg) {
        const double t = deg * std::numbers::pi / 180.0;
        const Matrix rot{{std::cos(t), -std::sin(t)}, {std::sin(t), std::cos(t)}};
        CHECK(rotated >= crit(a * rot) - 1e-12);
    }
    CHECK(max_abs_diff(a * vm.rotation, vm.loadings) < 1e-12);
    CHECK(max_abs_diff(vm.rotation.transpose() * vm.rotation, Matrix::identity(2)) < 1e-12);

    const Matrix zero_row{{0.7, 0.4}, {0, 0}, {0.2, 0.8}};
    CHECK(kind_of([&] { varimax(zero_row, true); }) == StatsError::Kind::ZeroCommunalityRow);
}

TEST_CASE("varimax preserves communalities") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-0.9, 0.9);
    for (int k = 0; k < 50; ++k) {
        Matrix a(3, 2);
        for (std::size_t i = 0; i < 3; ++i) {
            a(i, 0) = u(rng);
            a(i, 1) = u(rng);
        }
        for (const bool kaiser : {true, false}) {
            const auto before = communalities(a, 2);
            const auto after = communalities(varimax(a, kaiser).loadings, 2);
            for (std::size_t i = 0; i < 3; ++i) {
                CHECK(std::abs(before[i] - after[i]) < 1e-9);
            }
        }
    }
}

TEST_CASE("promax") {
    const Matrix single{{0.9}, {0.8}, {0.3}};
    const auto p1 = promax(single);
    CHECK(p1.pattern == single);
    CHECK(p1.factor_correlation == Matrix{{1}});

    // two independent latent factors, three indicators each
    std::mt19937_64 rng(8);
    std::normal_distribution<double> g;
    Matrix x(20000, 6);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const double f1 = g(rng), f2 = g(rng);
        for (std::size_t k = 0; k < 3; ++k) {
            x(i, k) = f1 + 0.5 * g(rng);
            x(i, k + 3) = f2 + 0.5 * g(rng);
        }
    }
    const Matrix r = correlation_matrix(x);
    const auto eig = pca_eigen(r);
    const std::size_t m = extract_factors(eig.values);
    REQUIRE(m == 2);
    const Matrix a = loadings(eig.values, eig.vectors).left_columns(m);
    const auto pm = promax(a, 4.0);
    CHECK(std::abs(pm.factor_correlation(0, 1)) < 0.05);
    CHECK(pm.factor_correlation(0, 0) == 1.0);
    CHECK(pm.factor_correlation(1, 1) == 1.0);
    CHECK(pm.factor_correlation(0, 1) == pm.factor_correlation(1, 0));
    CHECK(max_abs_diff(a * pm.transform, pm.pattern) < 1e-9);
    CHECK(max_abs_diff(pm.pattern * pm.factor_correlation, pm.structure) < 1e-12);

    // correlated factors give a visibly oblique solution
    Matrix y(20000, 6);
    for (std::size_t i = 0; i < y.rows(); ++i) {
        const double f1 = g(rng);
        const double f2 = 0.6 * f1 + 0.8 * g(rng);
        for (std::size_t k = 0; k < 3; ++k) {
            y(i, k) = f1 + 0.5 * g(rng);
            y(i, k + 3) = f2 + 0.5 * g(rng);
        }
    }
    const Matrix ry = correlation_matrix(y);
    const auto ey = pca_eigen(ry);
    const auto py = promax(loadings(ey.values, ey.vectors).left_columns(2));
    CHECK(std::abs(py.factor_correlation(0, 1)) > 0.3);
    CHECK(py.factor_correlation(0, 0) == 1.0);
}

TEST_CASE("score coefficients") {
    const Matrix pattern{{0.9}, {0.5}, {0.1}};
    CHECK(score_coefficients(Matrix::identity(3), pattern) == pattern);

    const Matrix r{{1, 0.8, 0.3}, {0.8, 1, 0.4}, {0.3, 0.4, 1}};
    const auto inv = oracle::inverse3_adjugate(to3(r));
    const Matrix w = score_coefficients(r, pattern);
    REQUIRE(w.rows() == 3);
    REQUIRE(w.cols() == 1);
    for (std::size_t i = 0; i < 3; ++i) {
        const double expected = inv[i][0] * 0.9 + inv[i][1] * 0.5 + inv[i][2] * 0.1;
        CHECK(w(i, 0) == doctest::Approx(expected).epsilon(1e-12));
    }
    const Matrix two{{0.9, 0.1}, {0.5, 0.5}, {0.1, 0.9}};
    const Matrix phi{{1, 0.3}, {0.3, 1}};
    const Matrix w2 = score_coefficients(r, two, phi);
    CHECK(w2.rows() == 3);
    CHECK(w2.cols() == 2);
    CHECK(kind_of([] { score_coefficients(Matrix{{1, 1}, {1, 1}}, Matrix{{1}, {1}}); }) ==
          StatsError::Kind::SingularMatrix);
}

TEST_CASE("standard scores") {
    const Matrix x = column({1, 2, 3});
    const Matrix z = standard_scores(x, ScoreMode::zscore);
    CHECK(z == column({-1, 0, 1}));
    CHECK(standard_scores(x, ScoreMode::paper_literal, 1.0) == column({4, 5, 6}));

    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0, 1e9);
    Matrix big(64, 2);
    for (std::size_t i = 0; i < 64; ++i) {
        big(i, 0) = u(rng);
        big(i, 1) = u(rng) * 1e-6;
    }
    const auto d = descriptive_stats(standard_scores(big, ScoreMode::zscore));
    for (std::size_t k = 0; k < 2; ++k) {
        CHECK(std::abs(d.mean[k]) < 1e-12);
        CHECK(std::abs(d.sd[k] - 1.0) < 1e-12);
    }
    CHECK(kind_of([] { standard_scores(Matrix{{1, 3}, {2, 3}}, ScoreMode::zscore); }) ==
          StatsError::Kind::ZeroVariance);
}

TEST_CASE("assessor contribution") {
    const Matrix w{{0.5}, {-0.25}, {2.0}};
    CHECK(assessor_contribution(w, Matrix::identity(3)) == w);
    const Matrix s{{1, 2, 3}, {-1, 0, 4}};
    const Matrix c = assessor_contribution(w, s);
    CHECK(c(0, 0) == 0.5 * 1 - 0.25 * 2 + 2.0 * 3);
    CHECK(c(1, 0) == -0.5 + 0.0 + 8.0);
    CHECK(assessor_contribution(w, Matrix(4, 3)) == Matrix(4, 1));
    CHECK(kind_of([&] { assessor_contribution(w, Matrix(2, 2)); }) == StatsError::Kind::ShapeMismatch);
}

TEST_CASE("eigenvalue percentages") {
    const std::vector<double> heap = {2.969, 0.031, 2.519e-6};
    const auto p = eigen_percent(heap, 3);
    CHECK(std::abs(p.percent[0] - 98.966) < 0.05);
    CHECK(p.percent[1] == doctest::Approx(1.0333).epsilon(1e-3));
    CHECK(std::abs(p.cumulative.back() - 100.0) < 1e-3);

    auto q = eigen_percent(std::vector<double>{3, 0, 0}, 3);
    CHECK(q.percent == std::vector<double>{100, 0, 0});
    q = eigen_percent(std::vector<double>{1, 1, 1}, 3);
    for (const double v : q.percent) {
        CHECK(v == doctest::Approx(100.0 / 3));
    }
    CHECK(std::abs(q.cumulative.back() - 100.0) < 1e-6);

    std::mt19937_64 rng(2);
    for (int k = 0; k < 30; ++k) {
        const auto e = pca_eigen(from3(oracle::random_correlation(rng)));
        CHECK(std::abs(eigen_percent(e.values, 3).cumulative.back() - 100.0) < 1e-6);
    }
}

TEST_CASE("analyze: collinear and near-collinear time columns") {
    // time = 3 * memory exactly: the correlation matrix is singular
    Matrix x(12, 3);
    for (std::size_t i = 0; i < 12; ++i) {
        const double mem = 1000.0 * static_cast<double>(i + 1);
        x(i, 1) = mem;
        x(i, 0) = 3.0 * mem;
        x(i, 2) = static_cast<double>((i * 7) % 5) + 0.1 * static_cast<double>(i);
    }
    const Matrix r = correlation_matrix(x);
    const auto eig = pca_eigen(r);
    const double rho = r(0, 2);
    // closed form for [[1,1,c],[1,1,c],[c,c,1]]
    CHECK(eig.values[0] == doctest::Approx((3 + std::sqrt(1 + 8 * rho * rho)) / 2).epsilon(1e-9));
    CHECK(eig.values[1] == doctest::Approx((3 - std::sqrt(1 + 8 * rho * rho)) / 2).epsilon(1e-9));
    CHECK(std::abs(eig.values[2]) < 1e-9);
    try {
        analyze(x, "heap");
        FAIL("expected SingularMatrix");
    } catch (const StatsError& e) {
        CHECK(e.kind() == StatsError::Kind::SingularMatrix);
        CHECK(std::string(e.what()).find("Time taken") != std::string::npos);
        CHECK(std::string(e.what()).find("Memory Consumed") != std::string::npos);
    }

    // small deterministic jitter makes it analyzable
    for (std::size_t i = 0; i < 12; ++i) {
        x(i, 0) += (i % 2 ? 1.0 : -1.0) * 5.0;
    }
    const FactorModel fm = analyze(x, "heap");
    const auto cubic = oracle::symmetric_eigenvalues_cubic(to3(fm.correlation));
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(std::abs(fm.eigenvalues[j] - cubic[j]) < 1e-9);
    }
    CHECK(fm.bartlett.df == 3);
}

TEST_CASE("analyze end to end") {
    MetricsMatrix m;
    std::mt19937_64 rng(10);
    std::normal_distribution<double> g;
    for (std::uint64_t n : {1000, 2000, 5000, 10000, 20000, 50000, 100000}) {
        for (int rep = 0; rep < 3; ++rep) {
            const double nd = static_cast<double>(n);
            m.rows.push_back({Technique::heap, n, static_cast<std::uint64_t>(rep),
                              static_cast<std::int64_t>(nd * std::log2(nd) * (10 + g(rng))),
                              static_cast<std::int64_t>(64 * n),
                              static_cast<std::int64_t>((8 * n + 1023) / 1024)});
        }
    }
    const FactorModel fm = analyze(m);
    CHECK(fm.technique == "heap");
    CHECK(fm.observations == 21);
    CHECK(fm.bartlett.df == 3);
    CHECK(fm.retained == 1);
    CHECK(fm.percent[0] > 85.0);
    CHECK(std::abs(fm.loadings(0, 0)) >= 0.8);
    for (const double h : fm.initial_communalities) {
        CHECK(std::abs(h - 1.0) < 1e-9);
    }
    CHECK(fm.score_coefficients.rows() == 3);
    CHECK(fm.score_coefficients.cols() == 1);
    CHECK(fm.contributions.rows() == 21);
    CHECK(fm.factor_correlation == Matrix{{1}});
    CHECK(fm.rotation_ssl.size() == 1);
    CHECK(fm.rotation_ssl[0] == doctest::Approx(fm.eigenvalues[0]));
    // regression weights for one unrotated component are v / sqrt(lambda)
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(fm.score_coefficients(i, 0) ==
              doctest::Approx(fm.eigenvectors(i, 0) / std::sqrt(fm.eigenvalues[0])).epsilon(1e-6));
    }

    const FactorModel lit = analyze(m, {ScoreMode::paper_literal, 4.0, true});
    CHECK(lit.score_mode == ScoreMode::paper_literal);
    CHECK(lit.eigenvalues == fm.eigenvalues);
    CHECK(lit.contributions != fm.contributions);

    MetricsMatrix small;
    small.rows.assign(m.rows.begin(), m.rows.begin() + 3);
    try {
        analyze(small);
        FAIL("expected DegenerateInput");
    } catch (const StatsError& e) {
        CHECK(e.kind() == StatsError::Kind::DegenerateInput);
        CHECK(std::string(e.what()).find("insufficient rows") != std::string::npos);
    }
}

TEST_CASE("factor JSON round trip is exact") {
    std::mt19937_64 rng(21);
    std::normal_distribution<double> g;
    for (int k = 0; k < 20; ++k) {
        Matrix x(10 + k, 3);
        for (std::size_t i = 0; i < x.rows(); ++i) {
            const double f = g(rng);
            x(i, 0) = f + g(rng) * 0.3;
            x(i, 1) = f + g(rng);
            x(i, 2) = g(rng);
        }
        const FactorModel fm = analyze(x, "treap", {k % 2 ? ScoreMode::paper_literal : ScoreMode::zscore, 4.0, true});
        const std::string text = factor_model_to_json(fm);
        const FactorModel back = factor_model_from_json(text);
        CHECK(factor_model_to_json(back) == text);
        CHECK(back.eigenvalues == fm.eigenvalues);
        CHECK(back.score_coefficients == fm.score_coefficients);
        CHECK(back.contributions == fm.contributions);
        CHECK(back.kmo.per_variable == fm.kmo.per_variable);
    }
    CHECK_THROWS_AS(factor_model_from_json("{"), FormatError);
    CHECK_THROWS_AS(factor_model_from_json("{\"technique\": \"heap\"}"), FormatError);
}
