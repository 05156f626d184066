#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <sstream>
#include <vector>

#include "pnm/covariance.hpp"
#include "pnm/error.hpp"

namespace pnm {
namespace {

template <typename F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorCode::invalid_input;
}

// Empirical correlation matrix of m draws, restricted to the first `k` coordinates.
Eigen::MatrixXd empirical_corr(const LatentCovariance& cov, int m, Eigen::Index k, std::uint64_t seed) {
    RandomStream rng(seed);
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(k, k);
    std::vector<double> u(cov.dimension());
    for (int r = 0; r < m; ++r) {
        cov.sample_into(rng, u);
        const Eigen::Map<const Eigen::VectorXd> v(u.data(), k);
        sum += v * v.transpose();
    }
    return sum / m;
}

TEST(Covariance, ValidateExamples) {
    EXPECT_NO_THROW((void)validate(Independent{}, 5));
    EXPECT_EQ(code_of([] { (void)validate(Equicorrelated{-0.5}, 4); }), ErrorCode::not_psd);
    EXPECT_EQ(code_of([] { (void)validate(AdditiveNode{0.0, {0.1, 0.1, 0.1}}, 3); }), ErrorCode::invalid_spec);
}

TEST(Covariance, EquicorrelatedBoundary) {
    // N = 6: rho = -1/5 is singular but semidefinite; anything below fails.
    EXPECT_NO_THROW((void)validate(Equicorrelated{-0.2}, 4));
    try {
        (void)validate(Equicorrelated{-0.5}, 4);
        FAIL();
    } catch (const NotPsdError& e) {
        EXPECT_EQ(e.pivot(), 3u);
        EXPECT_LT(e.value(), 0.0);
    }
    EXPECT_EQ(code_of([] { (void)validate(Equicorrelated{1.0}, 4); }), ErrorCode::invalid_spec);
}

TEST(Covariance, PowerDecayRange) {
    EXPECT_EQ(code_of([] { (void)validate(PowerDecay{1.0}, 4); }), ErrorCode::invalid_spec);
    EXPECT_NO_THROW((void)validate(PowerDecay{-0.99}, 4));
}

TEST(Covariance, CorrelationOfExamples) {
    EXPECT_DOUBLE_EQ(correlation_of(PowerDecay{0.5}, PairIndex{1}, PairIndex{3}, 4), 0.25);
    EXPECT_EQ(correlation_of(Independent{}, PairIndex{0}, PairIndex{5}, 4), 0.0);
    const AdditiveNode add{0.1, {0.05, -0.05, 0.0, 0.0}};
    const auto t = pair_to_index(0, 1, 4);
    const auto s = pair_to_index(2, 3, 4);
    EXPECT_NEAR(correlation_of(add, t, s, 4), 0.1, 1e-15);
    EXPECT_EQ(code_of([] { (void)correlation_of(Independent{}, PairIndex{2}, PairIndex{2}, 4); }),
              ErrorCode::diagonal_query);
    EXPECT_EQ(code_of([] { (void)correlation_of(Independent{}, PairIndex{0}, PairIndex{6}, 4); }),
              ErrorCode::invalid_index);
}

TEST(Covariance, CorrelationOfSymmetric) {
    const std::vector<CovarianceSpec> specs{PowerDecay{0.7}, Equicorrelated{0.1},
                                            AdditiveNode{0.1, {0.02, -0.01, 0.03, -0.04, 0.0}}};
    for (const auto& spec : specs) {
        for (std::size_t t = 0; t < 10; ++t) {
            for (std::size_t s = 0; s < 10; ++s) {
                if (t != s) {
                    EXPECT_EQ(correlation_of(spec, t, s, 5), correlation_of(spec, s, t, 5));
                }
            }
        }
    }
}

TEST(Covariance, AdditiveRejectsOutOfRangeEntries) {
    EXPECT_EQ(code_of([] { (void)validate(AdditiveNode{0.9, {0.1, -0.1, 0.0, 0.0}}, 4); }), ErrorCode::invalid_spec);
}

TEST(Covariance, DenseCapAndShape) {
    EXPECT_EQ(code_of([] { (void)validate(DenseExplicit{Eigen::MatrixXd::Identity(5, 5)}, 4); }),
              ErrorCode::invalid_spec);
    EXPECT_EQ(code_of([] {
                  (void)validate(AdditiveNode{0.0, std::vector<double>(61, 0.0)}, 61);
              }),
              ErrorCode::invalid_spec);
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(6, 6);
    m(0, 1) = 0.3;
    EXPECT_EQ(code_of([&] { (void)validate(DenseExplicit{m}, 4); }), ErrorCode::invalid_spec);
    m(1, 0) = 0.3;
    EXPECT_NO_THROW((void)validate(DenseExplicit{m}, 4));
}

TEST(Covariance, DenseNotPsdReportsPivot) {
    // Three mutually strongly anti-correlated coordinates.
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(3, 3);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (i != j) {
                m(i, j) = -0.9;
            }
        }
    }
    try {
        (void)validate(DenseExplicit{m}, 3);
        FAIL();
    } catch (const NotPsdError& e) {
        EXPECT_EQ(e.pivot(), 2u);
        EXPECT_LT(e.value(), 0.0);
    }
}

TEST(Covariance, ParseDenseCsv) {
    std::istringstream ok("1,0.5\n0.5,1\n");
    const DenseExplicit d = parse_dense_csv(ok);
    EXPECT_EQ(d.matrix.rows(), 2);
    EXPECT_EQ(d.matrix(0, 1), 0.5);
    std::istringstream bad("1,0.5\n0.5,x\n");
    try {
        (void)parse_dense_csv(bad);
        FAIL();
    } catch (const FormatError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
    std::istringstream ragged("1,0.5\n0.5\n");
    EXPECT_THROW((void)parse_dense_csv(ragged), FormatError);
}

TEST(Covariance, IndependentSampleCovariance) {
    const auto cov = validate(Independent{}, 3);
    const int m = 100000;
    const Eigen::MatrixXd c = empirical_corr(cov, m, 3, 1);
    const double band = 3.0 / std::sqrt(static_cast<double>(m));
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            // Diagonal entries have standard deviation sqrt(2/m).
            EXPECT_NEAR(c(i, j), i == j ? 1.0 : 0.0, i == j ? std::sqrt(2.0) * band : band);
        }
    }
}

TEST(Covariance, PowerDecayLagOneCorrelation) {
    const auto cov = validate(PowerDecay{0.8}, 5);
    const Eigen::MatrixXd c = empirical_corr(cov, 100000, 4, 2);
    EXPECT_NEAR(c(0, 1), 0.8, 0.01);
    EXPECT_NEAR(c(1, 2), 0.8, 0.01);
    EXPECT_NEAR(c(0, 2), 0.64, 0.01);
}

TEST(Covariance, UnitMarginalVarianceEverySpec) {
    const std::vector<std::pair<CovarianceSpec, std::size_t>> specs{
        {Independent{}, 6},
        {PowerDecay{-0.6}, 6},
        {Equicorrelated{0.3}, 6},
        {Equicorrelated{-1.0 / 14.0}, 6},
        {AdditiveNode{0.1, {0.05, -0.05, 0.02, -0.02, 0.0, 0.0}}, 6},
    };
    for (const auto& [spec, n] : specs) {
        const auto cov = validate(spec, n);
        // 10^6 draws put the 0.01 band at about 7 standard errors.
        const Eigen::MatrixXd c = empirical_corr(cov, 1000000, 3, 3);
        EXPECT_NEAR(c(0, 0), 1.0, 0.01);
        EXPECT_NEAR(c(2, 2), 1.0, 0.01);
    }
}

TEST(Covariance, SampleCovarianceMatchesSpec) {
    const std::size_t n = 5;
    const std::vector<CovarianceSpec> specs{
        Equicorrelated{0.25},
        AdditiveNode{0.1, {0.05, -0.05, 0.02, -0.02, 0.0}},
    };
    const int m = 60000;
    for (const auto& spec : specs) {
        const auto cov = validate(spec, n);
        const Eigen::MatrixXd c = empirical_corr(cov, m, 10, 4);
        for (Eigen::Index t = 0; t < 10; ++t) {
            for (Eigen::Index s = t + 1; s < 10; ++s) {
                const double target = correlation_of(spec, static_cast<std::size_t>(t), static_cast<std::size_t>(s), n);
                EXPECT_NEAR(c(t, s), target, 4.5 / std::sqrt(static_cast<double>(m)));
            }
        }
    }
}

TEST(Covariance, DirectedLayoutDimension) {
    const auto cov = validate(PowerDecay{0.3}, 4, PairLayout::directed);
    EXPECT_EQ(cov.dimension(), 12u);
    RandomStream rng(5);
    EXPECT_EQ(sample_latent(cov, rng).size(), 12u);
}

// Structured specs must not build an N x N matrix: n = 500 gives N = 124750,
// whose dense factor alone would need ~124 GB.
TEST(Covariance, StructuredSamplingScalesLinearly) {
    const std::size_t n = 500;
    for (const CovarianceSpec& spec : {CovarianceSpec{PowerDecay{0.5}}, CovarianceSpec{Equicorrelated{-1e-6}}}) {
        const auto start = std::chrono::steady_clock::now();
        const auto cov = validate(spec, n);
        RandomStream rng(6);
        std::vector<double> u(cov.dimension());
        for (int r = 0; r < 5; ++r) {
            cov.sample_into(rng, u);
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        EXPECT_EQ(u.size(), 124750u);
        EXPECT_LT(seconds, 5.0);
    }
}

TEST(Covariance, SameSeedSameDraw) {
    const auto cov = validate(PowerDecay{0.4}, 10);
    RandomStream a(77);
    RandomStream b(77);
    EXPECT_EQ(sample_latent(cov, a), sample_latent(cov, b));
}

}  // namespace
}  // namespace pnm
