#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "pnm/error.hpp"
#include "pnm/generate.hpp"
#include "pnm/normal.hpp"

namespace pnm {
namespace {

TEST(Generate, EdgeProbabilityExamples) {
    EXPECT_EQ(edge_probability(NodeParams{{0.0, 0.0}}, 0, 1), 0.5);
    EXPECT_NEAR(edge_probability(NodeParams{{1.0, 0.959963985}}, 0, 1), 0.975, 1e-9);
    EXPECT_EQ(edge_probability(NodeParams{{-40.0, -40.0}}, 0, 1), 0.0);
    EXPECT_THROW((void)edge_probability(NodeParams{{0.0, 0.0}}, 1, 1), Error);
}

TEST(Generate, MaxPairSum) {
    EXPECT_DOUBLE_EQ(max_pair_sum({0.3, -0.9, 0.5}), 0.8);
    EXPECT_DOUBLE_EQ(max_pair_sum({-0.3, -0.9, 0.5}), 1.2);
}

TEST(Generate, ExtremeParametersGiveCompleteOrEmpty) {
    const std::size_t n = 12;
    for (const CovarianceSpec& spec :
         {CovarianceSpec{Independent{}}, CovarianceSpec{PowerDecay{0.9}}, CovarianceSpec{Equicorrelated{0.5}}}) {
        const auto cov = validate(spec, n);
        RandomStream rng(1);
        EXPECT_EQ(generate_graph(NodeParams{std::vector<double>(n, 10.0)}, cov, rng).edge_count(), num_pairs(n));
        EXPECT_EQ(generate_graph(NodeParams{std::vector<double>(n, -10.0)}, cov, rng).edge_count(), 0u);
    }
}

TEST(Generate, Deterministic) {
    const auto cov = validate(PowerDecay{0.5}, 30);
    const NodeParams params{std::vector<double>(30, 0.1)};
    RandomStream a(99);
    RandomStream b(99);
    RandomStream c(100);
    const Graph ga = generate_graph(params, cov, a);
    EXPECT_EQ(ga, generate_graph(params, cov, b));
    EXPECT_NE(ga, generate_graph(params, cov, c));
}

TEST(Generate, RejectsMismatchedCovariance) {
    const auto cov = validate(Independent{}, 5);
    RandomStream rng(1);
    EXPECT_THROW((void)generate_graph(NodeParams{std::vector<double>(6, 0.0)}, cov, rng), Error);
    EXPECT_THROW((void)generate_directed(std::vector<double>(5, 0.0), std::vector<double>(5, 0.0), cov, rng), Error);
}

TEST(Generate, MeanEdgeCountIndependent) {
    const std::size_t n = 100;
    const auto cov = validate(Independent{}, n);
    const NodeParams params{std::vector<double>(n, 0.0)};
    RandomStream rng(3);
    const int reps = 1000;
    double total = 0.0;
    for (int r = 0; r < reps; ++r) {
        total += static_cast<double>(generate_graph(params, cov, rng).edge_count());
    }
    const double mean = total / reps;
    EXPECT_NEAR(mean, 2475.0, 3.0 * std::sqrt(4950.0 * 0.25));
    EXPECT_NEAR(mean, 2475.0, 4.0 * std::sqrt(4950.0 * 0.25 / reps));
}

// Marginals do not depend on the latent correlation; pairwise moments do,
// through the bivariate normal CDF.
TEST(Generate, MarginalsAndJointMomentsUnderCorrelation) {
    const std::size_t n = 7;
    const std::vector<double> alpha{-0.6, -0.3, 0.0, 0.1, 0.25, 0.4, 0.7};
    const NodeParams params{alpha};
    const std::size_t pairs = num_pairs(n);
    const int reps = 20000;
    for (const CovarianceSpec& spec : {CovarianceSpec{PowerDecay{0.7}}, CovarianceSpec{Equicorrelated{-0.04}}}) {
        const auto cov = validate(spec, n);
        RandomStream rng(11);
        std::vector<double> hits(pairs, 0.0);
        std::vector<double> joint(pairs - 1, 0.0);
        for (int r = 0; r < reps; ++r) {
            const Graph g = generate_graph(params, cov, rng);
            for (std::size_t t = 0; t < pairs; ++t) {
                hits[t] += g.has_edge(PairIndex{t}) ? 1.0 : 0.0;
                if (t + 1 < pairs && g.has_edge(PairIndex{t}) && g.has_edge(PairIndex{t + 1})) {
                    joint[t] += 1.0;
                }
            }
        }
        for (std::size_t t = 0; t < pairs; ++t) {
            const auto [i, j] = index_to_pair(PairIndex{t}, n);
            const double p = edge_probability(params, i, j);
            EXPECT_NEAR(hits[t] / reps, p, 4.0 * std::sqrt(p * (1 - p) / reps));
            if (t + 1 < pairs) {
                const auto [k, l] = index_to_pair(PairIndex{t + 1}, n);
                const double q =
                    bivariate_cdf(alpha[i] + alpha[j], alpha[k] + alpha[l], Corr(correlation_of(spec, t, t + 1, n)));
                EXPECT_NEAR(joint[t] / reps, q, 4.0 * std::sqrt(q * (1 - q) / reps));
            }
        }
    }
}

TEST(Generate, DirectedExamples) {
    {
        const auto cov = validate(Independent{}, 2, PairLayout::directed);
        RandomStream rng(1);
        const DirectedGraph g = generate_directed({10.0, 10.0}, {0.0, 0.0}, cov, rng);
        EXPECT_EQ(g.edge_count(), 2u);
        EXPECT_TRUE(g.has_edge(0, 1));
        EXPECT_TRUE(g.has_edge(1, 0));
    }
    {
        const std::size_t n = 9;
        const auto cov = validate(PowerDecay{0.3}, n, PairLayout::directed);
        RandomStream rng(2);
        const DirectedGraph g =
            generate_directed(std::vector<double>(n, 0.0), std::vector<double>(n, 10.0), cov, rng);
        EXPECT_EQ(g.in_degrees(), std::vector<std::size_t>(n, n - 1));
    }
}

TEST(Generate, DirectedDensity) {
    const std::size_t n = 50;
    const auto cov = validate(Independent{}, n, PairLayout::directed);
    RandomStream rng(4);
    const int reps = 500;
    const double slots = static_cast<double>(n * (n - 1));
    double total = 0.0;
    for (int r = 0; r < reps; ++r) {
        total += static_cast<double>(
            generate_directed(std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), cov, rng).edge_count());
    }
    EXPECT_NEAR(total / (reps * slots), 0.5, 4.0 * std::sqrt(0.25 / (reps * slots)));
}

TEST(Generate, ZeroCovariateEffectMatchesPlainGenerator) {
    const std::size_t n = 15;
    const auto cov = validate(PowerDecay{0.4}, n);
    const NodeParams params{std::vector<double>(n, 0.05)};
    CovariateData covariates{{0.0, 0.0}, Eigen::MatrixXd::Random(static_cast<Eigen::Index>(num_pairs(n)), 2)};
    RandomStream a(8);
    RandomStream b(8);
    EXPECT_EQ(generate_with_covariates(params, covariates, cov, a), generate_graph(params, cov, b));
}

TEST(Generate, LargeCovariateShiftGivesCompleteGraph) {
    const std::size_t n = 10;
    const auto cov = validate(Independent{}, n);
    const CovariateData covariates{{10.0}, Eigen::MatrixXd::Ones(static_cast<Eigen::Index>(num_pairs(n)), 1)};
    RandomStream rng(5);
    EXPECT_EQ(generate_with_covariates(NodeParams{std::vector<double>(n, 0.0)}, covariates, cov, rng).edge_count(),
              num_pairs(n));
}

TEST(Generate, BinaryCovariateEdgeFrequency) {
    const std::size_t n = 60;
    const auto pairs = static_cast<Eigen::Index>(num_pairs(n));
    RandomStream zrng(6);
    CovariateData covariates{{1.0}, Eigen::MatrixXd(pairs, 1)};
    for (Eigen::Index t = 0; t < pairs; ++t) {
        covariates.z(t, 0) = zrng.uniform() < 0.5 ? 1.0 : 0.0;
    }
    const auto cov = validate(Independent{}, n);
    const NodeParams params{std::vector<double>(n, 0.0)};
    RandomStream rng(7);
    double ones = 0.0;
    double hits = 0.0;
    for (int r = 0; r < 2000; ++r) {
        const Graph g = generate_with_covariates(params, covariates, cov, rng);
        for (Eigen::Index t = 0; t < pairs; ++t) {
            if (covariates.z(t, 0) == 1.0) {
                ones += 1.0;
                hits += g.has_edge(PairIndex{static_cast<std::size_t>(t)}) ? 1.0 : 0.0;
            }
        }
    }
    EXPECT_NEAR(hits / ones, 0.8413447460685429, 0.01);
}

}  // namespace
}  // namespace pnm
