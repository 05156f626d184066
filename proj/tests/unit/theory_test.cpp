#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "pnm/error.hpp"
#include "pnm/estimate.hpp"
#include "pnm/theory.hpp"

namespace pnm {
namespace {

constexpr double phi0 = 0.3989422804014327;

Graph random_graph(std::size_t n, double p, RandomStream& rng) {
    Graph g(n);
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            if (rng.uniform() < p) {
                g.add_edge(i, j);
            }
        }
    }
    return g;
}

// trace(A^3) / 6
std::uint64_t trace_triangles(const Graph& g) {
    const auto n = static_cast<Eigen::Index>(g.nodes());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [i, j] : g.edges()) {
        a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
        a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = 1.0;
    }
    return static_cast<std::uint64_t>(std::llround((a * a * a).trace() / 6.0));
}

Graph complete(std::size_t n) {
    Graph g(n);
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            g.add_edge(i, j);
        }
    }
    return g;
}

TEST(MatrixClass, Examples) {
    const Eigen::MatrixXd j0 = jacobian(std::vector<double>(4, 0.0));
    EXPECT_TRUE(matrix_class_check(j0, {phi0, phi0}));
    EXPECT_FALSE(matrix_class_check(Eigen::MatrixXd::Identity(4, 4), {0.1, 1.0}));
    RandomStream rng(1);
    for (int r = 0; r < 20; ++r) {
        std::vector<double> alpha(9);
        for (double& a : alpha) {
            a = rng.uniform(-1.0, 1.0);
        }
        const double q = max_pair_sum(alpha);
        EXPECT_TRUE(matrix_class_check(jacobian(alpha), jacobian_class_bounds(q)));
    }
}

TEST(InverseApproxBound, Examples) {
    EXPECT_NEAR(inverse_approx_error_bound(10, 1, 1), 18.0 / 1296.0 + 1.0 / 162.0 + 1.0 / 90.0, 1e-15);
    EXPECT_NEAR(inverse_approx_error_bound(10, 1, 1), 0.03117283950617284, 1e-10);
    // Substituting n = 3 gives 4/8 + 1/8 + 1/6.
    EXPECT_NEAR(inverse_approx_error_bound(3, 1, 1), 0.5 + 1.0 / 8.0 + 1.0 / 6.0, 1e-15);
    double prev = inverse_approx_error_bound(3, 1, 1);
    for (std::size_t n = 4; n <= 100; ++n) {
        const double b = inverse_approx_error_bound(n, 1, 1);
        EXPECT_LT(b, prev);
        prev = b;
    }
    EXPECT_THROW((void)inverse_approx_error_bound(2, 1, 1), Error);
}

TEST(InverseApprox, AllOnesOffDiagonal) {
    // Off-diagonal 1 and diagonal 9: V = 8I + 11^T, V^-1 = I/8 - 11^T/144,
    // so every entry of V^-1 - S is 1/144 in magnitude.
    Eigen::MatrixXd v = Eigen::MatrixXd::Ones(10, 10);
    v.diagonal().setConstant(9.0);
    const double exact = 1.0 / 144.0;
    EXPECT_NEAR(inverse_approx_error(v), exact, 1e-14);
    EXPECT_LE(inverse_approx_error(v), inverse_approx_error_bound(10, 1, 1));
}

TEST(InverseApprox, DiagonalExamples) {
    const Eigen::VectorXd s = diag_inverse_approx(jacobian(std::vector<double>(4, 0.0)));
    for (Eigen::Index i = 0; i < 4; ++i) {
        EXPECT_NEAR(s(i), 1.0 / 1.1968268412042982, 1e-14);
    }
    const Eigen::MatrixXd d = Eigen::Vector3d(2.0, 4.0, 5.0).asDiagonal();
    EXPECT_EQ(inverse_approx_error(d), 0.0);
    EXPECT_THROW((void)diag_inverse_approx(Eigen::MatrixXd::Zero(3, 3)), Error);
}

TEST(InverseApprox, RandomClassAudit) {
    RandomStream rng(2);
    for (std::size_t n : {5u, 10u, 20u}) {
        for (MatrixClassParams p : {MatrixClassParams{0.2, 0.4}, MatrixClassParams{0.5, 0.5}}) {
            const double bound = inverse_approx_error_bound(n, p.m, p.M);
            for (int r = 0; r < 50; ++r) {
                const Eigen::MatrixXd v = random_class_matrix(n, p, rng);
                ASSERT_TRUE(matrix_class_check(v, p));
                EXPECT_LE(inverse_approx_error(v), bound);
            }
        }
    }
}

TEST(Lipschitz, Examples) {
    EXPECT_NEAR(lipschitz_bound(3), 0.9678828980765735, 1e-12);
    EXPECT_NEAR(lipschitz_bound(2), 0.48394144903828673, 1e-12);
    for (std::size_t k = 2; k < 50; ++k) {
        EXPECT_NEAR(lipschitz_bound(2 * k) / lipschitz_bound(k + 1), (2.0 * k - 1.0) / k, 1e-14);
    }
}

TEST(Lipschitz, RandomAudit) {
    RandomStream rng(3);
    for (std::size_t n : {5u, 20u}) {
        for (int r = 0; r < 500; ++r) {
            std::vector<double> x(n);
            std::vector<double> y(n);
            std::vector<double> v(n);
            for (std::size_t i = 0; i < n; ++i) {
                x[i] = rng.uniform(-0.5, 0.5);
                y[i] = rng.uniform(-0.5, 0.5);
                v[i] = rng.uniform(-1.0, 1.0);
            }
            v[rng.below(n)] = 1.0;
            EXPECT_LE(jacobian_variation_ratio(x, y, v), lipschitz_bound(n));
        }
    }
}

TEST(Concentration, Examples) {
    EXPECT_NEAR(concentration_threshold(100), 21.45966, 1e-4);
    EXPECT_NEAR(concentration_threshold(3), 1.815443985917585, 1e-12);
    double prev = 0.0;
    for (std::size_t n = 2; n <= 1000000; n = n < 1000 ? n + 1 : n * 3 / 2) {
        const double t = concentration_threshold(n);
        EXPECT_GT(t, prev);
        prev = t;
    }
}

TEST(PaThreshold, Examples) {
    EXPECT_NEAR(pa_correlation_threshold(8, 1), 0.021377741160905187, 1e-12);
    EXPECT_NEAR(pa_correlation_threshold(8, 1), 0.02139, 1e-4);
    EXPECT_NEAR(pa_correlation_threshold(100, 21), 4.083208614750693e-12, 1e-20);
    EXPECT_LT(pa_correlation_threshold(100, 3), pa_correlation_threshold(100, 2));
    EXPECT_LT(pa_correlation_threshold(200, 2), pa_correlation_threshold(100, 2));
    EXPECT_THROW((void)pa_correlation_threshold(10, 0), Error);
    EXPECT_THROW((void)pa_correlation_threshold(10, 10), Error);
}

TEST(Subgraphs, Examples) {
    Graph triangle(3);
    triangle.add_edge(0, 1);
    triangle.add_edge(1, 2);
    triangle.add_edge(0, 2);
    Graph path(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    Graph star(5);
    for (NodeId j = 1; j < 5; ++j) {
        star.add_edge(0, j);
    }
    EXPECT_EQ(count_two_stars(triangle), 3u);
    EXPECT_EQ(count_two_stars(path), 1u);
    EXPECT_EQ(count_two_stars(star), 6u);
    EXPECT_EQ(count_triangles(triangle), 1u);
    EXPECT_EQ(count_triangles(path), 0u);
    EXPECT_EQ(count_triangles(complete(5)), 10u);
}

TEST(Subgraphs, TrianglesMatchTraceFormula) {
    RandomStream rng(4);
    for (int r = 0; r < 40; ++r) {
        const Graph g = random_graph(3 + rng.below(48), rng.uniform(), rng);
        EXPECT_EQ(count_triangles(g), trace_triangles(g));
    }
    // Above 500 nodes the bitset path is used.
    const Graph big = random_graph(620, 0.05, rng);
    EXPECT_EQ(count_triangles(big), trace_triangles(big));
    EXPECT_EQ(count_triangles(complete(520)), 520ull * 519 * 518 / 6);
}

TEST(DegreeDeviation, Examples) {
    EXPECT_NEAR(degree_deviation(complete(6), NodeParams{std::vector<double>(6, 10.0)}), 0.0, 1e-12);
    Graph cycle(5);
    for (NodeId i = 0; i < 5; ++i) {
        cycle.add_edge(i, (i + 1) % 5);
    }
    EXPECT_EQ(degree_deviation(cycle, NodeParams{std::vector<double>(5, 0.0)}), 0.0);
    EXPECT_EQ(degree_deviation(complete(5), NodeParams{std::vector<double>(5, 0.0)}), 2.0);
    EXPECT_THROW((void)degree_deviation(cycle, NodeParams{std::vector<double>(4, 0.0)}), Error);
}

}  // namespace
}  // namespace pnm
