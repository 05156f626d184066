#pragma once

namespace pnm {

/// Latent correlation coefficient, strictly inside (-1, 1).
class Corr {
public:
    /// Throws a domain error unless |rho| < 1.
    explicit Corr(double rho);

    [[nodiscard]] double value() const noexcept { return rho_; }

private:
    double rho_;
};

inline constexpr double inv_sqrt_2pi = 0.398942280401432677939946059934;

/// Standard normal density; throws a domain error for non-finite x.
[[nodiscard]] double std_normal_pdf(double x);

/// Standard normal CDF. Accepts +-infinity; throws a domain error for NaN.
[[nodiscard]] double std_normal_cdf(double x);

/// Inverse of std_normal_cdf on (0, 1); throws a domain error outside it.
[[nodiscard]] double std_normal_quantile(double p);

/// Standardized bivariate normal density with correlation rho.
[[nodiscard]] double bivariate_density(double t1, double t2, Corr rho);

/// P(T1 <= h, T2 <= k) for a standard bivariate normal with correlation rho.
///
/// Evaluated as Phi(h)Phi(k) plus the integral of the density over the
/// correlation from 0 to rho, with the substitution r = sin(theta) so the
/// integrand stays bounded as |rho| -> 1. The theta integral is done by
/// adaptive Gauss-Legendre quadrature. h and k may be infinite.
[[nodiscard]] double bivariate_cdf(double h, double k, Corr rho);

}  // namespace pnm
