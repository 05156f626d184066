#include "pnm/normal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pnm/error.hpp"

namespace pnm {

namespace {

constexpr int gauss_points = 10;

struct GaussLegendreRule {
    std::array<double, gauss_points> nodes{};
    std::array<double, gauss_points> weights{};
};

// Nodes on [-1, 1] from Newton iteration on the Legendre recurrence.
GaussLegendreRule make_rule() {
    GaussLegendreRule rule;
    constexpr int n = gauss_points;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

const GaussLegendreRule& rule() {
    static const GaussLegendreRule r = make_rule();
    return r;
}

// Integrand of the theta form: exp(-(h^2 + k^2 - 2hk sin t) / (2 cos^2 t)).
// Written around whichever of sin t = +-1 is closer so the ratio stays exact
// when |rho| is close to 1.
struct ThetaIntegrand {
    double h;
    double k;

    double operator()(double theta) const {
        const double s = std::sin(theta);
        const double one_minus = 1.0 - s;
        const double one_plus = 1.0 + s;
        double exponent = 0.0;
        if (s >= 0.0) {
            const double diff = h - k;
            exponent = diff * diff / (2.0 * one_minus * one_plus) + h * k / one_plus;
        } else {
            const double sum = h + k;
            exponent = sum * sum / (2.0 * one_minus * one_plus) - h * k / one_minus;
        }
        return std::exp(-exponent);
    }
};

template <typename F>
double gauss(const F& f, double a, double b) {
    const auto& r = rule();
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (int i = 0; i < gauss_points; ++i) {
        sum += r.weights[i] * f(mid + half * r.nodes[i]);
    }
    return sum * half;
}

template <typename F>
double adaptive(const F& f, double a, double b, double whole, double tol, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = gauss(f, a, mid);
    const double right = gauss(f, mid, b);
    const double refined = left + right;
    if (depth <= 0 || std::abs(refined - whole) <= tol) {
        return refined;
    }
    // Halving below rounding level would force every branch to full depth.
    const double sub_tol = std::max(0.5 * tol, 1e-17);
    return adaptive(f, a, mid, left, sub_tol, depth - 1) + adaptive(f, mid, b, right, sub_tol, depth - 1);
}

void require_not_nan(double x, const char* what) {
    if (std::isnan(x)) {
        throw Error(ErrorCode::domain, std::string(what) + " is NaN");
    }
}

}  // namespace

Corr::Corr(double rho) : rho_(rho) {
    if (!(std::abs(rho) < 1.0)) {
        throw Error(ErrorCode::domain, "correlation must satisfy |rho| < 1, got " + std::to_string(rho));
    }
}

double std_normal_pdf(double x) {
    if (!std::isfinite(x)) {
        throw Error(ErrorCode::domain, "normal density needs a finite argument");
    }
    return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

double std_normal_cdf(double x) {
    require_not_nan(x, "normal CDF argument");
    return 0.5 * std::erfc(-x * std::numbers::sqrt2 / 2.0);
}

double std_normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw Error(ErrorCode::domain, "quantile needs 0 < p < 1, got " + std::to_string(p));
    }
    // 1 - p is exact here, and the Halley step below needs the small tail.
    if (p > 0.5) {
        return -std_normal_quantile(1.0 - p);
    }
    // Rational approximation (Acklam), then one Halley step against the CDF.
    static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02,
                                             -2.759285104469687e+02, 1.383577518672690e+02,
                                             -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02,
                                             -1.556989798598866e+02, 6.680131188771972e+01,
                                             -1.328068155288572e+01};
    static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01,
                                             -2.400758277161838e+00, -2.549732539343734e+00,
                                             4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01,
                                             2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x = 0.0;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }

    const double e = std_normal_cdf(x) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

double bivariate_density(double t1, double t2, Corr rho) {
    const double r = rho.value();
    const double one_minus_r2 = 1.0 - r * r;
    const double q = (t1 * t1 + t2 * t2 - 2.0 * r * t1 * t2) / (2.0 * one_minus_r2);
    return std::exp(-q) / (2.0 * std::numbers::pi * std::sqrt(one_minus_r2));
}

double bivariate_cdf(double h, double k, Corr rho) {
    require_not_nan(h, "bivariate CDF limit h");
    require_not_nan(k, "bivariate CDF limit k");
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (h == -inf || k == -inf) {
        return 0.0;
    }
    if (h == inf) {
        return std_normal_cdf(k);
    }
    if (k == inf) {
        return std_normal_cdf(h);
    }

    const double base = std_normal_cdf(h) * std_normal_cdf(k);
    const double r = rho.value();
    if (r == 0.0) {
        return base;
    }
    const ThetaIntegrand f{h, k};
    const double upper = std::asin(r);
    const double whole = gauss(f, 0.0, upper);
    const double integral = adaptive(f, 0.0, upper, whole, 1e-14, 24);
    const double value = base + integral / (2.0 * std::numbers::pi);
    return value < 0.0 ? 0.0 : (value > 1.0 ? 1.0 : value);
}

}  // namespace pnm
