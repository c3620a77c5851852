// SPDX-License-Identifier: Apache-2.0

#include "deem/fading.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace deem {

namespace {

constexpr int kMaxIter = 500;
constexpr double kConvergeTol = 1e-14;
constexpr double kNakagamiMinShape = 0.5;
constexpr double kNakagamiMaxShape = 50.0;

// Series expansion of P(a, x), valid for x < a + 1.
double lower_gamma_series(double a, double x, double lgamma_a) {
    double term = 1.0 / a;
    double sum = term;
    for (int k = 1; k <= kMaxIter; ++k) {
        term *= x / (a + k);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kConvergeTol) {
            break;
        }
    }
    return sum * std::exp(a * std::log(x) - x - lgamma_a);
}

// Modified Lentz continued fraction for Q(a, x), valid for x >= a + 1.
double upper_gamma_cf(double a, double x, double lgamma_a) {
    constexpr double tiny = std::numeric_limits<double>::min() / kConvergeTol;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kConvergeTol) {
            break;
        }
    }
    return std::exp(a * std::log(x) - x - lgamma_a) * h;
}

// P(a, x) with Gamma(a) log precomputed by the caller.
double reg_lower_gamma_pre(double a, double x, double lgamma_a) {
    if (x <= 0.0) {
        return 0.0;
    }
    if (x < a + 1.0) {
        return lower_gamma_series(a, x, lgamma_a);
    }
    const double q = upper_gamma_cf(a, x, lgamma_a);
    return 1.0 - q;
}

void check_model(const FadingModel& model) {
    if (!(std::isfinite(model.avg_gain) && model.avg_gain > 0.0)) {
        throw std::domain_error("fading: avg_gain must be finite and > 0");
    }
    if (model.kind == Fading::Nakagami &&
        !(std::isfinite(model.m) && model.m >= kNakagamiMinShape && model.m <= kNakagamiMaxShape)) {
        throw std::domain_error("fading: Nakagami shape must lie in [0.5, 50]");
    }
}

// Inverse standard normal CDF (Acklam approximation); used only to seed the
// Newton iteration in the Nakagami quantile.
double inv_norm_cdf(double p) {
    static const double a1 = -39.69683028665376, a2 = 220.9460984245205, a3 = -275.9285104469687,
                        a4 = 138.3577518672690, a5 = -30.66479806614716, a6 = 2.506628277459239;
    static const double b1 = -54.47609879822406, b2 = 161.5858368580409, b3 = -155.6989798598866,
                        b4 = 66.80131188771972, b5 = -13.28068155288572;
    static const double c1 = -7.784894002430293e-03, c2 = -3.223964580411365e-01,
                        c3 = -2.400758277161838, c4 = -2.549732539343734, c5 = 4.374664141464968,
                        c6 = 2.938163982698783;
    static const double d1 = 7.784695709041462e-03, d2 = 3.224671290700398e-01,
                        d3 = 2.445134137142996, d4 = 3.754408661907416;
    const double plow = 0.02425, phigh = 1.0 - plow;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c1 * q + c2) * q + c3) * q + c4) * q + c5) * q + c6) /
               (((((d1 * q + d2) * q + d3) * q + d4) * q) + 1.0);
    }
    if (p > phigh) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c1 * q + c2) * q + c3) * q + c4) * q + c5) * q + c6) /
               (((((d1 * q + d2) * q + d3) * q + d4) * q) + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a1 * r + a2) * r + a3) * r + a4) * r + a5) * r + a6) * q /
           (((((b1 * r + b2) * r + b3) * r + b4) * r + b5) * r + 1.0);
}

// Solves P(a, x) = p for x with bisection-safeguarded Newton. Initial guess
// is the Wilson-Hilferty approximation; the bracket starts at
// [0, a + 20*sqrt(a)] and expands geometrically until it straddles p.
double gamma_quantile_x(double a, double p, double lgamma_a) {
    double lo = 0.0;
    double hi = a + 20.0 * std::sqrt(a);
    while (reg_lower_gamma_pre(a, hi, lgamma_a) < p) {
        lo = hi;
        hi *= 2.0;
    }

    const double z = inv_norm_cdf(p);
    const double wh = 1.0 - 1.0 / (9.0 * a) + z / (3.0 * std::sqrt(a));
    double x = a * wh * wh * wh;
    if (!(x > lo && x < hi)) {
        // Small-x asymptotic P(a, x) ~ x^a / Gamma(a+1) as a fallback seed.
        x = std::exp((std::log(p) + lgamma_a + std::log(a)) / a);
        if (!(x > lo && x < hi)) {
            x = 0.5 * (lo + hi);
        }
    }

    for (int iter = 0; iter < 200; ++iter) {
        const double f = reg_lower_gamma_pre(a, x, lgamma_a) - p;
        if (std::fabs(f) <= 1e-12) {
            return x;
        }
        if (f < 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        const double pdf = std::exp((a - 1.0) * std::log(x) - x - lgamma_a);
        double next = x - f / pdf;
        if (!(next > lo && next < hi) || !std::isfinite(next)) {
            next = 0.5 * (lo + hi);
        }
        if (next == x) {
            return x;
        }
        x = next;
    }
    return x;
}

} // namespace

double reg_lower_gamma(double a, double x) {
    if (!(std::isfinite(a) && a > 0.0) || !(std::isfinite(x) && x >= 0.0)) {
        throw std::domain_error("reg_lower_gamma: need finite a > 0 and x >= 0");
    }
    if (x == 0.0) {
        return 0.0;
    }
    return reg_lower_gamma_pre(a, x, std::lgamma(a));
}

FadingModel FadingModel::rayleigh(double avg_gain) {
    FadingModel model{Fading::Rayleigh, avg_gain, 1.0};
    check_model(model);
    return model;
}

FadingModel FadingModel::nakagami(double m, double avg_gain) {
    FadingModel model{Fading::Nakagami, avg_gain, m};
    check_model(model);
    return model;
}

double cdf(const FadingModel& model, double gain) {
    check_model(model);
    if (std::isnan(gain) || gain < 0.0) {
        throw std::domain_error("cdf: gain must be >= 0");
    }
    if (std::isinf(gain)) {
        return 1.0;
    }
    if (model.kind == Fading::Rayleigh) {
        return -std::expm1(-gain / model.avg_gain);
    }
    const double x = model.m * gain / model.avg_gain;
    if (std::isinf(x)) {
        return 1.0;
    }
    return reg_lower_gamma(model.m, x);
}

double quantile(const FadingModel& model, double p) {
    check_model(model);
    if (!(p >= 0.0 && p < 1.0)) {
        throw std::domain_error("quantile: p must lie in [0, 1)");
    }
    if (p == 0.0) {
        return 0.0;
    }
    if (model.kind == Fading::Rayleigh) {
        return -model.avg_gain * std::log1p(-p);
    }
    const double x = gamma_quantile_x(model.m, p, std::lgamma(model.m));
    return x * model.avg_gain / model.m;
}

double sample(const FadingModel& model, double u) {
    return quantile(model, u);
}

} // namespace deem
