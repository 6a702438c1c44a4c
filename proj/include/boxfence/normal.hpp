#ifndef BOXFENCE_NORMAL_HPP
#define BOXFENCE_NORMAL_HPP

#include <cmath>
#include <stdexcept>

// Standard normal CDF and quantile. Both are plain functions of doubles with
// no state, so results are identical across platforms that implement IEEE 754
// and a correctly rounded erfc.

namespace boxfence {

namespace detail {
inline constexpr double kInvSqrt2  = 0.70710678118654752440;
inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;
} // namespace detail

// Phi(z), evaluated through erfc so the lower tail keeps full relative
// accuracy down to the underflow limit. Absolute error is a few ulp.
inline double normal_cdf(double z) {
    if (std::isnan(z)) throw std::domain_error("normal_cdf: NaN input");
    return 0.5 * std::erfc(-z * detail::kInvSqrt2);
}

inline double normal_pdf(double z) {
    return detail::kInvSqrt2Pi * std::exp(-0.5 * z * z);
}

namespace detail {

// Rational approximation for Phi^-1 on (0, 0.5], coefficients after
// Acklam's classic inverse-normal fit (relative error < 1.15e-9 before
// refinement). Restricting to the lower half keeps the subsequent Halley
// step well conditioned: for x <= 0 the CDF is a pure erfc evaluation with
// full relative precision, so the residual e = Phi(x) - p is trustworthy
// even when p is 1e-300.
inline double inverse_cdf_lower(double p) {
    static constexpr double a[6] = {
        -3.969683028665376e+01,  2.209460984245205e+02, -2.759285104469687e+02,
         1.383577518672690e+02, -3.066479806614716e+01,  2.506628277459239e+00};
    static constexpr double b[5] = {
        -5.447609879822406e+01,  1.615858368580409e+02, -1.556989798598866e+02,
         6.680131188771972e+01, -1.328068155288572e+01};
    static constexpr double c[6] = {
        -7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
        -2.549732539343734e+00,  4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[4] = {
         7.784695709041462e-03,  3.224671290700398e-01,  2.445134137142996e+00,
         3.754408661907416e+00};

    double x;
    if (p < 0.02425) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }

    // One Halley step against the erfc-based CDF. The correction uses
    // e / pdf(x); the pdf is evaluated directly (not as a reciprocal of
    // exp(x^2/2), which would overflow past |x| ~ 38).
    const double e = 0.5 * std::erfc(-x * kInvSqrt2) - p;
    const double u = e / normal_pdf(x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

} // namespace detail

// Phi^-1(p) for p in (0, 1). Relative error is at most a few ulp across
// [1e-300, 1 - 1e-16]; round-trips through normal_cdf agree to ~1e-16
// absolute. Out-of-domain p throws.
inline double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("normal_quantile: p must lie strictly in (0, 1)");
    if (p == 0.5) return 0.0;
    // 1 - p is exact for p in [0.5, 1], so the upper half reflects onto the
    // well-conditioned lower-half evaluation.
    if (p > 0.5) return -detail::inverse_cdf_lower(1.0 - p);
    return detail::inverse_cdf_lower(p);
}

} // namespace boxfence

#endif // BOXFENCE_NORMAL_HPP
