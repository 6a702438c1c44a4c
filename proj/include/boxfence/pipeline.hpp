#ifndef BOXFENCE_PIPELINE_HPP
#define BOXFENCE_PIPELINE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "errors.hpp"
#include "fences.hpp"
#include "normal.hpp"
#include "quartiles.hpp"
#include "sample.hpp"

// Outlier detection as a multiple-testing problem: fit a robust normal null
// from the quartiles, convert every observation to a two-sided p-value, run
// a step procedure (Holm for family-wise error, Benjamini-Hochberg for false
// discovery rate), and translate the surviving threshold back into
// data-scale fences.

namespace boxfence {

enum class Procedure { Holm, BH };

inline const char* procedure_name(Procedure p) {
    return p == Procedure::Holm ? "holm" : "bh";
}

enum class NullSource { QuartileRobust };

// Normal null hypothesis N(mu, sigma^2) with sigma > 0 enforced.
struct NullModel {
    double mu = 0.0;
    double sigma = 1.0;
    NullSource source = NullSource::QuartileRobust;
};

struct PValueSet {
    std::vector<double> p; // aligned with the sample, each in (0, 1]
};

// Data-scale threshold produced by a step procedure. t_star strictly
// separates rejected from retained p-values under Holm; under BH the
// threshold-setting p-value equals t_star and is itself rejected.
struct AdjustedThreshold {
    double t_star = 1.0;
    std::size_t rejected_count = 0;
    Procedure procedure = Procedure::Holm;
    double alpha = 0.05;
};

namespace detail {
// 2 * Phi^-1(3/4): the IQR of the standard normal.
inline constexpr double kNormalIqr = 1.3489795003921635;
} // namespace detail

// Location = midhinge, scale = IQR rescaled by the standard normal IQR.
// Both estimators have ~25% breakdown, so a handful of wild points cannot
// drag the null toward themselves the way the mean and SD would.
inline NullModel estimate_null(const QuartileSummary& q) {
    if (!(q.iqr > 0.0))
        throw degenerate_scale("estimate_null: interquartile range is zero");
    NullModel m;
    m.mu = 0.5 * (q.q1 + q.q3);
    m.sigma = q.iqr / detail::kNormalIqr;
    m.source = NullSource::QuartileRobust;
    return m;
}

// Two-sided tail probabilities 2(1 - Phi(|x - mu| / sigma)), evaluated as a
// single erfc call per observation and floored at 1e-300 so downstream
// ratios never touch zero.
inline PValueSet p_values(const Sample& s, const NullModel& m) {
    if (!(m.sigma > 0.0))
        throw std::domain_error("p_values: null model sigma must be positive");
    PValueSet out;
    out.p.reserve(s.size());
    for (double x : s.values()) {
        const double z = std::abs(x - m.mu) / m.sigma;
        out.p.push_back(std::max(std::erfc(z * detail::kInvSqrt2), 1e-300));
    }
    return out;
}

namespace detail {
inline void check_alpha(double alpha, const char* who) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error(std::string(who) + ": alpha must lie strictly in (0, 1)");
}
} // namespace detail

// Holm step-down: walk the sorted p-values against alpha/(m - i + 1) and
// stop at the first failure. Rejection of p_(i) therefore implies rejection
// of every smaller p-value, and tied p-values are always rejected or
// retained together (the per-rank threshold grows with the rank). The
// returned t_star is the first failed threshold, alpha/(m - k); every
// rejected p-value is strictly below it and every retained one at or above
// it. With zero rejections t_star = alpha/m, with all m rejected t_star = 1.
inline AdjustedThreshold holm_adjust(const PValueSet& pv, double alpha) {
    detail::check_alpha(alpha, "holm_adjust");
    const std::size_t m = pv.p.size();
    if (m == 0)
        throw std::invalid_argument("holm_adjust: empty p-value set");

    std::vector<double> sp(pv.p);
    std::sort(sp.begin(), sp.end());
    std::size_t k = 0;
    while (k < m && sp[k] <= alpha / static_cast<double>(m - k)) ++k;

    AdjustedThreshold t;
    t.t_star = (k < m) ? alpha / static_cast<double>(m - k) : 1.0;
    t.rejected_count = k;
    t.procedure = Procedure::Holm;
    t.alpha = alpha;
    return t;
}

// Benjamini-Hochberg step-up: find the largest rank k with
// p_(k) <= k * alpha / m and reject everything at or below p_(k). t_star is
// p_(k) itself, so the comparison downstream is inclusive and ties with the
// threshold-setting p-value are all rejected. With zero rejections t_star
// falls back to alpha/m (the rank-1 bound nothing reached).
inline AdjustedThreshold bh_adjust(const PValueSet& pv, double alpha) {
    detail::check_alpha(alpha, "bh_adjust");
    const std::size_t m = pv.p.size();
    if (m == 0)
        throw std::invalid_argument("bh_adjust: empty p-value set");

    std::vector<double> sp(pv.p);
    std::sort(sp.begin(), sp.end());
    std::size_t k = 0;
    for (std::size_t i = m; i >= 1; --i) {
        if (sp[i - 1] <= static_cast<double>(i) * alpha / static_cast<double>(m)) {
            k = i;
            break;
        }
    }

    AdjustedThreshold t;
    t.t_star = (k > 0) ? sp[k - 1] : alpha / static_cast<double>(m);
    t.rejected_count = k;
    t.procedure = Procedure::BH;
    t.alpha = alpha;
    return t;
}

// Per-observation rejection decisions, taken in p-space so they are exact:
// Holm compares strictly (its t_star separates), BH inclusively (its t_star
// is an attained p-value).
inline std::vector<bool> flagged(const PValueSet& pv, const AdjustedThreshold& t) {
    std::vector<bool> out(pv.p.size(), false);
    if (t.procedure == Procedure::Holm) {
        for (std::size_t i = 0; i < pv.p.size(); ++i) out[i] = pv.p[i] < t.t_star;
    } else {
        for (std::size_t i = 0; i < pv.p.size(); ++i) out[i] = pv.p[i] <= t.t_star;
    }
    return out;
}

// Back-transform a p-space threshold into data-scale fences: the half-width
// is the z-score whose two-sided tail equals t_star. t_star = 1 collapses
// the fences onto mu. Evaluated as -quantile(t_star/2) rather than
// quantile(1 - t_star/2) because 1 - t_star/2 rounds to 1.0 once t_star
// drops below 2^-52, which one extreme observation's p-value easily forces.
inline FenceSpec fences_from_threshold(const AdjustedThreshold& t, const NullModel& m) {
    if (!(m.sigma > 0.0))
        throw std::domain_error("fences_from_threshold: null model sigma must be positive");
    if (!(t.t_star > 0.0 && t.t_star <= 1.0))
        throw std::domain_error("fences_from_threshold: t_star must lie in (0, 1]");
    const double w = -m.sigma * normal_quantile(0.5 * t.t_star);
    FenceSpec f;
    f.method = (t.procedure == Procedure::Holm) ? Method::HolmFWER : Method::BH_FDR;
    f.lower = m.mu - w;
    f.upper = m.mu + w;
    f.alpha = t.alpha;
    return f;
}

struct PipelineResult {
    QuartileSummary summary;
    NullModel null_model;
    PValueSet pvalues;
    AdjustedThreshold threshold;
    FenceSpec fences;
};

// The full chain: quartiles -> robust null -> p-values -> step procedure ->
// data-scale fences. Throws degenerate_scale when the IQR is zero and
// insufficient_data below n = 4.
inline PipelineResult pipeline(const Sample& s, Procedure proc, double alpha,
                               Convention conv = Convention::Hinges) {
    PipelineResult r;
    r.summary = quartiles(s, conv);
    r.null_model = estimate_null(r.summary);
    r.pvalues = p_values(s, r.null_model);
    r.threshold = (proc == Procedure::Holm) ? holm_adjust(r.pvalues, alpha)
                                            : bh_adjust(r.pvalues, alpha);
    r.fences = fences_from_threshold(r.threshold, r.null_model);
    return r;
}

} // namespace boxfence

#endif // BOXFENCE_PIPELINE_HPP
