#ifndef BOXFENCE_FENCES_HPP
#define BOXFENCE_FENCES_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>

#include "normal.hpp"
#include "quartiles.hpp"

namespace boxfence {

enum class Method { Tukey, Chauvenet, HolmFWER, BH_FDR };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::Tukey:     return "tukey";
        case Method::Chauvenet: return "chauvenet";
        case Method::HolmFWER:  return "holm";
        default:                return "bh";
    }
}

// Data-scale flagging boundaries. For the IQR-multiplier methods (Tukey,
// Chauvenet) `coefficient` records the multiplier actually used; for the
// p-value methods `alpha` records the error-rate target. Values strictly
// outside [lower, upper] are outliers, except BH which also flags values
// sitting exactly on a fence (its threshold is attained by construction).
struct FenceSpec {
    Method method = Method::Tukey;
    double lower = 0.0;
    double upper = 0.0;
    std::optional<double> coefficient;
    std::optional<double> alpha;
};

inline FenceSpec tukey_fences(const QuartileSummary& q, double k = 1.5) {
    if (!(std::isfinite(k) && k > 0.0))
        throw std::domain_error("tukey_fences: multiplier k must be positive and finite");
    FenceSpec f;
    f.method = Method::Tukey;
    f.lower = q.q1 - k * q.iqr;
    f.upper = q.q3 + k * q.iqr;
    f.coefficient = k;
    return f;
}

// Sample-size-adaptive fence multiplier: the IQR multiple at which a
// rejection-region argument expects a quarter of an observation beyond each
// fence in a clean normal sample of size n. Grows like sqrt(2 log n), so
// fences widen slowly and the outside rate decays roughly as 1/(n log n)
// rather than staying constant the way a fixed k does.
inline double chauvenet_k(std::size_t n) {
    if (n == 0)
        throw std::domain_error("chauvenet_k: n must be positive");
    // -quantile(q) instead of quantile(1 - q): subtracting the tail from 1
    // throws away its low bits, which costs ~1e-12 in k by n = 50000.
    return -normal_quantile(0.25 / static_cast<double>(n)) / 1.35 - 0.5;
}

inline FenceSpec chauvenet_fences(const QuartileSummary& q) {
    FenceSpec f = tukey_fences(q, chauvenet_k(q.n));
    f.method = Method::Chauvenet;
    return f;
}

} // namespace boxfence

#endif // BOXFENCE_FENCES_HPP
