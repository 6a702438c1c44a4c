#ifndef BOXFENCE_QUARTILES_HPP
#define BOXFENCE_QUARTILES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "errors.hpp"
#include "sample.hpp"

namespace boxfence {

// Two quartile conventions are supported. Hinges is the boxplot-native rule
// (fourths as midpoints of order statistics, mirrored around the median);
// Type7 is the linear interpolation most stats packages default to. They
// agree on many n but differ for e.g. n = 6.
enum class Convention { Hinges, Type7 };

inline const char* convention_name(Convention c) {
    return c == Convention::Hinges ? "hinges" : "type7";
}

struct QuartileSummary {
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double iqr = 0.0;
    std::size_t n = 0;
    Convention convention = Convention::Hinges;
};

namespace detail {

// x sorted ascending, 1-based half-integer position h: midpoint of the
// order statistics bracketing h.
inline double at_hinge(const std::vector<double>& x, double h) {
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = static_cast<std::size_t>(std::ceil(h));
    return 0.5 * (x[lo - 1] + x[hi - 1]);
}

// x sorted ascending, 0-based fractional position pos = (n-1)p.
inline double at_interp(const std::vector<double>& x, double pos) {
    const std::size_t j = static_cast<std::size_t>(std::floor(pos));
    const double g = pos - static_cast<double>(j);
    if (g == 0.0 || j + 1 >= x.size()) return x[j];
    return x[j] + g * (x[j + 1] - x[j]);
}

} // namespace detail

// Five-number backbone of the boxplot. Requires n >= 4; the input order is
// untouched (sorting happens on a copy). iqr is exactly q3 - q1, so it can
// be 0 for heavily tied data even when the sample is not constant.
inline QuartileSummary quartiles(const Sample& s, Convention conv = Convention::Hinges) {
    if (s.size() < 4)
        throw insufficient_data("quartiles: need at least 4 observations");
    std::vector<double> x(s.values());
    std::sort(x.begin(), x.end());
    const std::size_t n = x.size();

    QuartileSummary q;
    q.n = n;
    q.convention = conv;
    q.median = (n % 2 == 1) ? x[n / 2] : 0.5 * (x[n / 2 - 1] + x[n / 2]);

    if (conv == Convention::Hinges) {
        // h = floor((n+3)/2)/2 as a 1-based position; the upper hinge sits
        // at the mirrored position n+1-h.
        const double h = static_cast<double>((n + 3) / 2) / 2.0;
        q.q1 = detail::at_hinge(x, h);
        q.q3 = detail::at_hinge(x, static_cast<double>(n + 1) - h);
    } else {
        q.q1 = detail::at_interp(x, 0.25 * static_cast<double>(n - 1));
        q.q3 = detail::at_interp(x, 0.75 * static_cast<double>(n - 1));
    }
    q.iqr = q.q3 - q.q1;
    return q;
}

} // namespace boxfence

#endif // BOXFENCE_QUARTILES_HPP
