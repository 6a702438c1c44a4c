#ifndef BOXFENCE_ANALYZE_HPP
#define BOXFENCE_ANALYZE_HPP

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "fences.hpp"
#include "pipeline.hpp"
#include "quartiles.hpp"
#include "sample.hpp"

namespace boxfence {

// A detection method plus its tuning knob. Only the field relevant to the
// method is consulted: k for Tukey, alpha for the p-value procedures,
// neither for Chauvenet (its multiplier is derived from n).
struct MethodSpec {
    Method method = Method::Chauvenet;
    double k = 1.5;
    double alpha = 0.05;

    static MethodSpec tukey(double k = 1.5) { return {Method::Tukey, k, 0.05}; }
    static MethodSpec chauvenet() { return {Method::Chauvenet, 1.5, 0.05}; }
    static MethodSpec holm(double alpha = 0.05) { return {Method::HolmFWER, 1.5, alpha}; }
    static MethodSpec bh(double alpha = 0.05) { return {Method::BH_FDR, 1.5, alpha}; }
};

struct OutlierReport {
    std::vector<std::size_t> indices; // ascending positions in the input
    std::vector<double> values;       // aligned with indices
    Method method = Method::Tukey;
    std::optional<double> effective_threshold; // t_star, p-value methods only
    std::size_t count_low = 0;
    std::size_t count_high = 0;
    bool degenerate_scale = false;
};

struct BoxplotStats {
    QuartileSummary summary;
    FenceSpec fences;
    double whisker_low = 0.0;
    double whisker_high = 0.0;
    OutlierReport outliers;
};

namespace detail {

// Flag decisions for the p-value methods happen in p-space, where the
// comparisons are exact; the fences reported alongside are the back-
// transformed display of the same cut and may differ from the data-scale
// comparison by an ulp. For Tukey/Chauvenet, fences are the primary object
// and values strictly outside them are flagged.
inline std::vector<bool> fence_flags(const std::vector<double>& xs, const FenceSpec& f,
                                     bool include_boundary) {
    std::vector<bool> out(xs.size(), false);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (include_boundary)
            out[i] = xs[i] <= f.lower || xs[i] >= f.upper;
        else
            out[i] = xs[i] < f.lower || xs[i] > f.upper;
    }
    return out;
}

} // namespace detail

// One sample, one method, full boxplot summary. Whiskers reach the most
// extreme observation not flagged as an outlier on each side, falling back
// to the box edge when no observation sits in the whisker range. When the
// IQR is zero the p-value methods have no null model; every value off the
// median is flagged and the report carries degenerate_scale = true (a
// constant sample yields no outliers and no tag).
inline BoxplotStats analyze(const Sample& s, const MethodSpec& spec,
                            Convention conv = Convention::Hinges) {
    const QuartileSummary q = quartiles(s, conv);
    const std::vector<double>& xs = s.values();

    BoxplotStats st;
    st.summary = q;
    st.outliers.method = spec.method;

    std::vector<bool> flag;
    const bool pvalue_method =
        spec.method == Method::HolmFWER || spec.method == Method::BH_FDR;

    if (pvalue_method && q.iqr == 0.0) {
        // No scale to standardize against: fences collapse onto the median
        // and anything off it is flagged, mirroring what the IQR-multiplier
        // methods do in the same situation.
        st.fences = FenceSpec{spec.method, q.median, q.median, std::nullopt, spec.alpha};
        flag.assign(xs.size(), false);
        for (std::size_t i = 0; i < xs.size(); ++i) flag[i] = xs[i] != q.median;
    } else if (pvalue_method) {
        const Procedure proc =
            spec.method == Method::HolmFWER ? Procedure::Holm : Procedure::BH;
        const PipelineResult pr = pipeline(s, proc, spec.alpha, conv);
        st.fences = pr.fences;
        st.outliers.effective_threshold = pr.threshold.t_star;
        flag = flagged(pr.pvalues, pr.threshold);
    } else {
        st.fences = (spec.method == Method::Tukey) ? tukey_fences(q, spec.k)
                                                   : chauvenet_fences(q);
        flag = detail::fence_flags(xs, st.fences, false);
    }

    // Whiskers from the unflagged extremes, clamped to the box when a side
    // holds no data.
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (flag[i]) continue;
        lo = std::min(lo, xs[i]);
        hi = std::max(hi, xs[i]);
    }
    st.whisker_low = (lo <= q.q1) ? lo : q.q1;
    st.whisker_high = (hi >= q.q3) ? hi : q.q3;

    const double center = 0.5 * (st.fences.lower + st.fences.upper);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!flag[i]) continue;
        st.outliers.indices.push_back(i);
        st.outliers.values.push_back(xs[i]);
        if (xs[i] < center)
            ++st.outliers.count_low;
        else
            ++st.outliers.count_high;
    }
    st.outliers.degenerate_scale = q.iqr == 0.0 && !st.outliers.indices.empty();
    return st;
}

// Per-group analysis that degrades gracefully: a group failing its
// preconditions (too few observations, say) is reported with the error
// message instead of aborting the batch.
struct GroupResult {
    std::string label;
    std::optional<BoxplotStats> stats;
    std::string error; // empty on success
};

inline std::vector<GroupResult> analyze_groups(
    const std::vector<std::pair<std::string, Sample>>& groups, const MethodSpec& spec,
    Convention conv = Convention::Hinges) {
    std::vector<GroupResult> out;
    out.reserve(groups.size());
    for (const auto& [label, sample] : groups) {
        GroupResult g;
        g.label = label;
        try {
            g.stats = analyze(sample, spec, conv);
        } catch (const std::exception& e) {
            g.error = e.what();
        }
        out.push_back(std::move(g));
    }
    return out;
}

} // namespace boxfence

#endif // BOXFENCE_ANALYZE_HPP
