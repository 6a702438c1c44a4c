#ifndef BOXFENCE_SIMULATE_HPP
#define BOXFENCE_SIMULATE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <vector>

#include "analyze.hpp"
#include "rng.hpp"
#include "sample.hpp"

// Monte-Carlo harness for measuring detection behaviour: replicate samples
// are drawn from a normal null with an optional block of contaminants
// appended, each method is scored per replicate, and results are reduced in
// fixed replicate order. Outputs are byte-identical for a given seed
// regardless of thread count.

namespace boxfence::sim {

struct Scenario {
    std::size_t n = 50;                // total observations per replicate
    std::size_t contaminant_count = 0; // appended after the null block
    double contaminant_mean = 5.0;
    double contaminant_sd = 0.5;
    double null_mean = 0.0;
    double null_sd = 1.0;
    std::size_t replicates = 200;
    std::uint64_t seed = 0;
};

inline void validate(const Scenario& sc) {
    if (sc.n == 0) throw std::invalid_argument("Scenario: n must be positive");
    if (sc.contaminant_count >= sc.n)
        throw std::invalid_argument("Scenario: contaminants must leave at least one null observation");
    if (sc.replicates == 0) throw std::invalid_argument("Scenario: at least one replicate required");
    if (!(sc.null_sd > 0.0) || !std::isfinite(sc.null_sd) ||
        !(sc.contaminant_sd > 0.0) || !std::isfinite(sc.contaminant_sd))
        throw std::invalid_argument("Scenario: standard deviations must be positive and finite");
    if (!std::isfinite(sc.null_mean) || !std::isfinite(sc.contaminant_mean))
        throw std::invalid_argument("Scenario: means must be finite");
}

struct GeneratedSample {
    Sample sample;
    std::size_t contaminant_begin; // indices >= this are contaminants
};

// Replicate r of a scenario. Draw i of replicate r is counter i on stream r,
// so the sample depends only on (seed, r).
inline GeneratedSample generate(const Scenario& sc, std::size_t replicate_index) {
    validate(sc);
    const std::size_t nulls = sc.n - sc.contaminant_count;
    std::vector<double> v;
    v.reserve(sc.n);
    for (std::size_t i = 0; i < nulls; ++i)
        v.push_back(sc.null_mean + sc.null_sd * normal_draw(sc.seed, replicate_index, i));
    for (std::size_t i = nulls; i < sc.n; ++i)
        v.push_back(sc.contaminant_mean + sc.contaminant_sd * normal_draw(sc.seed, replicate_index, i));
    return {Sample(std::move(v)), nulls};
}

// Per-method score sheet. A flag on an index at or past contaminant_begin
// is a true detection, otherwise a false one.
struct MethodSimStats {
    MethodSpec method;
    std::vector<std::uint32_t> flagged_total; // one entry per replicate
    std::vector<std::uint32_t> true_flagged;
    std::vector<std::uint32_t> false_flagged;
    double mean_flagged_total = 0.0;
    double mean_true_flagged = 0.0;
    double mean_false_flagged = 0.0;
};

struct SimResult {
    Scenario scenario;
    Convention convention = Convention::Hinges;
    std::vector<MethodSimStats> per_method;
};

// Runs the scenario under every method. Replicates are partitioned across
// threads into preallocated per-replicate slots; no thread ever writes a
// slot another reads, and the final means are accumulated in replicate
// order, so the result is independent of scheduling.
inline SimResult run(const Scenario& sc, const std::vector<MethodSpec>& methods,
                     Convention conv = Convention::Hinges, unsigned threads = 1) {
    validate(sc);
    if (methods.empty())
        throw std::invalid_argument("sim::run: at least one method required");

    SimResult res;
    res.scenario = sc;
    res.convention = conv;
    res.per_method.resize(methods.size());
    const std::size_t R = sc.replicates;
    for (std::size_t j = 0; j < methods.size(); ++j) {
        res.per_method[j].method = methods[j];
        res.per_method[j].flagged_total.assign(R, 0);
        res.per_method[j].true_flagged.assign(R, 0);
        res.per_method[j].false_flagged.assign(R, 0);
    }

    const auto score_replicate = [&](std::size_t r) {
        const GeneratedSample g = generate(sc, r);
        for (std::size_t j = 0; j < methods.size(); ++j) {
            const BoxplotStats st = analyze(g.sample, methods[j], conv);
            std::uint32_t t = 0, f = 0;
            for (std::size_t idx : st.outliers.indices)
                (idx >= g.contaminant_begin ? t : f)++;
            res.per_method[j].flagged_total[r] = t + f;
            res.per_method[j].true_flagged[r] = t;
            res.per_method[j].false_flagged[r] = f;
        }
    };

    unsigned nthreads = std::max(1u, threads);
    nthreads = static_cast<unsigned>(std::min<std::size_t>(nthreads, R));
    if (nthreads == 1) {
        for (std::size_t r = 0; r < R; ++r) score_replicate(r);
    } else {
        std::mutex err_mutex;
        std::exception_ptr first_error;
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (unsigned w = 0; w < nthreads; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t r = w; r < R; r += nthreads) score_replicate(r);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    for (auto& ms : res.per_method) {
        const auto mean = [R](const std::vector<std::uint32_t>& v) {
            return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(R);
        };
        ms.mean_flagged_total = mean(ms.flagged_total);
        ms.mean_true_flagged = mean(ms.true_flagged);
        ms.mean_false_flagged = mean(ms.false_flagged);
    }
    return res;
}

// Fraction of pure-null observations a method flags, with its Monte-Carlo
// standard error. Useful as an empirical check of fence calibration.
struct RateEstimate {
    double rate = 0.0;
    double std_error = 0.0;
};

inline RateEstimate outside_rate_oracle(const MethodSpec& m, std::size_t n,
                                        std::size_t replicates, std::uint64_t seed,
                                        Convention conv = Convention::Hinges,
                                        unsigned threads = 1) {
    Scenario sc;
    sc.n = n;
    sc.contaminant_count = 0;
    sc.replicates = replicates;
    sc.seed = seed;
    const SimResult res = run(sc, {m}, conv, threads);

    const auto& totals = res.per_method[0].flagged_total;
    const double R = static_cast<double>(replicates);
    double mean_rate = 0.0;
    for (std::uint32_t c : totals) mean_rate += static_cast<double>(c) / static_cast<double>(n);
    mean_rate /= R;

    double var = 0.0;
    if (replicates > 1) {
        for (std::uint32_t c : totals) {
            const double d = static_cast<double>(c) / static_cast<double>(n) - mean_rate;
            var += d * d;
        }
        var /= (R - 1.0);
    }
    return {mean_rate, std::sqrt(var / R)};
}

} // namespace boxfence::sim

#endif // BOXFENCE_SIMULATE_HPP
