// Empirical fence calibration: how many pure-null observations each method
// flags as the sample grows. The fixed-k fence keeps a constant rate (so
// the flag count grows with n); the sample-size-aware fence holds the count
// near half an observation per sample.

#include <cstdio>
#include <cstdlib>

#include <boxfence/boxfence.hpp>

using namespace boxfence;

int main(int argc, char** argv) {
    const unsigned threads = argc > 1 ? static_cast<unsigned>(std::atoi(argv[1])) : 1;

    std::printf("%8s  %-10s %14s %14s\n", "n", "method", "outside_rate", "flags_per_sample");
    for (std::size_t n : {100u, 1000u, 10000u}) {
        for (const MethodSpec& m : {MethodSpec::tukey(), MethodSpec::chauvenet()}) {
            const sim::RateEstimate r =
                sim::outside_rate_oracle(m, n, 400, 42, Convention::Hinges, threads);
            std::printf("%8zu  %-10s %14.6f %14.4f\n", n, method_name(m.method), r.rate,
                        r.rate * static_cast<double>(n));
        }
    }
    return 0;
}
