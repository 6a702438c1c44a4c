// Runs the same contaminated sample through all four detection methods and
// prints the resulting reports plus a one-line plot for each.

#include <iostream>

#include <boxfence/boxfence.hpp>

using namespace boxfence;

int main() {
    std::vector<double> values;
    for (int i = 0; i < 46; ++i) values.push_back(-2.0 + 4.0 * i / 45.0);
    values.push_back(7.1);
    values.push_back(6.9);
    values.push_back(7.3);
    const Sample s(values);

    const MethodSpec specs[] = {MethodSpec::tukey(), MethodSpec::chauvenet(),
                                MethodSpec::holm(0.05), MethodSpec::bh(0.05)};
    for (const MethodSpec& spec : specs) {
        const BoxplotStats st = analyze(s, spec);
        std::vector<GroupResult> one{{method_name(spec.method), st, ""}};
        std::cout << io::report_table(one);
        std::cout << "  " << render_ascii(st, {.width = 72}) << "\n\n";
    }
    return 0;
}
