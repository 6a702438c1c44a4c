#ifndef BOXFENCE_CLI_HPP
#define BOXFENCE_CLI_HPP

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "analyze.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "render.hpp"
#include "simulate.hpp"

// Command-line front end. run() is a pure function of its argument vector
// and the two output streams, which lets tests drive the full CLI in
// process and compare bytes. Exit codes: 0 success, 1 validation or usage
// problem, 2 filesystem problem.

namespace boxfence::cli {

namespace detail {

inline MethodSpec make_method(const std::string& name, double k, double alpha) {
    if (name == "tukey") return MethodSpec::tukey(k);
    if (name == "chauvenet") return MethodSpec::chauvenet();
    if (name == "holm") return MethodSpec::holm(alpha);
    return MethodSpec::bh(alpha);
}

inline Convention make_convention(const std::string& name) {
    return name == "type7" ? Convention::Type7 : Convention::Hinges;
}

inline io::Format make_format(const std::string& name) {
    if (name == "csv") return io::Format::CSV;
    if (name == "json") return io::Format::JSON;
    return io::Format::Auto;
}

inline void check_tuning(double k, double alpha) {
    if (!(std::isfinite(k) && k > 0.0))
        throw std::invalid_argument("--k must be positive and finite");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("--alpha must lie strictly in (0, 1)");
}

// Shared detect/plot input handling: load, group, analyze. Group-level
// errors are reported on err; the return's second member says whether every
// group succeeded.
struct AnalyzedInput {
    std::vector<GroupResult> groups;
    bool all_ok = true;
};

inline AnalyzedInput analyze_input(const std::string& input, const std::string& format,
                                   const std::string& column, const std::string& group_column,
                                   const MethodSpec& spec, Convention conv, std::ostream& err) {
    io::Format fmt = make_format(format);
    if (fmt == io::Format::Auto) fmt = io::detect_format(input);
    if (fmt == io::Format::CSV && column.empty())
        throw std::invalid_argument("--column is required for CSV input");

    AnalyzedInput out;
    out.groups = analyze_groups(io::load_groups(input, fmt, column, group_column), spec, conv);
    for (const auto& g : out.groups) {
        if (g.error.empty()) continue;
        out.all_ok = false;
        err << "error: group '" << g.label << "': " << g.error << '\n';
    }
    return out;
}

inline std::string fmt_cell(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::string(buf);
}

} // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Boxplot outlier detection with sample-size-aware fences"};
    app.require_subcommand(1);

    // Values shared by detect and plot.
    std::string input, format = "auto", column, group_column;
    std::string method = "chauvenet", convention = "hinges", output = "json";
    double k = 1.5, alpha = 0.05;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--input", input, "Input file (CSV with header, or JSON)")->required();
        sub->add_option("--format", format, "Input format (default: by file extension)")
            ->check(CLI::IsMember({"auto", "csv", "json"}));
        sub->add_option("--column", column, "Value column name (CSV input)");
        sub->add_option("--group-column", group_column, "Group label column (CSV input)");
        sub->add_option("--method", method, "Detection method")
            ->check(CLI::IsMember({"tukey", "chauvenet", "holm", "bh"}));
        sub->add_option("--k", k, "Fence multiplier for tukey");
        sub->add_option("--alpha", alpha, "Error-rate target for holm/bh");
        sub->add_option("--convention", convention, "Quartile convention")
            ->check(CLI::IsMember({"hinges", "type7"}));
    };

    CLI::App* detect = app.add_subcommand("detect", "Flag outliers in a dataset");
    add_common(detect);
    detect->add_option("--output", output, "Report format")
        ->check(CLI::IsMember({"json", "csv", "table"}));

    std::string render = "ascii", plot_out = "-";
    std::size_t width = 0;
    bool horizontal = false, no_fences = false;
    CLI::App* plot = app.add_subcommand("plot", "Render boxplots");
    add_common(plot);
    plot->add_option("--render", render, "Renderer")->check(CLI::IsMember({"ascii", "svg"}));
    plot->add_option("--width", width, "ASCII columns / SVG canvas width (0 = default)");
    plot->add_flag("--horizontal", horizontal, "Horizontal value axis (SVG)");
    plot->add_flag("--no-fences", no_fences, "Hide fence markers");
    plot->add_option("--out", plot_out, "Output path ('-' = stdout)");

    sim::Scenario sc;
    std::string methods_arg = "tukey,chauvenet,holm,bh";
    unsigned threads = 1;
    CLI::App* simulate = app.add_subcommand("simulate", "Run a Monte-Carlo scenario");
    simulate->add_option("--n", sc.n, "Observations per replicate")->required();
    simulate->add_option("--contaminants", sc.contaminant_count, "Contaminants per replicate");
    simulate->add_option("--contaminant-mean", sc.contaminant_mean, "Contaminant mean");
    simulate->add_option("--contaminant-sd", sc.contaminant_sd, "Contaminant SD");
    simulate->add_option("--null-mean", sc.null_mean, "Null mean");
    simulate->add_option("--null-sd", sc.null_sd, "Null SD");
    simulate->add_option("--replicates", sc.replicates, "Replicate count");
    simulate->add_option("--seed", sc.seed, "RNG seed");
    simulate->add_option("--methods", methods_arg, "Comma-separated method list");
    simulate->add_option("--alpha", alpha, "Error-rate target for holm/bh");
    simulate->add_option("--k", k, "Fence multiplier for tukey");
    simulate->add_option("--convention", convention, "Quartile convention")
        ->check(CLI::IsMember({"hinges", "type7"}));
    simulate->add_option("--threads", threads, "Worker threads");

    std::size_t cmp_replicates = 50;
    std::uint64_t cmp_seed = 1;
    std::string cmp_svg;
    CLI::App* compare = app.add_subcommand("compare", "Method sweep over sample sizes");
    compare->add_option("--replicates", cmp_replicates, "Replicates per cell");
    compare->add_option("--seed", cmp_seed, "RNG seed");
    compare->add_option("--alpha", alpha, "Error-rate target for holm/bh");
    compare->add_option("--k", k, "Fence multiplier for tukey");
    compare->add_option("--convention", convention, "Quartile convention")
        ->check(CLI::IsMember({"hinges", "type7"}));
    compare->add_option("--threads", threads, "Worker threads");
    compare->add_option("--svg", cmp_svg, "Also write an example-sample SVG grid here");

    // argv-style parse keeps CLI11's ordinary argument order.
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("boxfence");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        detail::check_tuning(k, alpha);
        const Convention conv = detail::make_convention(convention);

        if (detect->parsed()) {
            const MethodSpec spec = detail::make_method(method, k, alpha);
            const auto res =
                detail::analyze_input(input, format, column, group_column, spec, conv, err);
            if (output == "json")
                out << io::reports_json(res.groups).dump(2) << '\n';
            else if (output == "csv")
                out << io::reports_csv(res.groups);
            else
                out << io::report_table(res.groups);
            return res.all_ok ? 0 : 1;
        }

        if (plot->parsed()) {
            const MethodSpec spec = detail::make_method(method, k, alpha);
            const auto res =
                detail::analyze_input(input, format, column, group_column, spec, conv, err);

            RenderSpec rs;
            rs.width = width ? width : (render == "svg" ? 960 : 60);
            rs.orientation = horizontal ? Orientation::Horizontal : Orientation::Vertical;
            rs.show_fences = !no_fences;

            std::string doc;
            if (render == "svg") {
                std::vector<std::pair<std::string, BoxplotStats>> panels;
                for (const auto& g : res.groups)
                    if (g.stats) panels.emplace_back(g.label, *g.stats);
                if (panels.empty()) throw std::invalid_argument("no plottable groups");
                doc = render_svg(panels, rs);
            } else {
                const bool lone = res.groups.size() == 1 && res.groups[0].label.empty();
                for (const auto& g : res.groups) {
                    if (!g.stats) continue;
                    if (!lone) doc += g.label + ": ";
                    doc += render_ascii(*g.stats, rs);
                    doc += '\n';
                }
                if (doc.empty()) throw std::invalid_argument("no plottable groups");
            }

            if (plot_out == "-")
                out << doc;
            else
                io::write_file(plot_out, doc);
            return res.all_ok ? 0 : 1;
        }

        if (simulate->parsed()) {
            std::vector<MethodSpec> specs;
            std::stringstream ss(methods_arg);
            std::string name;
            while (std::getline(ss, name, ',')) {
                if (name.empty()) continue;
                if (name != "tukey" && name != "chauvenet" && name != "holm" && name != "bh")
                    throw std::invalid_argument("unknown method '" + name + "'");
                specs.push_back(detail::make_method(name, k, alpha));
            }
            if (specs.empty()) throw std::invalid_argument("--methods named no methods");
            const sim::SimResult res = sim::run(sc, specs, conv, threads);
            out << io::sim_json(res).dump(2) << '\n';
            return 0;
        }

        // compare: fixed contaminated-normal sweep across sample sizes.
        const std::vector<std::size_t> sizes = {50, 500, 5000, 50000};
        const std::vector<MethodSpec> specs = {
            MethodSpec::tukey(k), MethodSpec::chauvenet(), MethodSpec::holm(alpha),
            MethodSpec::bh(alpha)};

        out << "contaminated-normal sweep: 3 contaminants ~ N(5, 0.5^2), replicates="
            << cmp_replicates << ", seed=" << cmp_seed << ", convention=" << convention
            << "\n\n";
        char row[160];
        std::snprintf(row, sizeof row, "%8s  %-10s %12s %12s %12s\n", "n", "method",
                      "mean_total", "mean_true", "mean_false");
        out << row;

        std::vector<std::pair<std::string, BoxplotStats>> panels;
        for (std::size_t n : sizes) {
            sim::Scenario cell;
            cell.n = n;
            cell.contaminant_count = 3;
            cell.replicates = cmp_replicates;
            cell.seed = cmp_seed;
            const sim::SimResult res = sim::run(cell, specs, conv, threads);
            for (const auto& ms : res.per_method) {
                std::snprintf(row, sizeof row, "%8zu  %-10s %12s %12s %12s\n", n,
                              method_name(ms.method.method),
                              detail::fmt_cell(ms.mean_flagged_total).c_str(),
                              detail::fmt_cell(ms.mean_true_flagged).c_str(),
                              detail::fmt_cell(ms.mean_false_flagged).c_str());
                out << row;
            }
            if (!cmp_svg.empty()) {
                const sim::GeneratedSample g = sim::generate(cell, 0);
                for (const auto& spec : specs) {
                    const std::string label =
                        std::string(method_name(spec.method)) + " n=" + std::to_string(n);
                    panels.emplace_back(label, analyze(g.sample, spec, conv));
                }
            }
        }
        if (!cmp_svg.empty()) {
            RenderSpec rs;
            rs.width = 1280;
            io::write_file(cmp_svg, render_svg(panels, rs));
        }
        return 0;
    } catch (const io_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace boxfence::cli

#endif // BOXFENCE_CLI_HPP
