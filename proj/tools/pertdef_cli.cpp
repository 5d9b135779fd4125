#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "pertdef/problem.hpp"

namespace {

int exit_code_for(const std::string& category) {
    if (category == "parse") return 2;
    if (category == "precondition") return 3;
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact perturbative and deformational charts of affine hypersurfaces"};
    app.require_subcommand(1);

    std::string problem_path;
    std::string chart_path;
    std::string out_path;
    int max_k = 8;
    int k_override = -1;

    const std::vector<std::string> commands = {
        "pert-solve", "def-chart",      "embed", "retract", "symmetrize",
        "residual",   "verify-theorem", "beta",  "gamma",   "gamma-beta-check"};
    for (const auto& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        if (name != "embed" && name != "retract" && name != "symmetrize")
            sub->add_option("--problem", problem_path, "problem file (JSON)")->required();
        if (name == "embed" || name == "retract" || name == "symmetrize" || name == "residual")
            sub->add_option("--chart", chart_path, "chart file (JSON)")->required();
        sub->add_option("--out", out_path, "write output here instead of stdout");
        sub->add_option("--max-k", max_k, "symmetrization cost guard");
        if (name == "pert-solve" || name == "def-chart" || name == "verify-theorem")
            sub->add_option("--k", k_override, "override the problem file's k");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        pertdef::RunOptions opts;
        opts.max_k = max_k;
        if (k_override > 0) opts.k_override = k_override;
        if (!chart_path.empty()) opts.chart = pertdef::load_json_file(chart_path);

        pertdef::Json problem_json;
        if (!problem_path.empty()) {
            if (problem_path == "-")
                problem_json = pertdef::Json::parse(std::cin);
            else
                problem_json = pertdef::load_json_file(problem_path);
        }

        const pertdef::RunResult result = pertdef::run_command(command, problem_json, opts);
        const std::string text = result.output.dump(2) + "\n";
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(out_path);
            if (!out) throw pertdef::CliError("precondition", "cannot write '" + out_path + "'");
            out << text;
        }
        return result.exit_code;
    } catch (const pertdef::CliError& e) {
        pertdef::Json err{{"error", {{"category", e.category}, {"message", e.what()}}}};
        std::cerr << err.dump(2) << "\n";
        return exit_code_for(e.category);
    } catch (const std::exception& e) {
        pertdef::Json err{{"error", {{"category", "precondition"}, {"message", e.what()}}}};
        std::cerr << err.dump(2) << "\n";
        return 3;
    }
}
