#ifndef PERTDEF_PROBLEM_HPP
#define PERTDEF_PROBLEM_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pertdef/solver.hpp"

namespace pertdef {

using Json = nlohmann::ordered_json;

// Structured error surfaced by the CLI with a machine-readable category.
struct CliError : std::runtime_error {
    std::string category; // "parse" | "precondition" | "assertion"
    CliError(std::string category_, const std::string& message)
        : std::runtime_error(message), category(std::move(category_)) {}
};

// Everything a command needs, loaded from one structured text file.
struct ProblemFile {
    int N = 0;
    int n = 0;
    int k = 0;
    std::string F_text;
    Polynomial F;
    ColumnQ x_star;
    std::vector<ColumnQ> tangent_frame; // auto-derived when absent
    std::vector<ColumnQ> normal_frame;  // defaults to tangent_frame
    SolutionParams params;
    std::map<int, TensorMap> family; // order -> derivative tensor

    Hypersurface hypersurface() const;
};

ProblemFile load_problem(const Json& j);
ProblemFile load_problem_file(const std::string& path);

// Chart files: ring spec + per-coordinate canonical serialization.
Json pert_chart_to_json(const Column<PertElem>& chart, const std::string& command,
                        const std::string& inputs_hash);
Json def_chart_to_json(const Column<DefElem>& chart, const std::string& command,
                       const std::string& inputs_hash);

Column<PertElem> pert_chart_from_json(const Json& j);
Column<DefElem> def_chart_from_json(const Json& j);
std::string chart_ring_type(const Json& j);

Json load_json_file(const std::string& path);

// FNV-1a over the canonical dump, for the provenance block.
std::string inputs_hash(const Json& j, const std::string& command);

struct RunOptions {
    std::optional<Json> chart; // for commands that consume a chart file
    int max_k = 8;             // symmetrization guard
    std::optional<int> k_override;
};

struct RunResult {
    Json output;
    int exit_code = 0;
};

// Dispatches a subcommand against a loaded problem; throws CliError on
// invalid input, returns exit_code 1 with a report for failed assertions.
RunResult run_command(const std::string& command, const Json& problem_json, const RunOptions& opts);

} // namespace pertdef

#endif
