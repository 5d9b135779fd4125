#include "pertdef/problem.hpp"

#include <fstream>
#include <sstream>

#include "pertdef/flows.hpp"
#include "pertdef/morphisms.hpp"
#include "pertdef/parser.hpp"
#include "pertdef/serialize.hpp"

namespace pertdef {

namespace {

// Tensor keys serialize as "g|a1,a2" (upper index first).
std::vector<int> parse_tensor_key(const std::string& key) {
    std::vector<int> out;
    std::size_t bar = key.find('|');
    if (bar == std::string::npos) throw CliError("parse", "tensor key '" + key + "' missing '|'");
    try {
        out.push_back(std::stoi(key.substr(0, bar)));
        std::size_t start = bar + 1;
        while (start <= key.size()) {
            std::size_t comma = key.find(',', start);
            if (comma == std::string::npos) {
                out.push_back(std::stoi(key.substr(start)));
                break;
            }
            out.push_back(std::stoi(key.substr(start, comma - start)));
            start = comma + 1;
        }
    } catch (const std::exception&) {
        throw CliError("parse", "malformed tensor key '" + key + "'");
    }
    return out;
}

TensorMap parse_tensor(const Json& j, const std::string& name) {
    TensorMap t;
    for (const auto& [key, value] : j.items()) {
        const Rational v = parse_rational(value.get<std::string>());
        if (v != 0) t[parse_tensor_key(key)] = v;
    }
    (void)name;
    return t;
}

ColumnQ parse_column(const Json& j) {
    ColumnQ col;
    for (const auto& v : j) col.push_back(parse_rational(v.get<std::string>()));
    return col;
}

std::vector<ColumnQ> parse_frame(const Json& j) {
    std::vector<ColumnQ> frame;
    for (const auto& row : j) frame.push_back(parse_column(row));
    return frame;
}

Json element_to_json(const PertElem& e) {
    Json out = Json::object();
    for (const auto& [mono, coeff] : to_string_terms(e)) out[mono] = coeff;
    return out;
}

Json element_to_json(const DefElem& e) {
    Json out = Json::object();
    for (const auto& [mono, coeff] : to_string_terms(e)) out[mono] = coeff;
    return out;
}

StringTerms terms_from_json(const Json& j) {
    StringTerms terms;
    for (const auto& [key, value] : j.items()) terms.emplace_back(key, value.get<std::string>());
    return terms;
}

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace

std::string inputs_hash(const Json& j, const std::string& command) {
    std::ostringstream os;
    os << std::hex << fnv1a(command + "\n" + j.dump());
    return os.str();
}

Hypersurface ProblemFile::hypersurface() const {
    std::vector<ColumnQ> frame = tangent_frame;
    if (frame.empty()) frame = default_tangent_frame(F, x_star, n);
    return Hypersurface(F, x_star, frame, normal_frame);
}

ProblemFile load_problem(const Json& j) {
    ProblemFile p;
    try {
        p.N = j.at("N").get<int>();
        p.n = j.at("n").get<int>();
        p.k = j.at("k").get<int>();
        p.F_text = j.at("F").get<std::string>();
    } catch (const Json::exception& e) {
        throw CliError("parse", std::string("problem file: ") + e.what());
    }
    p.F = parse_poly(p.F_text, p.N);
    if (j.contains("x_star")) p.x_star = parse_column(j.at("x_star"));
    if (j.contains("tangent_frame")) p.tangent_frame = parse_frame(j.at("tangent_frame"));
    if (j.contains("normal_frame")) p.normal_frame = parse_frame(j.at("normal_frame"));
    if (j.contains("params")) {
        const Json& params = j.at("params");
        if (params.contains("A")) p.params.A = parse_tensor(params.at("A"), "A");
        if (params.contains("B")) p.params.B = parse_tensor(params.at("B"), "B");
        if (params.contains("C")) p.params.C = parse_tensor(params.at("C"), "C");
        if (params.contains("D")) p.params.D = parse_tensor(params.at("D"), "D");
        if (params.contains("higher"))
            for (const auto& [order, tensor] : params.at("higher").items())
                p.params.higher[std::stoi(order)] = parse_tensor(tensor, "order-" + order);
    }
    if (j.contains("family"))
        for (const auto& [key, value] : j.at("family").items()) {
            const std::vector<int> idx = parse_tensor_key(key);
            const int order = static_cast<int>(idx.size()) - 1;
            const Rational v = parse_rational(value.get<std::string>());
            if (v != 0) p.family[order][idx] = v;
        }
    return p;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError("parse", "cannot open file '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw CliError("parse", "file '" + path + "': " + e.what());
    }
}

ProblemFile load_problem_file(const std::string& path) { return load_problem(load_json_file(path)); }

namespace {

Json ring_json(const PertRingSpec& spec) {
    return Json{{"type", "pert"}, {"n", spec.n}, {"k", spec.k}};
}

Json ring_json(const DefRingSpec& spec) {
    return Json{{"type", "def"}, {"n", spec.n}, {"k", spec.k}};
}

template <class E>
Json chart_json(const Column<E>& chart, const std::string& command, const std::string& hash) {
    Json coords = Json::array();
    for (const auto& e : chart) coords.push_back(element_to_json(e));
    return Json{{"ring", ring_json(chart.front().spec())},
                {"coordinates", coords},
                {"provenance", Json{{"command", command}, {"inputs_hash", hash}}}};
}

} // namespace

Json pert_chart_to_json(const Column<PertElem>& chart, const std::string& command,
                        const std::string& hash) {
    return chart_json(chart, command, hash);
}

Json def_chart_to_json(const Column<DefElem>& chart, const std::string& command,
                       const std::string& hash) {
    return chart_json(chart, command, hash);
}

std::string chart_ring_type(const Json& j) {
    try {
        return j.at("ring").at("type").get<std::string>();
    } catch (const Json::exception& e) {
        throw CliError("parse", std::string("chart file: ") + e.what());
    }
}

Column<PertElem> pert_chart_from_json(const Json& j) {
    if (chart_ring_type(j) != "pert") throw CliError("precondition", "expected a pert chart file");
    const PertRingSpec spec(j.at("ring").at("n").get<int>(), j.at("ring").at("k").get<int>());
    Column<PertElem> chart;
    for (const auto& coord : j.at("coordinates"))
        chart.push_back(pert_from_string_terms(spec, terms_from_json(coord)));
    return chart;
}

Column<DefElem> def_chart_from_json(const Json& j) {
    if (chart_ring_type(j) != "def") throw CliError("precondition", "expected a def chart file");
    const DefRingSpec spec(j.at("ring").at("n").get<int>(), j.at("ring").at("k").get<int>());
    Column<DefElem> chart;
    for (const auto& coord : j.at("coordinates"))
        chart.push_back(def_from_string_terms(spec, terms_from_json(coord)));
    return chart;
}

namespace {

RunResult dispatch(const std::string& command, const Json& problem_json, const RunOptions& opts) {
    RunResult result;
    const std::string hash = inputs_hash(problem_json, command);

    if (command == "embed" || command == "retract" || command == "symmetrize") {
        if (!opts.chart) throw CliError("precondition", command + " requires a chart file");
        if (command == "embed") {
            const auto chart = pert_chart_from_json(*opts.chart);
            result.output = def_chart_to_json(embed_sym(chart), command, hash);
        } else if (command == "retract") {
            const auto chart = def_chart_from_json(*opts.chart);
            result.output = pert_chart_to_json(retract(chart), command, hash);
        } else {
            const auto chart = def_chart_from_json(*opts.chart);
            if (chart.front().spec().k > opts.max_k)
                throw CliError("precondition",
                               "symmetrize: k exceeds --max-k guard (factorial cost)");
            Column<DefElem> out;
            for (const auto& e : chart) out.push_back(symmetrize(e));
            result.output = def_chart_to_json(out, command, hash);
        }
        return result;
    }

    ProblemFile problem = load_problem(problem_json);
    const int k = opts.k_override.value_or(problem.k);

    if (command == "pert-solve") {
        problem.params.flavor = ParamFlavor::pert;
        const PertChart chart = pert_solve(problem.hypersurface(), problem.params, k);
        result.output = pert_chart_to_json(chart.solution, command, hash);
    } else if (command == "def-chart") {
        problem.params.flavor = ParamFlavor::def;
        const Hypersurface H = problem.hypersurface();
        std::vector<std::vector<TangentSeed>> steps;
        if (k <= 3) {
            const std::vector<std::vector<ColumnQ>> frames(static_cast<std::size_t>(k),
                                                           H.tangent_frame);
            steps = seed_tree_from_params(H, problem.params, frames, k);
        } else {
            // Beyond the closed-form depth: constant tangent directions only.
            for (int m = 1; m <= k; ++m) {
                std::vector<TangentSeed> step;
                for (int a = 0; a < H.n(); ++a)
                    step.push_back(TangentSeed::constant_chain(
                        H.tangent_frame[static_cast<std::size_t>(a)], m - 1, H.n()));
                steps.push_back(std::move(step));
            }
        }
        const DefChart chart = def_chart_build(H, steps);
        result.output = def_chart_to_json(chart.solution, command, hash);
    } else if (command == "residual") {
        if (!opts.chart) throw CliError("precondition", "residual requires a chart file");
        if (chart_ring_type(*opts.chart) == "pert") {
            const auto chart = pert_chart_from_json(*opts.chart);
            const PertElem r = residual(problem.F, chart);
            result.output = Json{{"residual", element_to_json(r)}, {"zero", r.is_zero()}};
        } else {
            const auto chart = def_chart_from_json(*opts.chart);
            const DefElem r = residual(problem.F, chart);
            result.output = Json{{"residual", element_to_json(r)}, {"zero", r.is_zero()}};
        }
    } else if (command == "verify-theorem") {
        problem.params.flavor = ParamFlavor::pert;
        const TheoremReport report = verify_theorem(problem.hypersurface(), problem.params, k);
        result.output = Json{{"embed_residual_zero", report.embed_residual_zero},
                             {"embed_invariant", report.embed_invariant},
                             {"def_matches_embed", report.def_matches_embed},
                             {"retract_matches_pert", report.retract_matches_pert},
                             {"passed", report.passed()},
                             {"failures", report.failures}};
        result.exit_code = report.passed() ? 0 : 1;
    } else if (command == "beta") {
        const EndoFamily fam =
            EndoFamily::from_tensors(PertRingSpec(problem.n, k), problem.family);
        const Derivation beta = beta_field(fam);
        Json images = Json::array();
        for (const auto& img : beta.images) images.push_back(element_to_json(img));
        result.output = Json{{"ring", ring_json(beta.spec)}, {"beta_images", images}};
    } else if (command == "gamma") {
        const EndoFamily fam =
            EndoFamily::from_tensors(PertRingSpec(problem.n, k + 1), problem.family);
        const GammaOperator gamma = gamma_action(fam, canonical_figure(problem.n, k));
        Json entries = Json::object();
        for (std::size_t a = 0; a < gamma.entries.size(); ++a)
            for (std::size_t b = 0; b < gamma.entries[a].size(); ++b)
                if (!gamma.entries[a][b].is_zero())
                    entries[std::to_string(a + 1) + "->" + std::to_string(b + 1)] =
                        element_to_json(gamma.entries[a][b]);
        result.output = Json{{"ring", ring_json(gamma.target)}, {"entries", entries}};
    } else if (command == "gamma-beta-check") {
        const EndoFamily fam =
            EndoFamily::from_tensors(PertRingSpec(problem.n, k + 1), problem.family);
        const GammaBetaReport report = gamma_beta_check(fam);
        result.output =
            Json{{"factor", report.factor}, {"ok", report.ok}, {"failures", report.failures}};
        result.exit_code = report.ok ? 0 : 1;
    } else {
        throw CliError("parse", "unknown command '" + command + "'");
    }
    return result;
}

} // namespace

RunResult run_command(const std::string& command, const Json& problem_json, const RunOptions& opts) {
    try {
        return dispatch(command, problem_json, opts);
    } catch (const CliError&) {
        throw;
    } catch (const ParseError& e) {
        throw CliError("parse", e.what());
    } catch (const std::invalid_argument& e) {
        throw CliError("precondition", e.what());
    } catch (const std::domain_error& e) {
        throw CliError("precondition", e.what());
    } catch (const std::out_of_range& e) {
        throw CliError("precondition", e.what());
    } catch (const std::logic_error& e) {
        throw CliError("assertion", e.what());
    } catch (const std::exception& e) {
        throw CliError("precondition", e.what());
    }
}

} // namespace pertdef
