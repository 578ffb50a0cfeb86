#include "nbcqi/cli.hpp"

#include <CLI11.hpp>
#include <iostream>

#include "nbcqi/errors.hpp"
#include "nbcqi/io.hpp"

namespace nbcqi {

namespace {

constexpr int kOk = 0;
constexpr int kValidationFailure = 1;
constexpr int kParseError = 2;
constexpr int kUndecided = 3;

Document load(const std::string& path, std::ostream& err) {
    RawDocument raw = parse_document_file(path);
    Document doc = build_document(raw);
    for (const auto& w : doc.warnings) err << "warning: " << w << "\n";
    return doc;
}

const Endomorphism& pick_endo(const Document& doc, const std::string& name) {
    auto it = doc.endos.find(name);
    if (it == doc.endos.end())
        throw ParseError("no endomorphism named '" + name + "' in document '" + doc.name + "'");
    return it->second;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"quasi-isometry invariants of nilpotent-by-cyclic groups"};
    app.require_subcommand(1);

    std::string file_a, file_b;
    std::vector<std::string> endo_names;
    std::string direction = "fwd";
    std::string weight_order = "asc";
    std::string format = "json";
    unsigned power_bound = kDefaultPowerBound;
    int t_min = 10, t_max = 40;
    unsigned seed = 0;

    auto* validate_cmd = app.add_subcommand("validate", "check a structure-constant table");
    validate_cmd->add_option("file", file_a)->required();

    auto* weights_cmd = app.add_subcommand("weights", "weight vector and grading data");
    weights_cmd->add_option("file", file_a)->required();

    auto* jordan_cmd = app.add_subcommand("jordan", "exact Jordan block structure");
    jordan_cmd->add_option("file", file_a)->required();
    jordan_cmd->add_option("--endo", endo_names)->type_size(1)->allow_extra_args(false)->required();

    auto* pajf_cmd = app.add_subcommand("pajf", "permuted absolute Jordan form");
    pajf_cmd->add_option("file", file_a)->required();
    pajf_cmd->add_option("--endo", endo_names)->type_size(1)->allow_extra_args(false)->required();
    pajf_cmd->add_option("--weight-order", weight_order)
        ->check(CLI::IsMember({"asc", "desc"}));

    auto* rates_cmd = app.add_subcommand("rates", "divergence-rate multiset");
    rates_cmd->add_option("file", file_a)->required();
    rates_cmd->add_option("--endo", endo_names)->type_size(1)->allow_extra_args(false)->required();
    rates_cmd->add_option("--direction", direction)->check(CLI::IsMember({"fwd", "bwd"}));

    auto* growth_cmd = app.add_subcommand("growth", "growth-space filtration");
    growth_cmd->add_option("file", file_a)->required();
    growth_cmd->add_option("--endo", endo_names)->type_size(1)->allow_extra_args(false)->required();

    auto* compare_cmd = app.add_subcommand("compare", "classify two endomorphisms");
    compare_cmd->add_option("fileA", file_a)->required();
    compare_cmd->add_option("fileB", file_b)->required();
    compare_cmd->add_option("--endo", endo_names)->type_size(1)->allow_extra_args(false);
    compare_cmd->add_option("--power-bound", power_bound);

    auto* oracle_cmd = app.add_subcommand("oracle", "numeric flow-line validation");
    oracle_cmd->add_option("file", file_a)->required();
    oracle_cmd->add_option("--endo", endo_names)->type_size(1)->allow_extra_args(false)->required();
    oracle_cmd->add_option("--direction", direction)->check(CLI::IsMember({"fwd", "bwd"}));
    oracle_cmd->add_option("--t-min", t_min);
    oracle_cmd->add_option("--t-max", t_max);
    oracle_cmd->add_option("--seed", seed);
    oracle_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    try {
        std::vector<std::string> argv_rev(args.rbegin(), args.rend());
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);  // prints the help text, exits 0
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kParseError;
    }

    try {
        if (validate_cmd->parsed()) {
            RawDocument raw = parse_document_file(file_a);
            for (const auto& w : raw.warnings) err << "warning: " << w << "\n";
            auto violations = validate(raw.sc);
            Json report;
            report["algebra"] = raw.name;
            report["valid"] = violations.empty();
            report["violations"] = violations_to_json(violations);
            report["warnings"] = raw.warnings;
            emit(out, report);
            if (!violations.empty()) {
                for (const auto& v : violations) err << "violation: " << v.detail << "\n";
                return kValidationFailure;
            }
            // also exercise the full graded build so weight problems surface here
            build_document(raw);
            return kOk;
        }
        if (weights_cmd->parsed()) {
            Document doc = load(file_a, err);
            Json report = weights_to_json(doc.algebra);
            report["algebra"] = doc.name;
            emit(out, report);
            return kOk;
        }
        if (jordan_cmd->parsed()) {
            Document doc = load(file_a, err);
            const Endomorphism& e = pick_endo(doc, endo_names.at(0));
            RealJordanData d = jordan_structure(e.matrix);
            Json report = jordan_to_json(d);
            report["absolute"] = abs_blocks_to_json(absolute_jordan_form(d));
            emit(out, report);
            return kOk;
        }
        if (pajf_cmd->parsed()) {
            Document doc = load(file_a, err);
            const Endomorphism& e = pick_endo(doc, endo_names.at(0));
            Pajf p = compute_pajf(e, weight_order == "asc");
            emit(out, pajf_to_json(p));
            return kOk;
        }
        if (rates_cmd->parsed()) {
            Document doc = load(file_a, err);
            const Endomorphism& e = pick_endo(doc, endo_names.at(0));
            Direction dir = direction == "fwd" ? Direction::Forward : Direction::Backward;
            DivergenceData d = basis_rates(adapted_jordan_basis(e), dir);
            emit(out, rates_to_json(d, dir));
            return kOk;
        }
        if (growth_cmd->parsed()) {
            Document doc = load(file_a, err);
            const Endomorphism& e = pick_endo(doc, endo_names.at(0));
            AdaptedBasis basis = adapted_jordan_basis(e);
            emit(out, filtration_to_json(growth_filtration(e, basis)));
            return kOk;
        }
        if (compare_cmd->parsed()) {
            if (endo_names.size() != 2)
                throw ParseError("compare requires --endo NAME_A and --endo NAME_B");
            Document doc_a = load(file_a, err);
            Document doc_b = load(file_b, err);
            const Endomorphism& e1 = pick_endo(doc_a, endo_names[0]);
            const Endomorphism& e2 = pick_endo(doc_b, endo_names[1]);
            Verdict v = classify(e1, e2, power_bound);
            emit(out, verdict_to_json(v));
            return v.outcome == Verdict::Outcome::Unknown ? kUndecided : kOk;
        }
        if (oracle_cmd->parsed()) {
            Document doc = load(file_a, err);
            const Endomorphism& e = pick_endo(doc, endo_names.at(0));
            Direction dir = direction == "fwd" ? Direction::Forward : Direction::Backward;
            OracleOptions opt;
            opt.t_min = t_min;
            opt.t_max = t_max;
            opt.seed = seed;
            AdaptedBasis basis = adapted_jordan_basis(e);
            if (format == "csv") {
                out << "vector,t,log_norm\n";
                auto vectors = chain_vector_doubles(basis);
                for (std::size_t s = 0; s < vectors.size(); ++s) {
                    auto series = flow_series(e, vectors[s].second, dir, opt);
                    for (const auto& [t, ln] : series)
                        out << "b" << vectors[s].first.first + 1 << "p"
                            << vectors[s].first.second + 1 << "," << t << "," << ln << "\n";
                }
                return kOk;
            }
            auto checks = validate_rates(e, basis, dir, opt);
            Json report = rate_checks_to_json(checks);
            emit(out, report);
            bool all = report["all_pass"].get<bool>();
            return all ? kOk : kValidationFailure;
        }
    } catch (const ParseError& ex) {
        err << "parse error: " << ex.what() << "\n";
        return kParseError;
    } catch (const UnsupportedEigenvalueError& ex) {
        err << "unsupported: " << ex.what() << "\n";
        return kUndecided;
    } catch (const AssumptionViolationError& ex) {
        err << "assumption violation: " << ex.what() << "\n";
        return kValidationFailure;
    } catch (const Error& ex) {
        err << "error: " << ex.what() << "\n";
        return kValidationFailure;
    }
    err << "no subcommand\n";
    return kParseError;
}

}  // namespace nbcqi
