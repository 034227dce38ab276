#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "strata/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitParse = 2;

struct Options {
    std::string input;
    std::string format = "json";
    int jobs = 1;
    std::int64_t max_group_order = strata::AbelianGroup::kDefaultOrderBound;
};

strata::InputDocument load(const Options& opt) {
    return strata::load_input(opt.input, opt.max_group_order);
}

int cmd_validate(const Options& opt) {
    auto doc = load(opt);
    auto report = strata::validate_action(*doc.action);
    std::cout << strata::validation_report_text(report);
    return report.valid() ? kExitOk : kExitDomain;
}

strata::DecoratedDualGraph decorated_multicurve(const strata::InputDocument& doc) {
    if (!doc.multicurve) {
        throw strata::Error(strata::ErrorCode::ParseError,
                            "document carries no multicurve");
    }
    auto report = strata::validate_action(*doc.action);
    if (!report.valid()) {
        throw strata::Error(strata::ErrorCode::RelationFails, "action is not valid");
    }
    auto admissibility = strata::check_admissible(*doc.multicurve);
    if (!admissibility.admissible()) {
        throw strata::Error(strata::ErrorCode::NotAdmissible, "multicurve is not admissible");
    }
    return strata::derive_decorations(*doc.multicurve);
}

int cmd_lift(const Options& opt) {
    auto doc = load(opt);
    auto lifted = strata::lift_graph(decorated_multicurve(doc));
    if (opt.format == "dot") {
        std::cout << strata::stable_graph_to_dot(lifted);
    } else {
        std::cout << strata::stable_graph_to_json(lifted);
    }
    return kExitOk;
}

int cmd_enumerate(const Options& opt) {
    auto doc = load(opt);
    if (doc.multicurve) {
        throw strata::Error(strata::ErrorCode::ParseError,
                            "enumeration takes a document without a multicurve");
    }
    auto report = strata::validate_action(*doc.action);
    if (!report.valid()) {
        throw strata::Error(strata::ErrorCode::RelationFails, "action is not valid");
    }
    auto catalog = strata::boundary_strata(doc.action, opt.jobs);
    if (opt.format == "dot-bundle") {
        std::cout << strata::catalog_to_dot_bundle(catalog);
    } else {
        std::cout << strata::catalog_to_json(catalog, *doc.action);
    }
    return kExitOk;
}

int cmd_classify(const Options& opt) {
    auto doc = load(opt);
    auto decorated = decorated_multicurve(doc);
    auto family = strata::classify_single_curve(decorated);
    auto lifted = strata::lift_graph(decorated);
    std::cout << strata::family_report_text(family, lifted);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stable graphs of lifted multicurves for finite abelian symmetry"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* cmd, bool with_format, bool with_jobs) {
        cmd->add_option("--input", opt.input, "input JSON document")->required();
        cmd->add_option("--max-group-order", opt.max_group_order,
                        "bound on materialized group orders");
        if (with_format) cmd->add_option("--format", opt.format, "output format");
        if (with_jobs) cmd->add_option("--jobs", opt.jobs, "worker threads");
    };

    auto* validate = app.add_subcommand("validate", "check that the input is a surface action");
    add_common(validate, false, false);
    auto* lift = app.add_subcommand("lift", "stable graph of the lifted multicurve");
    add_common(lift, true, false);
    lift->get_option("--format")->check(CLI::IsMember({"json", "dot"}));
    auto* enumerate = app.add_subcommand("enumerate", "catalog of boundary strata");
    add_common(enumerate, true, true);
    enumerate->get_option("--format")->check(CLI::IsMember({"json", "dot-bundle"}));
    auto* classify = app.add_subcommand("classify", "family of a one-curve multicurve");
    add_common(classify, false, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        if (validate->parsed()) return cmd_validate(opt);
        if (lift->parsed()) return cmd_lift(opt);
        if (enumerate->parsed()) return cmd_enumerate(opt);
        if (classify->parsed()) return cmd_classify(opt);
    } catch (const strata::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == strata::ErrorCode::ParseError ? kExitParse : kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitParse;
}
