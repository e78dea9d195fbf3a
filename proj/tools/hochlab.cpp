// hochlab: exact verification suites for the Hochschild/deformation
// toolkit, plus the mechanized non-formality certificate.
//
//   hochlab identities|calculus|dgla|star|obstruction|all [options]
//   hochlab explain-contradiction [options]
//   hochlab verify-witness <report.json>
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 configuration error.

#include "hochlab/suites.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace hochlab;

namespace {

struct CliOptions {
    std::string config_path;
    std::optional<int> dim;
    std::optional<std::string> theta;
    std::optional<int> order;
    std::optional<std::string> suite;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> format;
    std::optional<int> obstruction_degree;
    std::optional<int> obstruction_pairs;
    bool timings = false;
    std::string out_path;
};

void add_common_options(CLI::App *cmd, CliOptions &opt)
{
    cmd->add_option("--config", opt.config_path, "configuration JSON file");
    cmd->add_option("--dim", opt.dim, "dimension d (requires --theta of matching size)");
    cmd->add_option("--theta", opt.theta,
                    "antisymmetric d x d matrix as JSON, e.g. [[\"0\",\"1\"],[\"-1\",\"0\"]]");
    cmd->add_option("--order", opt.order, "hbar truncation order");
    cmd->add_option("--suite", opt.suite, "comma-separated suite list override");
    cmd->add_option("--seed", opt.seed, "random seed");
    cmd->add_option("--format", opt.format, "output format: text or json");
    cmd->add_option("--obstruction-degree", opt.obstruction_degree,
                    "max degree D of the coboundary unknown P");
    cmd->add_option("--obstruction-pairs", opt.obstruction_pairs,
                    "max total degree of generating pairs");
    cmd->add_flag("--timings", opt.timings, "include wall-clock timings in JSON reports");
    cmd->add_option("--out", opt.out_path, "write the report to this file");
}

RunConfig build_config(const CliOptions &opt, const std::string &suite_from_command)
{
    RunConfig cfg;
    try {
        if (!opt.config_path.empty()) {
            std::ifstream in(opt.config_path);
            if (!in)
                throw std::invalid_argument("cannot open config file '" + opt.config_path +
                                            "'");
            cfg = RunConfig::from_json(Json::parse(in));
        }
        if (opt.theta)
            cfg.theta = theta_from_json(Json::parse(*opt.theta));
    } catch (const Json::exception &e) {
        throw std::invalid_argument(std::string("bad JSON: ") + e.what());
    }
    if (!suite_from_command.empty())
        cfg.suites = {suite_from_command};
    if (opt.dim)
        cfg.dim = *opt.dim;
    if (opt.order)
        cfg.hbar_order = *opt.order;
    if (opt.suite) {
        cfg.suites.clear();
        std::string s = *opt.suite;
        std::size_t pos = 0;
        while (pos < s.size()) {
            std::size_t comma = s.find(',', pos);
            cfg.suites.push_back(s.substr(pos, comma == std::string::npos ? comma : comma - pos));
            if (comma == std::string::npos)
                break;
            pos = comma + 1;
        }
    }
    if (opt.seed)
        cfg.seed = *opt.seed;
    if (opt.format)
        cfg.format = *opt.format;
    if (opt.obstruction_degree)
        cfg.obstruction.max_domain_degree = *opt.obstruction_degree;
    if (opt.obstruction_pairs)
        cfg.obstruction.max_pair_degree = *opt.obstruction_pairs;
    cfg.timings = cfg.timings || opt.timings;
    cfg.validate();
    return cfg;
}

void emit(const std::string &text, const std::string &out_path)
{
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out)
        throw std::invalid_argument("cannot write '" + out_path + "'");
    out << text;
}

int run_suites_command(const CliOptions &opt, const std::string &suite)
{
    RunConfig cfg = build_config(opt, suite);
    Report report = run_suite(cfg);
    if (cfg.format == "json")
        emit(report.to_json().dump(2) + "\n", opt.out_path);
    else
        emit(report.text(), opt.out_path);
    return report.all_pass() ? 0 : 1;
}

std::string transcript_text(const ContradictionTranscript &tr)
{
    std::ostringstream os;
    os << "coboundary equation for the third-order cocycle, canonical 2D bracket\n";
    os << "bounds: domain degree " << tr.bounds.max_domain_degree << ", pair degree "
       << tr.bounds.max_pair_degree << "\n\n";
    for (const ReplayStep &s : tr.steps) {
        os << "[" << (s.verified ? "ok" : "FAILED") << "] " << s.name << ": " << s.description
           << "\n";
        for (const std::string &c : s.constraints)
            os << "      " << c << "\n";
    }
    os << "\n";
    if (tr.reached_contradiction) {
        os << "contradiction: the x-coefficient of P(x^3 y^2) must equal "
           << tr.raz_x_coeff.str() << " and " << tr.dva_x_coeff.str()
           << " at the same time\n";
        os << "generic solver cross-check: "
           << (tr.generic_infeasible ? "infeasible, as expected" : "UNEXPECTEDLY SOLVABLE")
           << "\n";
    } else if (!tr.failure.empty()) {
        os << "replay failed: " << tr.failure << "\n";
    }
    return os.str();
}

int explain_command(const CliOptions &opt)
{
    RunConfig cfg = build_config(opt, "obstruction");
    if (cfg.obstruction.max_domain_degree < 5 || cfg.obstruction.max_pair_degree < 7) {
        // the two decisive pairs need degree-5 monomials and pair degree 7
        ObstructionSystem sys =
            build_coboundary_system(canonical_theta_2d(), cfg.obstruction);
        ObstructionCertificate cert = solve_or_certify(sys);
        std::ostringstream os;
        if (cfg.format == "json") {
            Json j{{"bounds", Json{{"D", cfg.obstruction.max_domain_degree},
                                   {"Dpairs", cfg.obstruction.max_pair_degree}}},
                   {"status", cert.solvable ? "solvable" : "infeasible"},
                   {"note", "no contradiction at these bounds"}};
            os << j.dump(2) << "\n";
        } else {
            os << "bounds too small for the decisive pairs (need D >= 5, Dpairs >= 7)\n"
               << "system status at these bounds: "
               << (cert.solvable ? "solvable" : "infeasible")
               << " -- no contradiction at these bounds\n";
        }
        emit(os.str(), opt.out_path);
        return 0;
    }
    ContradictionTranscript tr =
        reproduce_contradiction(canonical_theta_2d(), cfg.obstruction);
    if (cfg.format == "json")
        emit(json_of(tr).dump(2) + "\n", opt.out_path);
    else
        emit(transcript_text(tr), opt.out_path);
    return (tr.reached_contradiction && tr.failure.empty()) ? 0 : 1;
}

int verify_command(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot open report '" << path << "'\n";
        return 2;
    }
    Json report;
    try {
        report = Json::parse(in);
    } catch (const Json::exception &e) {
        std::cerr << "malformed report: " << e.what() << "\n";
        return 2;
    }
    if (report.value("conventions_fingerprint", 0ull) != conventions_fingerprint()) {
        std::cerr << "report was produced under different conventions\n";
        return 1;
    }
    std::string why;
    if (verify_report_witnesses(report, why)) {
        std::cout << "all witnesses re-verified\n";
        return 0;
    }
    std::cout << "witness verification FAILED: " << why << "\n";
    return 1;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"exact Hochschild/deformation verification suites"};
    app.require_subcommand(1);

    CliOptions opt;
    std::string witness_path;

    const char *suite_names[] = {"identities", "calculus", "dgla", "star", "obstruction",
                                 "all"};
    std::vector<CLI::App *> suite_cmds;
    for (const char *name : suite_names) {
        CLI::App *cmd = app.add_subcommand(name, std::string("run the ") + name + " suite");
        add_common_options(cmd, opt);
        suite_cmds.push_back(cmd);
    }
    CLI::App *explain =
        app.add_subcommand("explain-contradiction", "replay the non-formality argument");
    add_common_options(explain, opt);
    CLI::App *verify =
        app.add_subcommand("verify-witness", "re-validate every witness in a report");
    verify->add_option("report", witness_path, "report JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        for (std::size_t i = 0; i < suite_cmds.size(); ++i)
            if (suite_cmds[i]->parsed())
                return run_suites_command(opt, suite_names[i]);
        if (explain->parsed())
            return explain_command(opt);
        if (verify->parsed())
            return verify_command(witness_path);
    } catch (const std::invalid_argument &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
