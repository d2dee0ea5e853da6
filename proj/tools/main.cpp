// cube-interact: interaction indexes of functions on the unit cube.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "cubei/estimators.hpp"
#include "cubei/interaction.hpp"
#include "cubei/report.hpp"
#include "cubei/specfile.hpp"
#include "cubei/stats.hpp"
#include "cubei/verify.hpp"

namespace {

using namespace cubei;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitParse = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitDegenerate = 4;

SubsetMask parse_subset_arg(const std::string& text, int n) {
    std::string trimmed;
    for (char c : text)
        if (c != '{' && c != '}' && c != ' ') trimmed += c;
    std::vector<int> players;
    std::size_t pos = 0;
    while (pos < trimmed.size()) {
        const std::size_t comma = trimmed.find(',', pos);
        const std::string tok = trimmed.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!tok.empty()) players.push_back(std::stoi(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return SubsetMask::from_players(n, players);
}

std::vector<double> parse_point_arg(const std::string& text, int n) {
    std::vector<double> x;
    std::string trimmed;
    for (char c : text)
        if (c != '(' && c != ')' && c != ' ') trimmed += c;
    std::size_t pos = 0;
    while (pos < trimmed.size()) {
        const std::size_t comma = trimmed.find(',', pos);
        x.push_back(std::stod(trimmed.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (static_cast<int>(x.size()) != n)
        throw std::invalid_argument("expected " + std::to_string(n) + " comma-separated coordinates");
    return x;
}

IntegratorConfig make_config(const std::string& method, std::uint64_t samples, std::uint64_t seed) {
    IntegratorConfig cfg;
    if (method == "auto")
        cfg.mode = IntegratorConfig::Mode::Auto;
    else if (method == "quad")
        cfg.mode = IntegratorConfig::Mode::GaussTensor;
    else if (method == "mc")
        cfg.mode = IntegratorConfig::Mode::MonteCarlo;
    else
        throw unsupported_error("unknown method '" + method + "'");
    cfg.samples = samples;
    cfg.seed = seed;
    return cfg;
}

void write_output(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + out_path);
    out << payload;
}

int cmd_index(const std::string& spec_path, const std::string& subset, int max_order, const std::string& method,
              std::uint64_t samples, std::uint64_t seed, const std::string& format, const std::string& out_path) {
    const FunctionSpec spec = load_spec_file(spec_path);
    const IntegratorConfig cfg = make_config(method, samples, seed);
    InteractionTable table;
    table.n = spec.n();
    if (!subset.empty()) {
        const SubsetMask s = parse_subset_arg(subset, spec.n());
        table.entries.emplace(s.bits(), interaction(spec, s, cfg));
    } else {
        const int k = max_order < 0 ? spec.n() : max_order;
        table = interaction_table(spec, k, cfg);
    }
    write_output(out_path, format == "csv" ? table_to_csv(table) : table_to_json(table).dump(2));
    return kExitOk;
}

int cmd_approx(const std::string& spec_path, int k, const std::string& method, std::uint64_t samples,
               std::uint64_t seed, const std::string& out_path, const std::string& eval_point) {
    const FunctionSpec spec = load_spec_file(spec_path);
    const IntegratorConfig cfg = make_config(method, samples, seed);
    const BestKApprox approx = best_k_approx(spec, k, cfg);

    nlohmann::json doc = approx.exact ? poly_spec_json(*approx.exact) : poly_spec_json(approx.poly);
    doc["k"] = k;
    doc["centered"] = table_to_json(approx.centered)["entries"];
    if (!eval_point.empty()) {
        const std::vector<double> x = parse_point_arg(eval_point, spec.n());
        const double value = approx.poly.eval_with<double>(std::span<const double>(x));
        doc["eval"] = {{"point", x}, {"value", value}};
        std::fprintf(stderr, "f_%d(%s) = %s\n", k, eval_point.c_str(), format_double(value).c_str());
    }
    write_output(out_path, doc.dump(2));
    return kExitOk;
}

int cmd_stats(const std::string& spec_path, int k, const std::string& method, std::uint64_t samples,
              std::uint64_t seed, const std::string& format, const std::string& out_path) {
    const FunctionSpec spec = load_spec_file(spec_path);
    const IntegratorConfig cfg = make_config(method, samples, seed);
    const FitReport report = fit_report(spec, k, cfg);
    write_output(out_path,
                 format == "csv" ? fit_report_to_csv(report, spec.n()) : fit_report_to_json(report, spec.n()).dump(2));
    return kExitOk;
}

int cmd_estimate(const std::string& spec_path, const std::string& subset, const std::string& estimator,
                 std::uint64_t samples, std::uint64_t seed, bool assume_smooth) {
    FunctionSpec spec = load_spec_file(spec_path);
    if (assume_smooth) {
        if (const auto* bb = spec.get_if<BlackBoxSpec>())
            spec = FunctionSpec::black_box(spec.n(), bb->evaluate, true, spec.depends());
        else
            throw unsupported_error("--assume-smooth applies to expression/black-box specs only");
    }
    const SubsetMask s = parse_subset_arg(subset, spec.n());
    EstimatorKind kind;
    if (estimator == "direct")
        kind = EstimatorKind::DirectInnerProduct;
    else if (estimator == "beta")
        kind = EstimatorKind::BetaDerivative;
    else if (estimator == "box")
        kind = EstimatorKind::BoxVolume;
    else if (estimator == "quotient")
        kind = EstimatorKind::DifferenceQuotient;
    else
        throw unsupported_error("unknown estimator '" + estimator + "'");

    const Estimate e = estimate(spec, s, kind, samples, seed);
    std::printf("estimator: %s\nsubset: %s\nvalue: %s\nstderr: %s\nsamples: %llu\n", estimator.c_str(),
                s.to_string().c_str(), format_double(e.value).c_str(), format_double(e.stderr_est).c_str(),
                static_cast<unsigned long long>(e.samples));
    if (e.biased_fd) std::printf("note: derivative via central differences, biased O(delta^2)\n");
    if (const auto exact = interaction_exact(spec, s)) {
        const double want = to_double(*exact);
        std::printf("exact: %s (%s)\n", rat_str(*exact).c_str(), format_double(want).c_str());
        if (e.stderr_est > 0)
            std::printf("z: %s\n", format_double((e.value - want) / e.stderr_est).c_str());
        else
            std::printf("z: %s\n", format_double(e.value == want ? 0.0 : INFINITY).c_str());
    }
    return kExitOk;
}

int cmd_verify(const std::string& level, std::uint64_t seed) {
    const VerifyLevel lvl = level == "full" ? VerifyLevel::Full : VerifyLevel::Quick;
    const auto results = run_verification(lvl, seed);
    bool all_pass = true;
    long total_cases = 0;
    for (const CheckResult& r : results) {
        std::printf("%s %-28s (%ld cases)%s%s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.cases,
                    r.detail.empty() ? "" : " ", r.detail.c_str());
        all_pass = all_pass && r.pass;
        total_cases += r.cases;
    }
    std::printf("%zu properties, %ld cases, level %s, seed %llu: %s\n", results.size(), total_cases, level.c_str(),
                static_cast<unsigned long long>(seed), all_pass ? "ALL PASS" : "FAILURES");
    return all_pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"interaction indexes of functions on [0,1]^n via least-squares multilinear approximation"};
    app.require_subcommand(1);

    std::string spec_path, subset, method = "auto", format = "json", out_path, eval_point, estimator = "direct";
    std::string level = "quick";
    int max_order = -1, k = 0;
    std::uint64_t samples = 100000, seed = 1;

    CLI::App* index = app.add_subcommand("index", "interaction index values I(f,S)");
    index->add_option("spec", spec_path, "spec file (JSON)")->required();
    index->add_option("--subset", subset, "one subset, e.g. '1,3' or '{1,3}'");
    index->add_option("--max-order", max_order, "all subsets with |S| <= k (default: n)");
    index->add_option("--method", method, "auto|quad|mc")->check(CLI::IsMember({"auto", "quad", "mc"}));
    index->add_option("--samples", samples, "Monte Carlo sample count");
    index->add_option("--seed", seed, "Monte Carlo seed");
    index->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    index->add_option("--out", out_path, "output file (default: stdout)");

    CLI::App* approx = app.add_subcommand("approx", "best k-th multilinear approximation");
    approx->add_option("spec", spec_path, "spec file (JSON)")->required();
    approx->add_option("--k", k, "approximation degree")->required();
    approx->add_option("--method", method, "auto|quad|mc")->check(CLI::IsMember({"auto", "quad", "mc"}));
    approx->add_option("--samples", samples, "Monte Carlo sample count");
    approx->add_option("--seed", seed, "Monte Carlo seed");
    approx->add_option("--out", out_path, "output file; re-loadable as a multilinear spec");
    approx->add_option("--eval", eval_point, "evaluate f_k at a point, e.g. '0.5,0.25'");

    CLI::App* stats = app.add_subcommand("stats", "mean, sigma, normalized indexes r, R^2_1..R^2_k");
    stats->add_option("spec", spec_path, "spec file (JSON)")->required();
    stats->add_option("--k", k, "largest order in the report")->required();
    stats->add_option("--method", method, "auto|quad|mc")->check(CLI::IsMember({"auto", "quad", "mc"}));
    stats->add_option("--samples", samples, "Monte Carlo sample count");
    stats->add_option("--seed", seed, "Monte Carlo seed");
    stats->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    stats->add_option("--out", out_path, "output file (default: stdout)");

    CLI::App* est = app.add_subcommand("estimate", "Monte Carlo estimators of I(f,S)");
    est->add_option("spec", spec_path, "spec file (JSON)")->required();
    est->add_option("--subset", subset, "subset, e.g. '1,2'")->required();
    est->add_option("--estimator", estimator, "direct|beta|box|quotient")
        ->check(CLI::IsMember({"direct", "beta", "box", "quotient"}));
    est->add_option("--samples", samples, "sample count");
    est->add_option("--seed", seed, "seed");
    bool assume_smooth = false;
    est->add_flag("--assume-smooth", assume_smooth,
                  "treat an expression/black-box spec as smooth (enables the beta estimator)");

    CLI::App* verify = app.add_subcommand("verify", "run the property suite");
    verify->add_option("--level", level, "quick|full")->check(CLI::IsMember({"quick", "full"}));
    verify->add_option("--seed", seed, "suite seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (index->parsed()) {
            if (!subset.empty() && max_order >= 0)
                throw unsupported_error("--subset and --max-order are mutually exclusive");
            return cmd_index(spec_path, subset, max_order, method, samples, seed, format, out_path);
        }
        if (approx->parsed()) return cmd_approx(spec_path, k, method, samples, seed, out_path, eval_point);
        if (stats->parsed()) return cmd_stats(spec_path, k, method, samples, seed, format, out_path);
        if (est->parsed()) return cmd_estimate(spec_path, subset, estimator, samples, seed, assume_smooth);
        if (verify->parsed()) return cmd_verify(level, seed);
    } catch (const spec_parse_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitParse;
    } catch (const unsupported_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUnsupported;
    } catch (const degenerate_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitDegenerate;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitVerifyFailed;
    }
    return kExitOk;
}
