// qdp: exact (eps, delta) verification, privacy curves, composition
// accounting, and seeded certification suites for finite-dimensional
// quantum channels. File formats are documented in the README.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qdp/accountant.hpp"
#include "qdp/reproduce.hpp"
#include "qdp/serialize.hpp"
#include "qdp/version.hpp"

namespace {

using qdp::Json;

void emit(const Json& report, const std::string& out_path) {
    const std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        qdp::write_text_file(out_path, text);
    }
}

qdp::StateMap build_channel_map(const std::string& channel_path,
                                const std::vector<int>& subsystem_dims,
                                const std::vector<int>& keep) {
    const qdp::KrausChannel ch = qdp::load_channel(channel_path);
    if (subsystem_dims.empty() && keep.empty()) {
        return ch.map();
    }
    if (subsystem_dims.empty() || keep.empty()) {
        throw qdp::ParseError("--subsystem-dims and --keep must be given together");
    }
    return qdp::marginal_channel(ch, subsystem_dims, keep);
}

Json report_header(std::uint64_t seed) {
    return Json{{"tool", "qdp"}, {"version", qdp::kVersion}, {"seed", seed}};
}

struct VerifyOptions {
    std::string channel_path;
    std::string relation_path;
    std::vector<int> subsystem_dims;
    std::vector<int> keep;
    double eps = 0.0;
    double delta = 0.0;
    std::string out_path;
};

int run_verify(const VerifyOptions& opt, std::uint64_t seed) {
    const qdp::StateMap ch =
        build_channel_map(opt.channel_path, opt.subsystem_dims, opt.keep);
    const qdp::NeighborRelation rel = qdp::load_relation(opt.relation_path);
    const qdp::Verdict verdict = qdp::verify_qdp(ch, rel, opt.eps, opt.delta);

    Json report = report_header(seed);
    report["command"] = "verify";
    report["scope"] = qdp::scope_name(qdp::Scope::all_povm);
    report["epsilon"] = opt.eps;
    report["delta"] = opt.delta;
    report["verdict"] = qdp::verdict_to_json(verdict);
    emit(report, opt.out_path);
    return verdict.pass ? 0 : 1;
}

struct CurveOptions {
    std::string channel_path;
    std::string relation_path;
    std::vector<int> subsystem_dims;
    std::vector<int> keep;
    std::string format = "json";
    std::string out_path;
};

int run_curve(const CurveOptions& opt, std::uint64_t seed) {
    const qdp::StateMap ch =
        build_channel_map(opt.channel_path, opt.subsystem_dims, opt.keep);
    const qdp::NeighborRelation rel = qdp::load_relation(opt.relation_path);
    const qdp::PrivacyCurve curve = qdp::privacy_curve(ch, rel);

    if (opt.format == "csv") {
        const std::string text = qdp::curve_to_csv(curve);
        if (opt.out_path.empty()) {
            std::cout << text;
        } else {
            qdp::write_text_file(opt.out_path, text);
        }
        return 0;
    }
    Json report = report_header(seed);
    report["command"] = "curve";
    report["scope"] = qdp::scope_name(qdp::Scope::all_povm);
    report["curve"] = qdp::curve_to_json(curve);
    emit(report, opt.out_path);
    return 0;
}

struct AccountOptions {
    std::vector<double> eps;
    std::vector<double> delta_i;
    double delta = 0.0;
    double alpha = 0.0;
    double eps_alpha = 0.0;
    std::vector<double> lambdas;
    std::string channel_path;
    std::string relation_path;
    std::string out_path;
};

std::vector<qdp::PrivacyParams> zip_params(const AccountOptions& opt) {
    if (opt.eps.size() != opt.delta_i.size()) {
        throw qdp::ParseError("need one --delta-i per --epsilon");
    }
    std::vector<qdp::PrivacyParams> params;
    for (std::size_t i = 0; i < opt.eps.size(); ++i) {
        params.push_back({opt.eps[i], opt.delta_i[i]});
    }
    return params;
}

Json account_report(std::uint64_t seed, const char* calculator, qdp::Scope scope,
                    const qdp::PrivacyParams& composed, const Json& inputs,
                    std::optional<double> lambda_used) {
    Json report = report_header(seed);
    report["command"] = "account";
    report["calculator"] = calculator;
    report["scope"] = qdp::scope_name(scope);
    report["eps"] = composed.eps;
    report["delta"] = composed.delta;
    report["lambda_used"] = lambda_used ? Json(*lambda_used) : Json(nullptr);
    report["inputs"] = inputs;
    return report;
}

int run_account_qma(const AccountOptions& opt, std::uint64_t seed) {
    const qdp::KrausChannel ch = qdp::load_channel(opt.channel_path);
    const qdp::NeighborRelation rel = qdp::load_relation(opt.relation_path);
    std::vector<double> grid =
        opt.lambdas.empty() ? qdp::default_lambda_grid() : opt.lambdas;
    const double lambda = opt.alpha - 1.0;
    if (std::none_of(grid.begin(), grid.end(),
                     [&](double l) { return std::abs(l - lambda) <= 1e-12; })) {
        grid.push_back(lambda);
    }
    std::sort(grid.begin(), grid.end());

    const qdp::MomentProfile profile = qdp::moments_profile(ch.map(), rel, grid);
    const double eps_alpha = qdp::qma_to_measured_rdp(profile, opt.alpha);
    const qdp::PrivacyParams composed = qdp::rdp_to_dp(eps_alpha, opt.alpha, opt.delta);

    Json profile_json = Json::array();
    for (std::size_t i = 0; i < profile.lambdas.size(); ++i) {
        const auto& entry = profile.log_mmgf_sup[i];
        profile_json.push_back(Json{
            {"lambda", profile.lambdas[i]},
            {"log_moment", entry.is_infinite() ? Json("inf") : Json(entry.value())}});
    }
    Json inputs{{"channel", opt.channel_path},
                {"relation", opt.relation_path},
                {"alpha", opt.alpha},
                {"delta", opt.delta},
                {"eps_alpha", eps_alpha},
                {"profile", profile_json}};
    emit(account_report(seed, "qma", qdp::Scope::all_povm, composed, inputs,
                        opt.alpha - 1.0),
         opt.out_path);
    return 0;
}

struct ReproduceOptions {
    std::string name;
    long trials = 0;
    std::string out_path;
};

int run_reproduce(const ReproduceOptions& opt, std::uint64_t seed) {
    const qdp::ReproResult result = qdp::run_reproduction(opt.name, seed, opt.trials);
    std::cerr << "reproduce " << result.name << " (seed " << seed << ")\n";
    for (const auto& line : result.lines) {
        std::cerr << line << "\n";
    }
    std::cerr << (result.pass ? "PASS" : "FAIL") << "\n";
    emit(qdp::repro_to_json(result, seed), opt.out_path);
    return result.pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification and composition accounting for quantum"
                 " differential privacy"};
    app.require_subcommand(1);
    std::uint64_t seed = 42;
    app.add_option("--seed", seed, "root seed for every randomized procedure");

    VerifyOptions verify_opt;
    CLI::App* verify = app.add_subcommand("verify", "decide (eps,delta)-QDP exactly");
    verify->add_option("--channel", verify_opt.channel_path, "channel JSON file")
        ->required();
    verify->add_option("--relation", verify_opt.relation_path, "relation JSON file")
        ->required();
    verify->add_option("--epsilon", verify_opt.eps, "eps level")->required();
    verify->add_option("--delta", verify_opt.delta, "delta level")->required();
    verify->add_option("--subsystem-dims", verify_opt.subsystem_dims,
                       "output subsystem dims (with --keep: verify a marginal)");
    verify->add_option("--keep", verify_opt.keep, "output subsystems to keep");
    verify->add_option("--out", verify_opt.out_path, "write the verdict JSON here");

    CurveOptions curve_opt;
    CLI::App* curve = app.add_subcommand("curve", "eps -> delta_min profile");
    curve->add_option("--channel", curve_opt.channel_path, "channel JSON file")
        ->required();
    curve->add_option("--relation", curve_opt.relation_path, "relation JSON file")
        ->required();
    curve->add_option("--subsystem-dims", curve_opt.subsystem_dims,
                      "output subsystem dims (with --keep: curve of a marginal)");
    curve->add_option("--keep", curve_opt.keep, "output subsystems to keep");
    curve->add_option("--format", curve_opt.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    curve->add_option("--out", curve_opt.out_path, "output path");

    AccountOptions acc;
    CLI::App* account = app.add_subcommand("account", "composition calculators");
    account->require_subcommand(1);

    CLI::App* qma = account->add_subcommand(
        "qma", "moment accountant: profile -> measured RDP -> (eps, delta)");
    qma->add_option("--channel", acc.channel_path, "channel JSON file")->required();
    qma->add_option("--relation", acc.relation_path, "relation JSON file")->required();
    qma->add_option("--alpha", acc.alpha, "Renyi order (> 1)")->required();
    qma->add_option("--delta", acc.delta, "target delta")->required();
    qma->add_option("--lambda", acc.lambdas, "moment grid (default built-in)");
    qma->add_option("--out", acc.out_path, "output path");

    CLI::App* basic = account->add_subcommand("basic-locc",
                                              "two-channel basic composition");
    basic->add_option("--epsilon", acc.eps, "per-channel eps (twice)")->required();
    basic->add_option("--delta-i", acc.delta_i, "per-channel delta (twice)")->required();
    basic->add_option("--out", acc.out_path, "output path");

    CLI::App* advanced = account->add_subcommand("advanced-pure",
                                                 "advanced composition, eps_i <= 1");
    advanced->add_option("--epsilon", acc.eps, "per-channel eps list")->required();
    advanced->add_option("--delta", acc.delta, "target delta")->required();
    advanced->add_option("--out", acc.out_path, "output path");

    CLI::App* lostar_pure = account->add_subcommand("lostar-pure",
                                                    "LO* composition of pure-DP channels");
    lostar_pure->add_option("--epsilon", acc.eps, "per-channel eps list")->required();
    lostar_pure->add_option("--delta", acc.delta, "target delta")->required();
    lostar_pure->add_option("--out", acc.out_path, "output path");

    CLI::App* lostar_approx = account->add_subcommand(
        "lostar-approx", "LO* composition of approximate-DP channels");
    lostar_approx->add_option("--epsilon", acc.eps, "per-channel eps list")->required();
    lostar_approx->add_option("--delta-i", acc.delta_i, "per-channel delta list")
        ->required();
    lostar_approx->add_option("--delta", acc.delta, "slack delta")->required();
    lostar_approx->add_option("--out", acc.out_path, "output path");

    CLI::App* rdp_convert = account->add_subcommand("rdp-convert",
                                                    "measured RDP to (eps, delta)");
    rdp_convert->add_option("--eps-alpha", acc.eps_alpha, "RDP level")->required();
    rdp_convert->add_option("--alpha", acc.alpha, "Renyi order (> 1)")->required();
    rdp_convert->add_option("--delta", acc.delta, "target delta")->required();
    rdp_convert->add_option("--out", acc.out_path, "output path");

    ReproduceOptions rep;
    CLI::App* reproduce = app.add_subcommand("reproduce",
                                             "run a named certification suite");
    std::string names;
    for (const auto& n : qdp::reproduction_names()) names += n + " ";
    reproduce->add_option("--name", rep.name, "one of: " + names)->required();
    reproduce->add_option("--trials", rep.trials, "override the sampled-trial budget");
    reproduce->add_option("--out", rep.out_path, "write the report JSON here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*verify) return run_verify(verify_opt, seed);
        if (*curve) return run_curve(curve_opt, seed);
        if (*qma) return run_account_qma(acc, seed);
        if (*basic) {
            const qdp::BasicLoccResult r = qdp::basic_compose_locc(zip_params(acc));
            Json inputs{{"epsilon", acc.eps}, {"delta_i", acc.delta_i}};
            Json report = account_report(seed, "basic-locc", r.scope, r.composed, inputs,
                                         std::nullopt);
            report["delta_corollary"] = r.delta_corollary;
            if (r.delta_small_eps) report["delta_small_eps"] = *r.delta_small_eps;
            emit(report, acc.out_path);
            return 0;
        }
        if (*advanced) {
            const qdp::AdvancedPureResult r = qdp::advanced_compose_pure(acc.eps, acc.delta);
            Json inputs{{"epsilon", acc.eps}, {"delta", acc.delta}};
            Json report = account_report(seed, "advanced-pure", r.scope, r.composed,
                                         inputs, std::nullopt);
            report["basic_eps_sum"] = r.basic_eps_sum;
            emit(report, acc.out_path);
            return 0;
        }
        if (*lostar_pure) {
            const qdp::LoStarResult r =
                qdp::advanced_compose_lostar_pure(acc.eps, acc.delta);
            Json inputs{{"epsilon", acc.eps}, {"delta", acc.delta}};
            emit(account_report(seed, "lostar-pure", r.scope, r.composed, inputs,
                                std::nullopt),
                 acc.out_path);
            return 0;
        }
        if (*lostar_approx) {
            const qdp::LoStarResult r =
                qdp::advanced_compose_lostar_approx(zip_params(acc), acc.delta);
            Json inputs{{"epsilon", acc.eps},
                        {"delta_i", acc.delta_i},
                        {"delta", acc.delta}};
            emit(account_report(seed, "lostar-approx", r.scope, r.composed, inputs,
                                std::nullopt),
                 acc.out_path);
            return 0;
        }
        if (*rdp_convert) {
            const qdp::PrivacyParams r =
                qdp::rdp_to_dp(acc.eps_alpha, acc.alpha, acc.delta);
            Json inputs{{"eps_alpha", acc.eps_alpha},
                        {"alpha", acc.alpha},
                        {"delta", acc.delta}};
            emit(account_report(seed, "rdp-convert", qdp::Scope::all_povm, r, inputs,
                                acc.alpha - 1.0),
                 acc.out_path);
            return 0;
        }
        if (*reproduce) return run_reproduce(rep, seed);
    } catch (const qdp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
