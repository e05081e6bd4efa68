#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "qdp/serialize.hpp"

using namespace qdp;
namespace fs = std::filesystem;

namespace {

#ifndef QDP_CLI_PATH
#define QDP_CLI_PATH "qdp"
#endif

struct CliRun {
    int exit_code;
    std::string stdout_text;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CliRun run_cli(const std::string& args, const fs::path& dir) {
    const fs::path out = dir / "stdout.txt";
    const std::string cmd =
        std::string(QDP_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
    const int raw = std::system(cmd.c_str());
    const int code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return {code, slurp(out)};
}

struct Fixture {
    fs::path dir;

    Fixture() {
        dir = fs::temp_directory_path() / "qdp_cli_test";
        fs::create_directories(dir);

        write_text_file((dir / "bell.json").string(),
                        channel_to_json(bell_joint_channel()).dump());
        write_text_file((dir / "depol.json").string(),
                        channel_to_json(depolarizing_channel(0.5)).dump());
        const NeighborRelation bits({{DensityOperator::computational(2, 0),
                                      DensityOperator::computational(2, 1)}});
        write_text_file((dir / "bits.json").string(), relation_to_json(bits).dump());
        const NeighborRelation same({{DensityOperator::computational(2, 0),
                                      DensityOperator::computational(2, 0)}});
        write_text_file((dir / "same.json").string(), relation_to_json(same).dump());
    }
};

} // namespace

TEST_CASE("cli verify passes the Bell marginal at (0,0)") {
    Fixture f;
    const CliRun run = run_cli("verify --channel " + (f.dir / "bell.json").string() +
                                   " --relation " + (f.dir / "bits.json").string() +
                                   " --epsilon 0 --delta 0 --subsystem-dims 2 2 --keep 0",
                               f.dir);
    CHECK(run.exit_code == 0);
    const Json report = Json::parse(run.stdout_text);
    CHECK(report["verdict"]["pass"].get<bool>());
}

TEST_CASE("cli verify fails the Bell joint channel with the Bell witness") {
    Fixture f;
    const CliRun run = run_cli("verify --channel " + (f.dir / "bell.json").string() +
                                   " --relation " + (f.dir / "bits.json").string() +
                                   " --epsilon 10 --delta 0.9",
                               f.dir);
    CHECK(run.exit_code == 1);
    const Json report = Json::parse(run.stdout_text);
    CHECK(!report["verdict"]["pass"].get<bool>());
    const CMat witness =
        matrix_from_json(report["verdict"]["witness"], "verdict.witness");
    CVec phi = CVec::Zero(4);
    phi(0) = 1.0 / std::sqrt(2.0);
    phi(3) = 1.0 / std::sqrt(2.0);
    CHECK((witness - CMat(phi * phi.adjoint())).norm() < 1e-9);
}

TEST_CASE("cli verify exits 2 on a missing file") {
    Fixture f;
    const CliRun run = run_cli("verify --channel " + (f.dir / "nope.json").string() +
                                   " --relation " + (f.dir / "bits.json").string() +
                                   " --epsilon 0 --delta 0",
                               f.dir);
    CHECK(run.exit_code == 2);
}

TEST_CASE("cli verify exits 2 naming the malformed field") {
    Fixture f;
    Json bad = channel_to_json(depolarizing_channel(0.5));
    bad["kraus"][0]["re"][0][0] = "oops";
    write_text_file((f.dir / "bad.json").string(), bad.dump());
    const CliRun run = run_cli("verify --channel " + (f.dir / "bad.json").string() +
                                   " --relation " + (f.dir / "bits.json").string() +
                                   " --epsilon 0 --delta 0",
                               f.dir);
    CHECK(run.exit_code == 2);
    CHECK(run.stdout_text.find("kraus[0]") != std::string::npos);
}

TEST_CASE("cli curve emits the depolarizing profile as CSV") {
    Fixture f;
    const CliRun run = run_cli("curve --channel " + (f.dir / "depol.json").string() +
                                   " --relation " + (f.dir / "bits.json").string() +
                                   " --format csv",
                               f.dir);
    CHECK(run.exit_code == 0);
    CHECK(run.stdout_text.rfind("eps,delta\n0,0.5", 0) == 0);
}

TEST_CASE("cli curve on the identity relation is flat zero") {
    Fixture f;
    const CliRun run = run_cli("curve --channel " + (f.dir / "depol.json").string() +
                                   " --relation " + (f.dir / "same.json").string(),
                               f.dir);
    CHECK(run.exit_code == 0);
    const Json report = Json::parse(run.stdout_text);
    for (const auto& point : report["curve"]) {
        CHECK(point["delta"].get<double>() <= 1e-12);
    }
}

TEST_CASE("cli account advanced-pure reproduces the closed form") {
    Fixture f;
    std::string eps_args;
    for (int i = 0; i < 100; ++i) eps_args += " --epsilon 0.1";
    const CliRun run = run_cli("account advanced-pure" + eps_args + " --delta 1e-5", f.dir);
    CHECK(run.exit_code == 0);
    const Json report = Json::parse(run.stdout_text);
    CHECK(report["eps"].get<double>() == doctest::Approx(5.29852).epsilon(1e-4));
    CHECK(report["scope"] == "all-povm");
}

TEST_CASE("cli account basic-locc reproduces the min rule") {
    Fixture f;
    const CliRun run = run_cli(
        "account basic-locc --epsilon 1 --epsilon 0.5 --delta-i 0.01 --delta-i 0.02",
        f.dir);
    CHECK(run.exit_code == 0);
    const Json report = Json::parse(run.stdout_text);
    CHECK(report["delta"].get<double>() == doctest::Approx(0.036487).epsilon(1e-4));
    CHECK(report["scope"] == "one-way-locc");
}

TEST_CASE("cli account qma on a zero profile returns the pure log term") {
    Fixture f;
    const CliRun run = run_cli("account qma --channel " + (f.dir / "depol.json").string() +
                                   " --relation " + (f.dir / "same.json").string() +
                                   " --alpha 3 --delta 0.01",
                               f.dir);
    CHECK(run.exit_code == 0);
    const Json report = Json::parse(run.stdout_text);
    CHECK(report["eps"].get<double>() ==
          doctest::Approx(std::log(100.0) / 2.0).epsilon(1e-9));
}

TEST_CASE("cli account rejects hypothesis violations with exit 2") {
    Fixture f;
    const CliRun run =
        run_cli("account advanced-pure --epsilon 1.5 --delta 1e-5", f.dir);
    CHECK(run.exit_code == 2);
}

TEST_CASE("cli reproduce rejects unknown names with exit 2") {
    Fixture f;
    const CliRun run = run_cli("reproduce --name bogus", f.dir);
    CHECK(run.exit_code == 2);
}

TEST_CASE("cli reports are byte-identical across runs with one seed") {
    Fixture f;
    const std::string args = "--seed 42 reproduce --name no-go --out ";
    const CliRun a = run_cli(args + (f.dir / "a.json").string(), f.dir);
    const CliRun b = run_cli(args + (f.dir / "b.json").string(), f.dir);
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    CHECK(slurp(f.dir / "a.json") == slurp(f.dir / "b.json"));
    CHECK(!slurp(f.dir / "a.json").empty());
}
