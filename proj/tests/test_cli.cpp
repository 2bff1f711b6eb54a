#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "fpcavity/cli.hpp"

using fpcav::cli::dispatch;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
}

}  // namespace

TEST_CASE("xi prints the lattice sum") {
    const Run r = run({"xi", "--u", "1", "--v", "0"});
    CHECK(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(std::abs(doc.at("rows").at(0).at("xi").get<double>() - 1.75 * 1.2020569031595942) <= 1e-12);
    const Run csv = run({"xi", "--u", "0.5", "--v", "1", "--format", "csv"});
    CHECK(csv.code == 0);
    CHECK(csv.out.rfind("u,v,xi\r\n0.5,1,", 0) == 0);
}

TEST_CASE("kernel subcommand") {
    CHECK(run({"kernel", "--family", "E", "--u", "0.5", "--v", "1"}).code == 0);
    CHECK(run({"kernel", "--family", "D", "--sign", "minus", "--u", "0.5", "--v", "1", "--phi", "0.3"}).code == 0);
    const Run origin = run({"kernel", "--family", "D", "--sign", "plus", "--u", "0", "--v", "0"});
    CHECK(origin.code == 2);
    CHECK(origin.err.find("domain error") != std::string::npos);
    CHECK(run({"kernel", "--family", "E", "--u", "0", "--v", "0"}).code == 2);
    CHECK(run({"kernel", "--family", "E", "--spectral"}).code == 2);
    const Run spec = run({"kernel", "--family", "D", "--spectral", "--eps", "0.3", "--u", "0.7", "--v", "0",
                          "--tol-abs", "1e-8", "--format", "csv"});
    CHECK(spec.code == 0);
}

TEST_CASE("argument errors exit with 2 and usage on stderr") {
    const Run bad = run({"xi", "--bogus", "1"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("Usage") != std::string::npos);
    CHECK(run({}).code == 2);
    CHECK(run({"kernel", "--family", "Q"}).code == 2);
    CHECK(run({"verify", "everything"}).code == 2);
    CHECK(run({"xi", "--u", "1", "--v", "0", "--tol-abs", "-1"}).code == 2);
    CHECK(run({"dicke", "ground", "--n-atoms", "0"}).code == 2);
}

TEST_CASE("help lists every flag") {
    const Run h = run({"dicke", "--help"});
    CHECK(h.code == 0);
    for (const char* flag : {"--omega-a", "--omega-c", "--y", "--y-min", "--y-max", "--steps", "--n-atoms", "--cutoff",
                             "--format", "--output"})
        CHECK(h.out.find(flag) != std::string::npos);
    const Run k = run({"kernel", "--help"});
    for (const char* flag : {"--family", "--sign", "--u", "--v", "--phi", "--spectral", "--eps"})
        CHECK(k.out.find(flag) != std::string::npos);
}

TEST_CASE("verify writes a report and reports pass/fail through the exit code") {
    const Run ok = run({"verify", "lipschitz", "--seed", "42"});
    CHECK(ok.code == 0);
    const auto doc = nlohmann::json::parse(ok.out);
    CHECK(doc.at("all_pass").get<bool>());
    CHECK(doc.at("seed").get<std::uint64_t>() == 42);
    CHECK(doc.at("suite") == "lipschitz");
    CHECK(doc.at("checks").size() == 12);
    // The hard cutoff fails the decay threshold: exit 1.
    CHECK(run({"verify", "aniso", "--cutoff-shape", "sharp"}).code == 1);
}

TEST_CASE("identical arguments give byte-identical output files") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto a = dir / "fpcavity_cli_a.csv";
    const auto b = dir / "fpcavity_cli_b.csv";
    for (const auto& p : {a, b})
        CHECK(run({"verify", "cancellation", "--seed", "7", "--format", "csv", "--output", p.string()}).code == 0);
    const std::string sa = slurp(a), sb = slurp(b);
    CHECK(!sa.empty());
    CHECK(sa == sb);
    std::filesystem::remove(a);
    std::filesystem::remove(b);
    CHECK(run({"xi", "--output", "/nonexistent-dir/x.json"}).code == 2);
}

TEST_CASE("dicke subcommands") {
    const Run mf = run({"dicke", "meanfield", "--y", "2"});
    CHECK(mf.code == 0);
    CHECK(nlohmann::json::parse(mf.out).at("rows").at(0).at("order_parameter_sq_per_atom").get<double>() ==
          doctest::Approx(0.9375).epsilon(1e-7));
    const Run scan = run({"dicke", "scan", "--steps", "3", "--y-max", "2", "--n-atoms", "2", "--cutoff", "20",
                          "--format", "csv"});
    CHECK(scan.code == 0);
    CHECK(scan.out.rfind("y,energy,photon_number,gap,parity_of_ground,cutoff_converged\r\n", 0) == 0);
    CHECK(run({"dicke", "scan", "--steps", "0"}).code == 2);
}
