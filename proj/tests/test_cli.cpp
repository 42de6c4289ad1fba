#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "casimir/casimir3d.hpp"
#include "casimir/cli.hpp"
#include "casimir/core.hpp"
#include "support.hpp"

using namespace casimir;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("casimir_cli_test_" + name);
}

}  // namespace

TEST_CASE("eta of perfect mirrors at zero temperature is 1") {
    const auto r = run_cli({"eta", "--model", "perfect", "--T", "0", "--L", "1e-6"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::vector<std::string>{"L_m", "eta", "err_est", "n_terms"});
    CHECK(rows[1][1] == "1.0000000000e+00");
    CHECK(std::stod(rows[1][1]) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("Drude pressure at 50 um follows the zeroth Matsubara term") {
    const auto r = run_cli({"pressure", "--model", "drude-gold", "--T", "300", "--L", "5e-5"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    const double P = std::stod(rows[1][1]);
    const double L = 5e-5;
    const double oracle = -constants::kB * 300.0 * zeta(3) / (8.0 * constants::pi * L * L * L);
    CHECK(P == doctest::Approx(oracle).epsilon(0.02));
    CHECK(P == doctest::Approx(pressure_high_T(PlaneCavity(gold::drude(), L), 300.0).P).epsilon(0.02));
}

TEST_CASE("eta sweep crosses 1 between 1 and 10 um") {
    const auto r = run_cli({"sweep", "--quantity", "eta", "--model", "drude-gold", "--T", "300", "--lmin", "1e-7",
                            "--lmax", "1e-5", "--points", "50", "--spacing", "log"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 51);
    CHECK(rows[0][1] == "eta");
    CHECK(std::stod(rows[1][0]) == 1e-7);
    CHECK(std::stod(rows[50][0]) == 1e-5);
    double crossing = 0.0;
    for (std::size_t i = 2; i < rows.size(); ++i) {
        if (std::stod(rows[i - 1][1]) < 1.0 && std::stod(rows[i][1]) > 1.0) crossing = std::stod(rows[i][0]);
    }
    CHECK(crossing > 1e-6);
    CHECK(crossing <= 1e-5);
}

TEST_CASE("output is byte-identical across runs and thread counts") {
    const std::vector<std::string> args{"sweep", "--quantity", "pressure", "--model", "drude-gold", "--lmin", "1e-7",
                                        "--lmax", "1e-5", "--points", "12", "--verbose-errors"};
    setenv("CASIMIR_KIT_THREADS", "1", 1);
    const auto serial = run_cli(args);
    setenv("CASIMIR_KIT_THREADS", "4", 1);
    const auto parallel = run_cli(args);
    const auto again = run_cli(args);
    unsetenv("CASIMIR_KIT_THREADS");
    REQUIRE(serial.code == 0);
    CHECK(serial.out == parallel.out);
    CHECK(parallel.out == again.out);
}

TEST_CASE("verbose errors add metadata columns") {
    const auto plain = parse_csv(run_cli({"pressure", "--L", "1e-6"}).out);
    const auto verbose = parse_csv(run_cli({"pressure", "--L", "1e-6", "--verbose-errors"}).out);
    CHECK(plain[0].size() == 4);
    CHECK(verbose[0] == std::vector<std::string>{"L_m", "pressure", "err_est", "n_terms", "P_TE", "P_TM", "eta"});
    CHECK(verbose[1].size() == verbose[0].size());
    CHECK(std::stod(verbose[1][4]) + std::stod(verbose[1][5]) == doctest::Approx(std::stod(verbose[1][1])).epsilon(1e-9));
}

TEST_CASE("every quantity sweeps") {
    for (const std::string q : {"pressure", "eta", "force1d", "free-energy", "entropy", "pfa-force", "pfa-gradient",
                                "spectral1d"}) {
        CAPTURE(q);
        const auto r = run_cli({"sweep", "--quantity", q, "--lmin", "2e-7", "--lmax", "7e-7", "--points", "3",
                                "--omega", "1e15", "--mirror", "impedance:1e15"});
        CHECK(r.code == 0);
        const auto rows = parse_csv(r.out);
        REQUIRE(rows.size() == 4);
        CHECK(rows[0] == std::vector<std::string>{"L_m", q, "err_est", "n_terms"});
    }
}

TEST_CASE("compare-models reports the ratio") {
    const auto r = run_cli({"compare-models", "--T", "300", "--L", "5e-5"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    CHECK(rows[0] == std::vector<std::string>{"L_m", "P_model1", "P_model2", "ratio", "eta_model1", "eta_model2",
                                              "err_est", "n_terms"});
    CHECK(std::stod(rows[1][3]) == doctest::Approx(2.0).epsilon(0.02));
    CHECK(std::stod(rows[1][3]) == doctest::Approx(std::stod(rows[1][2]) / std::stod(rows[1][1])).epsilon(1e-9));
}

TEST_CASE("thermo, pfa, force1d and spectral1d") {
    const auto t = parse_csv(run_cli({"thermo", "--L", "1e-6"}).out);
    CHECK(t[0] == std::vector<std::string>{"L_m", "free_energy", "entropy", "internal_energy", "err_est", "n_terms"});
    CHECK(std::stod(t[1][3]) ==
          doctest::Approx(std::stod(t[1][1]) + 300.0 * std::stod(t[1][2])).epsilon(1e-8));

    const auto p = run_cli({"pfa", "--L", "3e-7", "--K0", "1e-8", "--I", "1e-16", "--b", "1e-4"});
    REQUIRE(p.code == 0);
    const auto prow = parse_csv(p.out);
    CHECK(prow[0].back() == "omega_sq");
    CHECK(std::stod(prow[1][1]) == doctest::Approx(-1.0801114273e-11).epsilon(1e-9));

    const auto f = parse_csv(run_cli({"force1d", "--mirror", "perfect", "--T", "0", "--L", "1"}).out);
    CHECK(std::stod(f[1][1]) == doctest::Approx(-constants::hbar * constants::c * constants::pi / 24.0).epsilon(1e-9));

    const auto s = parse_csv(run_cli({"spectral1d", "--mirror", "impedance:1e16", "--L", "1e-6", "--omega", "3e15"}).out);
    CHECK(s[0][1] == "spectral1d");
}

TEST_CASE("JSON mirrors the CSV fields") {
    const auto csv = parse_csv(run_cli({"eta", "--L", "1e-6"}).out);
    const auto r = run_cli({"eta", "--L", "1e-6", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["columns"].get<std::vector<std::string>>() == csv[0]);
    REQUIRE(doc["rows"].size() == 1);
    const auto& row = doc["rows"][0];
    CHECK(row["eta"].get<double>() == std::stod(csv[1][1]));
    CHECK(row["n_terms"].get<long long>() == std::stoll(csv[1][3]));
}

TEST_CASE("output file") {
    const auto path = temp_path("out.csv");
    const auto r = run_cli({"eta", "--L", "1e-6", "--out", path.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == run_cli({"eta", "--L", "1e-6"}).out);
    std::filesystem::remove(path);
}

TEST_CASE("model specifications") {
    using cli::parse_model;
    CHECK(std::holds_alternative<PerfectMirror>(parse_model("perfect")));
    CHECK(std::get<DrudeModel>(parse_model("drude-gold")).gamma() == gold::gamma());
    CHECK(std::get<PlasmaModel>(parse_model("plasma-gold")).omega_p() == gold::omega_p());
    const auto d = std::get<DrudeModel>(parse_model("drude:1.2e16,5e13"));
    CHECK(d.omega_p() == 1.2e16);
    CHECK(d.gamma() == 5e13);
    CHECK(std::get<PlasmaModel>(parse_model("plasma:1e16")).omega_p() == 1e16);

    // eV, by suffix or flag
    const double ev = 1.602176634e-19 / constants::hbar;
    CHECK(cli::ev_to_rad_per_s(1.0) == doctest::Approx(ev).epsilon(1e-15));
    CHECK(std::get<PlasmaModel>(parse_model("plasma:9eV")).omega_p() == doctest::Approx(9 * ev).epsilon(1e-15));
    CHECK(std::get<PlasmaModel>(parse_model("plasma:9", true)).omega_p() == doctest::Approx(9 * ev).epsilon(1e-15));
    CHECK(std::get<PlasmaModel>(parse_model("plasma:1e16rad/s", true)).omega_p() == 1e16);

    CHECK_THROWS_AS(parse_model("copper"), cli::UsageError);
    CHECK_THROWS_AS(parse_model("drude:1e16"), cli::UsageError);
    CHECK_THROWS_AS(parse_model("plasma:9parsec"), cli::UsageError);

    const auto path = temp_path("optical.csv");
    {
        std::ofstream f(path);
        f << "omega_rad_s,eps_imag\n";
        for (double w : testing_support::log_grid(1e12, 1e18, 40))
            f << w << ',' << testing_support::drude_eps_imag(w, 1e16, 1e14) << '\n';
    }
    const auto t = std::get<TabulatedModel>(parse_model("tabulated:" + path.string() + ",drude-tail:1e16,1e14"));
    CHECK(t.table->size() == 40);
    CHECK(t.tail.omega_p == 1e16);
    CHECK(t.tail.gamma == 1e14);
    CHECK(std::get<TabulatedModel>(parse_model("tabulated:" + path.string())).tail.omega_p == 0.0);
    std::filesystem::remove(path);

    CHECK(cli::parse_mirror("perfect").is_perfect());
    CHECK(cli::parse_mirror("impedance:3e14").Omega() == 3e14);
    CHECK_THROWS_AS(cli::parse_mirror("glass"), cli::UsageError);
}

TEST_CASE("grids") {
    const auto lin = cli::make_grid(1.0, 2.0, 5, "linear");
    CHECK(lin == std::vector<double>{1.0, 1.25, 1.5, 1.75, 2.0});
    const auto lg = cli::make_grid(1e-7, 1e-5, 3, "log");
    CHECK(lg[1] == doctest::Approx(1e-6).epsilon(1e-14));
    CHECK_THROWS_AS(cli::make_grid(2.0, 1.0, 5, "linear"), cli::UsageError);
    CHECK_THROWS_AS(cli::make_grid(1.0, 2.0, 1, "linear"), cli::UsageError);
    CHECK_THROWS_AS(cli::make_grid(1.0, 2.0, 5, "cubic"), cli::UsageError);
    CHECK(cli::format_number(1.0) == "1.0000000000e+00");
}

TEST_CASE("exit codes") {
    CHECK(run_cli({"eta", "--bogus"}).code == cli::kExitUsage);
    CHECK(run_cli({}).code == cli::kExitUsage);
    CHECK(run_cli({"teleport"}).code == cli::kExitUsage);
    CHECK(run_cli({"eta", "--model", "drude:9parsec,1", "--L", "1e-6"}).code == cli::kExitUsage);
    CHECK(run_cli({"eta", "--L", "1e-6", "--spacing", "cubic"}).code == cli::kExitUsage);
    CHECK(run_cli({"sweep", "--quantity", "colour", "--lmin", "1e-7", "--lmax", "1e-6"}).code == cli::kExitUsage);
    CHECK(run_cli({"eta"}).code == cli::kExitUsage);

    const auto domain = run_cli({"pressure", "--L", "-1e-6"});
    CHECK(domain.code == cli::kExitDomain);
    CHECK(domain.err.find("domain error") != std::string::npos);
    CHECK(run_cli({"pressure", "--model", "tabulated:/nonexistent.csv", "--L", "1e-6"}).code == cli::kExitDomain);
    CHECK(run_cli({"pfa", "--L", "1.6e-7", "--K0", "1e-16", "--I", "1e-16", "--b", "1e-4"}).code == cli::kExitDomain);

    CHECK(run_cli({"pressure", "--model", "perfect", "--T", "1", "--L", "1e-6", "--n-max", "10"}).code ==
          cli::kExitConvergence);

    setenv("CASIMIR_KIT_THREADS", "zero", 1);
    CHECK(run_cli({"eta", "--L", "1e-6"}).code == cli::kExitUsage);
    unsetenv("CASIMIR_KIT_THREADS");

    const auto help = run_cli({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("compare-models") != std::string::npos);
}
