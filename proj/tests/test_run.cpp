#include "doctest.h"

#include "spinlock/errors.hpp"
#include "spinlock/run.hpp"

#include "json.hpp"

#include <sstream>
#include <string>
#include <vector>

using namespace spinlock;
using namespace spinlock::run;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

// Column line and data rows, without the commented header.
std::vector<std::string> data_lines(const std::string& csv) {
    std::vector<std::string> out;
    for (const std::string& line : lines_of(csv)) {
        if (!line.empty() && line[0] != '#') out.push_back(line);
    }
    return out;
}

config::RunConfig small(std::string_view extra) {
    return config::parse_config(std::string(R"({"physics": {"n_atoms": 50}, )") +
                                std::string(extra) + "}");
}

}  // namespace

TEST_CASE("number formatting keeps 17 significant digits") {
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(-2.5e-7) == "-2.4999999999999999e-07");
}

TEST_CASE("column schemas") {
    using config::Experiment;
    CHECK(columns_for(Experiment::contrast) ==
          std::vector<std::string>{"tau_arm_ms", "contrast", "stderr", "n_atoms", "alpha"});
    CHECK(columns_for(Experiment::sensitivity) ==
          std::vector<std::string>{"T_ms", "sensitivity_hz_per_sqrt_hz", "stderr", "n_atoms"});
    CHECK(columns_for(Experiment::verify_bch) == std::vector<std::string>{"g_tau", "bch_error"});
    CHECK(columns_for(Experiment::noise_preview) == std::vector<std::string>{"t_ms", "noise_hz"});
    CHECK(columns_for(Experiment::oracle_compare).size() == 11);
}

TEST_CASE("noise preview without components is identically zero") {
    const config::RunConfig cfg = small(R"("experiment": "noise-preview", "noise": [],
        "noise_preview": {"t_grid": {"start": 0, "stop": 5, "step": 0.5}})");
    const std::string csv = render_csv(execute(cfg), cfg);
    const auto rows = data_lines(csv);
    REQUIRE(rows.size() == 12);
    CHECK(rows[0] == "t_ms,noise_hz");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].substr(rows[i].find(',') + 1) == "0");
    }
}

TEST_CASE("noise preview follows the synthesized series") {
    const config::RunConfig cfg = small(R"("experiment": "noise-preview",
        "noise": [{"units": "Hz", "amplitude": 2, "freq_hz": 50, "phase": 0}],
        "noise_preview": {"t_grid": [0, 10]})");
    const Table t = execute(cfg);
    CHECK(std::get<double>(t.rows[0][1]) == doctest::Approx(2.0));
    CHECK(std::get<double>(t.rows[1][1]) == doctest::Approx(-2.0));
}

TEST_CASE("CSV header carries provenance") {
    const config::RunConfig cfg = small(R"("experiment": "verify-bch", "mc": {"seed": 77})");
    const std::string csv = render_csv(execute(cfg), cfg);
    const auto lines = lines_of(csv);
    CHECK(lines[0].rfind("# spinlock ", 0) == 0);
    CHECK(csv.find("# seed=77\n") != std::string::npos);
    CHECK(csv.find("# config_hash=") != std::string::npos);
    CHECK(csv.find("# config={") != std::string::npos);
    CHECK(data_lines(csv)[0] == "g_tau,bch_error");

    // the echoed config parses back to the same run
    for (const std::string& line : lines) {
        if (line.rfind("# config=", 0) == 0) {
            CHECK(config::from_json(nlohmann::json::parse(line.substr(9))) == cfg);
        }
    }
}

TEST_CASE("verify-bch reports a cubic slope") {
    const config::RunConfig cfg = small(R"("experiment": "verify-bch")");
    const Table t = execute(cfg);
    REQUIRE(t.rows.size() == 4);
    bool found = false;
    for (const auto& [key, value] : t.notes) {
        if (key == "loglog_slope") {
            found = true;
            CHECK(std::abs(std::stod(value) - 3.0) < 0.3);
        }
    }
    CHECK(found);
}

TEST_CASE("oracle-compare enumerates the grid") {
    const config::RunConfig cfg = small(R"("experiment": "oracle-compare",
        "oracle_compare": {"n_atoms": [2, 3], "alpha": [0, 0.1], "beta": [0.3], "gamma": [0.2],
                           "orderings": ["product", "single_exponential"]})");
    const Table t = execute(cfg);
    CHECK(t.rows.size() == 8);
    CHECK(std::get<std::string>(t.rows[0][4]) == "product");
    CHECK(std::get<std::string>(t.rows[7][4]) == "single_exponential");
}

TEST_CASE("contrast rows are identical across thread counts") {
    const config::RunConfig cfg = small(R"("mc": {"samples": 300, "seed": 5},
        "lockin": {"tau_arm_grid": {"start": 4, "stop": 6, "step": 0.5}},
        "contrast": {"unsqueezed_reference": true})");
    const std::string one = render_csv(execute(cfg, {1}), cfg);
    const std::string eight = render_csv(execute(cfg, {8}), cfg);
    CHECK(one == eight);
    const auto rows = data_lines(one);
    CHECK(rows.size() == 1 + 2 * 5);
    CHECK(one.find("# measurement_range[n_atoms=50,alpha=") != std::string::npos);
}

TEST_CASE("sensitivity table reports the best point per atom number") {
    const config::RunConfig cfg = small(R"("experiment": "sensitivity", "mc": {"samples": 100},
        "lockin": {"duration_grid": [20, 60, 100]}, "sensitivity": {"n_atoms": [50, 300]})");
    const Table t = execute(cfg, {2});
    CHECK(t.rows.size() == 6);
    CHECK(t.notes.size() == 2);
    CHECK(t.notes[0].first == "best[n_atoms=50]");
}

TEST_CASE("JSON output") {
    config::RunConfig cfg = small(R"("experiment": "verify-bch", "output": {"format": "json"})");
    std::ostringstream out, diag;
    CHECK(run::run(cfg, {}, out, diag) == 0);
    const nlohmann::json doc = nlohmann::json::parse(out.str());
    CHECK(doc["columns"] == nlohmann::json({"g_tau", "bch_error"}));
    CHECK(doc["rows"].size() == 4);
    CHECK(doc["metadata"]["experiment"] == "verify-bch");
}

TEST_CASE("exit codes") {
    std::ostringstream out, diag;
    config::RunConfig cfg = small(R"("experiment": "verify-bch")");
    CHECK(run::run(cfg, {}, out, diag) == 0);
    CHECK(diag.str().empty());

    config::RunConfig bad = cfg;
    bad.mc.samples = 0;
    CHECK(run::run(bad, {}, out, diag) == 2);
    CHECK(diag.str().find("mc.samples") != std::string::npos);

    config::RunConfig unwritable = cfg;
    unwritable.output.path = "/nonexistent-dir/out.csv";
    std::ostringstream diag2;
    CHECK(run::run(unwritable, {}, out, diag2) == 1);
    CHECK(diag2.str().find("cannot open") != std::string::npos);
}

TEST_CASE("log-log slope") {
    CHECK(loglog_slope({1, 10, 100}, {2, 2000, 2000000}) == doctest::Approx(3.0));
    CHECK_THROWS_AS(loglog_slope({1}, {1}), ContractError);
    CHECK_THROWS_AS(loglog_slope({1, 2}, {0, 1}), DomainError);
}
