#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "zeno/commands.hpp"
#include "zeno/errors.hpp"

using namespace zeno;
using namespace zeno::cli;
using Json = nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

struct Csv {
    std::string header;
    std::vector<std::vector<std::string>> rows;
};

Csv parse_csv(const std::string& text) {
    Csv out;
    std::istringstream in(text);
    std::getline(in, out.header);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::istringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        if (line.back() == ',') cells.emplace_back();
        out.rows.push_back(std::move(cells));
    }
    return out;
}

std::vector<double> exact_column(const Csv& csv) {
    std::vector<double> values;
    values.reserve(csv.rows.size());
    for (const auto& row : csv.rows) values.push_back(std::stod(row.at(1)));
    return values;
}

} // namespace

TEST_CASE("sweep CSV schema and the ideal staircase") {
    const RunConfig cfg = build_run_config(
        Command::Sweep, {{"mirror", "ideal"}, {"n_min", "1"}, {"n_max", "10"}});
    const Csv csv = parse_csv(render(cfg));
    CHECK(csv.header == "n,p_exact,p_first_order,p_dominant,p_ideal");
    REQUIRE(csv.rows.size() == 10);
    const auto p = exact_column(csv);
    CHECK(p.front() <= 1e-30);
    for (std::size_t i = 1; i < p.size(); ++i) CHECK(p[i] > p[i - 1]);
    // first-order column applies only from N = 2 on
    CHECK(csv.rows[0].at(2).empty());
    CHECK_FALSE(csv.rows[1].at(2).empty());
}

TEST_CASE("sweep with reference losses peaks at the known stage count") {
    const RunConfig cfg = build_run_config(
        Command::Sweep, {{"t_up2", "0.9999"}, {"n_min", "1"}, {"n_max", "1000"}});
    const auto p = exact_column(parse_csv(render(cfg)));
    const auto peak = std::max_element(p.begin(), p.end());
    CHECK(std::distance(p.begin(), peak) + 1 == 157);
    CHECK(peak != p.begin());
    CHECK(peak != p.end() - 1);
}

TEST_CASE("sweep output barely depends on the down transmission") {
    const auto sweep_with = [](const std::string& t_down2) {
        const RunConfig cfg = build_run_config(
            Command::Sweep,
            {{"t_up2", "0.99"}, {"t_down2", t_down2}, {"n_min", "1"}, {"n_max", "200"}});
        return exact_column(parse_csv(render(cfg)));
    };
    const auto base = sweep_with("0");
    for (const std::string t_down2 : {"1e-4", "1e-2"}) {
        const auto moved = sweep_with(t_down2);
        const double ratio = std::sqrt(std::stod(t_down2) / 0.99);
        for (std::size_t i = 0; i < base.size(); ++i) {
            CHECK(std::abs(moved[i] - base[i]) <= 10.0 * ratio);
        }
    }
}

TEST_CASE("sweep json marks inapplicable methods as null") {
    const RunConfig cfg = build_run_config(
        Command::Sweep,
        {{"mirror", "ideal"}, {"n_min", "1"}, {"n_max", "3"}, {"format", "json"}});
    const Json doc = Json::parse(render(cfg));
    CHECK(doc.at("command") == "sweep");
    CHECK(doc.at("rows").size() == 3);
    CHECK(doc.at("rows")[0].at("p_first_order").is_null());
    CHECK(doc.at("rows")[1].at("p_first_order").is_number());
}

TEST_CASE("spin-flip sweeps leave the diagonal-only expansion column empty") {
    KeyValues kv{{"n_min", "1"}, {"n_max", "4"}};
    for (const char* q : {"t_uu", "t_ud", "t_du", "t_dd", "r_uu", "r_ud", "r_du", "r_dd"}) {
        kv[std::string(q) + "2"] = "0.0";
    }
    kv["t_uu2"] = "0.9999";
    const Csv csv = parse_csv(render(build_run_config(Command::Sweep, kv)));
    for (const auto& row : csv.rows) {
        CHECK(row.at(2).empty());
        CHECK_FALSE(row.at(1).empty());
        CHECK_FALSE(row.at(3).empty());
    }
}

TEST_CASE("table1 reproduces estimates and exact optima") {
    const Csv csv = parse_csv(render(build_run_config(Command::Table1, {})));
    CHECK(csv.header == "t_up2,n_opt_estimate,n_opt_exact,p_estimate,p_exact");
    REQUIRE(csv.rows.size() == 3);
    const long expected_n[] = {16, 50, 157};
    const double expected_p_est[] = {0.69, 0.90, 0.97};
    const double expected_p_exact[] = {0.73, 0.91, 0.97};
    for (int i = 0; i < 3; ++i) {
        CHECK(std::stol(csv.rows[i].at(1)) == expected_n[i]);
        CHECK(std::stol(csv.rows[i].at(2)) == expected_n[i]);
        CHECK(std::abs(std::stod(csv.rows[i].at(3)) - expected_p_est[i]) <= 0.005);
        CHECK(std::abs(std::stod(csv.rows[i].at(4)) - expected_p_exact[i]) <= 0.005);
    }
}

TEST_CASE("table1 renders as json on request") {
    const Json doc = Json::parse(render(build_run_config(Command::Table1, {{"format", "json"}})));
    CHECK(doc.at("rows").size() == 3);
    CHECK(doc.at("rows")[2].at("n_opt_exact") == 157);
}

TEST_CASE("renders are deterministic") {
    const RunConfig cfg = build_run_config(
        Command::Sweep, {{"t_up2", "0.999"}, {"n_min", "1"}, {"n_max", "64"}});
    CHECK(render(cfg) == render(cfg));
    const RunConfig table = build_run_config(Command::Table1, {});
    CHECK(render(table) == render(table));
}

TEST_CASE("opt report for the worked loss estimate") {
    const double t_up2 = 1.0 - 1.0 / 4000.0;
    std::ostringstream key;
    key.precision(17);
    key << t_up2;
    const Json doc = Json::parse(
        render(build_run_config(Command::Opt, {{"t_up2", key.str()}})));
    CHECK(doc.at("n_opt_estimate") == 99);
    CHECK(std::abs(doc.at("p_estimate").get<double>() - 0.95) <= 0.005);
    CHECK_FALSE(doc.at("no_finite_optimum").get<bool>());
    CHECK_FALSE(doc.at("ceiling_hit").get<bool>());
    CHECK(doc.at("search_ceiling") == 4000);
}

TEST_CASE("opt report flags the lossless mirror") {
    const Json doc = Json::parse(render(build_run_config(Command::Opt, {{"mirror", "ideal"}})));
    CHECK(doc.at("no_finite_optimum").get<bool>());
    CHECK(doc.at("ceiling_hit").get<bool>());
    CHECK(doc.at("n_opt_exact") == 4000);
    CHECK(doc.at("n_opt_estimate").is_null());
    CHECK(doc.at("p_estimate").is_null());
}

TEST_CASE("small spin flips barely move the optimum") {
    const Json diagonal = Json::parse(
        render(build_run_config(Command::Opt, {{"t_up2", "0.999"}})));
    KeyValues kv;
    for (const char* q : {"t_uu", "t_ud", "t_du", "t_dd", "r_uu", "r_ud", "r_du", "r_dd"}) {
        kv[std::string(q) + "2"] = "0.0";
    }
    kv["t_uu2"] = "0.999";
    kv["t_ud2"] = "1e-6"; // |T_ud| = 1e-3
    kv["t_du2"] = "1e-6";
    const Json flip = Json::parse(render(build_run_config(Command::Opt, kv)));
    const long n_diag = diagonal.at("n_opt_exact").get<long>();
    const long n_flip = flip.at("n_opt_exact").get<long>();
    CHECK(std::abs(n_diag - n_flip) <= 2);
}

TEST_CASE("general report covers the lossless-decomposition limit") {
    const Json doc = Json::parse(render(build_run_config(
        Command::General, {{"a", "1.0"}, {"b", "-0.1"}, {"c", "0"}, {"tau_z", "1"},
                           {"alpha1", "0.5"}, {"t_total", "2"}})));
    CHECK(doc.at("infinite_frequency").get<bool>());
    CHECK(doc.at("p_opt_analytic").get<double>() == doctest::Approx(std::exp(-0.1)).epsilon(1e-12));
    CHECK(doc.at("n_opt_analytic").is_null());
}

TEST_CASE("general report ties back to the reference optimum") {
    const Json doc = Json::parse(render(build_run_config(
        Command::General, {{"a", "0.9999"}, {"tau_z", "1"}, {"alpha1", "1e-9"},
                           {"theta", "1.5707963267948966"}})));
    CHECK_FALSE(doc.at("infinite_frequency").get<bool>());
    CHECK(doc.at("n_opt_analytic").get<double>() == doctest::Approx(157.08).epsilon(1e-3));
    CHECK(doc.at("p_opt_analytic").get<double>() == doctest::Approx(0.969).epsilon(2e-3));
    const double analytic = doc.at("n_opt_analytic").get<double>();
    const double oracle = doc.at("n_opt_oracle").get<double>();
    CHECK(std::abs(analytic - oracle) <= 0.10 * oracle);
    CHECK(std::abs(doc.at("stationarity_residual").get<double>()) <= 1e-2);
}

TEST_CASE("write_output reports unwritable destinations") {
    RunConfig cfg = build_run_config(Command::Table1, {});
    cfg.output_path = "no_such_directory_zzz/out.csv";
    CHECK_THROWS_AS(write_output(cfg, "text", std::cout), IoError);
}
