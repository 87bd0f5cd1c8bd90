/*
 * Copyright 2026 The cgt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

using nlohmann::json;

namespace {

const std::string kCli = CGT_CLI_PATH;
const std::string kFixtures = CGT_FIXTURES_DIR;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run(const std::string& args, const std::string& env = "") {
    static int counter = 0;
    const std::string out_path = "/tmp/cgt_cli_out_" + std::to_string(counter);
    const std::string err_path = "/tmp/cgt_cli_err_" + std::to_string(counter);
    ++counter;
    const std::string cmd =
        env + (env.empty() ? "" : " ") + kCli + " " + args + " >" + out_path + " 2>" + err_path;
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string cur;
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            const char ch = line[i];
            if (quoted) {
                if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else if (ch == '"') {
                    quoted = false;
                } else {
                    cur += ch;
                }
            } else if (ch == '"') {
                quoted = true;
            } else if (ch == ',') {
                fields.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        fields.push_back(cur);
        rows.push_back(std::move(fields));
    }
    return rows;
}

std::string star() { return kFixtures + "/star.edges"; }

}  // namespace

TEST_CASE("value command reproduces the star fractions") {
    const RunResult r = run("value --network " + star() + " --family conn");
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 10);  // header + 9 players
    CHECK(rows[0] == std::vector<std::string>{"label", "value"});

    // the two satellite centers top the list, then the hub
    CHECK((rows[1][0] == "4" || rows[1][0] == "6"));
    CHECK((rows[2][0] == "4" || rows[2][0] == "6"));
    CHECK(rows[3][0] == "5");
    CHECK(std::abs(std::stod(rows[1][1]) - 139.0 / 360.0) < 1e-9);
    CHECK(std::abs(std::stod(rows[3][1]) - 130.0 / 360.0) < 1e-9);
    CHECK(std::abs(std::stod(rows[4][1]) + 8.0 / 360.0) < 1e-9);

    CHECK(r.err.find("manifest:") != std::string::npos);
}

TEST_CASE("value on a pure bargaining game splits evenly") {
    const RunResult r =
        run("value --game " + kFixtures + "/grand_unanimity_4.json --format json");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    REQUIRE(doc["results"].size() == 4);
    for (const auto& row : doc["results"])
        CHECK(std::abs(row["value"].get<double>() - 0.25) < 1e-12);
    CHECK(doc["manifest"]["version"].is_string());
    CHECK_FALSE(doc["manifest"].contains("elapsed_seconds"));
}

TEST_CASE("oversized exact requests point at the sampler") {
    // a 30-node path needs the Monte Carlo path
    std::string edges;
    for (int i = 1; i < 30; ++i)
        edges += "n" + std::to_string(i) + " n" + std::to_string(i + 1) + "\n";
    const std::string path = "/tmp/cgt_cli_path30.edges";
    std::ofstream(path) << edges;
    const RunResult r = run("value --network " + path + " --family conn");
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("--mc") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("group-value matches the printed fraction and explains itself") {
    const RunResult r = run("group-value --group 4,5 --network " + star() + " --family conn");
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][0] == "4+5");
    CHECK(std::abs(std::stod(rows[1][1]) - (0.5 + 47.0 / 280.0)) < 1e-9);

    const RunResult grand =
        run("group-value --group 1,2,3,4,5,6,7,8,9 --network " + star() + " --family conn");
    REQUIRE(grand.exit_code == 0);
    CHECK(std::abs(std::stod(parse_csv(grand.out)[1][1]) - 1.0) < 1e-12);

    const RunResult explain = run("group-value --group 4,5 --explain --format json --network " +
                                  star() + " --family conn");
    REQUIRE(explain.exit_code == 0);
    const json doc = json::parse(explain.out);
    REQUIRE(doc["explain"].size() == 2);
    CHECK(doc["explain"][1]["label"] == "5");
    CHECK(std::abs(doc["explain"][1]["independent"].get<double>() - 1.0 / 56.0) < 1e-9);
    CHECK(std::abs(doc["explain"][1]["complementarity"].get<double>() - 19.0 / 72.0) < 1e-9);

    const RunResult bad = run("group-value --group 4,5 --explain --mc --network " + star() +
                              " --family conn");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("monte-carlo group values agree across seeds") {
    const std::string base = "group-value --group 4,5 --mc --iters 20000 --network " + star() +
                             " --family conn --format json";
    const RunResult a = run(base + " --seed 1");
    const RunResult b = run(base + " --seed 2");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    const json da = json::parse(a.out);
    const json db = json::parse(b.out);
    const double ea = da["value"].get<double>(), eb = db["value"].get<double>();
    const double sa = da["std_err"].get<double>(), sb = db["std_err"].get<double>();
    CHECK(std::abs(ea - eb) <= 6.0 * std::sqrt(sa * sa + sb * sb));
}

TEST_CASE("rank finds the center-hub pair first") {
    const RunResult r =
        run("rank --size 2 --top 3 --network " + star() + " --family conn");
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"rank", "group", "value"});
    CHECK((rows[1][1] == "4+5" || rows[1][1] == "5+6"));
    CHECK(std::abs(std::stod(rows[1][2]) - (0.5 + 47.0 / 280.0)) < 1e-9);
    CHECK(std::abs(std::stod(rows[3][2]) - 0.5) < 1e-9);
}

TEST_CASE("rank of singletons is the individual ranking") {
    const RunResult ranked = run("rank --size 1 --top 9 --network " + star() + " --family conn");
    const RunResult values = run("value --network " + star() + " --family conn");
    REQUIRE(ranked.exit_code == 0);
    REQUIRE(values.exit_code == 0);
    const auto rrows = parse_csv(ranked.out);
    const auto vrows = parse_csv(values.out);
    REQUIRE(rrows.size() == vrows.size());
    for (std::size_t i = 1; i < rrows.size(); ++i)
        CHECK(std::abs(std::stod(rrows[i][2]) - std::stod(vrows[i][1])) < 1e-12);
}

TEST_CASE("complementarity command prints the interaction index") {
    const RunResult r = run("complementarity --pair 4,6 --network " + star() + " --family conn");
    REQUIRE(r.exit_code == 0);
    CHECK(std::abs(std::stod(parse_csv(r.out)[1][1]) + 1.0 / 90.0) < 1e-9);

    const RunResult bad = run("complementarity --pair 4 --network " + star() + " --family conn");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("profitability command reports the surplus") {
    const RunResult r = run("profitability --group 4,5 --network " + star() + " --family conn");
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    const double group_value = std::stod(rows[1][1]);
    const double additive = std::stod(rows[1][2]);
    const double surplus = std::stod(rows[1][3]);
    CHECK(std::abs(group_value - (0.5 + 47.0 / 280.0)) < 1e-9);
    CHECK(std::abs(surplus - (group_value - additive)) < 1e-9);
}

TEST_CASE("axioms command flags the deviant functional") {
    const RunResult r = run("axioms --functional product --suite " + kFixtures +
                            "/suite_small.json --format json");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    bool p6_failed = false;
    for (const auto& row : doc["results"]) {
        if (row["property"] == "P6") {
            CHECK(row["verdict"] == "FAIL");
            REQUIRE(row.contains("witness"));
            CHECK(row["witness"]["n"] == 3);
            p6_failed = true;
        }
    }
    CHECK(p6_failed);

    const RunResult ok = run("axioms --functional shapley --n-min 3 --n-max 4 --games 5");
    REQUIRE(ok.exit_code == 0);
    for (const auto& row : parse_csv(ok.out)) {
        if (row[0] == "property") continue;
        CHECK(row[2] == "PASS");
    }
}

TEST_CASE("diffusion and survey inputs work end to end") {
    const RunResult d = run("value --influence " + kFixtures +
                            "/influence_pair.txt --diffusion-runs 20000 --seed 5 --format json");
    REQUIRE(d.exit_code == 0);
    // seeding the influenced agent alone spreads to about 1.3 agents; its
    // individual value reflects a share of that spread
    const json doc = json::parse(d.out);
    CHECK(doc["results"].size() == 2);

    const RunResult s = run("value --survey " + kFixtures + "/survey_toy.csv");
    REQUIRE(s.exit_code == 0);
    const auto rows = parse_csv(s.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[1][0] == "price");  // the only attribute with positive signal

    const RunResult bad = run("value --influence " + kFixtures + "/bad_influence.txt");
    CHECK(bad.exit_code == 2);
    CHECK(bad.err.find(":2:") != std::string::npos);
}

TEST_CASE("input validation exit codes") {
    CHECK(run("value").exit_code == 2);  // no input source
    CHECK(run("value --game /nonexistent.json").exit_code == 2);
    CHECK(run("value --network " + star() + " --family bogus").exit_code == 2);
    CHECK(run("value --network " + star() + " --family wconn2").exit_code == 2);  // no weights
    CHECK(run("group-value --group nosuch --network " + star() + " --family conn").exit_code ==
          2);
    CHECK(run("nosuchcommand").exit_code == 2);
    CHECK(run("--help").exit_code == 0);
}

TEST_CASE("identical runs produce identical bytes") {
    const std::string cmd = "rank --size 2 --top 5 --method mc --iters 4000 --seed 9 --network " +
                            star() + " --family conn --format json";
    const RunResult a = run(cmd);
    const RunResult b = run(cmd);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);

    // the JSON payload re-parses and re-serializes to the same bytes
    CHECK(json::parse(a.out).dump(2) + "\n" == a.out);
}

TEST_CASE("seed comes from the environment when not given") {
    const std::string args = "value --mc --iters 2000 --network " + star() + " --family conn";
    const RunResult env_run = run(args, "CGT_SEED=77");
    const RunResult flag_run = run(args + " --seed 77");
    REQUIRE(env_run.exit_code == 0);
    CHECK(env_run.out == flag_run.out);

    const RunResult other = run(args + " --seed 78");
    CHECK(other.out != flag_run.out);
}

TEST_CASE("machine output can be redirected to a file") {
    const std::string out_path = "/tmp/cgt_cli_redirect.csv";
    const RunResult r =
        run("value --network " + star() + " --family conn --out " + out_path);
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.empty());
    const std::string content = slurp(out_path);
    CHECK(content.rfind("label,value", 0) == 0);
    std::remove(out_path.c_str());
}
