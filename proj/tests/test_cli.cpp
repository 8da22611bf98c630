/*
 * Copyright 2026 The gammachain Authors
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

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include <json.hpp>

namespace {

struct Invocation {
    int code = -1;
    std::string out;
};

Invocation run(const std::string& args) {
    const std::string cmd = std::string(GAMMACHAIN_CLI) + " " + args + " 2>/dev/null";
    Invocation r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string data(const std::string& name) { return std::string(GAMMACHAIN_SOURCE_DIR) + "/tests/data/" + name; }

std::string meta(const std::string& csv, const std::string& key) {
    std::istringstream is(csv);
    for (std::string line; std::getline(is, line);)
        if (line.rfind("# " + key + "=", 0) == 0) return line.substr(key.size() + 3);
    return {};
}

std::vector<std::string> body(const std::string& csv) {
    std::istringstream is(csv);
    std::vector<std::string> lines;
    for (std::string line; std::getline(is, line);)
        if (!line.empty() && line[0] != '#') lines.push_back(line);
    return lines;
}

}  // namespace

TEST(Cli, HeaderCarriesParameters) {
    const Invocation r = run("spectrum --N 8 --gamma 0.3 --Gamma -0.2 --alpha 0.1 --h 0.7");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(meta(r.out, "gamma"), "0.29999999999999999");
    EXPECT_EQ(meta(r.out, "Gamma"), "-0.20000000000000001");
    for (const char* k : {"subcommand", "J", "alpha", "h", "N", "sector", "phase", "gap"}) EXPECT_FALSE(meta(r.out, k).empty()) << k;
    const auto lines = body(r.out);
    ASSERT_EQ(lines.size(), 9u);
    EXPECT_EQ(lines[0], "k,eps,u,v,phi,filled");
}

TEST(Cli, BitIdenticalReruns) {
    const std::string args = "--N 100 --r 2 sqc --h-range 0.8:1.2:5";
    const Invocation a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(body(a.out).size(), 11u);
}

TEST(Cli, JsonMirrorsCsv) {
    const Invocation c = run("--N 100 --r 3 chiral"), j = run("--N 100 --r 3 --format json chiral");
    ASSERT_EQ(j.code, 0);
    const nlohmann::json doc = nlohmann::json::parse(j.out);
    EXPECT_EQ(doc["meta"]["subcommand"], "chiral");
    EXPECT_EQ(doc["rows"].size(), body(c.out).size() - 1);
    EXPECT_EQ(doc["columns"][0], "r");
}

TEST(Cli, WritesOutputFile) {
    const auto path = std::filesystem::temp_directory_path() / "gammachain_cli_test.csv";
    ASSERT_EQ(run("--N 50 --r 2 dimer --out " + path.string()).code, 0);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), run("--N 50 --r 2 dimer").out);
    std::filesystem::remove(path);
}

TEST(Cli, ConfigFileMatchesFlags) {
    const Invocation cfg = run("--config " + data("sqc_sweep.toml") + " sqc");
    const Invocation flags = run("--gamma 0.6 --Gamma 0.6 --alpha 0.5 --N 200 --r 2 sqc --h-range 0.9:1.1:5");
    ASSERT_EQ(cfg.code, 0);
    EXPECT_EQ(cfg.out, flags.out);
    EXPECT_EQ(meta(run("--config " + data("sqc_sweep.toml") + " --N 100 sqc").out, "N"), "100");
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run("--help").code, 0);
    EXPECT_EQ(run("").code, 1);
    EXPECT_EQ(run("frobnicate").code, 1);
    EXPECT_EQ(run("--N 100 sqc --h-range 1:0:3").code, 1);
    EXPECT_EQ(run("--N 100 sqc --h-range 1:2").code, 1);
    EXPECT_EQ(run("--N 7 spectrum").code, 1);
    EXPECT_EQ(run("--gamma nan spectrum").code, 1);
    EXPECT_EQ(run("--N 8 spectrum --out /nonexistent-dir/x.csv").code, 1);
    EXPECT_EQ(run("couplings").code, 1);
    EXPECT_EQ(run("couplings --input " + data("resonant.json")).code, 2);
}

TEST(Cli, PhaseDiagramContour) {
    const Invocation r = run("--gamma 0.6 --Gamma 0.6 phase-diagram --alpha-range -1:1:21 --h-range 0:2:21 --contour");
    ASSERT_EQ(r.code, 0);
    const auto lines = body(r.out);
    ASSERT_GT(lines.size(), 10u);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        double a, h;
        ASSERT_EQ(std::sscanf(lines[i].c_str(), "%lf,%lf", &a, &h), 2);
        const double d1 = std::abs(h - 1), d2 = std::abs(a + 0.25);
        const double d3 = a < -0.25 ? std::abs(h - std::sqrt(1 - 0.36 - 1.44 * a)) : 1.0;
        EXPECT_LT(std::min({d1, d2, d3}), 1e-3) << lines[i];
    }
}

TEST(Cli, PhaseDiagramGrid) {
    const Invocation r = run("phase-diagram --alpha-range -1:1:5 --h-range 0:2:4");
    ASSERT_EQ(r.code, 0);
    const auto lines = body(r.out);
    EXPECT_EQ(lines.size(), 21u);
    EXPECT_EQ(lines[0], "alpha,h,signed_min,gap,phase");
}

TEST(Cli, CouplingsReduction) {
    const Invocation r = run("couplings --input " + data("interference_chain.json"));
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(meta(r.out, "reducible"), "true");
    EXPECT_EQ(meta(r.out, "alpha"), "-1");
    EXPECT_EQ(body(r.out).size(), 10u);
}

TEST(Cli, OracleCheck) {
    const Invocation r = run("oracle-check --n 8 --draws 3 --seed 5");
    ASSERT_EQ(r.code, 0);
    EXPECT_LT(std::stod(meta(r.out, "max_abs_deviation")), 1e-8);
    EXPECT_EQ(body(r.out).size(), 4u);
}

TEST(Cli, GapAndDispersionExponents) {
    Invocation r = run("--alpha 0.5 --h 1 scaling-fit --target z");
    ASSERT_EQ(r.code, 0);
    double slope = 0;
    ASSERT_EQ(std::sscanf(body(r.out).at(1).c_str(), "z,%lf", &slope), 1);
    EXPECT_NEAR(slope, 1.0, 0.02);
    r = run("--alpha -0.5 scaling-fit --target gap --boundary CP3 --side above");
    ASSERT_EQ(r.code, 0);
    ASSERT_EQ(std::sscanf(body(r.out).at(1).c_str(), "nu_z,%lf", &slope), 1);
    EXPECT_NEAR(slope, 1.0, 0.02);
    EXPECT_EQ(run("--alpha -0.5 scaling-fit --target gap --boundary CP3 --side below").code, 1);
}

TEST(Cli, EnergyCurvatureSizes) {
    const Invocation r = run("--alpha 0.5 energy-curvature --h-range 0.9:1.1:3 --sizes 100,200");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(body(r.out).size(), 7u);
    EXPECT_EQ(run("energy-curvature --mode bogus").code, 1);
}

TEST(Cli, CorrelateSweep) {
    const Invocation r = run("--N 60 --r 3 correlate --h-range 0.5:1.5:2");
    ASSERT_EQ(r.code, 0);
    const auto lines = body(r.out);
    ASSERT_EQ(lines.size(), 7u);
    EXPECT_EQ(lines[0], "h,r,mz,xx,yy,zz,xy,yx,dxx_dh");
}
