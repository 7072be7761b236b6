#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "kitten/cli.hpp"
#include "kitten/detect.hpp"
#include "kitten/figures.hpp"
#include "kitten/table.hpp"

using namespace kitten;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

// Data rows of a CSV table (metadata and header skipped).
std::vector<std::vector<double>> csv_rows(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<double>> rows;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<double> row;
    std::istringstream fields(line);
    std::string f;
    while (std::getline(fields, f, ',')) row.push_back(std::stod(f));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST(Table, ShortestRoundTripNumbers) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(1e-20), "1e-20");
  EXPECT_EQ(format_number(2.0), "2");
  const double x = 0.4526312231512417;
  EXPECT_EQ(std::stod(format_number(x)), x);
  EXPECT_THROW(parse_format("xml"), UsageError);
  EXPECT_EQ(parse_format("json"), TableFormat::json);
}

TEST(Table, CsvAndJsonCarrySameContent) {
  Table t;
  t.metadata = {{"figure", "demo"}};
  t.columns = {"r", "v"};
  t.rows = {{0.0, 1.5}, {0.5, -2e-9}};
  std::ostringstream csv;
  write_csv(t, csv);
  EXPECT_EQ(csv.str(), "# figure: demo\nr,v\n0,1.5\n0.5,-2e-09\n");
  std::ostringstream js;
  write_json(t, js);
  const auto j = nlohmann::json::parse(js.str());
  EXPECT_EQ(j["metadata"]["figure"], "demo");
  EXPECT_EQ(j["columns"][1], "v");
  EXPECT_EQ(j["rows"][1][1].get<double>(), -2e-9);
}

TEST(Figures, EveryListedSelectorBuilds) {
  const auto& figs = figure_list();
  EXPECT_EQ(figs.size(), 14u);
  for (const char* sel : {"fig2", "fig3a", "fig8", "fig9a"}) {
    const Table t = make_figure(sel, {});
    EXPECT_FALSE(t.rows.empty()) << sel;
    for (const auto& row : t.rows) EXPECT_EQ(row.size(), t.columns.size());
  }
  EXPECT_THROW(make_figure("fig10", {}), UsageError);
}

TEST(Figures, Fig2Row) {
  const Table t = make_figure("fig2", {});
  ASSERT_EQ(t.columns.size(), 4u);
  EXPECT_EQ(t.columns[0], "n");
  EXPECT_NEAR(t.rows[1][2], 0.453, 5e-4);
  EXPECT_NEAR(t.rows[1][1], 0.0754, 5e-5);
}

TEST(Figures, Fig3aMaximumNearKnownValue) {
  const Table t = make_figure("fig3a", {});
  ASSERT_EQ(t.rows.size(), 201u);
  std::size_t best = 0;
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    if (t.rows[i][1] > t.rows[best][1]) best = i;
  EXPECT_NEAR(t.rows[best][0], 1.146, 0.01);
}

TEST(Figures, Fig9aIdealDetector) {
  FigureOptions o;
  o.eta = 1.0;
  const Table t = make_figure("fig9a", o);
  EXPECT_EQ(t.rows[0][1], 0.0);
  for (const auto& row : t.rows) {
    EXPECT_EQ(row[2], 0.0);
    EXPECT_GE(row[1], 0.0);
  }
  EXPECT_LT(t.rows[1][1], 1e-6);
}

TEST(Cli, FigureCsvAndJson) {
  const CliRun csv = run({"fig2", "--format", "csv"});
  ASSERT_EQ(csv.code, 0) << csv.err;
  EXPECT_NE(csv.out.find("n,P(1,n;r),P(1,n;r;-),P(1,n;r;+)"), std::string::npos);
  const auto rows = csv_rows(csv.out);
  ASSERT_EQ(rows.size(), 13u);
  EXPECT_NEAR(rows[1][2], 0.453, 5e-4);

  const CliRun js = run({"figure", "fig2", "--format", "json"});
  ASSERT_EQ(js.code, 0);
  const auto j = nlohmann::json::parse(js.out);
  EXPECT_EQ(j["rows"].size(), 13u);
  EXPECT_EQ(j["rows"][1][2].get<double>(), rows[1][2]);
  EXPECT_EQ(run({"--figure", "fig2"}).out, csv.out);
}

TEST(Cli, ByteIdenticalReruns) {
  const CliRun a = run({"fig5a", "--seed", "11"});
  const CliRun b = run({"fig5a", "--seed", "11"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("monte_carlo_seed: 11"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"figure", "fig99"}).code, 3);
  EXPECT_EQ(run({"fig2", "--format", "xml"}).code, 3);
  EXPECT_EQ(run({"--bogus"}).code, 3);
  EXPECT_EQ(run({}).code, 3);
  const CliRun unknown = run({"sweep", "--quantity", "nope", "--var", "r", "--lo", "0", "--hi", "1", "--points", "3"});
  EXPECT_EQ(unknown.code, 3);
  EXPECT_NE(unknown.err.find("g2_tmss"), std::string::npos);
  EXPECT_EQ(run({"sweep", "--quantity", "g2_tmss", "--var", "r", "--lo", "1", "--hi", "1", "--points", "5",
                 "--eta", "0.9"})
                .code,
            3);
  const CliRun small = run({"fig3b", "--dim", "8"});
  EXPECT_EQ(small.code, 2);
  EXPECT_NE(small.err.find("r="), std::string::npos);
}

TEST(Cli, SweepMatchesClosedFormAndFigure) {
  const CliRun g2 = run({"sweep", "--quantity", "g2_tmss", "--var", "r", "--lo", "0", "--hi", "2", "--points", "11",
                      "--eta", "0.9"});
  ASSERT_EQ(g2.code, 0) << g2.err;
  for (const auto& row : csv_rows(g2.out))
    EXPECT_NEAR(row[1], g2_tmss_analytic(SqueezeParam(row[0]), DetectorModel(0.9)), 1e-15);

  const CliRun p11 = run({"sweep", "--quantity", "p11_cat_minus", "--var", "r", "--lo", "0", "--hi", "2", "--points",
                       "201"});
  ASSERT_EQ(p11.code, 0) << p11.err;
  const auto swept = csv_rows(p11.out);
  const Table fig = make_figure("fig3b", {});
  ASSERT_EQ(swept.size(), fig.rows.size());
  for (std::size_t i = 0; i < swept.size(); ++i) EXPECT_EQ(swept[i][1], fig.rows[i][3]);
}

TEST(Cli, TwoAxisSweepAndParams) {
  const CliRun r = run({"sweep", "--quantity", "pclick1_tmss", "--var", "r", "--lo", "0.1", "--hi", "1", "--points",
                     "3", "--var2", "eta", "--lo2", "0.7", "--hi2", "1", "--points2", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(csv_rows(r.out).size(), 12u);
  const CliRun p = run({"sweep", "--quantity", "pclick1_tmss", "--var", "r", "--lo", "0.5", "--hi", "0.5", "--points",
                     "1", "--param", "eta=0.9"});
  ASSERT_EQ(p.code, 0) << p.err;
  EXPECT_NEAR(csv_rows(p.out)[0][1], 0.15115, 1e-5);
  EXPECT_EQ(run({"sweep", "--quantity", "pclick1_tmss", "--var", "r", "--lo", "0", "--hi", "1", "--points", "2",
                 "--param", "eta"})
                .code,
            3);
}

TEST(Cli, OutFile) {
  const auto path = std::filesystem::temp_directory_path() / "kitten_fig2_test.csv";
  const CliRun r = run({"fig2", "--out", path.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), run({"fig2"}).out);
  std::filesystem::remove(path);
}

TEST(Cli, ListNamesFiguresAndQuantities) {
  const CliRun r = run({"--list"});
  ASSERT_EQ(r.code, 0);
  for (const char* name : {"fig9b", "p11_cat_minus", "g2_tmss", "ratio_sigma"})
    EXPECT_NE(r.out.find(name), std::string::npos) << name;
}

TEST(Cli, VerifyWithBrokenCutoffFails) {
  const CliRun r = run({"verify", "--dim", "8"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("[FAIL] #11"), std::string::npos);
}

TEST(Cli, VerifyReportsCrossover) {
  const CliRun r = run({"verify", "--eta", "0.9"});
  EXPECT_NE(r.out.find("crossover(eta=0.9): 0.503"), std::string::npos);
  EXPECT_NE(r.out.find("#10"), std::string::npos);
}
