#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "vbslab/report.hpp"

using namespace vbslab;

namespace {

int run(const RunConfig& c, std::string* out_text = nullptr) {
  std::ostringstream out, err;
  const int code = run_command(c, out, err);
  if (out_text) *out_text = out.str();
  return code;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(VBSLAB_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Tables, FortyNineCellsMatchAndOneIsMirrored) {
  RunConfig c;
  c.command = Command::tables;
  const CommandResult r = run_tables(c);
  ASSERT_EQ(r.records.size(), 50u);
  EXPECT_TRUE(r.passed);
  int matches = 0;
  for (const Record& rec : r.records) {
    if (rec["verdict"] == "match") {
      ++matches;
    } else {
      EXPECT_EQ(rec["claim"], "nn.negativity[N_l=1,N_r=inf]");
      EXPECT_EQ(rec["verdict"], "paper-internal-inconsistency");
    }
  }
  EXPECT_EQ(matches, 49);
}

TEST(Tables, OppositeSignsMismatch) {
  RunConfig c;
  c.command = Command::tables;
  c.sign_right = Sign::minus;
  EXPECT_FALSE(run_tables(c).passed);
  EXPECT_EQ(run(c), 1);
}

TEST(Tables, MarkdownHasFiveDecimals) {
  RunConfig c;
  c.command = Command::tables;
  c.format = OutputFormat::markdown;
  std::string text;
  EXPECT_EQ(run(c, &text), 0);
  EXPECT_NE(text.find("| N_l=1 | 1.45919 | 1.50111 |"), std::string::npos);
  EXPECT_NE(text.find("paper-internal-inconsistency"), std::string::npos);
}

TEST(CompareTable, ClassifiesPlainMismatch) {
  PublishedTable fake = published_negativity_table();
  fake[2][2] = 0.5;
  const PairTable t = generate_table(PairMeasure::negativity, standard_table_distances());
  const auto recs = compare_table(t, fake, "t", kTableTolerance);
  EXPECT_EQ(recs[2 * 5 + 2].verdict, Verdict::mismatch);
  // A cell that reproduces its printed mirror is a published inconsistency.
  fake[1][2] = 0.5;
  EXPECT_EQ(compare_table(t, fake, "t", kTableTolerance)[1 * 5 + 2].verdict, Verdict::published_inconsistency);
  EXPECT_EQ(recs[0].verdict, Verdict::match);
}

TEST(Render, JsonRoundTrip) {
  RunConfig c;
  c.command = Command::entropy_scan;
  c.left = BoundaryDistance(2);
  c.right = BoundaryDistance(3);
  c.l_max = 8;
  c.format = OutputFormat::json;
  std::string text;
  ASSERT_EQ(run(c, &text), 0);
  const Record parsed = Record::parse(text);
  ASSERT_EQ(parsed.size(), 8u);
  EXPECT_EQ(parsed[0]["ratio"], nullptr);
  EXPECT_EQ(parsed[0]["provenance"], "both-agree");
  EXPECT_EQ(parsed[7]["provenance"], "analytic");
  const CommandResult direct = run_entropy_scan(c);
  EXPECT_EQ(parsed[3]["value"].get<double>(), direct.records[3]["value"].get<double>());
  EXPECT_EQ(Record::parse(parsed.dump(2)), parsed);
}

TEST(Render, CsvFlattensInputs) {
  std::vector<Record> recs(2);
  recs[0]["claim"] = "a,b";
  recs[0]["inputs"]["L"] = 3;
  recs[0]["value"] = 0.1;
  recs[1]["claim"] = "c";
  recs[1]["value"] = nullptr;
  recs[1]["extra"] = true;
  const std::string csv = render(recs, OutputFormat::csv);
  EXPECT_EQ(csv, "claim,inputs.L,value,extra\n\"a,b\",3,0.1,\nc,,,true\n");
}

TEST(Render, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 1.9749375, 1e-300, -2.5e17}) EXPECT_EQ(std::stod(format_double(v)), v);
}

TEST(EntropyScan, InfiniteDefaultsAndRatio) {
  RunConfig c;
  c.command = Command::entropy_scan;
  c.l_min = 5;
  c.l_max = 9;
  const CommandResult r = run_entropy_scan(c);
  ASSERT_EQ(r.records.size(), 5u);
  EXPECT_EQ(r.records[0]["inputs"]["N_l"], "inf");
  EXPECT_NEAR(r.records[2]["ratio"].get<double>(), 1.0 / 9.0, 1e-3);
}

TEST(CompareXx, SlopeEqualsMinusK) {
  RunConfig c;
  c.command = Command::compare_xx;
  c.l_max = 6;
  c.exponent_k = 2.0;
  const CommandResult r = run_compare_xx(c);
  ASSERT_EQ(r.records.size(), 6u);
  for (std::size_t i = 1; i < r.records.size(); ++i)
    EXPECT_NEAR(r.records[i]["xx_log_slope"].get<double>(), -2.0, 1e-12);
}

TEST(Verify, ChecksPassAndFindingsAreReported) {
  RunConfig c;
  c.command = Command::verify;
  const CommandResult r = run_verify(c);
  EXPECT_TRUE(r.passed);
  int findings = 0;
  for (const Record& rec : r.records) {
    if (rec["kind"] == "finding") {
      ++findings;
    } else {
      EXPECT_EQ(rec["verdict"], "match") << rec.dump();
    }
  }
  EXPECT_EQ(findings, 5);
}

TEST(Verify, FirstOrderEntropyFindingCarriesResidualOrder) {
  const Record f = first_order_entropy_finding();
  EXPECT_EQ(f["verdict"], "mismatch");
  EXPECT_NEAR(f["measured_residual_order"].get<double>(), 1.0, 0.1);
}

TEST(RunConfig, Validation) {
  RunConfig c;
  c.l_min = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.l_min = 5;
  c.l_max = 4;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.l_max = 5;
  c.tolerance = -1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.tolerance.reset();
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.effective_tolerance(), kTableTolerance);
}

TEST(RunCommand, ExitCodes) {
  RunConfig c;
  c.command = Command::tables;
  c.out_path = "/nonexistent-dir/out.csv";
  EXPECT_EQ(run(c), 1);
  c.out_path.clear();
  c.l_max = 0;
  EXPECT_EQ(run(c), 2);
}

TEST(RunCommand, WritesOutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "vbslab_tables_test.json";
  RunConfig c;
  c.command = Command::tables;
  c.format = OutputFormat::json;
  c.out_path = path.string();
  ASSERT_EQ(run(c), 0);
  std::ifstream in(path);
  const Record parsed = Record::parse(in);
  EXPECT_EQ(parsed.size(), 50u);
  std::filesystem::remove(path);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("tables"), 0);
  EXPECT_EQ(run_cli("entropy-scan --nl 1 --nr inf --lmax 5 --format json"), 0);
  EXPECT_EQ(run_cli("compare-xx --k 1.5 --format markdown"), 0);
  EXPECT_EQ(run_cli(""), 2);
  EXPECT_EQ(run_cli("bogus"), 2);
  EXPECT_EQ(run_cli("tables --nl zero"), 2);
  EXPECT_EQ(run_cli("tables --format xml"), 2);
  EXPECT_EQ(run_cli("entropy-scan --lmin 3 --lmax 2"), 2);
  EXPECT_EQ(run_cli("tables --sign-r -"), 1);
  EXPECT_EQ(run_cli("tables --out /nonexistent-dir/x.csv"), 1);
}
