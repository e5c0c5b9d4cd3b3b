#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "blockrecon/cli/csv.hpp"
#include "blockrecon/cli/dispatch.hpp"
#include "blockrecon/cli/manifest.hpp"

using namespace blockrecon::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

int run(const std::vector<std::string>& args, std::string* out = nullptr, std::string* err = nullptr)
{
    std::ostringstream o, e;
    const int rc = dispatch(args, o, e);
    if (out) *out = o.str();
    if (err) *err = e.str();
    return rc;
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir = fs::temp_directory_path() / ("blockrecon_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    fs::path dir;
};

} // namespace

TEST(Csv, FormatsSixSignificantDigits)
{
    EXPECT_EQ(format_double(0.1234567), "0.123457");
    EXPECT_EQ(format_double(2200.0), "2200");
    EXPECT_EQ(format_double(1e-7), "1e-07");
    std::ostringstream s;
    CsvWriter w(s);
    w.row({"a,b", 1.5, true, std::uint64_t{7}, "say \"hi\""});
    EXPECT_EQ(s.str(), "\"a,b\",1.5,1,7,\"say \"\"hi\"\"\"\n");
}

TEST(Manifest, JsonRoundTripAndReplayArgs)
{
    RunManifest m;
    m.subcommand = {"frontier-sim"};
    m.params = {{"accounts", "100"}, {"timing", "false"}, {"no-retry", "true"}, {"csv", "old.csv"}, {"json", ""}};
    m.argv = {"frontier-sim", "--accounts", "100"};
    m.seed = 3;
    m.version = "x";
    const auto back = RunManifest::from_json(m.to_json());
    EXPECT_EQ(back.subcommand, m.subcommand);
    EXPECT_EQ(back.params, m.params);
    EXPECT_EQ(back.seed, 3U);
    EXPECT_EQ(back.replay_args("new.csv"),
              (std::vector<std::string>{"frontier-sim", "--accounts", "100", "--no-retry", "--csv", "new.csv"}));
    EXPECT_EQ(manifest_path_for("a/b.csv"), "a/b.csv.manifest.json");
}

TEST_F(CliTest, HelpExitsZero)
{
    std::string out;
    EXPECT_EQ(run({"sweep", "--help"}, &out), 0);
    EXPECT_NE(out.find("--overlap"), std::string::npos);
}

TEST_F(CliTest, UsageErrorsExitTwo)
{
    std::string err;
    EXPECT_EQ(run({"frontier-sim", "--bogus"}, nullptr, &err), 2);
    EXPECT_EQ(run({"no-such-command"}), 2);
    EXPECT_EQ(run({}), 2);
    EXPECT_EQ(run({"ordering-sim", "--mode", "dfs"}), 2);
    EXPECT_EQ(run({"sweep", "--overlap", "1:0:0.1"}), 2);
    EXPECT_EQ(run({"peerscore", "eval"}), 2);
}

TEST_F(CliTest, FrontierSimWritesRowsAndManifest)
{
    const auto csv = (dir / "f.csv").string();
    ASSERT_EQ(run({"frontier-sim", "--accounts", "100000", "--mean-changes", "50", "--intervals", "10", "--seed", "1", "--csv",
                   csv, "--quiet"}),
              0);
    const auto text = slurp(csv);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 11);
    EXPECT_EQ(text.substr(0, text.find('\n')), "interval,changes,expected_delta,cells,full_bytes,iblt_bytes,retried,recovered");
    ASSERT_TRUE(fs::exists(csv + ".manifest.json"));
    const auto m = RunManifest::from_json(slurp(csv + ".manifest.json"));
    EXPECT_EQ(m.subcommand, std::vector<std::string>{"frontier-sim"});
    EXPECT_EQ(m.params.at("accounts"), "100000");
    EXPECT_EQ(m.params.at("sizing"), "exact");
}

TEST_F(CliTest, ReplayIsByteIdentical)
{
    const auto csv = (dir / "o.csv").string();
    ASSERT_EQ(run({"--seed", "5", "ordering-sim", "--n", "50", "--trials", "5", "--csv", csv}), 0);
    const auto again = (dir / "o2.csv").string();
    ASSERT_EQ(run({"replay", "--manifest", csv + ".manifest.json", "--csv", again}), 0);
    EXPECT_EQ(slurp(csv), slurp(again));
    const auto m = RunManifest::from_json(slurp(again + ".manifest.json"));
    EXPECT_EQ(m.seed, 5U);
}

TEST_F(CliTest, SweepWritesMetaSidecar)
{
    const auto csv = (dir / "s.csv").string();
    ASSERT_EQ(run({"sweep", "--n", "50", "--mempool", "500", "--overlap", "0.9:1.0:0.1", "--trials", "2", "--csv", csv,
                   "--quiet"}),
              0);
    const auto text = slurp(csv);
    EXPECT_EQ(text.substr(0, text.find('\n')), "overlap,graphene_bytes,compact_bytes,xthin_bytes,missing_tx_count,retries,success_rate");
    EXPECT_TRUE(fs::exists(csv + ".meta.json"));
    EXPECT_NE(slurp(csv + ".meta.json").find("xthin_bloom_fpr"), std::string::npos);
}

TEST_F(CliTest, PeerscoreEval)
{
    std::string out;
    EXPECT_EQ(run({"peerscore", "eval", "--json", std::string(BLOCKRECON_TEST_DATA) + "/peerscore_golden.json"}, &out), 0);
    EXPECT_NE(out.find("name,op,field,computed,expected,match"), std::string::npos);

    const auto bad = (dir / "bad.json").string();
    std::ofstream(bad) << R"([{"name":"x","op":"get_ttl","inputs":{"rtt":5,"rtt_conf":1},"expected":16}])";
    std::string err;
    EXPECT_EQ(run({"peerscore", "eval", "--json", bad}, nullptr, &err), 1);
    EXPECT_NE(err.find("mismatch"), std::string::npos);
}

TEST_F(CliTest, CsvToStdoutWithoutManifest)
{
    std::string out;
    ASSERT_EQ(run({"filter-bench", "--filter", "bloom", "--n", "200", "--ratios", "8", "--probes", "1000"}, &out), 0);
    EXPECT_EQ(out.substr(0, 9), "m_over_n,");
    EXPECT_TRUE(fs::is_empty(dir));
}
