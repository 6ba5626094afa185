#include <gtest/gtest.h>

#include "ukk/error.hpp"
#include "ukk/report_json.hpp"

using nlohmann::json;
using ukk::LatticeVector;
using ukk::NormOracle;

TEST(ReportJson, VectorsRoundTripDenseAndSparse) {
  const LatticeVector x{0, -1.25, 0, 3e-17, 0};
  EXPECT_EQ(ukk::vector_from_json(ukk::vector_json(x)), x);
  const json s = ukk::sparse_vector_json(x);
  EXPECT_EQ(s["dim"], 5);
  EXPECT_EQ(s["nz"].size(), 2u);
  EXPECT_EQ(ukk::vector_from_json(s), x);
  EXPECT_THROW(ukk::vector_from_json(json::parse(R"({"dim":2,"nz":[[2,1.0]]})")), ukk::ConfigError);
  EXPECT_THROW(ukk::vector_from_json(json::array()), ukk::ConfigError);
}

TEST(ReportJson, RenormRecord) {
  const auto r = ukk::renorm_exact(NormOracle::lq(1, 2), 2, LatticeVector{1, 1});
  const json j = ukk::renorm_json(r);
  EXPECT_EQ(j["schema_version"], ukk::kSchemaVersion);
  EXPECT_EQ(j["method"], "exact");
  EXPECT_EQ(j["value"], 2.0);
  EXPECT_EQ(j["witness"], json::parse("[[0,1]]"));
  EXPECT_EQ(j["base_norm"], "Lq(1)");
}

TEST(ReportJson, TrialRecordReplays) {
  const auto n = NormOracle::lq(2, 5);
  const auto seq = ukk::generate_bump_sequence(n, 2, LatticeVector{0.8}, 0.6, 4, 5);
  const auto t = ukk::run_ukk_trial(n, 2, seq, LatticeVector{0.8, 0, 0, 0, 0}, 3);
  const json j = ukk::trial_json(t);
  for (const char* key : {"seed", "epsilon_measured", "delta_bound", "limit_renorm", "pass", "status", "p",
                          "sequence", "declared_limit", "horizon", "tol"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  std::vector<LatticeVector> replay;
  for (const auto& e : j["sequence"]) replay.push_back(ukk::vector_from_json(e));
  const auto again = ukk::run_ukk_trial(n, j["p"].get<double>(), replay,
                                        ukk::vector_from_json(j["declared_limit"]), j["seed"].get<std::uint64_t>());
  EXPECT_EQ(ukk::trial_json(again).dump(), j.dump());
  EXPECT_FALSE(ukk::trial_json(t, false).contains("sequence"));
}

TEST(ReportJson, CsvRow) {
  ukk::UkkTrial t;
  t.index = 4;
  t.seed = 9;
  t.epsilon_measured = 0.5;
  t.delta_bound = 0.25;
  t.limit_renorm = 0.1;
  t.status = ukk::TrialStatus::Pass;
  t.pass = true;
  EXPECT_EQ(ukk::trial_csv_row(t), "4,9,0.5,0.25,0.1,pass,true");
  EXPECT_EQ(ukk::format_double(ukk::kInfinity), "inf");
  EXPECT_EQ(ukk::format_double(0.1 + 0.2), "0.30000000000000004");
}

TEST(ReportJson, EstimateFields) {
  ukk::EstimateOptions o;
  o.budget = 20;
  o.seed = 3;
  o.verify_trials = 20;
  o.lower_p_budget = 5;
  const auto n = NormOracle::lq(2, 4);
  const json j = ukk::estimate_json(ukk::run_estimate_pipeline(n, o), n);
  for (const char* key : {"c_hat", "c_hat_witness", "p_derived", "kr_table", "lower_p_constant", "budget_used", "seed",
                          "schema_version", "status"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["c_hat_witness"].size(), 2u);
  EXPECT_EQ(j["c_hat_witness"][0].size(), 4u);
}
