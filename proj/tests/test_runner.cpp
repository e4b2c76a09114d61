#include <doctest.h>

#include <cstdio>
#include <fstream>

#include <dynframe/runner.hpp>

using namespace dynframe;
using serialize::Json;

namespace {

Json tn_config() {
  return Json{{"operator", Json{{"kind", "preset"},
                                {"name", "tn"},
                                {"n", 3},
                                {"count", 12},
                                {"sequence", "dyadic"}}},
              {"truncation", Json{{"m", 40}, {"tol", 1e-8}}},
              {"tasks", Json::array({"admissibility"})},
              {"seed", 42}};
}

}  // namespace

TEST_CASE("admissibility task reports the frame index") {
  Json report = runner::run_tasks(tn_config());
  const Json& res = report["tasks"][0]["results"];
  CHECK(res["gamma"] == 3);
  CHECK(res["admits_parseval"] == true);
  CHECK(res["admits_frame"] == true);
}

TEST_CASE("tighten task echoes a Parseval system") {
  Json config;
  config["operator"] = Json{{"kind", "diagonal"},
                            {"entries", Json::array({Json::array({0.9, 0.0}),
                                                     Json::array({0.5, 0.0})})}};
  const double g1 = std::sqrt(0.19);
  const double g2 = std::sqrt(0.75);
  config["generators"] =
      Json::array({Json::array({Json::array({g1, 0.0}), Json::array({0.0, 0.0})}),
                   Json::array({Json::array({0.0, 0.0}), Json::array({g2, 0.0})})});
  config["tasks"] = Json::array({"frame-bounds", "tighten"});
  Json report = runner::run_tasks(config);
  const Json& bounds = report["tasks"][0]["results"];
  CHECK(bounds["is_parseval"] == true);
  const Json& tightened = report["tasks"][1]["results"];
  CHECK(std::abs(tightened["q"][0][0][0].get<double>() - 0.9) <= 1e-9);
  CHECK(std::abs(tightened["q"][1][1][0].get<double>() - 0.5) <= 1e-9);
}

TEST_CASE("inner similarity task on one imaginary zero") {
  Json config;
  config["operator"] = Json{{"kind", "blaschke-model"},
                            {"zeros", Json::array({Json::array({0.0, 0.5})})}};
  config["truncation"] = Json{{"m", 30}, {"tol", 1e-8}};
  config["tasks"] = Json::array({"inner-similarity", "model-space"});
  Json report = runner::run_tasks(config);
  CHECK(report["tasks"][0]["results"]["similar"] == false);
  CHECK(report["tasks"][1]["results"]["dim"] == 1);
}

TEST_CASE("reports are deterministic") {
  Json a = runner::run_tasks(tn_config());
  Json b = runner::run_tasks(tn_config());
  CHECK(a.dump(2) == b.dump(2));
}

TEST_CASE("validation failures carry the invalid-argument code") {
  Json config;
  config["operator"] = Json{{"kind", "nope"}};
  config["tasks"] = Json::array({"admissibility"});
  try {
    (void)runner::run_tasks(config);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("run_file exit codes") {
  const std::string good_path = "/tmp/dynframe_good_config.json";
  const std::string bad_path = "/tmp/dynframe_bad_config.json";
  const std::string out_path = "/tmp/dynframe_report.json";
  {
    std::ofstream good(good_path);
    good << tn_config().dump();
    std::ofstream bad(bad_path);
    bad << "{ not json";
  }
  std::ostringstream err;
  CHECK(runner::run_file(good_path, {}, out_path, err) == 0);
  CHECK(runner::run_file(bad_path, {}, out_path, err) == 2);
  CHECK(runner::run_file("/tmp/definitely_missing.json", {}, out_path, err) == 2);

  // Numerical certificate failures exit with 3: a radius pinned to the
  // borderline band has no finite-dimensional verdict.
  const std::string borderline_path = "/tmp/dynframe_borderline_config.json";
  {
    Json cfg;
    cfg["operator"] = Json{{"kind", "diagonal"},
                           {"entries", Json::array({Json::array({1.0 - 1e-12, 0.0}),
                                                    Json::array({0.5, 0.0})})}};
    cfg["tasks"] = Json::array({"admissibility"});
    std::ofstream f(borderline_path);
    f << cfg.dump();
  }
  CHECK(runner::run_file(borderline_path, {}, out_path, err) == 3);
  std::remove(borderline_path.c_str());
  std::remove(good_path.c_str());
  std::remove(bad_path.c_str());
  std::remove(out_path.c_str());
}

TEST_CASE("csv export writes complex pairs") {
  Json config = tn_config();
  config["tasks"] = Json::array({"parseval-generators"});
  runner::RunOptions opts;
  opts.csv_dir = "/tmp/dynframe_csv_test";
  (void)runner::run_tasks(config, opts);
  std::ifstream csv("/tmp/dynframe_csv_test/task0_parseval_generators.csv");
  REQUIRE(csv.good());
  std::string line;
  std::getline(csv, line);
  CHECK(line.find('"') != std::string::npos);
  CHECK(line.find(',') != std::string::npos);
}

TEST_CASE("optimal-frames and synthesis-kernel tasks") {
  Json config;
  config["operator"] = Json{{"kind", "diagonal"},
                            {"entries", Json::array({Json::array({0.6, 0.0}),
                                                     Json::array({0.3, 0.0})})}};
  config["truncation"] = Json{{"m", 60}, {"tol", 1e-8}};
  config["tasks"] = Json::array({"optimal-frames"});
  Json report = runner::run_tasks(config);
  const Json& res = report["tasks"][0]["results"];
  CHECK(res["generator_count"] == 2);
  CHECK(res["parseval_index"] == 2);
  CHECK(res["parseval_defect_T"].get<double>() <= 1e-6);
  CHECK(res["parseval_defect_T_adjoint"].get<double>() <= 1e-6);

  Json kcfg;
  kcfg["operator"] = Json{{"kind", "blaschke-model"},
                          {"zeros", Json::array({Json::array({0.0, 0.5})})}};
  kcfg["truncation"] = Json{{"m", 60}, {"tol", 1e-8}};
  kcfg["tasks"] = Json::array({"synthesis-kernel", "adjoint-frame"});
  Json krep = runner::run_tasks(kcfg);
  CHECK(krep["tasks"][0]["results"]["principal_angle_sine_vs_rho_span"].get<double>() <= 1e-8);
  CHECK(krep["tasks"][1]["results"]["generator_count"] == 1);
}
