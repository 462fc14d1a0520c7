#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sg/cli.hpp"
#include "sg/ginibre.hpp"
#include "sg/rational.hpp"

using nlohmann::json;

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = sg::run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("average of a pinned partition, default settings") {
  CliResult r = run({"avg", "--partition", "2,2", "--dim", "3"});
  CHECK(r.code == sg::kExitOk);
  CHECK(r.out ==
        "<sigma_[2,2]>_3 = 6\n"
        "routes: closed, pfaffian (embedding 6); agree\n");
  CHECK(r.err.empty());
}

TEST_CASE("average with an odd part is zero on both routes") {
  CliResult r = run({"avg", "--partition", "3", "--dim", "4"});
  CHECK(r.code == sg::kExitOk);
  CHECK(r.out ==
        "<sigma_[3]>_4 = 0\n"
        "routes: closed, pfaffian (embedding 8); agree\n");
}

TEST_CASE("average of a too-long partition is zero by convention") {
  CliResult r = run({"avg", "--partition", "2,2,2", "--dim", "2"});
  CHECK(r.code == sg::kExitOk);
  CHECK(r.out ==
        "<sigma_[2,2,2]>_2 = 0\n"
        "routes: closed; agree\n"
        "note: partition longer than dimension; zero by convention\n");
}

TEST_CASE("average as json with a single method") {
  CliResult r = run({"avg", "--partition", "2", "--dim", "3", "--method",
                     "pfaffian", "--output", "json"});
  CHECK(r.code == sg::kExitOk);
  json j = json::parse(r.out);
  CHECK(j["command"] == "avg");
  CHECK(j["partition"] == "2");
  CHECK(j["dim"] == 3);
  CHECK(j["method"] == "pfaffian");
  CHECK(j["value"] == "3");
  CHECK(j["routes"] == json::array({"pfaffian"}));
  CHECK(j["routes_agree"] == true);
  CHECK(j["embed_dim"] == 6);

  CliResult c = run({"avg", "--partition", "2", "--dim", "3", "--method",
                     "closed", "--output", "json"});
  json jc = json::parse(c.out);
  CHECK(jc["routes"] == json::array({"closed"}));
  CHECK(jc.find("embed_dim") == jc.end());
}

TEST_CASE("average as csv") {
  CliResult r = run(
      {"avg", "--partition", "4", "--dim", "2", "--output", "csv"});
  CHECK(r.code == sg::kExitOk);
  CHECK(r.out ==
        "partition,dim,method,value\n"
        "\"4\",2,both,8\n");
}

TEST_CASE("average accepts an explicit larger embedding") {
  CliResult r = run({"avg", "--partition", "2,2", "--dim", "3", "--embed-dim",
                     "12"});
  CHECK(r.code == sg::kExitOk);
  CHECK(r.out ==
        "<sigma_[2,2]>_3 = 6\n"
        "routes: closed, pfaffian (embedding 12); agree\n");

  CliResult odd = run({"avg", "--partition", "2,2", "--dim", "3",
                       "--embed-dim", "7"});
  CHECK(odd.code == sg::kExitUsage);
  CHECK(odd.err.find("error:") != std::string::npos);

  CliResult small = run({"avg", "--partition", "2,2", "--dim", "3",
                         "--embed-dim", "4"});
  CHECK(small.code == sg::kExitUsage);
}

TEST_CASE("average rejects malformed input") {
  CHECK(run({"avg", "--partition", "2,x", "--dim", "3"}).code ==
        sg::kExitUsage);
  CHECK(run({"avg", "--partition", "1,2", "--dim", "3"}).code ==
        sg::kExitUsage);
  CHECK(run({"avg", "--partition", "2", "--dim", "0"}).code == sg::kExitUsage);
  CHECK(run({"avg", "--partition", "2"}).code == sg::kExitUsage);
  CHECK(run({"avg", "--partition", "2", "--dim", "3", "--method", "magic"})
            .code == sg::kExitUsage);
}

TEST_CASE("weight-four table at dimension two, frozen bytes") {
  CliResult r = run({"table", "--max-weight", "4", "--dim", "2"});
  CHECK(r.code == sg::kExitOk);
  CHECK(r.out ==
        "partition,weight,dim,value\n"
        "\"4\",4,2,8\n"
        "\"3,1\",4,2,0\n"
        "\"3\",3,2,0\n"
        "\"2,2\",4,2,2\n"
        "\"2,1\",3,2,0\n"
        "\"2\",2,2,2\n"
        "\"1,1\",2,2,0\n"
        "\"1\",1,2,0\n"
        "\"0\",0,2,1\n");

  CliResult again = run({"table", "--max-weight", "4", "--dim", "2"});
  CHECK(again.out == r.out);
}

TEST_CASE("table with route cross-checking and zero weight") {
  CliResult r = run({"table", "--max-weight", "6", "--dim", "3", "--method",
                     "both"});
  CHECK(r.code == sg::kExitOk);

  CliResult zero = run({"table", "--max-weight", "0", "--dim", "3"});
  CHECK(zero.code == sg::kExitOk);
  CHECK(zero.out ==
        "partition,weight,dim,value\n"
        "\"0\",0,3,1\n");

  CHECK(run({"table", "--max-weight", "41", "--dim", "2"}).code ==
        sg::kExitUsage);
}

TEST_CASE("table as json carries the enumeration metadata") {
  CliResult r = run({"table", "--max-weight", "2", "--dim", "2", "--output",
                     "json"});
  CHECK(r.code == sg::kExitOk);
  json j = json::parse(r.out);
  CHECK(j["command"] == "table");
  CHECK(j["max_length"] == 2);
  CHECK(j["max_part"] == 2);
  REQUIRE(j["rows"].size() == 4);  // 2; 1,1; 1; 0
  CHECK(j["rows"][0]["partition"] == "2");
  CHECK(j["rows"][0]["value"] == "2");
  CHECK(j["rows"][3]["partition"] == "0");
  CHECK(j["rows"][3]["value"] == "1");
}

TEST_CASE("hook expansion of a trace power, frozen text") {
  CliResult r = run({"expand", "--power-sum", "4", "--dim", "3"});
  CHECK(r.code == sg::kExitOk);
  CHECK(r.out ==
        "trace power 4 as signed hook averages at dim 3:\n"
        " +1 * <sigma_[4]> = 15\n"
        " -1 * <sigma_[3,1]> = 0\n"
        " +1 * <sigma_[2,1,1]> = 0\n"
        " -1 * <sigma_[1,1,1,1]> = 0\n"
        "sum = 15\n");
}

TEST_CASE("odd trace powers expand to all-zero hooks") {
  CliResult r = run({"expand", "--power-sum", "3", "--dim", "3"});
  CHECK(r.code == sg::kExitOk);
  CHECK(r.out ==
        "trace power 3 as signed hook averages at dim 3:\n"
        " +1 * <sigma_[3]> = 0\n"
        " -1 * <sigma_[2,1]> = 0\n"
        " +1 * <sigma_[1,1,1]> = 0\n"
        "sum = 0\n");
}

TEST_CASE("pair polynomial expansion, frozen text") {
  CliResult r = run({"expand", "--charpoly", "2", "--dim", "2"});
  CHECK(r.code == sg::kExitOk);
  CHECK(r.out == "1 + 2*(x1x2) + 2*(x1x2)^2\n");

  CliResult r3 = run({"expand", "--charpoly", "2", "--dim", "3"});
  CHECK(r3.out == "1 + 3*(x1x2) + 6*(x1x2)^2 + 6*(x1x2)^3\n");
}

TEST_CASE("point evaluation of determinant products") {
  CliResult r = run({"expand", "--charpoly", "2", "--points", "0.3,-0.2",
                     "--dim", "3", "--output", "json"});
  CHECK(r.code == sg::kExitOk);
  json j = json::parse(r.out);
  CHECK(j["value"] == "52519/62500");
  CHECK(j["value_approx"] == doctest::Approx(0.840304));

  std::vector<sg::Rational> xs = {sg::Rational(3, 10), sg::Rational(-1, 5),
                                  sg::Rational(1, 10)};
  CliResult r3 = run({"expand", "--charpoly", "3", "--points", "0.3,-0.2,0.1",
                      "--dim", "2", "--output", "json"});
  CHECK(r3.code == sg::kExitOk);
  json j3 = json::parse(r3.out);
  CHECK(j3["value"] ==
        sg::to_decimal_string(sg::charpoly_product_average(xs, 2)));

  CliResult frac = run({"expand", "--charpoly", "2", "--points", "1/2,1/2",
                        "--dim", "2", "--output", "json"});
  json jf = json::parse(frac.out);
  CHECK(jf["value"] == "13/8");
}

TEST_CASE("expansion mode validation") {
  CHECK(run({"expand", "--charpoly", "3", "--dim", "2"}).code ==
        sg::kExitUsage);
  CHECK(run({"expand", "--dim", "2"}).code == sg::kExitUsage);
  CHECK(run({"expand", "--power-sum", "2", "--charpoly", "2", "--dim", "2"})
            .code == sg::kExitUsage);
  CHECK(run({"expand", "--charpoly", "2", "--points", "0.1", "--dim", "2"})
            .code == sg::kExitUsage);
  CHECK(run({"expand", "--charpoly", "2", "--points", "0.1,zz", "--dim", "2"})
            .code == sg::kExitUsage);
}

TEST_CASE("pfaffians of the tridiagonal family from the command line") {
  CliResult r4 = run({"pfaffian", "--epsilon", "4"});
  CHECK(r4.code == sg::kExitOk);
  CHECK(r4.out == "pfaffian of the tridiagonal matrix, dim 4: 1\n");

  CliResult r2 = run({"pfaffian", "--epsilon", "2"});
  CHECK(r2.out == "pfaffian of the tridiagonal matrix, dim 2: -1\n");

  CHECK(run({"pfaffian", "--epsilon", "3"}).code == sg::kExitUsage);
}

TEST_CASE("staircase sub-pfaffians agree with both predictors") {
  CliResult r = run(
      {"pfaffian", "--epsilon-inverse", "6", "--rows", "1,2,5,6"});
  CHECK(r.code == sg::kExitOk);
  CHECK(r.out ==
        "sub-pfaffian of the staircase inverse, dim 6, rows 1 2 5 6: 1\n"
        "consecutive-pair prediction: 1\n"
        "generating-polynomial coefficient: 1\n"
        "agree: yes\n");

  CliResult zero = run({"pfaffian", "--epsilon-inverse", "6", "--rows", "2,3"});
  CHECK(zero.code == sg::kExitOk);
  CHECK(zero.out.find("rows 2 3: 0\n") != std::string::npos);
  CHECK(zero.out.find("agree: yes") != std::string::npos);

  CliResult full = run({"pfaffian", "--epsilon-inverse", "4", "--output",
                        "json"});
  CHECK(full.code == sg::kExitOk);
  json j = json::parse(full.out);
  CHECK(j["pfaffian"] == "1");
  CHECK(j["predicted_sign"] == 1);
  CHECK(j["generating_coefficient"] == 1);
  CHECK(j["agree"] == true);

  CHECK(run({"pfaffian", "--epsilon-inverse", "6", "--rows", "3,2"}).code ==
        sg::kExitUsage);
  CHECK(run({"pfaffian", "--epsilon-inverse", "6", "--rows", "1,7"}).code ==
        sg::kExitUsage);
}

TEST_CASE("moment-matrix pfaffian cross-check from the command line") {
  CliResult r = run({"pfaffian", "--matrix-a", "4", "--output", "json"});
  CHECK(r.code == sg::kExitOk);
  json j = json::parse(r.out);
  CHECK(j["relative_error"].get<double>() < 1e-9);
  CHECK(j["exact_form"] == "16 * pi");
  CHECK(j["exact_value"].get<double>() == doctest::Approx(16.0 * 3.14159265358979));
}

TEST_CASE("pfaffian subcommand needs exactly one mode") {
  CHECK(run({"pfaffian"}).code == sg::kExitUsage);
  CHECK(run({"pfaffian", "--epsilon", "2", "--matrix-a", "4"}).code ==
        sg::kExitUsage);
}

TEST_CASE("verification run on a filtered statistic") {
  CliResult r = run({"mc-verify", "--samples", "400", "--seed", "3", "--stats",
                     "schur[2] N=2"});
  CHECK(r.code == sg::kExitOk);
  json j = json::parse(r.out);
  CHECK(j["command"] == "mc-verify");
  CHECK(j["samples"] == 400);
  CHECK(j["all_pass"] == true);
  REQUIRE(j["statistics"].size() == 1);
  const json& s = j["statistics"][0];
  CHECK(s["id"] == "schur[2] N=2");
  CHECK(s["target"] == "2");
  CHECK(s["pass"] == true);
  CHECK(s["n_samples"] == 400);
  CHECK(s.contains("imag_mean"));
  CHECK(s.contains("rejected"));
  CHECK(std::abs(s["z_score"].get<double>()) < 5.0);
}

TEST_CASE("verification catches an injected target error") {
  CliResult r = run({"mc-verify", "--samples", "300", "--seed", "5", "--stats",
                     "trace^2 N=2", "--inject-error"});
  CHECK(r.code == sg::kExitStatisticalFailure);
  json j = json::parse(r.out);
  CHECK(j["injected_error"] == true);
  CHECK(j["all_pass"] == false);
  CHECK(j["statistics"][0]["target"] == "12");
  CHECK(j["statistics"][0]["pass"] == false);
  CHECK(r.err.find("statistical verification failed") != std::string::npos);
}

TEST_CASE("the full verification matrix passes at a modest sample count") {
  CliResult r = run({"mc-verify", "--samples", "2000", "--seed", "42"});
  CHECK(r.code == sg::kExitOk);
  json j = json::parse(r.out);
  CHECK(j["all_pass"] == true);
  CHECK(j["statistics"].size() == 3 * 7 + 3 * 4 + 2);
  CHECK(j["max_abs_z"].get<double>() < 5.0);
}

TEST_CASE("verification input validation") {
  CHECK(run({"mc-verify", "--samples", "10"}).code == sg::kExitUsage);
  CHECK(run({"mc-verify", "--samples", "200", "--output", "csv"}).code ==
        sg::kExitUsage);
  CHECK(run({"mc-verify", "--samples", "200", "--stats", "nothing-matches"})
            .code == sg::kExitUsage);
}

TEST_CASE("verification text report carries a summary line") {
  CliResult r = run({"mc-verify", "--samples", "400", "--seed", "3", "--stats",
                     "trace^2 N=4", "--output", "text"});
  CHECK(r.code == sg::kExitOk);
  CHECK(r.out.find("[ ok ] trace^2 N=4") != std::string::npos);
  CHECK(r.out.find("summary: 1/1 pass") != std::string::npos);
  CHECK(r.out.find("seed 3") != std::string::npos);
}

TEST_CASE("density check from the command line") {
  CliResult r = run({"density", "--dim", "2", "--samples", "3000", "--seed",
                     "11"});
  CHECK(r.code == sg::kExitOk);
  json j = json::parse(r.out);
  CHECK(j["command"] == "density");
  CHECK(j["dim"] == 2);
  CHECK(j["pass"] == true);
  CHECK(j["max_abs_z"].get<double>() < 5.0);
  CHECK(j["upper_half"].contains("observed"));
  CHECK(j["bins"].is_array());

  CliResult again = run({"density", "--dim", "2", "--samples", "3000",
                         "--seed", "11"});
  CHECK(again.out == r.out);
}

TEST_CASE("density input validation") {
  CHECK(run({"density", "--dim", "1", "--samples", "500"}).code ==
        sg::kExitUsage);
  CHECK(run({"density", "--dim", "2", "--samples", "50"}).code ==
        sg::kExitUsage);
  CHECK(run({"density", "--dim", "2", "--samples", "500", "--output", "csv"})
            .code == sg::kExitUsage);
  CHECK(run({"density", "--dim", "2", "--samples", "500", "--band", "9"})
            .code == sg::kExitUsage);
}

TEST_CASE("reports can be routed to a file") {
  const std::string path = "cli_report_scratch.txt";
  CliResult direct = run({"avg", "--partition", "4,2", "--dim", "3"});
  CliResult filed =
      run({"avg", "--partition", "4,2", "--dim", "3", "--out", path});
  CHECK(filed.code == sg::kExitOk);
  CHECK(filed.out.empty());
  std::ifstream in(path, std::ios::binary);
  std::stringstream content;
  content << in.rdbuf();
  CHECK(content.str() == direct.out);
  std::remove(path.c_str());

  CliResult bad = run({"avg", "--partition", "2", "--dim", "2", "--out",
                       "no-such-dir/report.txt"});
  CHECK(bad.code == sg::kExitUsage);
  CHECK(bad.err.find("cannot open") != std::string::npos);
}

TEST_CASE("help and subcommand requirements") {
  CliResult help = run({"--help"});
  CHECK(help.code == sg::kExitOk);
  CHECK(help.out.find("avg") != std::string::npos);
  CHECK(help.out.find("mc-verify") != std::string::npos);

  CliResult sub_help = run({"avg", "--help"});
  CHECK(sub_help.code == sg::kExitOk);
  CHECK(sub_help.out.find("--partition") != std::string::npos);

  CHECK(run({}).code == sg::kExitUsage);
  CHECK(run({"bogus"}).code == sg::kExitUsage);
}
