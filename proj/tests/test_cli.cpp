#include <gtest/gtest.h>

#include <filesystem>

#include "fthresh/cli/execute.hpp"

using namespace fthresh;
using namespace fthresh::cli;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "fthresh");
  Run r;
  r.code = run(args, r.out, r.err);
  return r;
}

json run_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  auto r = run_cli(args);
  EXPECT_EQ(r.code, 0) << r.err;
  return json::parse(r.out);
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("fthresh_test_" + name)).string();
}

std::string data(const std::string& name) { return std::string(FTHRESH_DATA_DIR) + "/" + name; }

}  // namespace

TEST(ParseArgs, FrozenExamples) {
  auto a = parse_args({"fthresh", "nu", "--poly", "x^2+y^3", "--vars", "x,y", "-p", "7", "-e", "3"});
  EXPECT_EQ(a.verb, "nu");
  EXPECT_EQ(a.poly, (std::vector<std::string>{"x^2+y^3"}));
  EXPECT_EQ(a.vars, (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(a.p, std::optional<std::uint32_t>(7));
  EXPECT_EQ(a.e, 3u);

  auto b = parse_args({"fthresh", "sweep", "--poly", "x^2+y^7", "--primes", "3..60", "--exclude", "2,7", "-e", "3"});
  EXPECT_EQ(b.verb, "sweep");
  EXPECT_EQ(b.primes.front(), 3u);
  EXPECT_EQ(b.primes.back(), 59u);
  EXPECT_EQ(b.exclude, (std::vector<std::uint32_t>{2, 7}));

  auto c = parse_args({"fthresh", "fit", "--table", "t.json", "--mod", "20", "--res", "19", "-e", "1"});
  EXPECT_EQ(c.verb, "fit");
  EXPECT_EQ(c.mod, std::optional<std::uint32_t>(20));
  EXPECT_EQ(c.res, std::optional<std::uint32_t>(19));
}

TEST(ParseArgs, IdealListsRespectParentheses) {
  auto a = parse_args({"fthresh", "nu", "--poly", "x", "--ideal", "(x+y)^2, y^3", "-p", "5"});
  EXPECT_EQ(a.ideal, (std::vector<std::string>{"(x+y)^2", "y^3"}));
}

TEST(ParseArgs, UsageErrors) {
  EXPECT_THROW(parse_args({"fthresh", "frobnicate"}), UsageError);
  EXPECT_THROW(parse_args({"fthresh", "nu", "--poly", "x"}), UsageError);
  EXPECT_THROW(parse_args({"fthresh", "nu", "--poly", "x", "-p", "8"}), UsageError);
  EXPECT_THROW(parse_args({"fthresh", "sweep", "--poly", "x", "--primes", "9..3"}), UsageError);
  EXPECT_THROW(parse_args({"fthresh", "fit", "--table", "t.json"}), UsageError);
}

TEST(Execute, NuRows) {
  auto doc = run_json({"nu", "--poly", "x^2+y^3", "-p", "7", "-e", "3"});
  auto rows = doc["tables"]["nu"]["rows"];
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0]["nu"], 5);
  EXPECT_EQ(rows[1]["nu"], 40);
  EXPECT_EQ(rows[2]["nu"], 285);
  EXPECT_EQ(rows[2]["nu_over_q"], "285/343");
  EXPECT_EQ(doc["schema_version"], 1);
  EXPECT_EQ(doc["provenance"]["tool"], "fthresh");
}

TEST(Execute, MonoLct) {
  auto doc = run_json({"mono", "--ideal", "x^2,y^3", "--lct"});
  EXPECT_EQ(doc["tables"]["lct"]["rows"][0]["lct"], "5/6");
  auto hyp = run_json({"mono", "--poly", "x^5+y^4+x^3*y^2", "--jumps", "--nu-lattice", "-p", "11"});
  EXPECT_EQ(hyp["tables"]["jumps"]["rows"].size(), 7u);
  EXPECT_EQ(hyp["tables"]["nu_lattice"]["rows"][0]["nu"], 4);
  auto degenerate = run_json({"mono", "--ideal", "x^2,x*y,y^2", "--nu-lattice", "-p", "5"});
  EXPECT_EQ(degenerate["tables"]["nu_lattice"]["rows"][0]["status"], "not applicable");
}

TEST(Execute, FptTables) {
  auto doc = run_json({"fpt", "--poly", "x^2+y^3", "-p", "7", "-e", "3", "--shift", "up"});
  auto est = doc["tables"]["estimate"]["rows"][0];
  EXPECT_EQ(est["guess"], "5/6");
  EXPECT_EQ(est["status"], "candidate (verified to e=3)");
  EXPECT_EQ(doc["summary"]["defect_status"], "observed");
  EXPECT_EQ(doc["summary"]["shift_holds"], true);
  EXPECT_EQ(doc["tables"]["fedder"]["rows"][0]["nu_is_q_minus_1"], false);
}

TEST(Execute, JumpChain) {
  auto doc = run_json({"jump", "--poly", "x^5+y^4+x^3*y^2", "-p", "13", "-e", "3", "--count", "3"});
  auto chain = doc["tables"]["chain"]["rows"];
  ASSERT_EQ(chain.size(), 3u);
  EXPECT_EQ(chain[2]["J"], "y^2,x*y,x^2");
  bool found = false;
  for (const auto& r : doc["tables"]["nu_i"]["rows"])
    if (r["i"] == 3 && r["e"] == 1) found = r["nu"] == 8;
  EXPECT_TRUE(found);
}

TEST(Execute, SweepFitRoundTrip) {
  auto path = temp_path("cusp.json");
  auto r = run_cli({"sweep", "--poly", "x^2+y^3", "--primes", "5..60", "-e", "2", "--format", "json", "--out", path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  auto doc = run_json({"fit", "--table", path, "--mod", "3", "-e", "1"});
  EXPECT_EQ(doc["summary"]["roots"], json::array({"-7/6", "-5/6"}));
  auto auto_mod = run_json({"fit", "--table", path, "--mod", "auto", "-e", "1"});
  EXPECT_EQ(auto_mod["summary"]["modulus"], 3);
  std::filesystem::remove(path);
}

TEST(Execute, BspCheckFromDataFiles) {
  auto path = temp_path("quadric.tsv");
  auto r = run_cli({"sweep", "--poly", "x1*x2+x3^2", "--primes", "3..20", "-e", "2", "--out", path});
  ASSERT_EQ(r.code, 0) << r.err;
  auto ok = run_cli({"bsp-check", "--table", path, "--b", data("quadric_n3.b")});
  EXPECT_EQ(ok.code, kExitOk) << ok.err;
  auto bad = run_cli({"bsp-check", "--table", path, "--b", "s+2"});
  EXPECT_EQ(bad.code, kExitBspViolation);
  std::filesystem::remove(path);
}

TEST(Execute, BspCheckSweepsWhenNoTable) {
  auto r = run_cli({"bsp-check", "--poly", "x^2+y^3", "--primes", "5..40", "-e", "2", "--b", data("cusp.b")});
  EXPECT_EQ(r.code, kExitOk) << r.err;
}

TEST(ExitCodes, DistinctPerErrorClass) {
  EXPECT_EQ(run_cli({"nu", "--poly", "x^2+y^3", "-p", "4"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"nu", "--poly", "x^2+", "-p", "5"}).code, kExitParse);
  EXPECT_EQ(run_cli({"nu", "--poly", "2*x^2+y^3", "-p", "2"}).code, kExitDomain);
  EXPECT_EQ(run_cli({"nu", "--poly", "x", "--ideal", "y", "-p", "5"}).code, kExitDomain);
  EXPECT_EQ(run_cli({"fit", "--table", temp_path("missing.json"), "--mod", "3"}).code, kExitIo);
  EXPECT_EQ(run_cli({"--help"}).code, kExitOk);
  auto bad = run_cli({"nu", "--poly", "x^2+", "-p", "5"});
  EXPECT_NE(bad.err.find("parse error"), std::string::npos);
}

TEST(Render, StableJsonAndExactRationals) {
  Report rep{"nu"};
  rep.table("nu", {"p", "value"}).add({7, "5/6"});
  rep.table("empty", {"a", "b"});
  auto text = render(rep, "json");
  EXPECT_EQ(text, render(rep, "json"));
  EXPECT_NE(text.find("\"5/6\""), std::string::npos);
  EXPECT_EQ(text.find("0.83"), std::string::npos);
  auto tsv = render(rep, "tsv");
  EXPECT_NE(tsv.find("# empty\na\tb\n"), std::string::npos);
  Report single{"x"};
  single.table("t", {"a", "b"});
  EXPECT_EQ(render(single, "tsv"), "a\tb\n");
}

TEST(LoadTable, AcceptsTsvAndJson) {
  auto path = temp_path("table.tsv");
  write_file(path, "p\te\tq\tJ_label\tnu\tnu_over_q\n7\t1\t7\tm\t5\t5/7\n");
  auto t = load_nu_table(path);
  EXPECT_EQ(t.nu(7, 1), 5u);
  write_file(path, "{\"rows\": [{\"p\": 5, \"e\": 1, \"nu\": 3}]}");
  EXPECT_EQ(load_nu_table(path).nu(5, 1), 3u);
  write_file(path, "{\"rows\": [");
  EXPECT_THROW(load_nu_table(path), std::invalid_argument);
  std::filesystem::remove(path);
}
