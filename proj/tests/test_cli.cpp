#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ellsurf/catalog.hpp"
#include "ellsurf/cli.hpp"
#include "ellsurf/report_json.hpp"

using namespace ellsurf;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("ellsurf_test_" + name + ".conf");
  std::ofstream(path, std::ios::binary) << text;
  return path.string();
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("verify exit codes") {
  const Run ok = cli({"verify", "--fixture", "x3_plus_t_f5"});
  CHECK(ok.code == kExitOk);
  CHECK(contains(ok.out, "result: PASS"));

  const Run mutated = cli({"verify", "--fixture", "x3_plus_t_f5", "--mutate", "c_v:inf:+1"});
  CHECK(mutated.code == kExitCheckFailed);
  CHECK(contains(mutated.out, "result: FAIL"));

  // report prints the failing checks but still succeeds
  const Run report = cli({"report", "--fixture", "x3_plus_t_f5", "--mutate", "c_v:inf:1"});
  CHECK(report.code == kExitOk);
  CHECK(Json::parse(report.out)["failed"] == true);
}

TEST_CASE("report output matches the catalog digest and ignores the thread count") {
  const Run one = cli({"report", "--fixture", "x3_plus_t_f5"});
  const Run four = cli({"report", "--fixture", "x3_plus_t_f5", "--threads", "4"});
  REQUIRE(one.code == kExitOk);
  CHECK(one.out == four.out);
  CHECK(sha256_hex(one.out) == catalog_entry("x3_plus_t_f5").digest);
  const Run verify_json = cli({"verify", "--fixture", "x3_plus_t_f5", "--json"});
  CHECK(verify_json.out == one.out);
}

TEST_CASE("config errors exit 2 and name the line") {
  const Run bad_p = cli({"verify", write_temp("p4", "[field]\np = 4\n\n[model]\na6 = [0, 1]\n")});
  CHECK(bad_p.code == kExitParse);
  CHECK(contains(bad_p.err, "line 2"));

  const Run unknown = cli({"analyze", write_temp("unknown", "[field]\np = 5\n\n[model]\na5 = [0, 1]\n")});
  CHECK(unknown.code == kExitParse);
  CHECK(contains(unknown.err, "line 5"));
  CHECK(contains(unknown.err, "model.a5"));

  const Run section = cli({"analyze", write_temp("section", "[field]\np = 5\n[curve]\n")});
  CHECK(section.code == kExitParse);
  CHECK(contains(section.err, "line 3"));

  const Run dup = cli({"analyze", write_temp("dup", "[field]\np = 5\np = 7\n")});
  CHECK(dup.code == kExitParse);
  CHECK(contains(dup.err, "line 3"));

  const Run modulus = cli({"analyze", write_temp("modulus", "[field]\np = 5\nmodulus = [1, 0, 1]\n[model]\na6 = [0, 1]\n")});
  CHECK(modulus.code == kExitParse);
  CHECK(contains(modulus.err, "line 3"));

  CHECK(cli({"analyze", "/nonexistent/ellsurf.conf"}).code == kExitParse);
  CHECK(cli({"analyze", "--fixture", "no_such_fixture"}).code == kExitParse);
  CHECK(cli({"analyze"}).code == kExitParse);
  CHECK(cli({"frobnicate"}).code == kExitParse);
  CHECK(cli({"verify", "--fixture", "x3_plus_t_f5", "--threads", "0"}).code == kExitParse);
  CHECK(cli({"verify", "--fixture", "x3_plus_t_f5", "--mutate", "b_v:inf:1"}).code == kExitParse);
  CHECK(cli({"verify", "--fixture", "x3_plus_t_f5", "--mutate", "c_v:[1, 1:1"}).code == kExitParse);
}

TEST_CASE("unsupported surfaces exit 3") {
  const Run small = cli({"analyze", write_temp("p3", "[field]\np = 3\n[model]\na6 = [0, 1]\n")});
  CHECK(small.code == kExitUnsupported);
  const Run constant = cli({"analyze", write_temp("constant", "[field]\np = 5\n[model]\na6 = [1]\n")});
  CHECK(constant.code == kExitUnsupported);
  const Run singular = cli({"analyze", write_temp("singular", "[field]\np = 5\n[model]\na4 = []\n")});
  CHECK(singular.code == kExitUnsupported);
  const Run truncated = cli({"verify", "--fixture", "x3_plus_t_f5", "--nmax", "8"});
  CHECK(truncated.code == kExitUnsupported);
}

TEST_CASE("exit code classes") {
  CHECK(exit_code_for(ErrorKind::ParseError) == kExitParse);
  CHECK(exit_code_for(ErrorKind::UnknownKey) == kExitParse);
  CHECK(exit_code_for(ErrorKind::BadField) == kExitParse);
  CHECK(exit_code_for(ErrorKind::CharTooSmall) == kExitUnsupported);
  CHECK(exit_code_for(ErrorKind::EulerNotTwelveDivisible) == kExitUnsupported);
  CHECK(exit_code_for(ErrorKind::PlaceBudgetExceeded) == kExitUnsupported);
  CHECK(exit_code_for(ErrorKind::InsufficientCounts) == kExitUnsupported);
}

TEST_CASE("configs round-trip through their canonical text") {
  for (const auto& e : catalog()) {
    CAPTURE(e.name);
    const Config c = parse_config(e.config_text);
    CHECK(parse_config(format_config(c)) == c);
  }
  const std::string ext = "# F_25 = F_5[x]/(x^2 + 2)\nformat = 1\n[field]\np = 5\nmodulus = [2, 0, 1]\n[model]\na6 = [0, [0, 1]]\n"
                          "[limits]\nn_max = 3\nplace_degree_cap = 4\nsurplus_margin = 0\n";
  const Config c = parse_config(ext);
  CHECK(c.modulus == std::vector<long long>{2, 0, 1});
  CHECK(c.limits.surplus_margin == 0);
  CHECK(parse_config(format_config(c)) == c);
  CHECK(build_model(c).ctx.q() == 25);
  const Run analyze = cli({"analyze", "--json", write_temp("ext", ext)});
  CHECK(analyze.code == kExitOk);
  CHECK(!Json::parse(analyze.out)["fibers"].empty());
}

TEST_CASE("catalog and analyze output") {
  const Run text = cli({"catalog"});
  CHECK(text.code == kExitOk);
  for (const auto& e : catalog()) CHECK(contains(text.out, e.name));
  const Json j = Json::parse(cli({"catalog", "--json"}).out);
  CHECK(j.size() == catalog().size());
  CHECK(j[0]["expected"]["digest"] == catalog().front().digest);

  const Run analyze = cli({"analyze", "--fixture", "legendre_f5"});
  CHECK(analyze.code == kExitOk);
  CHECK(contains(analyze.out, "I2*"));
  CHECK(contains(analyze.out, "chi = 1"));
}

TEST_CASE("mutation specs") {
  const FieldCtx ctx = FieldCtx::prime(5);
  const Mutation a = parse_mutation(ctx, "r_i:[1, 1]:-1:2");
  CHECK(a.field == MutationField::OrbitSize);
  CHECK(a.place == Place::finite(fq::from_ints(ctx, {1, 1})));
  CHECK(a.delta == -1);
  CHECK(a.component == 2);
  const Mutation b = parse_mutation(ctx, "remove:inf:0");
  CHECK(b.place.infinite);
  CHECK_THROWS_AS(parse_mutation(ctx, "c_v:inf"), Error);
  CHECK_THROWS_AS(parse_mutation(ctx, "c_v:[0, 0, 1]:1"), Error);
}
