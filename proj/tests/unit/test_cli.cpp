#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "polyescape/cli.hpp"
#include "polyescape/io.hpp"
#include "support.hpp"

using namespace polyescape;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "polyescape");
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("polyescape_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

const char* kGrowth =
    R"({"dimension":1,"dynamics":{"A":[["1"]],"a":["0"]},"polytope":{"strict":{"B":[],"b":[]},"nonstrict":{"B":[["1"]],"b":["1"]}}})";

Json strip_timings(Json j) {
  j.erase("timings");
  return j;
}

}  // namespace

TEST(Cli, DecideGrowth) {
  auto in = write_temp("growth.json", kGrowth);
  auto r = run({"decide", "--input", in, "--quiet"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto doc = Json::parse(r.out);
  EXPECT_EQ(doc["verdict"], "trapped-exists");
  EXPECT_EQ(doc["witness"]["point"][0], "1");
  EXPECT_EQ(doc["witness"]["decimal"][0], "1.000000000000");
  EXPECT_TRUE(r.err.empty());
}

TEST(Cli, Reproducible) {
  auto in = write_temp("growth.json", kGrowth);
  auto a = run({"decide", in, "--certificate", "-q"});
  auto b = run({"decide", in, "--certificate", "-q"});
  EXPECT_EQ(strip_timings(Json::parse(a.out)), strip_timings(Json::parse(b.out)));
}

TEST(Cli, BadRational) {
  std::string text = kGrowth;
  text.replace(text.find(R"([["1"]],"b")"), 7, R"([["1/0"])");
  auto r = run({"decide", "--input", write_temp("bad.json", text)});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(run({"decide", "--input", write_temp("junk.json", "{not json")}).code, 2);
  EXPECT_EQ(run({"decide", "--input", "/nonexistent/file.json"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
}

TEST(Cli, ResourceLimit) {
  auto inst = nonstrict(M({{1, 0}, {0, -1}}), M({{1, 0}, {0, 1}}), V({1, 0}));
  auto in = write_temp("saddle.json", instance_to_json(inst).dump());
  auto r = run({"decide", "--input", in, "--max-branches", "1", "-q"});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(Json::parse(r.out)["verdict"], "resource-limit");
  EXPECT_EQ(run({"decide", "--input", in, "-q"}).code, 0);
}

TEST(Cli, Spectrum) {
  auto in = write_temp("rot.json", R"({"A":[["0","1"],["-1","0"]]})");
  auto r = run({"spectrum", "--input", in});
  ASSERT_EQ(r.code, 0) << r.err;
  auto doc = Json::parse(r.out);
  ASSERT_EQ(doc["eigenvalues"].size(), 2u);
  for (const auto& e : doc["eigenvalues"]) {
    EXPECT_EQ(e["real"], false);
    EXPECT_EQ(e["index"], 1);
  }
}

TEST(Cli, CheckWitness) {
  auto in = write_temp("growth.json", kGrowth);
  auto wfile = std::filesystem::temp_directory_path() / "polyescape_test_w.json";
  ASSERT_EQ(run({"decide", in, "--witness", wfile.string(), "-q"}).code, 0);
  EXPECT_EQ(run({"check-witness", in, "--witness", wfile.string(), "-q"}).code, 0);
  auto bad = write_temp("w_bad.json", R"({"point":["-1"]})");
  EXPECT_EQ(run({"check-witness", in, "--witness", bad, "-q"}).code, 1);
}

TEST(Cli, SimulateConstant) {
  auto in = write_temp("zero.json",
                       R"({"dimension":2,"dynamics":{"A":[["0","0"],["0","0"]]},"polytope":{"nonstrict":{"B":[["1","0"]],"b":["0"]}}})");
  auto r = run({"simulate", in, "--x0", "3,1/2", "--horizon", "2", "--samples", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "t,x1,x2");
  int n = 0;
  while (std::getline(lines, line)) {
    EXPECT_NE(line.find(",3,0.5"), std::string::npos) << line;
    ++n;
  }
  EXPECT_EQ(n, 5);
}

TEST(Io, RoundTrip) {
  EscapeInstance a = parse_instance_text(
      R"({"dimension":2,"dynamics":{"A":[["0","1/3"],["-1","0"]],"a":["1","2/7"]},"polytope":{"strict":{"B":[["1","0"]],"b":["-5/2"]},"nonstrict":{"B":[],"b":[]}}})");
  Json j = instance_to_json(a);
  EscapeInstance b = parse_instance(j);
  EXPECT_EQ(instance_to_json(b), j);
  EXPECT_EQ(b.A, a.A);
  EXPECT_EQ(b.a, a.a);
  EXPECT_EQ(b.strict_b, a.strict_b);
  EXPECT_THROW(parse_instance_text(R"({"dimension":2,"dynamics":{"A":[["1"]]}})"), std::invalid_argument);
}

TEST(Io, AlgebraicCoordinates) {
  auto s2 = isolate_roots(P({-2, 0, 1})).back();
  Json j = coordinate_to_json(s2);
  EXPECT_TRUE(j.is_object());
  EXPECT_EQ(coordinate_from_json(j), s2);
  EXPECT_EQ(decimal(s2), "1.414213562373");
  EXPECT_EQ(coordinate_to_json(AlgebraicNumber(Q("-3/4"))), "-3/4");
}
