#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "powerdeform_tools/cli.hpp"

using namespace powerdeform::tools;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "powerdeform");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("deform prints coefficients") {
  const Run a = run({"deform", "--family", "koebe", "--c", "0.5", "--order", "8", "--print-coeffs"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == "0,1,1,1,1,1,1,1,1\n");
  const Run b = run({"deform", "--family", "koebe", "--c", "0", "--order", "4"});
  CHECK(b.out == "0,1,0,0,0\n");
  const Run c = run({"deform", "--family", "koebe", "--c", "0.5i", "--order", "2"});
  CHECK(c.out == "0,1,1i\n");
}

TEST_CASE("obstruction verbs and exit codes") {
  const Run g = run({"grunsky", "--family", "koebe", "--c", "1.2", "--size", "40"});
  CHECK(g.code == kExitNonunivalent);
  CHECK(g.out.find("norm ") == 0);
  CHECK(g.out.find("certified-nonunivalent grunsky") != std::string::npos);
  CHECK(run({"grunsky", "--family", "koebe", "--c", "0.5"}).code == kExitOk);

  const Run p = run({"prawitz", "--family", "covering:m=2", "--lambda", "0.5", "--order", "64"});
  CHECK(p.code == kExitNonunivalent);
  CHECK(run({"prawitz", "--family", "koebe", "--c", "1", "--lambda", "1"}).code == kExitOk);

  const Run lu = run({"lu", "--family", "powerlog:m=0.2617993877991494", "--c", "0.5"});
  CHECK(lu.code == kExitNonunivalent);
  CHECK(lu.out.find("locally_univalent false") == 0);

  const Run col = run({"collide", "--family", "expfam", "--c", "1.5", "--density", "120"});
  CHECK(col.code == kExitNonunivalent);
  CHECK(col.out.find("conjugate_pair true") != std::string::npos);
  CHECK(run({"collide", "--family", "identity", "--c", "2"}).code == kExitOk);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == kExitError);
  CHECK(run({"frobnicate"}).code == kExitError);
  CHECK(run({"deform", "--bogus"}).code == kExitError);
  const Run r = run({"grunsky", "--size", "-3"});
  CHECK(r.code == kExitError);
  CHECK_FALSE(r.err.empty());
  CHECK(run({"deform", "--c", "1+"}).code == kExitError);
  CHECK(run({"deform", "--family", "nope"}).code == kExitError);
  CHECK(run({"scan", "--window", "0:1:2"}).code == kExitError);
  CHECK(run({"scan", "--step", "0"}).code == kExitError);
  CHECK(run({"repro", "nope"}).code == kExitError);
  CHECK(run({"components", "--csv", "/nonexistent.csv"}).code == kExitError);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("scan, components and convexity") {
  const auto dir = std::filesystem::temp_directory_path() / "powerdeform_cli_test";
  std::filesystem::create_directories(dir);
  const std::string csv = (dir / "grid.csv").string();
  const std::string pgm = (dir / "grid.pgm").string();
  const Run s = run({"scan", "--family", "koebe", "--window", "-1:2:-1.5:1.5", "--step", "0.25", "--out", pgm,
                     "--csv", csv, "--threads", "2"});
  REQUIRE(s.code == kExitOk);
  CHECK(s.out.find("grid 13x13") == 0);
  std::ifstream in(pgm);
  std::string magic;
  in >> magic;
  CHECK(magic == "P2");

  const Run c = run({"components", "--csv", csv, "--class", "in"});
  CHECK(c.code == kExitOk);
  CHECK(c.out == "components 1\n");
  const Run v = run({"convexity", "--csv", csv});
  CHECK(v.out == "complement_connected true\n");
  CHECK(run({"components", "--csv", csv, "--class", "sideways"}).code == kExitError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("repro scenario exit codes") {
  const Run r = run({"repro", "prawitz-bound"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("PASS prawitz-bound [") != std::string::npos);
}
