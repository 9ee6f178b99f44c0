#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "json.hpp"
#include "support.hpp"
#include "tacx/cli.hpp"
#include "tacx/report.hpp"

using support::fixture;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result tacx_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = tacx::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("tacx_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

nlohmann::json read_json(const fs::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

// Exit 0 iff every check in the report holds.
void check_exit_contract(const Result& r, const nlohmann::json& report) {
  bool all = true;
  for (const auto& [k, v] : report["checks"].items()) all = all && v.get<bool>();
  CHECK(report["ok"].get<bool>() == all);
  CHECK((r.code == 0) == all);
}

}  // namespace

TEST_CASE("sha256 matches the published test vector") {
  CHECK(tacx::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("complex verify on the final example") {
  const fs::path rep = scratch() / "finalex.json";
  const Result r = tacx_run({"--out", rep.string(), "complex", "verify", fixture("finalex.cx")});
  CHECK(r.code == 0);
  const auto j = read_json(rep);
  CHECK(j["tool"] == "tacx");
  CHECK(j["version"] == "0.1.0");
  CHECK(j["command"] == "complex verify");
  CHECK(j["prime"] == 32003);
  CHECK(j["checks"]["totally_acyclic"] == true);
  REQUIRE(j["inputs"].size() >= 1);
  CHECK(j["inputs"][0]["sha256"] == tacx::sha256_hex(slurp(fixture("finalex.cx"))));
  check_exit_contract(r, j);
  CHECK(r.out.find("totally_acyclic: true") != std::string::npos);
}

TEST_CASE("exhaustive search over a proxy prime finds nothing on ex1") {
  const fs::path rep = scratch() / "ex1_search.json";
  const Result r =
      tacx_run({"ezd", "search", fixture("ex1_r.ring"), "--exhaustive", "--proxy-prime", "3", "--out", rep.string()});
  CHECK(r.code == 1);
  CHECK(r.out.find("no exact zero divisors found") != std::string::npos);
  const auto j = read_json(rep);
  CHECK(j["result"]["pairs"].empty());
  CHECK(j["prime"] == 3);
  CHECK(j["result"]["candidates"] == 29524);
  check_exit_contract(r, j);
}

TEST_CASE("ring info on the counterexample") {
  const fs::path rep = scratch() / "counterex.json";
  const Result r = tacx_run({"--out", rep.string(), "ring", "info", fixture("counterex_r.ring")});
  CHECK(r.code == 1);
  const auto j = read_json(rep);
  CHECK(j["result"]["dim1"] == 6);
  CHECK(j["result"]["dim2"] == 3);
  CHECK(j["result"]["yoshino_b"] == false);
  check_exit_contract(r, j);

  const Result ok = tacx_run({"ring", "info", fixture("exnew_r.ring")});
  CHECK(ok.code == 0);
}

TEST_CASE("identical invocations give identical reports") {
  const fs::path a = scratch() / "rand_a.json", b = scratch() / "rand_b.json";
  const std::vector<std::string> base = {"ezd", "search", fixture("exnew_r.ring"), "--trials", "50", "--seed", "7"};
  auto with = [&](const fs::path& p) {
    auto v = base;
    v.push_back("--out");
    v.push_back(p.string());
    return v;
  };
  const Result ra = tacx_run(with(a)), rb = tacx_run(with(b));
  CHECK(ra.code == rb.code);
  CHECK(slurp(a) == slurp(b));
  CHECK(ra.out == rb.out);
}

TEST_CASE("usage and input errors exit with 2") {
  CHECK(tacx_run({}).code == 2);
  CHECK(tacx_run({"frobnicate"}).code == 2);
  CHECK(tacx_run({"ring", "info", fixture("missing.ring")}).code == 2);
  CHECK(tacx_run({"--prime", "4", "ring", "info", fixture("exnew_r.ring")}).code == 2);
  CHECK(tacx_run({"--prime", "2", "ring", "info", fixture("exnew_r.ring")}).code == 2);
  CHECK(tacx_run({"ezd", "search", fixture("exnew_r.ring"), "--trials", "0"}).code == 2);
  CHECK(tacx_run({"ezd", "verify", fixture("exnew_r.ring"), "--a", "z1 + q", "--b", "z1"}).code == 2);
  CHECK(tacx_run({"ezd", "search", fixture("ex1_r.ring"), "--exhaustive"}).code == 2);
  CHECK(tacx_run({"--help"}).code == 0);
}

TEST_CASE("prime precedence: flag, file, environment, default") {
  const fs::path rep = scratch() / "prime.json";
  ::setenv("TACX_PRIME", "101", 1);
  tacx_run({"--out", rep.string(), "ring", "info", fixture("exnew_r.ring")});
  CHECK(read_json(rep)["prime"] == 101);
  tacx_run({"--prime", "7", "--out", rep.string(), "ring", "info", fixture("exnew_r.ring")});
  CHECK(read_json(rep)["prime"] == 7);
  ::unsetenv("TACX_PRIME");
  tacx_run({"--out", rep.string(), "ring", "info", fixture("exnew_r.ring")});
  CHECK(read_json(rep)["prime"] == 32003);

  const fs::path ring = scratch() / "with_field.ring";
  std::ofstream(ring) << "[field]\np = 13\n" << slurp(fixture("exnew_r.ring"));
  tacx_run({"--out", rep.string(), "ring", "info", ring.string()});
  CHECK(read_json(rep)["prime"] == 13);
}

TEST_CASE("ezd verify") {
  const Result r = tacx_run({"ezd", "verify", fixture("exnew_r.ring"), "--a", "z1 + z2", "--b", "z1 - z2"});
  CHECK(r.code == 0);
  const Result bad = tacx_run({"ezd", "verify", fixture("ex1_r.ring"), "--let", "l=x1 + x2 + y1 + y2 + y3", "--a",
                               "l + x3 + x4 + x5 + y4 + y5", "--b", "x1 + x2 - y1 - y2 - y3 + x3 + x4 + x5 - y4 - y5"});
  CHECK(bad.code == 1);
}

TEST_CASE("csum build writes the connected sum") {
  const fs::path out = scratch() / "exnew_built.ring";
  const Result r = tacx_run({"csum", "build", fixture("exnew_r1.ring"), fixture("exnew_s1.ring"), "-o", out.string()});
  CHECK(r.code == 0);
  const tacx::Presentation p = tacx::parse_ring_file(slurp(out));
  CHECK(p.variables.size() == 6);
  CHECK(tacx::make_algebra(p, tacx::PrimeField())->dim2() == 5);
  CHECK(tacx_run({"csum", "build", fixture("exnew_r1.ring"), fixture("exnew_r1.ring")}).code == 2);
}

TEST_CASE("csum check") {
  CHECK(tacx_run({"csum", "check", fixture("exnew_z1.cx"), fixture("exnew_z2.cx")}).code == 0);
  const fs::path rep = scratch() / "ex1_check.json";
  const Result r = tacx_run({"--out", rep.string(), "csum", "check", fixture("ex1_l1.cx"), fixture("ex1_l2.cx")});
  CHECK(r.code == 1);
  const auto j = read_json(rep);
  CHECK(j["checks"]["hypothesis"] == false);
  CHECK(j["checks"]["biconditional"] == true);
  check_exit_contract(r, j);
  CHECK(tacx_run({"csum", "check", "--no-auto-sign", fixture("exnew_z1.cx"), fixture("exnew_z2.cx")}).code == 1);
}

TEST_CASE("complex assemble writes a loadable complex") {
  const fs::path out = scratch() / "assembled.cx";
  const Result r = tacx_run({"complex", "assemble", fixture("finalex_r1.cx"), fixture("finalex_s1.cx"), "-o", out.string()});
  CHECK(r.code == 0);
  const auto loaded = tacx::load_complex(out.string());
  const auto fin = tacx::load_complex(fixture("finalex.cx"));
  CHECK(loaded.complex.map(0) == fin.complex.map(0));
  CHECK(loaded.complex.map(1) == fin.complex.map(1));
  CHECK(tacx_run({"complex", "assemble", fixture("ex1_l1.cx"), fixture("ex1_l2.cx")}).code == 1);
}

TEST_CASE("complex normalize") {
  const fs::path out = scratch() / "normalized.cx";
  CHECK(tacx_run({"complex", "normalize", fixture("finalex_r1.cx"), "--window", "4", "-o", out.string()}).code == 0);
  CHECK(fs::exists(out));
  const Result r = tacx_run({"complex", "normalize", fixture("ex1_l1.cx")});
  CHECK(r.code == 1);
  CHECK(r.err.find("U_0 is not invertible") != std::string::npos);
}

TEST_CASE("double") {
  const Result r = tacx_run({"double", "--ring", fixture("ex1_r1.ring"), "--let", "l1=x1 + x2 + y1 + y2 + y3", "--let",
                             "l1p=x1 + x2 - y1 - y2 - y3", "--x", "l1", "--w", "l1p", "--dec", "(x1, y1)", "--alpha", "1"});
  CHECK(r.code == 0);
  const fs::path rep = scratch() / "double.json";
  const Result s = tacx_run({"--out", rep.string(), "double", "search", "--cx", fixture("ex1_l2.cx")});
  CHECK(s.code == 0);
  const auto j = read_json(rep);
  CHECK(j["result"]["alpha"] == 1);
  check_exit_contract(s, j);
  const Result zero = tacx_run({"double", "--cx", fixture("ex1_l1.cx"), "--alpha", "0"});
  CHECK(zero.code == 1);
}

TEST_CASE("graph import") {
  const fs::path out = scratch() / "path6.ring";
  const Result r = tacx_run(
      {"graph", "import", fixture("path6.graph"), "--exhaustive", "--proxy-prime", "3", "-o", out.string()});
  CHECK(r.code == 0);
  CHECK(tacx::parse_ring_file(slurp(out)).variables.size() == 4);
}
