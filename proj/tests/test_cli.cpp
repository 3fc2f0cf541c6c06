#include <catch2/catch_amalgamated.hpp>

#include <knwznw/json_io.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

using namespace knwznw;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " KNWZNW_CLI " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string config(const std::string& name) { return std::string("--config " KNWZNW_CONFIGS "/") + name; }

std::string scratch(const std::string& name, const std::string& body) {
  const std::string path = std::string(KNWZNW_SCRATCH "/") + name;
  std::ofstream(path) << body;
  return "--config " + path;
}

}  // namespace

TEST_CASE("basis subcommand", "[cli]") {
  auto r = run(scratch("one_point.json", R"({"points": ["0"]})") + " basis --lambda -1 --n 0 --p 1");
  REQUIRE(r.status == 0);
  const Json j = Json::parse(r.out);
  // z d/dz: numerator z over 1, simple zeros at 0 and infinity.
  CHECK(j["num"] == Json::array({"0", "1"}));
  CHECK(j["den"] == Json::array({"1"}));
  CHECK(j["orders"]["1"] == 1);
  CHECK(j["orders"]["infinity"] == 1);
  CHECK(j["adjusted"] == false);
  CHECK(run(scratch("one_point.json", R"({"points": ["0"]})") + " basis --lambda 1/2 --n 0 --p 1").status == 2);
}

TEST_CASE("kz subcommand", "[cli]") {
  auto r = run(config("two_point_sl2.json") + " kz");
  REQUIRE(r.status == 0);
  const Json j = Json::parse(r.out);
  const Rat kappa = Rat::parse(j["kappa"].get<std::string>());
  CHECK(kappa.abs() == Rat(1, 3));
  CHECK(j["sign_convention"] == (kappa.sign() < 0 ? "-1" : "+1"));
  CHECK(j["flatness"] == "n/a");
  CHECK(j["matrices"].size() == 2);
  CHECK(j["matrices"][0].size() == 4);
  auto three = Json::parse(run(config("three_point_sl2.json") + " kz").out);
  CHECK(three["flatness"] == "ok");
  CHECK(three["sign_convention"] == j["sign_convention"]);
}

TEST_CASE("exit codes", "[cli]") {
  CHECK(run("nonsense").status == 2);
  CHECK(run("basis --no-such-flag 1").status == 2);
  CHECK(run(scratch("bad.json", R"({"points": ["0", "0"]})") + " basis").status == 2);
  CHECK(run(scratch("bad2.json", R"({"points": ["1/0"]})") + " basis").status == 2);
  CHECK(run(scratch("bad3.json", R"({"lie_algebra": "e8"})") + " affine").status == 2);
  CHECK(run(scratch("broken.json", "{")).status == 2);
  CHECK(run(scratch("critical.json", R"({"points": ["0", "1"], "module": {"kind": "weyl", "weights": [1, 1], "level": "-2", "depth": 2}})") +
            " kz")
            .status == 1);
  CHECK(run(scratch("pole.json", R"({"points": ["0", "1"], "connection_R": {"num": ["1"], "den": ["0", "1"]}})") +
            " cocycle --kind chi --min -1 --max 1")
            .status == 1);
}

TEST_CASE("determinism and formatting", "[cli]") {
  const std::string args = config("two_point_sl2.json") + " table --kind L --min -2 --max 2";
  const auto a = run(args), b = run(args, "KNWZNW_THREADS=1"), c = run(args + " --json-indent -1");
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(c.out.find('\n') == c.out.size() - 1);
  CHECK(Json::parse(a.out) == Json::parse(c.out));
  // Sorted keys: the serializer emits keys of every object in order.
  CHECK(Json::parse(a.out).dump(2) + "\n" == a.out);
  const auto k1 = run(config("three_point_sl2.json") + " kz", "KNWZNW_THREADS=1");
  const auto k3 = run(config("three_point_sl2.json") + " kz", "KNWZNW_THREADS=3");
  CHECK(k1.out == k3.out);
}

TEST_CASE("round trip of emitted rationals", "[cli]") {
  auto r = run(config("two_point_connection.json") + " cocycle --kind chi --min -2 --max 2");
  REQUIRE(r.status == 0);
  const Json j = Json::parse(r.out);
  REQUIRE(!j["entries"].empty());
  for (const auto& e : j["entries"]) {
    const std::string s = e["result"].get<std::string>();
    CHECK(Rat::parse(s).str() == s);
  }
  const RationalFunction R = rational_function_from_json(j["connection_R"], "connection_R");
  CHECK(to_json(R) == j["connection_R"]);
}

TEST_CASE("verify suites on the sample configs", "[cli]") {
  for (const char* name : {"one_point_heisenberg.json", "two_point_connection.json", "two_point_sl2.json"})
    for (const char* suite : {"basis", "algebra", "affine", "module"}) {
      INFO(name << " " << suite);
      auto r = run(config(name) + " verify --suite " + suite);
      CHECK(r.status == 0);
      CHECK(Json::parse(r.out)["pass"] == true);
    }
  auto r = run(config("one_point_heisenberg.json") + " verify --suite all");
  CHECK(r.status == 0);
  CHECK(run(config("two_point_sl2.json") + " verify --suite nope").status == 2);
}

TEST_CASE("sugawara subcommand", "[cli]") {
  auto r = run(config("one_point_heisenberg.json") + " sugawara --k 2 --r 1 --m -2 --s 1");
  REQUIRE(r.status == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["is_scalar"] == true);
  CHECK(j["ratio"] == "1");
  CHECK(j["pair"] == Json::parse("[[2,1],[-2,1]]"));
}
