#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cangeo/cli.hpp"

using namespace cangeo;

namespace {

struct Result {
  int code;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "cangeo");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("cangeo_test_" + std::to_string(::getpid()) + "_" + name);
}

int count(const std::string& hay, const std::string& needle) {
  int n = 0;
  for (std::size_t p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST(Cli, SolveFourWayTie) {
  const Result r = call({"solve", "--surface", "can:h=1.4674011002723395", "--a", "rim1:angle=0", "--b",
                         "rim2:angle=3.141592653589793", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = r.json();
  EXPECT_EQ(j["multiplicity"]["count"], 4);
  EXPECT_EQ(j["multiplicity"]["infinite"], false);
  EXPECT_NEAR(j["min_length"].get<double>(), (kPi * kPi + 4) / 4, 1e-9);
  ASSERT_EQ(j["paths"].size(), 4u);
  for (const auto& p : j["paths"]) {
    EXPECT_TRUE(p.contains("segments"));
    EXPECT_TRUE(p.contains("crossings"));
    EXPECT_TRUE(p.contains("length"));
    EXPECT_TRUE(p.contains("defect"));
    for (const auto& s : p["segments"]) EXPECT_TRUE(s.contains("face"));
    for (const auto& c : p["crossings"]) EXPECT_TRUE(c.contains("angle"));
  }
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  const std::vector<std::string> expected{"surface", "A", "B", "theta", "min_length", "multiplicity",
                                          "near_tie", "paths", "per_family", "config"};
  EXPECT_EQ(keys, expected);
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args{"solve", "--surface", "cup:s=3", "--a", "side:angle=0.2,slant=1.1", "--b",
                                      "lid:angle=2.5,r=0.4"};
  const Result a = call(args), b = call(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  // Doubles survive a text round trip exactly.
  const double len = a.json()["min_length"].get<double>();
  EXPECT_EQ(Json::parse(Json(len).dump()).get<double>(), len);
}

TEST(Cli, CriticalSideDiaxial) {
  const Result r = call({"critical", "side-diaxial", "--c", "0"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.json(), Json::parse(R"({"h": 1.4674011002723395})"));
  EXPECT_NE(r.out.find("1.4674011002723395"), std::string::npos);
}

TEST(Cli, CriticalCupPartnerAndRimChord) {
  const Result p = call({"critical", "cup-partner", "--s", "2", "--a", "1.5"});
  ASSERT_EQ(p.code, 0);
  EXPECT_NEAR(p.json()["b"].get<double>(), 2.0, 1e-12);
  EXPECT_NEAR(p.json()["length"].get<double>(), 2.5, 1e-12);
  const Result r = call({"critical", "rim-chord", "--bp", "1"});
  ASSERT_EQ(r.code, 0);
  EXPECT_LT(std::abs(r.json()["residual"].get<double>()), 1e-10);
  EXPECT_EQ(call({"critical", "cup-partner", "--s", "3", "--a", "0.5"}).code, 3);
}

TEST(Cli, CupSvgHasThreePaths) {
  const auto svg = temp_path("cup.svg");
  const Result r = call({"solve", "--surface", "cup:s=2", "--a", "side:angle=0,slant=1.5", "--b",
                         "rim:angle=3.141592653589793", "--svg", svg.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["multiplicity"]["count"], 3);
  const std::string text = slurp(svg);
  EXPECT_NE(text.find("<svg"), std::string::npos);
  EXPECT_EQ(count(text, "id=\"path"), 3);
  EXPECT_NE(text.find("data-face=\"lid\""), std::string::npos);
  std::filesystem::remove(svg);
}

TEST(Cli, Degrees) {
  const Result rad = call({"solve", "--surface", "can:h=1", "--a", "side:angle=0,z=0.5", "--b", "side:angle=3.141592653589793,z=0.5"});
  const Result deg = call({"solve", "--surface", "can:h=1", "--a", "side:angle=0,z=0.5", "--b", "side:angle=180,z=0.5", "--degrees"});
  ASSERT_EQ(rad.code, 0);
  ASSERT_EQ(deg.code, 0);
  EXPECT_NEAR(rad.json()["min_length"].get<double>(), deg.json()["min_length"].get<double>(), 1e-12);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(call({"solve", "--surface", "box:w=1", "--a", "rim1:angle=0", "--b", "rim2:angle=1"}).code, 2);
  EXPECT_EQ(call({"solve", "--surface", "can:h=1", "--a", "side:angle=0", "--b", "rim2:angle=1"}).code, 2);
  EXPECT_EQ(call({"solve", "--surface", "can:h=1", "--a", "side:angle=0,slant=1", "--b", "rim2:angle=1"}).code, 2);
  EXPECT_EQ(call({"solve", "--surface", "can:h=1", "--a", "rim1:angle=0"}).code, 2);
  EXPECT_EQ(call({"solve", "--surface", "can:h=1", "--a", "rim1:angle=0", "--b", "rim2:angle=1", "--bogus"}).code, 2);
  EXPECT_EQ(call({"frobnicate"}).code, 2);
  const Result same = call({"solve", "--surface", "can:h=1", "--a", "rim1:angle=0", "--b", "lid:angle=0,r=1"});
  EXPECT_EQ(same.code, 3);
  EXPECT_NE(same.err.find("SamePoint"), std::string::npos);
  EXPECT_EQ(call({"critical", "side-diaxial", "--c", "5"}).code, 3);
  EXPECT_EQ(call({"solve", "--surface", "can:h=1", "--a", "side:angle=0,z=2", "--b", "rim2:angle=1"}).code, 2);
}

TEST(Cli, OracleAndObj) {
  const auto obj = temp_path("mesh.obj");
  const Result r = call({"oracle", "--surface", "can:h=1", "--a", "lid:angle=0,r=0.5", "--b", "base:angle=2,r=0.5",
                         "--mesh-resolution", "32", "--obj", obj.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = r.json();
  const double exact = call({"solve", "--surface", "can:h=1", "--a", "lid:angle=0,r=0.5", "--b", "base:angle=2,r=0.5"})
                           .json()["min_length"].get<double>();
  EXPECT_GE(j["mesh_distance"].get<double>(), exact - 1e-9);
  EXPECT_LE(j["mesh_distance"].get<double>(), exact * 1.05);
  EXPECT_EQ(j["snap_error"], 0.0);
  const std::string text = slurp(obj);
  EXPECT_EQ(count(text, "\nv "), j["vertices"].get<int>() - 1);
  std::filesystem::remove(obj);
  EXPECT_EQ(call({"oracle", "--surface", "can:h=1", "--a", "rim1:angle=0", "--b", "rim2:angle=1", "--mesh-resolution", "4"}).code, 2);
}

TEST(Cli, FlatmodelAndRoulette) {
  const auto svg = temp_path("flat.svg");
  const Result f = call({"flatmodel", "--surface", "can:h=2", "--tangency", "0.5", "--svg", svg.string()});
  ASSERT_EQ(f.code, 0);
  EXPECT_EQ(f.json()["disks"].size(), 2u);
  EXPECT_NE(slurp(svg).find("data-face=\"side\""), std::string::npos);
  std::filesystem::remove(svg);
  const Result r = call({"roulette", "--radius", "2", "--t", "1.0"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(r.json()["r_max"].get<double>(), 3.0, 1e-10);
  EXPECT_LT(r.json()["normal_line_defect"].get<double>(), 1e-10);
  EXPECT_EQ(call({"roulette", "--t", "0"}).code, 3);  // cusp
}

TEST(Cli, BinaryExitStatus) {
  const char* bin = std::getenv("CANGEO_CLI");
  if (!bin) GTEST_SKIP() << "CANGEO_CLI not set";
  const std::string quiet = " >/dev/null 2>&1";
  auto status = [&](const std::string& args) {
    const int s = std::system((std::string(bin) + " " + args + quiet).c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  EXPECT_EQ(status("critical side-diaxial --c 0"), 0);
  EXPECT_EQ(status("solve --surface can:h=x --a rim1:angle=0 --b rim2:angle=1"), 2);
  EXPECT_EQ(status("solve --surface can:h=1 --a rim1:angle=0 --b rim1:angle=6.283185307179586"), 3);
}
