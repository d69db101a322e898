#include <doctest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const fs::path kCatalogDir = ORBICHECK_CATALOG_DIR;

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI with stdout captured; stderr goes to the captured stream too.
Run run(const std::string& args, const std::string& env = "NO_COLOR=1") {
  std::string cmd = env + " '" + std::string(ORBICHECK_BIN) + "' " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  Run r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string read(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Fresh copy of the catalogue directory.
fs::path copy_catalog(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("orbicheck_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  for (const auto& f : fs::directory_iterator(kCatalogDir)) fs::copy_file(f.path(), dir / f.path().filename());
  return dir;
}

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("verify: a recorded pair passes with exit code 0") {
  Run r = run("verify wiman-g2");
  CHECK(r.code == 0);
  CHECK(has(r.out, "c1^2 = 45, c2 = 15, 3*c2 = 45, BMY: PASS, Nakai(declared): PASS"));
  CHECK(has(r.out, "L.C = 3"));
  CHECK(has(r.out, "caveat:"));
  CHECK(has(r.out, "(recorded: "));
  CHECK_FALSE(has(r.out, "\x1b["));
}

TEST_CASE("verify: the cusped weighting satisfies BMY but L is trivial on the cusp curves") {
  Run r = run("verify hirzebruch-eisenstein -w cusped");
  CHECK(r.code == 1);
  CHECK(has(r.out, "c1^2 = 3, c2 = 1, 3*c2 = 3, BMY: PASS, Nakai(declared): FAIL"));
  CHECK(has(r.out, "D0     L.C = 0"));
  CHECK(has(r.out, "witness: D0"));
  CHECK(has(r.out, "c2(cusped) = 1  matches"));
}

TEST_CASE("verify: weight 4 on the genus-2 pair fails with exit code 1") {
  fs::path dir = copy_catalog("tamper");
  std::string text = read(dir / "wiman-g2.json");
  std::string tampered = std::regex_replace(text, std::regex("(\"D[0-4]\": )\"5\""), "$1\"4\"");
  REQUIRE(tampered != text);
  fs::path doc = dir / "wiman-g2-weight4.json";
  std::ofstream(doc) << tampered;
  Run r = run("verify '" + doc.string() + "'");
  CHECK(r.code == 1);
  CHECK(has(r.out, "BMY: FAIL"));
  CHECK(has(r.out, "MISMATCH"));
  fs::remove_all(dir);
}

TEST_CASE("quotient: orbits mixing weights fail with exit code 1") {
  fs::path dir = copy_catalog("mixed");
  std::string text = read(dir / "wiman-g2.json");
  std::string mixed = std::regex_replace(text, std::regex("\"D2\": \"5\""), "\"D2\": \"3\"");
  REQUIRE(mixed != text);
  std::ofstream(dir / "wiman-g2.json") << mixed;
  Run r = run("--catalog '" + dir.string() + "' quotient wiman-g2 g25");
  CHECK(r.code == 1);
  CHECK(has(r.out, "mixes weights"));
  fs::remove_all(dir);
}

TEST_CASE("quotient reports") {
  Run r = run("quotient hirzebruch-eisenstein F");
  CHECK(r.code == 0);
  CHECK(has(r.out, "quotient weights: {3,9,18}"));
  CHECK(has(r.out, "DM(14,13,3,3,3)/18 [arithmetic]"));
  r = run("quotient gaussian-weight3-variant f16");
  CHECK(r.code == 0);
  CHECK(has(r.out, "{3,4,4,4,4,6,6,6,12,12}"));
  CHECK(has(r.out, "nonarithmetic"));
}

TEST_CASE("dm") {
  Run r = run("dm 5,4,1,1,1/6");
  CHECK(r.code == 0);
  CHECK(has(r.out, "valid"));
  CHECK(has(r.out, "INT-only"));
  CHECK(has(r.out, "arithmetic"));
  r = run("dm 1,1,1,1,1/5");
  CHECK(r.code == 1);
  CHECK(has(r.out, "invalid"));
  r = run("dm 2,3,4,5/7");
  CHECK(r.code == 0);
  CHECK(has(r.out, "neither"));
  CHECK(has(r.out, "unknown"));
  CHECK(run("dm banana").code == 2);
}

TEST_CASE("coset") {
  Run r = run("coset triangle-tower.lambda");
  CHECK(r.code == 0);
  CHECK(has(r.out, "index 10; signature (g=1; 3)"));
  CHECK(has(r.out, "NOTE:"));
  r = run("coset triangle-tower.sigma");
  CHECK(r.code == 0);
  CHECK(has(r.out, "(g=2; -)"));
  r = run("--max-cosets 50 coset '<a,b | a^2, b^3, (ab)^10>' a");
  CHECK(r.code == 1);
  CHECK(has(r.out, "overflow at 50 cosets"));
  CHECK(run("coset '<a,b | a^2, b^3, (ab)^10>' c").code == 2);
}

TEST_CASE("input errors exit with code 2") {
  CHECK(run("verify no-such-entry").code == 2);
  CHECK(run("quotient wiman-g2 nope").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("--catalog /nonexistent list").code == 2);
  fs::path bad = fs::temp_directory_path() / "orbicheck_cli_bad.json";
  std::ofstream(bad) << "{\n  \"id\": 3\n}";
  Run r = run("verify '" + bad.string() + "'");
  CHECK(r.code == 2);
  CHECK(has(r.out, "id"));
  fs::remove(bad);
}

TEST_CASE("machine output carries exact rationals") {
  Run r = run("--machine verify hirzebruch-eisenstein");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["c1_sq"] == "13/3");
  CHECK(j["c2"] == "13/9");
  CHECK(j["three_c2"] == "13/3");
  CHECK(j["bmy"] == true);
  CHECK(j["nakai_table"].size() >= 5);
  r = run("--machine quotient gaussian f16");
  REQUIRE(r.code == 0);
  j = nlohmann::json::parse(r.out);
  CHECK(j["quotient_e_orb"] == "9/16");
  CHECK(j["multiplicativity"] == true);
  CHECK(j["dm"][0]["weights"] == "(4,3,3,3,3)/8");
  r = run("--machine dm 1,1,1,1,1/5");
  CHECK(r.code == 1);
  CHECK(nlohmann::json::parse(r.out)["sum"] == "1");
  r = run("--machine check");
  CHECK(r.code == 0);
  for (const auto& row : nlohmann::json::parse(r.out)) CHECK(row["match"] == true);
}

TEST_CASE("colour follows NO_COLOR and the terminal") {
  // Output is a pipe here, so no escapes appear whether or not NO_COLOR is set.
  CHECK_FALSE(has(run("verify wiman-g2", "NO_COLOR=1").out, "\x1b["));
  CHECK_FALSE(has(run("verify wiman-g2", "NO_COLOR=").out, "\x1b["));
}

TEST_CASE("list, check and format") {
  Run r = run("list");
  CHECK(r.code == 0);
  CHECK(has(r.out, "wiman-g2"));
  CHECK(has(r.out, "triangle-tower"));
  r = run("check");
  CHECK(r.code == 0);
  CHECK_FALSE(has(r.out, "FAIL"));
  r = run("format '" + (kCatalogDir / "gaussian.json").string() + "'");
  CHECK(r.code == 0);
  CHECK(r.out == read(kCatalogDir / "gaussian.json"));
}
