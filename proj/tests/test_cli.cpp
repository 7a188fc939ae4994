#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "solenoid/commands.hpp"
#include "solenoid/config.hpp"
#include "solenoid/errors.hpp"
#include "solenoid/gallery.hpp"

using namespace solenoid;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& env = {}) {
  const std::string cmd = env + (env.empty() ? "" : " ") + SOLENOID_CLI + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string cfg(const char* name) { return std::string(SOLENOID_CONFIGS) + "/" + name; }

std::string without_timing(const std::string& report) { return report.substr(0, report.find("timing:")); }

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("gallery chain config") {
  auto c = parse_config("[chain]\ngallery = vietoris\np = 2\ndepth = 3\n");
  REQUIRE(c.chain);
  auto chain = build_chain(*c.chain);
  CHECK(chain.length() == 3);
  CHECK(chain.index(3) == 8);
}

TEST_CASE("explicit FO config builds the FO chain") {
  auto c = load_config(cfg("fokkink_oversteegen_explicit.conf"));
  auto chain = build_chain(*c.chain);
  auto fo = gallery::fokkink_oversteegen(2);
  REQUIRE(chain.length() == 2);
  for (int l = 1; l <= 2; ++l) CHECK(chain.level(l) == fo.level(l));
  CHECK(chain.group() == fo.group());
}

TEST_CASE("malformed fraction is reported with its location") {
  try {
    parse_config("[run]\nlambda = 1/0\n");
    FAIL("accepted 1/0");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 10);
  }
  CHECK_THROWS_AS(parse_config("[run]\nlambda 1/2\n"), ParseError);
  CHECK_THROWS_AS(parse_config("[nowhere]\n"), ParseError);
  CHECK_THROWS_AS(parse_config("[group]\ngenerator t = 1 0 / 0 | 1 0\n"), ParseError);
}

TEST_CASE("semantic errors name the section") {
  auto c = load_config(cfg("fokkink_oversteegen_explicit.conf"));
  c.chain->levels[1] = c.chain->levels[0];
  try {
    build_chain(*c.chain);
    FAIL("non-descending chain accepted");
  } catch (const StructuralError& e) {
    CHECK(std::string(e.what()).find("[level 2]") != std::string::npos);
  }
}

TEST_CASE("shipped configs round-trip") {
  int seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(SOLENOID_CONFIGS)) {
    if (entry.path().extension() != ".conf") continue;
    ++seen;
    CAPTURE(entry.path().string());
    auto parsed = load_config(entry.path().string());
    const auto canon = serialize_config(parsed);
    auto again = parse_config(canon);
    CHECK(again == parsed);
    CHECK(serialize_config(again) == canon);
  }
  CHECK(seen >= 10);
}

}

TEST_SUITE("cli") {

TEST_CASE("reports are deterministic") {
  CommandOptions opts;
  for (const char* name : {"vietoris3.conf", "small_fo_variant.conf", "warp_fiber.conf", "expanding.conf"}) {
    auto c = load_config(cfg(name));
    CHECK(classify(c, opts, name).str() == classify(c, opts, name).str());
    CHECK(code(c, opts, name).str() == code(c, opts, name).str());
  }
  auto a = run("classify " + cfg("warp_fiber.conf"));
  auto b = run("classify " + cfg("warp_fiber.conf"));
  CHECK(a.code == 0);
  CHECK(without_timing(a.out) == without_timing(b.out));
}

TEST_CASE("exit codes") {
  CHECK(run("classify " + cfg("vietoris2.conf")).code == 0);
  CHECK(run("classify " + cfg("fokkink_oversteegen.conf")).code == 0);  // negative verdicts still succeed
  CHECK(run("classify " + write_temp("bad_fraction.conf", "[run]\nlambda = 1/0\n")).code == 2);
  CHECK(run("classify /nonexistent/solenoid.conf").code == 2);
  CHECK(run("compare " + cfg("vietoris2.conf") + " " + cfg("small_fo_variant.conf")).code == 2);
  CHECK(run("holonomy " + cfg("warp.conf") + " --word f --at w0").code == 2);
  CHECK(run("classify " + cfg("vietoris2.conf") + " --lambda 3/2").code == 2);
  CHECK(run("frobnicate").code == 2);
  auto capped = run("code " + cfg("fokkink_oversteegen.conf"), "SOLENOID_INDEX_CAP=100");
  CHECK(capped.code == 3);
  CHECK(capped.out.find("SOLENOID_INDEX_CAP") != std::string::npos);
  CHECK(run("code " + cfg("warp.conf"), "SOLENOID_PAIRWISE_CAP=100").code == 3);
}

TEST_CASE("holonomy and compare reports") {
  auto h = run("holonomy " + cfg("warp.conf") + " --word g1 --at w0");
  CHECK(h.code == 0);
  CHECK(h.out.find("nontrivial") != std::string::npos);
  auto c = run("compare " + cfg("vietoris2.conf") + " " + cfg("powers4.conf"));
  CHECK(c.code == 0);
  CHECK(c.out.find("1->1 2->1 3->2 4->2") != std::string::npos);
  auto f = run("compare " + cfg("vietoris2.conf") + " " + cfg("vietoris3.conf"));
  CHECK(f.code == 0);
  CHECK(f.out.find("interleaved_to_available_depth: false") != std::string::npos);
}

TEST_CASE("--out writes the report") {
  const auto path = (std::filesystem::temp_directory_path() / "solenoid_out.txt").string();
  std::filesystem::remove(path);
  auto r = run("measure " + cfg("vietoris5.conf") + " --out " + path);
  CHECK(r.code == 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str().find("pushforward_verified: true") != std::string::npos);
}

}
