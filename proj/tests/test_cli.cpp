#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "segre/json_io.hpp"
#include "support.hpp"

using namespace segre;
using namespace segre::test;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "segre_cli");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "segre_cli_tests";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("gen then normalize") {
  const Run g = run({"gen", "--seed", "1", "--m0", "0", "--k0", "3", "--degree", "6"});
  REQUIRE(g.code == 0);
  const std::string path = scratch("gen1.json");
  write(path, g.out);
  const Run n = run({"normalize", "--input", path});
  REQUIRE(n.code == 0);
  const Json j = Json::parse(n.out);
  for (const auto& st : j.at("diagnostics")) CHECK(st.at("kernel_dim") == 0);
  CHECK(canonical_dump(to_json(hypersurface_from_json(Json::parse(g.out)))) == g.out);
}

TEST_CASE("residual of the identity is zero") {
  const Run g = run({"gen", "--seed", "2", "--m0", "1", "--k0", "4", "--degree", "6"});
  REQUIRE(g.code == 0);
  const std::string path = scratch("gen2.json");
  write(path, g.out);
  const Run r = run({"residual", "--input", path});
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out).at("zero") == true);
}

TEST_CASE("validation and io errors") {
  Hypersurface M;
  M.L = P({{{2, 1, 0}, gs(0, 1)}, {{1, 2, 0}, gs(1)}});
  const std::string path = scratch("bad_l.json");
  write(path, canonical_dump(to_json(M)));
  const Run r = run({"normalize", "--input", path});
  CHECK(r.code == 2);
  CHECK(Json::parse(r.err).at("code") == "E_REALITY_L");

  const Run missing = run({"normalize", "--input", scratch("does_not_exist.json")});
  CHECK(missing.code == 5);
  const std::string junk = scratch("junk.json");
  write(junk, "{not json");
  CHECK(run({"graph", "--input", junk}).code == 5);
}

TEST_CASE("jet-check exit codes") {
  const Run g = run({"gen", "--seed", "3", "--m0", "0", "--k0", "3", "--degree", "6"});
  const std::string path = scratch("gen3.json");
  write(path, g.out);
  const Run det = run({"jet-check", "--input", path});
  CHECK(det.code == 0);
  CHECK(Json::parse(det.out).at("verdict") == "determined");
  const Run probe = run({"selfmap-kernel", "--input", path, "--probe"});
  CHECK(probe.code == 0);
}

TEST_CASE("output is independent of thread count") {
  const Run g = run({"gen", "--seed", "4", "--m0", "1", "--k0", "4", "--degree", "7"});
  const std::string path = scratch("gen4.json");
  write(path, g.out);
  const Run a = run({"normalize", "--input", path, "--threads", "1"});
  const Run b = run({"normalize", "--input", path, "--threads", "4"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}
