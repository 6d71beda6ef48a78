#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const char* cli_path() { return BEAMSIM_CLI_PATH; }

int run_cli(const std::string& args) {
  const std::string command = std::string(cli_path()) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "beamsim_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_small_config(const fs::path& path) {
  std::ofstream out(path);
  out << "periods = 4\n"
         "replications = 2\n"
         "[scenario]\n"
         "density = 150\n"
         "tx_ratio = 0.5\n"
         "road_length_m = 600\n";
}

std::map<std::string, std::string> tree_contents(const fs::path& root) {
  std::map<std::string, std::string> contents;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    contents[fs::relative(entry.path(), root).string()] = buffer.str();
  }
  return contents;
}

}  // namespace

TEST_CASE("identical seeds produce identical output trees") {
  const fs::path dir = fresh_dir("determinism");
  const fs::path config = dir / "run.ini";
  write_small_config(config);

  REQUIRE(run_cli("--config " + config.string() + " --seed 42 --out " + (dir / "a").string() +
                  " --dump-records --link-log --event-log --dump-topology") == 0);
  REQUIRE(run_cli("--config " + config.string() + " --seed 42 --out " + (dir / "b").string() +
                  " --dump-records --link-log --event-log --dump-topology") == 0);

  const auto a = tree_contents(dir / "a");
  const auto b = tree_contents(dir / "b");
  REQUIRE(!a.empty());
  CHECK(a == b);

  REQUIRE(run_cli("--config " + config.string() + " --seed 43 --out " + (dir / "c").string() +
                  " --dump-records") == 0);
  CHECK(tree_contents(dir / "c") != a);
}

TEST_CASE("output tree layout is stable") {
  const fs::path dir = fresh_dir("layout");
  const fs::path config = dir / "run.ini";
  write_small_config(config);
  REQUIRE(run_cli("--config " + config.string() + " --out " + (dir / "out").string()) == 0);

  for (const char* policy : {"adaptive", "baseline"}) {
    const fs::path run_dir = dir / "out" / "150_50" / policy;
    CAPTURE(policy);
    CHECK(fs::exists(run_dir / "contacted_box.dat"));
    CHECK(fs::exists(run_dir / "beamwidth_cdf.dat"));
    CHECK(fs::exists(run_dir / "pdr_box.dat"));
    CHECK(fs::exists(run_dir / "throughput.dat"));
    CHECK(fs::exists(run_dir / "summary.json"));
    CHECK(fs::exists(run_dir / "manifest.ini"));
  }
  CHECK(fs::exists(dir / "out" / "summary.json"));
  CHECK(fs::exists(dir / "out" / "manifest.ini"));
}

TEST_CASE("usage errors exit with code 1") {
  const fs::path dir = fresh_dir("usage");
  const fs::path config = dir / "run.ini";
  write_small_config(config);
  CHECK(run_cli("--config " + config.string() + " --periods 0") == 1);
  CHECK(run_cli("--config /nonexistent.ini") == 1);
  CHECK(run_cli("--no-such-flag") == 1);
  CHECK(run_cli("--config " + config.string() + " --policy sometimes") == 1);

  std::ofstream bad(dir / "bad.ini");
  bad << "[scenario]\nwarp_speed = 9\n";
  bad.close();
  CHECK(run_cli("--config " + (dir / "bad.ini").string()) == 1);
}

TEST_CASE("command line overrides the config file") {
  const fs::path dir = fresh_dir("precedence");
  const fs::path config = dir / "run.ini";
  write_small_config(config);
  REQUIRE(run_cli("--config " + config.string() + " --periods 2 --replications 1 --out " +
                  (dir / "out").string()) == 0);
  std::ifstream manifest(dir / "out" / "manifest.ini");
  std::ostringstream text;
  text << manifest.rdbuf();
  CHECK(text.str().find("periods = 2") != std::string::npos);
  CHECK(text.str().find("replications = 1") != std::string::npos);
}
