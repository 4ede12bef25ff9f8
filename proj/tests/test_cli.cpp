#include <nlohmann/json.hpp>

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

const std::string kCli = TAUMAP_CLI_PATH;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("taumap_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args) {
  int status = std::system((kCli + " " + args + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

}  // namespace

TEST_CASE("coeffs subcommand emits the expected table and is deterministic") {
  TempDir tmp;
  std::string out = tmp.file("coeffs.json");
  REQUIRE(run("coeffs --cutoff 2 --out " + out) == 0);
  auto table = nlohmann::json::parse(slurp(out));
  REQUIRE(table.size() == 5);
  bool found_zero = false;
  for (const auto& row : table) {
    if (row["unbarred"] == std::vector<int>{1, 1} && row["barred"] == std::vector<int>{1, 1}) {
      CHECK(row["num"] == "0");
      found_zero = true;
    }
    if (row["unbarred"] == std::vector<int>{1} && row["barred"] == std::vector<int>{1}) {
      CHECK(row["num"] == "1");
      CHECK(row["den"] == "1");
      CHECK(row["t0_exp"] == 1);
    }
  }
  CHECK(found_zero);

  std::string out2 = tmp.file("coeffs2.json");
  REQUIRE(run("coeffs --cutoff 2 --out " + out2) == 0);
  CHECK(slurp(out) == slurp(out2));  // byte-identical reruns

  CHECK(run("coeffs --cutoff 0") != 0);
}

TEST_CASE("verify subcommand exit status") {
  TempDir tmp;
  std::string out = tmp.file("verify.json");
  CHECK(run("verify --cutoff 2 --out " + out) == 0);
  auto report = nlohmann::json::parse(slurp(out));
  CHECK(report["pass"] == true);
  CHECK(report["reports"].size() >= 5);

  CHECK(run("verify --cutoff 2 --mutate --seed 7") != 0);
  CHECK(run("verify --cutoff 2 --mutate --seed 8") != 0);

  std::string out2 = tmp.file("verify2.json");
  REQUIRE(run("verify --cutoff 2 --out " + out2) == 0);
  CHECK(slurp(out) == slurp(out2));
}

TEST_CASE("moments and map pipeline on a circle") {
  TempDir tmp;
  std::string curve = tmp.file("circle.json");
  write_file(curve, R"({"fourier": [[1, 1.5, 0.0]]})");

  std::string mom = tmp.file("moments.json");
  REQUIRE(run("moments --curve " + curve + " --korder 4 --nquad 128 --out " + mom) == 0);
  auto m = nlohmann::json::parse(slurp(mom));
  CHECK(std::abs(m["t0"].get<double>() - 2.25) <= 1e-12);

  std::string mapfile = tmp.file("map.json");
  std::string csv = tmp.file("boundary.csv");
  REQUIRE(run("map --curve " + curve + " --cutoff 4 --nquad 128 --out " + mapfile + " --csv " +
              csv) == 0);
  auto mapj = nlohmann::json::parse(slurp(mapfile));
  CHECK(std::abs(mapj["r"].get<double>() - 1.5) <= 1e-12);
  for (const auto& p : mapj["p"]) {
    CHECK(std::abs(p[0].get<double>()) <= 1e-12);
    CHECK(std::abs(p[1].get<double>()) <= 1e-12);
  }
  std::string csv_text = slurp(csv);
  CHECK(csv_text.rfind("theta,re_w,im_w,abs_w_minus_1\n", 0) == 0);
}

TEST_CASE("map rejects invalid curves and inconsistent orders") {
  TempDir tmp;
  std::string curve = tmp.file("limacon.json");
  write_file(curve, R"({"fourier": [[1, 1.0, 0.0], [2, 0.6, 0.0]]})");
  CHECK(run("map --curve " + curve + " --cutoff 4") != 0);

  std::string circle = tmp.file("circle.json");
  write_file(circle, R"({"fourier": [[1, 1.0, 0.0]]})");
  CHECK(run("map --curve " + circle + " --cutoff 2 --korder 4") != 0);
  CHECK(run("map --curve " + circle + " --cutoff 4 --korder 2 --jorder 3") != 0);
}
