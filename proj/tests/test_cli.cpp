#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "ftle/io.hpp"
#include "test_support.hpp"

#ifndef FTLE_CLI_PATH
#error "FTLE_CLI_PATH must point at the ftle binary"
#endif

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path work_dir() {
  auto dir = fs::temp_directory_path() / "ftle_cli_test";
  fs::create_directories(dir);
  return dir;
}

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::string& args) {
  const auto dir = work_dir();
  const std::string out_path = (dir / "stdout.txt").string();
  const std::string err_path = (dir / "stderr.txt").string();
  const std::string cmd = std::string(FTLE_CLI_PATH) + " " + args + " >" + out_path +
                          " 2>" + err_path;
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  auto slurp = [](const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  return r;
}

json manifest_of(const RunResult& r) { return json::parse(r.out); }

std::string read_bytes(const std::string& path, std::size_t skip = 0) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str().substr(skip);
}

}  // namespace

TEST_CASE("gen grid: counts, identity flow payload, seed determinism") {
  const auto dir = work_dir();
  const std::string prefix = (dir / "g9").string();
  RunResult r1 = run_cli("gen --kind grid --dim 2 --n 9 --flow identity --seed 7 --out-prefix " + prefix);
  REQUIRE(r1.exit_code == 0);
  const auto mesh = ftle::load_mesh(prefix + ".coords.bin", prefix + ".faces.bin");
  CHECK(mesh.n_points == 9);
  CHECK(mesh.n_faces == 8);  // 2*(sqrt(9)-1)^2

  // identity flow: payload identical to the coords payload (headers differ in kind)
  CHECK(read_bytes(prefix + ".coords.bin", 24) == read_bytes(prefix + ".flowmap.bin", 24));

  RunResult r2 = run_cli("gen --kind grid --dim 2 --n 9 --flow identity --seed 7 --out-prefix " + prefix);
  REQUIRE(r2.exit_code == 0);
  CHECK(manifest_of(r1)["outputs"] == manifest_of(r2)["outputs"]);
}

TEST_CASE("neighbors: unit square fixture matches the hand-derived list") {
  const auto dir = work_dir();
  const std::string coords = (dir / "sq.coords.csv").string();
  const std::string faces = (dir / "sq.faces.csv").string();
  {
    std::ofstream c(coords);
    c << "0,0\n1,0\n0,1\n1,1\n";
    std::ofstream f(faces);
    f << "0,1,2\n1,3,2\n";
  }
  const std::string out = (dir / "sq.neighbors.csv").string();
  RunResult r = run_cli("neighbors --coords " + coords + " --faces " + faces + " --out " + out);
  REQUIRE(r.exit_code == 0);
  const auto nl = ftle::load_neighbors(out);
  REQUIRE(nl.n_points == 4);
  CHECK(nl.entries == std::vector<std::int32_t>{-1, 1, -1, 2,   // (0,0)
                                                0, -1, -1, 3,   // (1,0)
                                                -1, 3, 0, -1,   // (0,1)
                                                2, -1, 1, -1}); // (1,1)
  CHECK(manifest_of(r).contains("missing_neighbor_stats"));
}

TEST_CASE("neighbors: empty faces gives all -1 and a warning") {
  const auto dir = work_dir();
  const std::string coords = (dir / "e.coords.csv").string();
  const std::string faces = (dir / "e.faces.csv").string();
  {
    std::ofstream c(coords);
    c << "0,0\n1,1\n";
    std::ofstream f(faces);
    f << "# none\n";
  }
  const std::string out = (dir / "e.neighbors.csv").string();
  RunResult r = run_cli("neighbors --coords " + coords + " --faces " + faces + " --out " + out);
  REQUIRE(r.exit_code == 0);
  CHECK(r.err.find("warning") != std::string::npos);
  const auto nl = ftle::load_neighbors(out);
  for (auto e : nl.entries) CHECK(e == -1);
}

TEST_CASE("corrupt magic exits 2 with a bad-magic diagnostic") {
  const auto dir = work_dir();
  const std::string bad = (dir / "bad.bin").string();
  {
    std::ofstream out(bad, std::ios::binary);
    out << "XXXXgarbage payload bytes";
  }
  RunResult r = run_cli("neighbors --coords " + bad + " --faces " + bad + " --out " +
                        (dir / "x.bin").string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("bad magic") != std::string::npos);
}

TEST_CASE("ftle: identity flow yields zeros") {
  const auto dir = work_dir();
  const std::string prefix = (dir / "ident").string();
  REQUIRE(run_cli("gen --kind grid --dim 2 --n 25 --flow identity --out-prefix " + prefix)
              .exit_code == 0);
  const std::string nb = prefix + ".neighbors.bin";
  REQUIRE(run_cli("neighbors --coords " + prefix + ".coords.bin --faces " + prefix +
                  ".faces.bin --out " + nb)
              .exit_code == 0);
  const std::string field_path = prefix + ".field.bin";
  RunResult r = run_cli("ftle --coords " + prefix + ".coords.bin --faces " + prefix +
                        ".faces.bin --flowmap " + prefix + ".flowmap.bin --neighbors " + nb +
                        " --t 1 --out " + field_path);
  REQUIRE(r.exit_code == 0);
  for (double v : ftle::load_field(field_path)) {
    REQUIRE(std::isfinite(v));
    CHECK(std::fabs(v) < 1e-14);
  }
}

TEST_CASE("ftle: linear diag(2,0.5) on a 33x33 grid has interior mean ln 2") {
  const auto dir = work_dir();
  const std::string prefix = (dir / "lin33").string();
  REQUIRE(run_cli("gen --kind grid --dim 2 --n 1089 --flow linear --A 2,0,0,0.5 "
                  "--out-prefix " + prefix)
              .exit_code == 0);
  const std::string field_path = prefix + ".field.bin";
  RunResult r = run_cli("ftle --coords " + prefix + ".coords.bin --faces " + prefix +
                        ".faces.bin --flowmap " + prefix +
                        ".flowmap.bin --t 1 --mode naive --out " + field_path);
  REQUIRE(r.exit_code == 0);
  const auto field = ftle::load_field(field_path);
  double sum = 0.0;
  int count = 0;
  for (int j = 1; j < 32; ++j) {
    for (int i = 1; i < 32; ++i) {
      sum += field[j * 33 + i];
      ++count;
    }
  }
  CHECK(sum / count == doctest::Approx(std::log(2.0)).epsilon(1e-10));
}

TEST_CASE("ftle: naive and decoupled modes agree on a random fixture") {
  const auto dir = work_dir();
  const std::string prefix = (dir / "rand").string();
  REQUIRE(run_cli("gen --kind random --dim 3 --n 80 --flow random --seed 99 --out-prefix " +
                  prefix)
              .exit_code == 0);
  const std::string base = "--coords " + prefix + ".coords.bin --faces " + prefix +
                           ".faces.bin --flowmap " + prefix + ".flowmap.bin --t 2 ";
  REQUIRE(run_cli("ftle " + base + "--mode naive --out " + prefix + ".naive.bin").exit_code == 0);
  REQUIRE(run_cli("neighbors --coords " + prefix + ".coords.bin --faces " + prefix +
                  ".faces.bin --out " + prefix + ".nb.bin")
              .exit_code == 0);
  REQUIRE(run_cli("ftle " + base + "--mode decoupled --neighbors " + prefix + ".nb.bin --out " +
                  prefix + ".dec.bin")
              .exit_code == 0);
  CHECK(ftle::test::fields_match(ftle::load_field(prefix + ".naive.bin"),
                                 ftle::load_field(prefix + ".dec.bin"), 1e-12));
}

TEST_CASE("end-to-end determinism across runs and thread counts") {
  const auto dir = work_dir();
  auto pipeline = [&](const std::string& tag, const std::string& threads) {
    const std::string prefix = (dir / tag).string();
    REQUIRE(run_cli("gen --kind random --dim 2 --n 120 --flow random --seed 4242 "
                    "--out-prefix " + prefix)
                .exit_code == 0);
    REQUIRE(run_cli("neighbors --coords " + prefix + ".coords.bin --faces " + prefix +
                    ".faces.bin --out " + prefix + ".nb.bin")
                .exit_code == 0);
    RunResult r = run_cli("ftle --coords " + prefix + ".coords.bin --faces " + prefix +
                          ".faces.bin --flowmap " + prefix + ".flowmap.bin --neighbors " +
                          prefix + ".nb.bin --t 1 --threads " + threads + " --out " + prefix +
                          ".field.bin");
    REQUIRE(r.exit_code == 0);
    return manifest_of(r)["outputs"].begin().value().get<std::string>();
  };
  const std::string a = pipeline("d1", "1");
  const std::string b = pipeline("d2", "1");
  const std::string c = pipeline("d3", "8");
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE("FTLE_THREADS env var is honored as a fallback") {
  const auto dir = work_dir();
  const std::string prefix = (dir / "env").string();
  REQUIRE(run_cli("gen --kind grid --dim 2 --n 25 --flow identity --out-prefix " + prefix)
              .exit_code == 0);
  const std::string cmd = "FTLE_THREADS=4 " + std::string(FTLE_CLI_PATH) + " ftle --coords " +
                          prefix + ".coords.bin --faces " + prefix + ".faces.bin --flowmap " +
                          prefix + ".flowmap.bin --t 1 --out " + prefix + ".f.bin >/dev/null 2>&1";
  CHECK(std::system(cmd.c_str()) == 0);
}

TEST_CASE("simulate: compute-bound and memory-bound scenarios") {
  RunResult r = run_cli("simulate --dim 2 --freq 300e6 --mem 2ch-ddr4-2400");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["rate"].get<double>() == 300e6);
  CHECK(doc["bound"] == "compute");

  r = run_cli("simulate --dim 3 --freq 357e6 --mem 1ch-ddr4-2400");
  REQUIRE(r.exit_code == 0);
  doc = json::parse(r.out);
  CHECK(doc["bound"] == "memory");
  CHECK(doc["rate"].get<double>() == doctest::Approx(19.2e9 / 168.0).epsilon(1e-12));

  CHECK(run_cli("simulate --dim 2 --mem not-a-memory").exit_code == 1);
}

TEST_CASE("model table2 emits the erratum flag") {
  RunResult r = run_cli("model 2 --format json");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.out);
  const auto& cell = doc["rows"][1]["cells"][3];
  CHECK(cell["percent"] == 42);
  CHECK(cell["known_erratum"] == true);
  CHECK(cell["published_percent"] == 59);

  RunResult text = run_cli("model 2");
  REQUIRE(text.exit_code == 0);
  CHECK(text.out.find("known erratum") != std::string::npos);
}

TEST_CASE("model table1 marks resource rows as reported") {
  RunResult r = run_cli("model 1");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("reported, not computed") != std::string::npos);
  CHECK(r.out.find("48.0+8.0") != std::string::npos);
  CHECK(r.out.find("51.4+8.6") != std::string::npos);
  CHECK(r.out.find("43.2+7.2") != std::string::npos);
}

TEST_CASE("csv output mode writes readable fixtures") {
  const auto dir = work_dir();
  const std::string prefix = (dir / "csvmode").string();
  REQUIRE(run_cli("gen --kind grid --dim 2 --n 9 --flow identity --csv --out-prefix " + prefix)
              .exit_code == 0);
  const auto mesh = ftle::load_mesh(prefix + ".coords.csv", prefix + ".faces.csv");
  CHECK(mesh.n_points == 9);
  CHECK(mesh.n_faces == 8);
}
