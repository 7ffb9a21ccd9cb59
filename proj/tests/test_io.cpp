#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "morphlab/io.hpp"

using namespace morphlab;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  std::filesystem::path p;
  TempDir() {
    p = std::filesystem::temp_directory_path() /
        ("morphlab-test-" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(p);
  }
  ~TempDir() { std::filesystem::remove_all(p); }
  std::string file(const char* name) const { return (p / name).string(); }
};

}  // namespace

TEST_CASE("config parsing") {
  const RunConfig cfg = parse_config_text(
      "# comment\n"
      "d = 2.5\n"
      "b3 = 0.75\n"
      "epsilon = 0.1\n"
      "n1 = 96\n"
      "scheme = etdrk2\n"
      "dealias = 0\n"
      "seed = 42\n"
      "out_dir = results\n");
  CHECK(cfg.params.d == 2.5);
  CHECK(cfg.params.b[2] == 0.75);
  CHECK(cfg.params.b[0] == 1.0);  // untouched default
  CHECK(cfg.epsilon == 0.1);
  CHECK(cfg.solver.n1 == 96);
  CHECK(cfg.solver.scheme == Scheme::EtdRk2);
  CHECK_FALSE(cfg.solver.dealias);
  CHECK(cfg.seed == 42);
  CHECK(cfg.out_dir == "results");

  // unknown keys and malformed numbers carry line numbers
  try {
    parse_config_text("d = 1\nbogus = 3\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line == 2);
  }
  CHECK_THROWS_AS(parse_config_text("dt = fast\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("n1 = 64x\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("scheme = rk4\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("d 1\n"), ConfigError);
}

TEST_CASE("config hash is stable and canonical") {
  RunConfig a, b;
  CHECK(a.hash() == b.hash());
  b.params.c[1] = 1.25;
  CHECK(a.hash() != b.hash());
  // parse of the canonical listing reproduces the hash
  const RunConfig c = parse_config_text(a.canonical());
  CHECK(c.hash() == a.hash());
}

TEST_CASE("snapshot round trip is bitwise") {
  TempDir tmp;
  std::mt19937_64 rng(5);
  std::normal_distribution<double> dist;
  SpectralField2D f(12, 7);
  for (double& v : f.a) v = dist(rng) * std::pow(10.0, int(rng() % 40) - 20);
  f.at(3, 3) = 0.1 + 0.2;  // classic non-representable decimal

  const std::string path = tmp.file("f.snap");
  write_field(path, f, "u1", "deadbeef", 0.75, 0.5);
  const Snapshot snap = read_snapshot(path);
  CHECK(snap.meta.component == "u1");
  CHECK(snap.meta.repr == "coeffs");
  CHECK(snap.meta.config_hash == "deadbeef");
  CHECK(snap.meta.shape == std::vector<int>{12, 7});
  CHECK(snap.meta.h == 0.75);
  REQUIRE(snap.values.size() == f.a.size());
  for (std::size_t k = 0; k < f.a.size(); ++k) CHECK(snap.values[k] == f.a[k]);

  // writing the read-back values reproduces the file byte for byte
  const std::string path2 = tmp.file("f2.snap");
  write_snapshot(path2, snap.meta, snap.values);
  CHECK(slurp(path) == slurp(path2));
}

TEST_CASE("trajectory CSV schema") {
  TempDir tmp;
  std::vector<DiagRow> rows(3);
  rows[0].t = 0.0;
  rows[1].t = 0.1;
  rows[1].norm_z1_Z1 = 1.5;
  rows[1].min_u_all = -1e-9;
  rows[2].t = 0.2;
  rows[2].ode_sum_max = 2.25;

  const std::string path = tmp.file("traj.csv");
  write_trajectory_csv(path, rows, "cafe");
  const std::string text = slurp(path);
  CHECK(text.find("# config_hash=cafe") == 0);

  // header has exactly ten columns, stable across versions
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // hash
  std::getline(in, line);  // header
  CHECK(std::count(line.begin(), line.end(), ',') == 9);
  CHECK(line == kTrajectoryHeader);

  const auto back = read_trajectory_csv(path);
  REQUIRE(back.size() == 3);
  CHECK(back[1].norm_z1_Z1 == 1.5);
  CHECK(back[1].min_u_all == -1e-9);
  CHECK(back[2].ode_sum_max == 2.25);

  // empty trajectory: header-only file
  const std::string path2 = tmp.file("empty.csv");
  write_trajectory_csv(path2, {}, "cafe");
  CHECK(read_trajectory_csv(path2).empty());
}

TEST_CASE("rate table and report CSVs") {
  TempDir tmp;
  RateTable tab;
  tab.param_name = "h";
  tab.param = {1.0, 0.5};
  tab.column_names = {"total", "aux"};
  tab.columns = {{0.5, 0.25}, {1.0, 2.0}};
  write_rate_table_csv(tmp.file("tab.csv"), tab, "beef");
  const std::string text = slurp(tmp.file("tab.csv"));
  CHECK(text.find("h,total,aux") != std::string::npos);
  CHECK(text.find("0.5,0.25,2") != std::string::npos);

  CheckReport rep;
  rep.name = "demo";
  rep.seed = 3;
  rep.rows.push_back({"row-a", 1.0, 2.0, true, false});
  rep.rows.push_back({"row-b", 0.0, 0.0, false, true});
  write_check_report_csv(tmp.file("rep.csv"), rep);
  const std::string rtext = slurp(tmp.file("rep.csv"));
  CHECK(rtext.find("# seed=3") != std::string::npos);
  CHECK(rtext.find("row-a,1,2,pass") != std::string::npos);
  CHECK(rtext.find("row-b,0,0,skipped") != std::string::npos);
}

TEST_CASE("determinism: same config writes identical bytes") {
  TempDir tmp;
  std::vector<DiagRow> rows(2);
  rows[1].t = 0.5;
  rows[1].norm_z2 = 1.0 / 3.0;
  write_trajectory_csv(tmp.file("a.csv"), rows, "00ff");
  write_trajectory_csv(tmp.file("b.csv"), rows, "00ff");
  CHECK(slurp(tmp.file("a.csv")) == slurp(tmp.file("b.csv")));
}

TEST_CASE("output directory override") {
  RunConfig cfg;
  cfg.out_dir = "from-config";
  unsetenv("MORPHLAB_OUT");
  CHECK(resolve_out_dir(cfg) == "from-config");
  setenv("MORPHLAB_OUT", "/tmp/morphlab-env", 1);
  CHECK(resolve_out_dir(cfg) == "/tmp/morphlab-env");
  unsetenv("MORPHLAB_OUT");
}

TEST_CASE("decimal formatting round-trips doubles") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> dist;
  for (int k = 0; k < 1000; ++k) {
    const double v = dist(rng) * std::pow(10.0, int(rng() % 60) - 30);
    CHECK(std::stod(format_double(v)) == v);
  }
}
