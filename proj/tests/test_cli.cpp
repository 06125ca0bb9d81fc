// Contract tests for the command-line tool: file inventory, byte-level
// determinism, exit codes, the CSV schema line, and the rule that every bound
// column dominates its measured column wherever its regime flag is set.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "bandlim/experiments.hpp"

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char* p = std::getenv("BANDLIM_CLI");
  REQUIRE(p != nullptr);
  return p;
}

// exit code of the tool, run with stdout/stderr discarded
int run_cli(const std::string& args) {
  std::string cmd = cli_path() + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return (status >> 8) & 0xff;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.is_open());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  fs::path d = fs::path("cli_tmp") / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

struct csv_table {
  std::map<std::string, size_t> col;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> comments;

  double num(size_t row, const std::string& name) const {
    return std::stod(rows.at(row).at(col.at(name)));
  }
};

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(line);
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

csv_table read_csv(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.is_open());
  std::string line;
  REQUIRE(std::getline(in, line));
  REQUIRE(line == "#schema=1");
  csv_table t;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      t.comments.push_back(line);
      continue;
    }
    if (!have_header) {
      std::vector<std::string> names = split_commas(line);
      for (size_t i = 0; i < names.size(); ++i) t.col[names[i]] = i;
      have_header = true;
      continue;
    }
    t.rows.push_back(split_commas(line));
  }
  REQUIRE(have_header);
  return t;
}

bool has_comment(const csv_table& t, const std::string& needle) {
  for (const std::string& c : t.comments)
    if (c.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("run-all writes the manifest and every file it lists", "[cli]") {
  fs::path dir = fresh_dir("inventory");
  REQUIRE(run_cli("run-all --out " + dir.string()) == 0);

  csv_table manifest = read_csv(dir / "run_all_manifest.csv");
  REQUIRE(manifest.rows.size() >= 10);
  std::vector<std::string> listed;
  for (const auto& row : manifest.rows) {
    const std::string& name = row.at(manifest.col.at("file"));
    listed.push_back(name);
    fs::path p = dir / name;
    INFO("manifest entry: " << name);
    CHECK(fs::exists(p));
    CHECK(fs::file_size(p) > 0);
  }
  for (const char* key :
       {"kernel_scan.csv", "kernel_scan.svg", "project_compare_scaled.csv",
        "coeff_decay_c10.csv", "coeff_decay_c50.csv", "pswf_c5.csv", "pswf_beta_c5.csv"}) {
    INFO("expected file: " << key);
    CHECK(std::find(listed.begin(), listed.end(), key) != listed.end());
  }
}

TEST_CASE("the same config file produces byte-identical CSV output", "[cli]") {
  fs::path dir_a = fresh_dir("det_a");
  fs::path dir_b = fresh_dir("det_b");
  fs::path conf = fs::path("cli_tmp") / "det.conf";
  {
    std::ofstream out(conf, std::ios::binary);
    out << "# small scan, fast enough to run twice\n"
        << "subcommand = kernel-scan\n"
        << "orders = 10, 25\n"
        << "grid_m = 30\n"
        << "out = " << dir_a.string() << "\n";
  }
  REQUIRE(run_cli("kernel-scan --config " + conf.string()) == 0);
  REQUIRE(run_cli("kernel-scan --config " + conf.string() + " --out " + dir_b.string()) == 0);
  std::string a = slurp(dir_a / "kernel_scan.csv");
  std::string b = slurp(dir_b / "kernel_scan.csv");
  REQUIRE(a == b);
  REQUIRE(a.rfind("#schema=1\n", 0) == 0);

  csv_table t = read_csv(dir_a / "kernel_scan.csv");
  REQUIRE(t.rows.size() == 2);
  CHECK(t.num(0, "n") == 10.0);
  CHECK(t.num(1, "n") == 25.0);
}

TEST_CASE("invalid inputs exit with code 2", "[cli]") {
  fs::path dir = fresh_dir("errs");
  std::string out = " --out " + dir.string();
  CHECK(run_cli("project --signal nope" + out) == 2);
  CHECK(run_cli("project --orders ," + out) == 2);
  CHECK(run_cli("kernel-scan --T 0" + out) == 2);
  CHECK(run_cli("project --config cli_tmp/does_not_exist.conf" + out) == 2);

  fs::path conf = fs::path("cli_tmp") / "bad_key.conf";
  {
    std::ofstream o(conf, std::ios::binary);
    o << "subcommand = pswf\nbandwith = 5\n";  // misspelled key must be rejected
  }
  CHECK(run_cli("pswf --config " + conf.string() + out) == 2);
}

TEST_CASE("non-certified truncation exits with code 3", "[cli]") {
  fs::path dir = fresh_dir("trunc");
  CHECK(run_cli("pswf --c 10 --order 8 --out " + dir.string()) == 3);
}

TEST_CASE("bound columns dominate measured columns wherever flagged", "[cli]") {
  fs::path dir = fresh_dir("bounds");
  REQUIRE(run_cli("run-all --out " + dir.string()) == 0);

  SECTION("kernel scan") {
    csv_table t = read_csv(dir / "kernel_scan.csv");
    REQUIRE(!t.rows.empty());
    for (size_t i = 0; i < t.rows.size(); ++i) {
      if (t.num(i, "regime_ok") != 1.0) continue;
      INFO("row " << i);
      CHECK(t.num(i, "E_tilde") <= t.num(i, "uniform_bound"));
      CHECK(t.num(i, "hs_norm") <= t.num(i, "hs_bound"));
    }
  }

  SECTION("coefficient decay") {
    for (const char* name : {"coeff_decay_c10.csv", "coeff_decay_c50.csv"}) {
      csv_table t = read_csv(dir / name);
      REQUIRE(!t.rows.empty());
      for (size_t i = 0; i < t.rows.size(); ++i) {
        INFO(name << " row " << i);
        CHECK(t.num(i, "log10_abs_legendre_coeff") <= t.num(i, "log10_legendre_bound"));
        CHECK(t.num(i, "log10_abs_chebyshev_coeff") <= t.num(i, "log10_chebyshev_bound"));
      }
    }
  }

  SECTION("concentration eigenvalues") {
    csv_table t = read_csv(dir / "pswf_c5.csv");
    REQUIRE(t.rows.size() >= 20);
    REQUIRE(has_comment(t, "trace"));
    double prev = 2.0;
    for (size_t i = 0; i < t.rows.size(); ++i) {
      INFO("row " << i);
      bool above = t.num(i, "above_floor") == 1.0;
      double lam = t.num(i, "lambda");
      if (above) {
        CHECK(lam < prev);
        prev = lam;
        CHECK(lam >= t.num(i, "naz_bound"));
        CHECK(lam <= 1.0);
        double lo = t.num(i, "chi_lower"), hi = t.num(i, "chi_upper");
        double ritz = t.num(i, "chi_ritz");
        CHECK(lo <= ritz);
        CHECK(ritz <= hi);
      }
      if (t.num(i, "bk_regime") == 1.0) CHECK(lam >= t.num(i, "bk_bound"));
    }
  }
}

TEST_CASE("config round-trips through write and parse", "[cli]") {
  bandlim::experiment_config cfg = bandlim::default_config("project");
  cfg.orders = {7, 21};
  cfg.alpha = 0.25;
  cfg.out_dir = "elsewhere";

  std::ostringstream first;
  bandlim::write_config(cfg, first);
  std::istringstream in(first.str());
  bandlim::experiment_config back = bandlim::parse_config(in);
  REQUIRE(back == cfg);

  std::ostringstream second;
  bandlim::write_config(back, second);
  REQUIRE(second.str() == first.str());
}
