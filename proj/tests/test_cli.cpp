#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  const std::string cmd =
      env_prefix + std::string(FAULTBOUND_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path temp_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "faultbound_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream ss(text);
  for (std::string line; std::getline(ss, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

double field_of(const std::string& csv, const std::string& row_prefix,
                const std::string& column, int occurrence = 0) {
  const auto lines = lines_of(csv);
  const auto header = split(lines.at(0), ',');
  std::size_t col = header.size();
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == column) col = i;
  REQUIRE(col < header.size());
  int seen = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].rfind(row_prefix, 0) == 0) {
      if (seen++ == occurrence) return std::strtod(split(lines[i], ',').at(col).c_str(), nullptr);
    }
  }
  FAIL("row not found: ", row_prefix);
  return 0.0;
}

}  // namespace

TEST_CASE("gen writes netlists and analyze evaluates them") {
  const fs::path p16 = temp_dir() / "p16.bench";
  const CliResult gen = run_cli("gen parity --n 16 --k 2 -o " + p16.string());
  CHECK(gen.exit_code == 0);
  REQUIRE(fs::exists(p16));

  const CliResult an = run_cli("analyze " + p16.string() +
                               " --epsilon 0.001,0.01,0.1 --delta 0.01 --vectors 20000");
  CHECK(an.exit_code == 0);
  const auto lines = lines_of(an.out);
  REQUIRE(lines.size() == 4);  // header + one row per epsilon
  CHECK(field_of(an.out, "p16,0.01,", "total_energy_ratio_lb") ==
        doctest::Approx(1.4158).epsilon(8e-3));
  CHECK(field_of(an.out, "p16,0.01,", "s") == 16);
  CHECK(field_of(an.out, "p16,0.01,", "d0") == 4);
}

TEST_CASE("analyze with epsilon zero reports unit ratios") {
  const fs::path p8 = temp_dir() / "p8.bench";
  run_cli("gen parity --n 8 --k 2 -o " + p8.string());
  const CliResult an = run_cli("analyze " + p8.string() + " --epsilon 0 --vectors 4096");
  CHECK(an.exit_code == 0);
  CHECK(field_of(an.out, "p8,0,", "total_energy_ratio_lb") == doctest::Approx(1.0));
  CHECK(field_of(an.out, "p8,0,", "delay_ratio_lb") == doctest::Approx(1.0));
}

TEST_CASE("usage errors exit 1") {
  CHECK(run_cli("gen parity --n 1").exit_code == 1);
  const fs::path p8 = temp_dir() / "p8.bench";
  run_cli("gen parity --n 8 -o " + p8.string());
  CHECK(run_cli("analyze " + p8.string() + " --delta 0.6").exit_code == 1);
  CHECK(run_cli("analyze " + p8.string() + " --epsilon 0.7").exit_code == 1);
  CHECK(run_cli("simulate " + p8.string() + " --nmr 2").exit_code == 1);
  CHECK(run_cli("frobnicate").exit_code == 1);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("input errors exit 2") {
  CHECK(run_cli("analyze /nonexistent/missing.bench").exit_code == 2);
  const fs::path bad = temp_dir() / "bad.bench";
  std::ofstream(bad) << "INPUT(a)\nz = AND(a\n";
  CHECK(run_cli("analyze " + bad.string()).exit_code == 2);
  CHECK(run_cli("simulate " + bad.string()).exit_code == 2);
  CHECK(run_cli("bench " + bad.string()).exit_code == 2);
}

TEST_CASE("all-infeasible analyses exit 3") {
  const fs::path p16 = temp_dir() / "p16b.bench";
  run_cli("gen parity --n 16 --k 2 -o " + p16.string());
  // k = 2 and epsilon = 0.3: no depth bound exists for any row.
  const CliResult an =
      run_cli("analyze " + p16.string() + " --epsilon 0.3 --vectors 4096");
  CHECK(an.exit_code == 3);
}

TEST_CASE("simulate reports the empirical delta") {
  const fs::path p16 = temp_dir() / "p16c.bench";
  run_cli("gen parity --n 16 --k 2 -o " + p16.string());
  const CliResult sim = run_cli("simulate " + p16.string() +
                                " --epsilon 0.05 --vectors 20000 --seed 7");
  CHECK(sim.exit_code == 0);
  double delta = -1.0;
  for (const std::string& line : lines_of(sim.out)) {
    if (line.rfind("output_error_delta: ", 0) == 0)
      delta = std::strtod(line.substr(20).c_str(), nullptr);
  }
  CHECK(delta == doctest::Approx(0.39705).epsilon(0.03));

  const CliResult clean = run_cli("simulate " + p16.string() + " --epsilon 0 --vectors 4096");
  bool saw_zero = false;
  for (const std::string& line : lines_of(clean.out))
    if (line == "output_error_delta: 0") saw_zero = true;
  CHECK(saw_zero);
}

TEST_CASE("simulate with nmr lowers the delta for the same seed") {
  const fs::path p8 = temp_dir() / "p8d.bench";
  run_cli("gen parity --n 8 --k 2 -o " + p8.string());
  auto delta_of = [&](const std::string& extra) {
    const CliResult r = run_cli("simulate " + p8.string() +
                                " --epsilon 0.01 --vectors 50000 --seed 3 " + extra);
    for (const std::string& line : lines_of(r.out))
      if (line.rfind("output_error_delta: ", 0) == 0)
        return std::strtod(line.substr(20).c_str(), nullptr);
    return -1.0;
  };
  const double plain = delta_of("");
  const double voted = delta_of("--nmr 3");
  CHECK(plain > 0.0);
  CHECK(voted < plain);
}

TEST_CASE("sweep presets") {
  const CliResult fig3 = run_cli("sweep --figure 3");
  CHECK(fig3.exit_code == 0);
  CHECK(lines_of(fig3.out).size() == 1 + 3 * 50);  // k = 2, 3, 4 curve groups

  const CliResult fig4 = run_cli("sweep --figure 4 --sw0 0.5 --points 10");
  CHECK(fig4.exit_code == 0);
  const auto lines = lines_of(fig4.out);
  CHECK(lines.size() == 1 + 10);
  for (std::size_t i = 1; i < lines.size(); ++i)
    CHECK(field_of(fig4.out, "fig4_sw0.5", "leakage_ratio", int(i) - 1) ==
          doctest::Approx(1.0).epsilon(1e-12));

  const CliResult custom = run_cli("sweep --param epsilon --points 50 --log");
  CHECK(custom.exit_code == 0);
  CHECK(lines_of(custom.out).size() == 51);

  const CliResult fig2 = run_cli("sweep --figure 2 --epsilons 0.1,0.3 --points 9");
  CHECK(fig2.exit_code == 0);
  CHECK(lines_of(fig2.out).size() == 1 + 2 * 9);
}

TEST_CASE("bench over a directory is deterministic across jobs") {
  const fs::path dir = temp_dir() / "circuits";
  fs::create_directories(dir);
  run_cli("gen parity --n 16 --k 2 -o " + (dir / "parity16.bench").string());
  run_cli("gen adder --width 4 -o " + (dir / "adder4.bench").string());
  run_cli("gen multiplier --width 3 -o " + (dir / "mult3.bench").string());

  const std::string base = "bench --dir " + dir.string() +
                           " --epsilons 0.001,0.01,0.1 --delta 0.01 --vectors 20000 --seed 11";
  const CliResult one = run_cli(base + " --jobs 1");
  const CliResult eight = run_cli(base + " --jobs 8");
  CHECK(one.exit_code == 0);
  CHECK(one.out == eight.out);
  CHECK(lines_of(one.out).size() == 1 + 9);
}

TEST_CASE("bench on an empty directory emits only the header") {
  const fs::path dir = temp_dir() / "empty";
  fs::create_directories(dir);
  const CliResult r = run_cli("bench --dir " + dir.string());
  CHECK(r.exit_code == 0);
  CHECK(lines_of(r.out).size() == 1);
}

TEST_CASE("seed falls back to the environment variable") {
  const fs::path p8 = temp_dir() / "p8e.bench";
  run_cli("gen parity --n 8 --k 2 -o " + p8.string());
  const std::string cmd = "simulate " + p8.string() + " --epsilon 0.1 --vectors 4096";
  const CliResult a = run_cli(cmd, "FAULTBOUND_SEED=5 ");
  const CliResult b = run_cli(cmd, "FAULTBOUND_SEED=5 ");
  const CliResult c = run_cli(cmd, "FAULTBOUND_SEED=6 ");
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  // an explicit flag wins over the environment
  const CliResult d = run_cli(cmd + " --seed 6", "FAULTBOUND_SEED=5 ");
  CHECK(d.out == c.out);
}
