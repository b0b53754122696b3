#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

fs::path fresh_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("bfilab_cli_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args, const fs::path& capture) {
  std::string cmd = std::string(BFILAB_CLI_PATH) + " " + args + " > " +
                    capture.string() + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WEXITSTATUS(status);
  result.stdout_text = read_file(capture);
  return result;
}

}  // namespace

TEST_CASE("constants command: manifest, output, checksums") {
  auto dir = fresh_dir("constants");
  write_file(dir / "cfg.json",
             R"({"schema":"constants","a":1,"r":1,"cutoff":1000000})");
  auto res = run_cli("--config " + (dir / "cfg.json").string() + " --out " +
                         (dir / "out").string() + " constants",
                     dir / "stdout.txt");
  REQUIRE(res.exit_code == 0);
  json manifest = json::parse(res.stdout_text);
  CHECK(manifest["command"] == "constants");
  CHECK(manifest["artifact_version"] == "bfilab 0.1.0");
  REQUIRE(manifest["outputs"].size() == 1);
  CHECK(manifest["checksums"].size() == 1);

  json doc = json::parse(read_file(dir / "out" / "constants.json"));
  bool found_c1 = false;
  for (const auto& entry : doc)
    if (entry["kind"] == "C1") {
      found_c1 = true;
      CHECK(std::abs(entry["value"].get<double>() - 1.9435964) < 1e-6);
      CHECK(entry["cutoff"] == 1000000);
      CHECK(entry["tail_bound"].get<double>() > 0.0);
    }
  CHECK(found_c1);
  fs::remove_all(dir);
}

TEST_CASE("config validation failures exit 2 with machine-readable JSON") {
  auto dir = fresh_dir("badcfg");
  write_file(dir / "unknown.json",
             R"({"schema":"constants","a":1,"r":1,"cutoff":10000,"typo":1})");
  auto res = run_cli("--config " + (dir / "unknown.json").string() +
                         " constants", dir / "s1.txt");
  CHECK(res.exit_code == 2);
  json err = json::parse(res.stdout_text);
  CHECK(err["error"]["type"] == "usage");

  write_file(dir / "noschema.json", R"({"a":1,"r":1,"cutoff":10000})");
  CHECK(run_cli("--config " + (dir / "noschema.json").string() + " constants",
                dir / "s2.txt").exit_code == 2);

  write_file(dir / "wrong.json", R"({"schema":"delta","a":1,"r":1,"cutoff":1000})");
  CHECK(run_cli("--config " + (dir / "wrong.json").string() + " constants",
                dir / "s3.txt").exit_code == 2);

  // Semantic domain error from the library also maps to exit 2.
  write_file(dir / "noncoprime.json",
             R"({"schema":"constants","a":2,"r":4,"cutoff":10000})");
  CHECK(run_cli("--config " + (dir / "noncoprime.json").string() + " constants",
                dir / "s4.txt").exit_code == 2);
  fs::remove_all(dir);
}

TEST_CASE("delta: byte-identical outputs across reruns and thread counts") {
  auto dir = fresh_dir("delta");
  write_file(dir / "cfg.json",
             R"({"schema":"delta","x":200000,"r":3,"q_max":400,"a":5,"method":"stepping"})");
  auto r1 = run_cli("--config " + (dir / "cfg.json").string() + " --out " +
                        (dir / "o1").string() + " --threads 1 delta",
                    dir / "s1.txt");
  auto r8 = run_cli("--config " + (dir / "cfg.json").string() + " --out " +
                        (dir / "o8").string() + " --threads 8 delta",
                    dir / "s8.txt");
  REQUIRE(r1.exit_code == 0);
  REQUIRE(r8.exit_code == 0);
  CHECK(read_file(dir / "o1" / "delta.csv") == read_file(dir / "o8" / "delta.csv"));
  // Same-thread rerun reproduces identical checksums in the manifest.
  auto r1b = run_cli("--config " + (dir / "cfg.json").string() + " --out " +
                         (dir / "o1b").string() + " --threads 1 delta",
                     dir / "s1b.txt");
  json m1 = json::parse(r1.stdout_text);
  json m1b = json::parse(r1b.stdout_text);
  auto digest = [](const json& m) {
    return m["checksums"].begin().value().get<std::string>();
  };
  CHECK(digest(m1) == digest(m1b));
  // Documented column order.
  std::string csv = read_file(dir / "o1" / "delta.csv");
  CHECK(csv.substr(0, csv.find('\n')) == "x,r,q_max,a,method,value");
  fs::remove_all(dir);
}

TEST_CASE("bfi-average: empty experiment emits header-only CSV, aggregate 0") {
  auto dir = fresh_dir("bfi");
  write_file(dir / "cfg.json",
             R"({"schema":"bfi-average","x":100000,"R":0.9,"M":10,"a":1,"mode":"dyadic"})");
  auto res = run_cli("--config " + (dir / "cfg.json").string() + " --out " +
                         (dir / "out").string() + " bfi-average",
                     dir / "s.txt");
  REQUIRE(res.exit_code == 0);
  CHECK(read_file(dir / "out" / "bfi_rows.csv") == "r,inner,prediction,abs_dev\n");
  json summary = json::parse(read_file(dir / "out" / "bfi_summary.json"));
  CHECK(summary["aggregate"] == 0.0);
  fs::remove_all(dir);
}

TEST_CASE("bfi-average guard: R beyond x^lambda needs the override flag") {
  auto dir = fresh_dir("bfi_guard");
  write_file(dir / "cfg.json",
             R"({"schema":"bfi-average","x":100000,"R":4,"M":10,"a":1,"mode":"dyadic"})");
  CHECK(run_cli("--config " + (dir / "cfg.json").string() + " --out " +
                    (dir / "out").string() + " bfi-average",
                dir / "s.txt").exit_code == 2);
  auto res = run_cli("--config " + (dir / "cfg.json").string() + " --out " +
                         (dir / "out").string() +
                         " --override-lambda-guard bfi-average",
                     dir / "s2.txt");
  CHECK(res.exit_code == 0);
  json summary = json::parse(read_file(dir / "out" / "bfi_summary.json"));
  CHECK(summary["warning"].get<std::string>().substr(0, 7) == "warning");
  fs::remove_all(dir);
}

TEST_CASE("titchmarsh and lemma-check CSV columns match the documented order") {
  auto dir = fresh_dir("columns");
  write_file(dir / "t.json", R"({"schema":"titchmarsh","x":50000,"q_max":2,"a":1})");
  auto rt = run_cli("--config " + (dir / "t.json").string() + " --out " +
                        (dir / "t").string() + " titchmarsh",
                    dir / "st.txt");
  REQUIRE(rt.exit_code == 0);
  std::string tcsv = read_file(dir / "t" / "titchmarsh.csv");
  CHECK(tcsv.substr(0, tcsv.find('\n')) == "x,q,a,sum,main_term,error,rel_error");
  json tsum = json::parse(read_file(dir / "t" / "titchmarsh_summary.json"));
  CHECK(tsum["x_over_logA"].contains("A1"));
  CHECK(tsum["x_over_logA"].contains("A3"));

  write_file(dir / "l.json",
             R"({"schema":"lemma-check","kind":"weighted","a":1,"r":1,"M_values":[1000,10000,100000,1000000]})");
  auto rl = run_cli("--config " + (dir / "l.json").string() + " --out " +
                        (dir / "l").string() + " lemma-check",
                    dir / "sl.txt");
  REQUIRE(rl.exit_code == 0);
  std::string lcsv = read_file(dir / "l" / "lemma_check.csv");
  CHECK(lcsv.substr(0, lcsv.find('\n')) == "kind,a,r,M,lhs,main_term,residual");
  json lsum = json::parse(read_file(dir / "l" / "lemma_check_summary.json"));
  CHECK(lsum["weighted_variant"] == "statement");
  CHECK(lsum["fit"]["slope"].get<double>() >= 1.2);
  fs::remove_all(dir);
}

TEST_CASE("switch-check worked instance through the CLI") {
  auto dir = fresh_dir("switch");
  write_file(dir / "cfg.json", R"({"schema":"switch-check","x":30,"r":2,"P":3,"a":1})");
  auto res = run_cli("--config " + (dir / "cfg.json").string() + " --out " +
                         (dir / "out").string() + " switch-check",
                     dir / "s.txt");
  REQUIRE(res.exit_code == 0);
  json rep = json::parse(read_file(dir / "out" / "switch_report.json"));
  CHECK(std::abs(rep["diff"].get<double>() - std::log(11.0)) < 1e-12);
  CHECK(rep["unmatched"].size() == 1);
  fs::remove_all(dir);
}

TEST_CASE("cache lifecycle: build, verify, corrupt -> exit 4, purge") {
  auto dir = fresh_dir("cache");
  fs::path cache = dir / "cachedir";
  write_file(dir / "build.json", R"({"schema":"cache","action":"build","lo":1,"hi":500000})");
  write_file(dir / "verify.json", R"({"schema":"cache","action":"verify","lo":1,"hi":500000})");
  write_file(dir / "purge.json", R"({"schema":"cache","action":"purge","lo":1,"hi":500000})");

  std::string base = "--cache " + cache.string() + " --out " + (dir / "out").string();
  auto b1 = run_cli("--config " + (dir / "build.json").string() + " " + base + " cache",
                    dir / "s1.txt");
  REQUIRE(b1.exit_code == 0);
  CHECK(run_cli("--config " + (dir / "verify.json").string() + " " + base + " cache",
                dir / "s2.txt").exit_code == 0);

  // Idempotent rebuild: same file bytes.
  json m1 = json::parse(b1.stdout_text);
  std::string file = json::parse(read_file(dir / "out" / "cache_report.json"))["files"][0];
  std::string bytes_before = read_file(file);
  auto b2 = run_cli("--config " + (dir / "build.json").string() + " " + base + " cache",
                    dir / "s3.txt");
  REQUIRE(b2.exit_code == 0);
  CHECK(read_file(file) == bytes_before);

  // Corrupt one byte: verify exits 4 naming the checksum.
  std::string corrupted = bytes_before;
  corrupted[corrupted.size() - 5] ^= 0x33;
  std::ofstream(file, std::ios::binary | std::ios::trunc) << corrupted;
  auto bad = run_cli("--config " + (dir / "verify.json").string() + " " + base + " cache",
                     dir / "s4.txt");
  CHECK(bad.exit_code == 4);
  json err = json::parse(bad.stdout_text);
  CHECK(err["error"]["message"].get<std::string>().find("checksum") !=
        std::string::npos);

  CHECK(run_cli("--config " + (dir / "purge.json").string() + " " + base + " cache",
                dir / "s5.txt").exit_code == 0);
  // Verify now reports the files as absent (exit 4 via the report).
  auto after = run_cli("--config " + (dir / "verify.json").string() + " " + base + " cache",
                       dir / "s6.txt");
  CHECK(after.exit_code == 4);
  fs::remove_all(dir);
}

TEST_CASE("resource overrun exits 3") {
  auto dir = fresh_dir("resource");
  write_file(dir / "cfg.json",
             R"({"schema":"delta","x":99999999999,"r":1,"q_max":10,"a":1,"method":"stepping"})");
  auto res = run_cli("--config " + (dir / "cfg.json").string() + " --out " +
                         (dir / "out").string() + " delta",
                     dir / "s.txt");
  CHECK(res.exit_code == 3);
  json err = json::parse(res.stdout_text);
  CHECK(err["error"]["type"] == "resource");
  fs::remove_all(dir);
}
