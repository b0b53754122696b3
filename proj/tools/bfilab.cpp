// bfilab: command-line front end for the arithmetic-progression experiment
// toolkit. Every subcommand reads a JSON config (with a mandatory "schema"
// field; unknown keys are rejected), writes its CSV/JSON outputs into --out,
// and prints a run manifest with per-output checksums to stdout.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bfilab/cache.hpp"
#include "bfilab/constants.hpp"
#include "bfilab/errors.hpp"
#include "bfilab/experiments.hpp"
#include "bfilab/io.hpp"
#include "bfilab/parallel.hpp"
#include "bfilab/progressions.hpp"
#include "bfilab/titchmarsh.hpp"
#include "bfilab/totient_sums.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kArtifactVersion = "bfilab 0.1.0";

class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

struct RunContext {
  std::string command;
  json config;
  fs::path out_dir;
  std::string cache_dir;
  bool override_lambda_guard = false;
  std::vector<std::string> outputs;  // paths written, in order
};

json load_config(const std::string& path, const std::string& schema,
                 const std::set<std::string>& allowed_keys,
                 const std::set<std::string>& required_keys) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config: " + path);
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("config parse error: " + std::string(e.what()));
  }
  if (!cfg.is_object()) throw UsageError("config must be a JSON object");
  if (!cfg.contains("schema") || !cfg["schema"].is_string())
    throw UsageError("config missing required string field \"schema\"");
  if (cfg["schema"].get<std::string>() != schema)
    throw UsageError("config schema mismatch: expected \"" + schema + "\"");
  for (const auto& [key, value] : cfg.items())
    if (key != "schema" && !allowed_keys.count(key))
      throw UsageError("config contains unknown key \"" + key + "\"");
  for (const auto& key : required_keys)
    if (!cfg.contains(key))
      throw UsageError("config missing required key \"" + key + "\"");
  return cfg;
}

void write_text(RunContext& ctx, const std::string& name,
                const std::string& content) {
  fs::create_directories(ctx.out_dir);
  fs::path path = ctx.out_dir / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open output: " + path.string());
  out << content;
  out.close();
  ctx.outputs.push_back(path.string());
}

void write_json(RunContext& ctx, const std::string& name, const json& doc) {
  write_text(ctx, name, doc.dump(2) + "\n");
}

json constant_to_json(const bfilab::ConstantValue& v) {
  return json{{"kind", bfilab::constant_kind_name(v.kind)},
              {"a", v.a},
              {"r", v.r},
              {"value", v.value},
              {"cutoff", v.cutoff},
              {"tail_bound", v.tail_bound}};
}

// ---------------------------------------------------------------------------
// Subcommand bodies
// ---------------------------------------------------------------------------

void run_constants(RunContext& ctx, const std::string& config_path) {
  json cfg = load_config(config_path, "constants", {"a", "r", "cutoff"},
                         {"a", "r", "cutoff"});
  int64_t a = cfg.at("a").get<int64_t>();
  uint64_t r = cfg.at("r").get<uint64_t>();
  uint64_t cutoff = cfg.at("cutoff").get<uint64_t>();
  ctx.config = cfg;

  bfilab::ConstantsEngine engine(cutoff);
  auto family = engine.family(a, r);
  json doc = json::array();
  doc.push_back(constant_to_json(family.c1));
  doc.push_back(constant_to_json(family.c2));
  doc.push_back(constant_to_json(family.c3));
  doc.push_back(constant_to_json(family.c5));
  doc.push_back(constant_to_json(engine.c6()));
  doc.push_back(constant_to_json(engine.gamma()));
  doc.push_back(constant_to_json(engine.zeta_ratio()));
  doc.push_back(constant_to_json(engine.prime_sum_phi()));
  doc.push_back(constant_to_json(engine.prime_sum_sq()));
  write_json(ctx, "constants.json", doc);
}

void run_lemma_check(RunContext& ctx, const std::string& config_path) {
  json cfg = load_config(config_path, "lemma-check",
                         {"kind", "a", "r", "M_values", "cutoff"},
                         {"kind", "a", "r", "M_values"});
  std::string kind = cfg.at("kind").get<std::string>();
  int64_t a = cfg.at("a").get<int64_t>();
  uint64_t r = cfg.at("r").get<uint64_t>();
  std::vector<double> m_values = cfg.at("M_values").get<std::vector<double>>();
  uint64_t cutoff = cfg.value("cutoff", uint64_t(1'000'000));
  ctx.config = cfg;

  if (kind != "1" && kind != "2" && kind != "3" && kind != "4" &&
      kind != "weighted")
    throw UsageError("lemma-check kind must be \"1\"..\"4\" or \"weighted\"");
  if (m_values.empty()) throw UsageError("lemma-check needs at least one M");

  bfilab::ConstantsEngine engine(cutoff);
  std::vector<bfilab::ResidualRow> rows;
  std::string variant = "";
  for (double M : m_values) {
    if (kind == "weighted") {
      auto w = bfilab::weighted_sum(a, r, M, engine);
      rows.push_back(w.row);
      variant = w.reported == bfilab::WeightVariant::kStatement ? "statement"
                                                                : "proof";
    } else {
      rows.push_back(bfilab::partial_sum(kind[0] - '0', a, r, M, engine));
    }
  }

  std::ostringstream csv;
  bfilab::CsvWriter writer(csv);
  writer.row({"kind", "a", "r", "M", "lhs", "main_term", "residual"});
  for (const auto& row : rows)
    writer.row({kind, std::to_string(a), std::to_string(r),
                bfilab::format_double(row.M), bfilab::format_double(row.lhs),
                bfilab::format_double(row.main_term),
                bfilab::format_double(row.residual)});
  write_text(ctx, "lemma_check.csv", csv.str());

  json summary;
  summary["schema"] = "lemma-check-summary";
  summary["kind"] = kind;
  summary["a"] = a;
  summary["r"] = r;
  if (!variant.empty()) summary["weighted_variant"] = variant;
  bool fit_possible = rows.size() >= 3;
  if (fit_possible) {
    try {
      auto fit = bfilab::fit_error_exponent(rows);
      summary["fit"] = json{{"slope", fit.fit.slope},
                            {"intercept", fit.fit.intercept},
                            {"rsq", fit.fit.rsq},
                            {"points", fit.fit.points}};
      summary["excluded_zero_rows"] = fit.excluded_zero_rows;
    } catch (const std::domain_error& e) {
      summary["fit"] = nullptr;
      summary["fit_skipped"] = e.what();
    }
  } else {
    summary["fit"] = nullptr;
    summary["fit_skipped"] = "fewer than 3 rows";
  }
  write_json(ctx, "lemma_check_summary.json", summary);
}

void run_switch_check(RunContext& ctx, const std::string& config_path) {
  json cfg = load_config(config_path, "switch-check", {"x", "r", "P", "a"},
                         {"x", "r", "P", "a"});
  uint64_t x = cfg.at("x").get<uint64_t>();
  uint64_t r = cfg.at("r").get<uint64_t>();
  double P = cfg.at("P").get<double>();
  int64_t a = cfg.at("a").get<int64_t>();
  ctx.config = cfg;

  bfilab::PrimeTable pt(x, ctx.cache_dir);
  auto report = bfilab::divisor_switch_check(pt, x, r, P, a);

  json doc;
  doc["schema"] = "switch-report";
  doc["x"] = report.x;
  doc["r"] = report.r;
  doc["P"] = report.P;
  doc["a"] = report.a;
  doc["lhs"] = report.lhs;
  doc["rhs"] = report.rhs;
  doc["diff"] = report.diff;
  json lhs_pairs = json::array();
  for (const auto& pr : report.lhs_pairs)
    lhs_pairs.push_back(json::array({pr.p, pr.cofactor}));
  doc["lhs_pairs"] = lhs_pairs;
  json rhs_pairs = json::array();
  for (const auto& pr : report.rhs_pairs)
    rhs_pairs.push_back(json::array({pr.p, pr.cofactor}));
  doc["rhs_pairs"] = rhs_pairs;
  json unmatched = json::array();
  for (const auto& u : report.unmatched)
    unmatched.push_back(json{{"p", u.p},
                             {"cofactor", u.cofactor},
                             {"side", std::string(1, u.side)},
                             {"violations", u.violations}});
  doc["unmatched"] = unmatched;
  write_json(ctx, "switch_report.json", doc);
}

void run_delta(RunContext& ctx, const std::string& config_path) {
  json cfg = load_config(config_path, "delta",
                         {"x", "r", "q_max", "a", "method"},
                         {"x", "r", "q_max", "a", "method"});
  uint64_t x = cfg.at("x").get<uint64_t>();
  uint64_t r = cfg.at("r").get<uint64_t>();
  uint64_t q_max = cfg.at("q_max").get<uint64_t>();
  int64_t a = cfg.at("a").get<int64_t>();
  std::string method_name = cfg.at("method").get<std::string>();
  ctx.config = cfg;

  bfilab::DeltaMethod method;
  if (method_name == "stepping")
    method = bfilab::DeltaMethod::kStepping;
  else if (method_name == "divisor_transform")
    method = bfilab::DeltaMethod::kDivisorTransform;
  else
    throw UsageError("delta method must be stepping or divisor_transform");

  bfilab::PrimeTable pt(x, ctx.cache_dir);
  double value = bfilab::delta_sum(pt, x, r, q_max, a, method);

  std::ostringstream csv;
  bfilab::CsvWriter writer(csv);
  writer.row({"x", "r", "q_max", "a", "method", "value"});
  writer.row({std::to_string(x), std::to_string(r), std::to_string(q_max),
              std::to_string(a), method_name, bfilab::format_double(value)});
  write_text(ctx, "delta.csv", csv.str());
}

void run_titchmarsh(RunContext& ctx, const std::string& config_path) {
  json cfg = load_config(config_path, "titchmarsh",
                         {"x", "q_max", "a", "cutoff"}, {"x", "q_max", "a"});
  uint64_t x = cfg.at("x").get<uint64_t>();
  uint64_t q_max = cfg.at("q_max").get<uint64_t>();
  int64_t a = cfg.at("a").get<int64_t>();
  uint64_t cutoff = cfg.value("cutoff", uint64_t(1'000'000));
  ctx.config = cfg;

  std::string warning;
  if (static_cast<double>(q_max) > std::pow(static_cast<double>(x), 0.1) &&
      ctx.override_lambda_guard) {
    warning = "warning: Q = " + std::to_string(q_max) +
              " exceeds x^(1/10) (override in effect)";
    std::cerr << warning << "\n";
  }

  bfilab::ConstantsEngine engine(cutoff);
  bfilab::PrimeTable pt(x + bfilab::abs_u64(a), ctx.cache_dir);
  auto table = bfilab::bv_titchmarsh_table(pt, engine, x, q_max, a,
                                           /*use_global_tau=*/true,
                                           ctx.override_lambda_guard);

  std::ostringstream csv;
  bfilab::CsvWriter writer(csv);
  writer.row({"x", "q", "a", "sum", "main_term", "error", "rel_error"});
  for (const auto& row : table.rows)
    writer.row({std::to_string(row.x), std::to_string(row.q),
                std::to_string(row.a), bfilab::format_double(row.sum),
                bfilab::format_double(row.main_term),
                bfilab::format_double(row.error),
                bfilab::format_double(row.error / row.main_term)});
  write_text(ctx, "titchmarsh.csv", csv.str());

  json summary;
  summary["schema"] = "titchmarsh-summary";
  summary["x"] = x;
  summary["Q"] = q_max;
  summary["a"] = a;
  summary["total_abs_error"] = table.aggregate;
  summary["skipped_noncoprime_q"] = table.skipped;
  summary["x_over_logA"] = json{{"A1", table.x_over_logA[0]},
                                {"A2", table.x_over_logA[1]},
                                {"A3", table.x_over_logA[2]}};
  if (!warning.empty()) summary["warning"] = warning;
  write_json(ctx, "titchmarsh_summary.json", summary);
}

void run_bfi_average(RunContext& ctx, const std::string& config_path) {
  json cfg = load_config(
      config_path, "bfi-average",
      {"x", "R", "M", "a", "mode", "lambda_guard", "cutoff"},
      {"x", "R", "M", "a", "mode"});
  bfilab::ExperimentConfig ec;
  ec.x = cfg.at("x").get<uint64_t>();
  ec.R = cfg.at("R").get<double>();
  ec.M = cfg.at("M").get<double>();
  ec.a = cfg.at("a").get<int64_t>();
  std::string mode = cfg.at("mode").get<std::string>();
  if (mode == "dyadic")
    ec.mode = bfilab::ExperimentMode::kDyadic;
  else if (mode == "full")
    ec.mode = bfilab::ExperimentMode::kFull;
  else
    throw UsageError("bfi-average mode must be dyadic or full");
  ec.lambda_guard = cfg.value("lambda_guard", 0.1);
  ec.override_lambda_guard = ctx.override_lambda_guard;
  uint64_t cutoff = cfg.value("cutoff", uint64_t(1'000'000));
  ctx.config = cfg;

  std::string warning = ec.validate();
  if (!warning.empty()) std::cerr << warning << "\n";

  bfilab::ConstantsEngine engine(cutoff);
  bfilab::PrimeTable pt(ec.x, ctx.cache_dir);
  auto table = bfilab::deviation_table(pt, ec, engine);

  std::ostringstream csv;
  bfilab::CsvWriter writer(csv);
  writer.row({"r", "inner", "prediction", "abs_dev"});
  for (const auto& row : table.rows)
    writer.row({std::to_string(row.r), bfilab::format_double(row.inner),
                bfilab::format_double(row.prediction),
                bfilab::format_double(row.abs_dev)});
  write_text(ctx, "bfi_rows.csv", csv.str());

  json summary;
  summary["schema"] = "bfi-average-summary";
  summary["x"] = ec.x;
  summary["R"] = ec.R;
  summary["M"] = ec.M;
  summary["a"] = ec.a;
  summary["mode"] = mode;
  summary["aggregate"] = table.aggregate;
  summary["ref_m_decay"] = table.ref_m_decay;  // x / M^(743/538)
  summary["x_over_logA"] = json{{"A1", table.x_over_logA[0]},
                                {"A2", table.x_over_logA[1]},
                                {"A3", table.x_over_logA[2]}};
  if (!warning.empty()) summary["warning"] = warning;
  if (ec.mode == bfilab::ExperimentMode::kFull) {
    auto nu = bfilab::nu_measurement(pt, ec, engine);
    summary["nu"] = json{{"measured_nu", nu.measured_nu},
                         {"predicted_nu", nu.predicted_nu},
                         {"bracket", nu.bracket},
                         {"raw_aggregate", nu.raw_aggregate}};
  }
  write_json(ctx, "bfi_summary.json", summary);
}

void run_cache(RunContext& ctx, const std::string& config_path) {
  json cfg = load_config(config_path, "cache", {"action", "lo", "hi"},
                         {"action"});
  std::string action = cfg.at("action").get<std::string>();
  uint64_t lo = cfg.value("lo", uint64_t(1));
  uint64_t hi = cfg.value("hi", uint64_t(2));
  ctx.config = cfg;

  if (ctx.cache_dir.empty())
    throw UsageError("cache command requires --cache DIR");
  auto report = bfilab::cache_manage(action, lo, hi, ctx.cache_dir);

  json doc;
  doc["schema"] = "cache-report";
  doc["action"] = report.action;
  doc["lo"] = report.lo;
  doc["hi"] = report.hi;
  doc["ok"] = report.ok;
  doc["detail"] = report.detail;
  doc["files"] = report.files;
  write_json(ctx, "cache_report.json", doc);
  if (!report.ok)
    throw bfilab::InvariantError("cache verify invariant breach: " + report.detail);
}

json build_manifest(const RunContext& ctx, double wall_time) {
  json checksums;
  for (const auto& path : ctx.outputs) {
    std::ifstream in(path, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    std::ostringstream hex;
    hex << std::hex << bfilab::fnv1a64(bytes.data(), bytes.size());
    checksums[path] = hex.str();
  }
  return json{{"command", ctx.command},
              {"config", ctx.config},
              {"artifact_version", kArtifactVersion},
              {"outputs", ctx.outputs},
              {"wall_time", wall_time},
              {"checksums", checksums}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale experiments on primes in arithmetic progressions"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::string cache_dir;
  int threads = 0;
  bool override_guard = false;

  app.add_option("--config", config_path, "JSON config path")->required();
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--threads", threads, "worker thread bound (0 = hardware)");
  app.add_option("--cache", cache_dir, "sieve cache directory");
  app.add_flag("--override-lambda-guard", override_guard,
               "run past the R <= x^lambda guard with a warning");

  auto* cmd_constants = app.add_subcommand("constants", "singular-series constants");
  auto* cmd_lemma = app.add_subcommand("lemma-check", "totient partial/weighted sums");
  auto* cmd_switch = app.add_subcommand("switch-check", "divisor switch bookkeeping");
  auto* cmd_delta = app.add_subcommand("delta", "deviation q-sum for one modulus family");
  auto* cmd_titch = app.add_subcommand("titchmarsh", "divisor-weighted prime sums");
  auto* cmd_bfi = app.add_subcommand("bfi-average", "deviation tables and nu measurement");
  auto* cmd_cache = app.add_subcommand("cache", "sieve cache management");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cout << json{{"error", {{"type", "usage"}, {"message", e.what()}}}}.dump(2)
              << std::endl;
    return 2;
  }

  bfilab::set_default_threads(threads);

  RunContext ctx;
  ctx.out_dir = out_dir;
  ctx.cache_dir = cache_dir;
  ctx.override_lambda_guard = override_guard;

  auto started = std::chrono::steady_clock::now();
  try {
    if (cmd_constants->parsed()) {
      ctx.command = "constants";
      run_constants(ctx, config_path);
    } else if (cmd_lemma->parsed()) {
      ctx.command = "lemma-check";
      run_lemma_check(ctx, config_path);
    } else if (cmd_switch->parsed()) {
      ctx.command = "switch-check";
      run_switch_check(ctx, config_path);
    } else if (cmd_delta->parsed()) {
      ctx.command = "delta";
      run_delta(ctx, config_path);
    } else if (cmd_titch->parsed()) {
      ctx.command = "titchmarsh";
      run_titchmarsh(ctx, config_path);
    } else if (cmd_bfi->parsed()) {
      ctx.command = "bfi-average";
      run_bfi_average(ctx, config_path);
    } else if (cmd_cache->parsed()) {
      ctx.command = "cache";
      run_cache(ctx, config_path);
    }
  } catch (const UsageError& e) {
    std::cout << json{{"error", {{"type", "usage"}, {"message", e.what()}}}}.dump(2)
              << std::endl;
    return 2;
  } catch (const std::domain_error& e) {
    std::cout << json{{"error", {{"type", "usage"}, {"message", e.what()}}}}.dump(2)
              << std::endl;
    return 2;
  } catch (const bfilab::ResourceError& e) {
    std::cout << json{{"error", {{"type", "resource"}, {"message", e.what()}}}}.dump(2)
              << std::endl;
    return 3;
  } catch (const bfilab::InvariantError& e) {
    std::cout << json{{"error", {{"type", "invariant"}, {"message", e.what()}}}}.dump(2)
              << std::endl;
    return 4;
  } catch (const std::exception& e) {
    std::cout << json{{"error", {{"type", "internal"}, {"message", e.what()}}}}.dump(2)
              << std::endl;
    return 4;
  }
  auto finished = std::chrono::steady_clock::now();
  double wall = std::chrono::duration<double>(finished - started).count();

  std::cout << build_manifest(ctx, wall).dump(2) << std::endl;
  return 0;
}
