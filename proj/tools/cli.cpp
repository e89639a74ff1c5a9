#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "spherelp/bounds.hpp"
#include "spherelp/codes.hpp"
#include "spherelp/errors.hpp"
#include "spherelp/reproduce.hpp"
#include "spherelp/serialize.hpp"

namespace spherelp::cli {

namespace {

enum class LogLevel { off, info, debug };

LogLevel log_level() {
  const char* v = std::getenv("SPHERE_LP_LOG");
  if (v == nullptr) return LogLevel::off;
  const std::string s(v);
  if (s == "info") return LogLevel::info;
  if (s == "debug") return LogLevel::debug;
  return LogLevel::off;
}

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::optional<int> n;
  std::optional<double> capacity;
  std::string weights_file;
  std::string config;
  std::optional<double> s;
  std::optional<int> tau;
  std::string potential = "newton";
  std::optional<int> jmax;
  std::string format;
  std::optional<int> m_override;
  std::optional<double> tol;
  std::string table = "all";
};

struct Context {
  const RunConfig& cfg;
  std::ostream& out;
  std::ostream& err;
  LogLevel log;

  void info(const std::string& msg) const {
    if (log != LogLevel::off) err << "[info] " << msg << "\n";
  }
  void debug(const std::string& msg) const {
    if (log == LogLevel::debug) err << "[debug] " << msg << "\n";
  }
};

// Either a full code or a bare weight list.
struct Source {
  std::optional<WeightedCode> code;
  std::vector<double> weights;
};

std::optional<Source> load_source(const RunConfig& cfg) {
  if (!cfg.config.empty()) return Source{build_config(cfg.config), {}};
  if (cfg.weights_file.empty()) return std::nullopt;
  std::ifstream in(cfg.weights_file);
  if (!in) throw DomainError("cannot open '" + cfg.weights_file + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw DomainError("'" + cfg.weights_file + "' is not valid JSON: " + e.what());
  }
  if (j.is_array()) {
    try {
      return Source{std::nullopt, j.get<std::vector<double>>()};
    } catch (const Json::exception& e) {
      throw DomainError("weight list must contain numbers only");
    }
  }
  return Source{code_from_json(j), {}};
}

struct Resolved {
  int n = 0;
  double capacity = 0.0;
  std::optional<double> s;
  std::optional<Source> source;
};

Resolved resolve(const RunConfig& cfg, bool need_capacity) {
  Resolved r;
  r.source = load_source(cfg);
  if (cfg.capacity && r.source) throw UsageError("--capacity cannot be combined with --config or --weights-file");
  if (r.source && r.source->code) {
    const auto& code = *r.source->code;
    if (cfg.n && *cfg.n != code.dimension())
      throw UsageError("--n " + std::to_string(*cfg.n) + " does not match the code dimension " +
                       std::to_string(code.dimension()));
    r.n = code.dimension();
    r.capacity = code.capacity();
    r.s = code.max_inner_product();
  } else {
    if (!cfg.n) throw UsageError("--n is required");
    r.n = *cfg.n;
    if (r.source) {
      double sq = 0.0;
      double sum = 0.0;
      for (double w : r.source->weights) {
        if (!(w > 0.0)) throw DomainError("weights must be positive");
        sq += w * w;
        sum += w;
      }
      if (r.source->weights.empty() || std::abs(sum - 1.0) > 1e-12) throw DomainError("weights must sum to 1");
      r.capacity = 1.0 / sq;
    } else if (cfg.capacity) {
      r.capacity = *cfg.capacity;
    } else if (need_capacity) {
      throw UsageError("one of --capacity, --weights-file or --config is required");
    }
  }
  if (r.n < 2) throw UsageError("--n must be at least 2");
  if (cfg.s) r.s = cfg.s;
  return r;
}

std::string text_report(const BoundReport& r) {
  std::ostringstream o;
  char buf[160];
  o << to_string(r.kind) << "  n=" << r.n << "  m=" << r.m << "  potential=" << r.potential << "\n";
  std::snprintf(buf, sizeof buf, "capacity  %.12g\nvalue     %.12g\n", r.capacity, r.value);
  o << buf;
  if (r.kind == BoundKind::uub || r.kind == BoundKind::design_uub) {
    std::snprintf(buf, sizeof buf, "N_1       %.12g\nlambda*   %.12g\n", r.n1, r.lambda_star);
    o << buf;
  }
  o << "feasible  " << (r.feasible ? "yes" : "no") << "\n";
  o << "  i        alpha_i          rho_i\n";
  for (std::size_t i = 0; i < r.rule.nodes.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%3zu  %13.10f  %13.10f\n", i, r.rule.nodes[i], r.rule.weights[i]);
    o << buf;
  }
  for (const auto& c : r.diagnostics) {
    std::snprintf(buf, sizeof buf, "  %-26s %-5s %.3e", c.name.c_str(),
                  c.passed ? "ok" : (c.informational ? "note" : "FAIL"), c.value);
    o << buf;
    if (!c.note.empty()) o << "  " << c.note;
    o << "\n";
  }
  return o.str();
}

int emit_bound(const Context& ctx, const BoundReport& r) {
  if (ctx.cfg.format == "csv") {
    ctx.out << rule_csv(r.rule);
  } else if (ctx.cfg.format == "text") {
    ctx.out << text_report(r);
  } else {
    ctx.out << to_json(r).dump(2) << "\n";
  }
  for (const auto& c : r.diagnostics) ctx.debug(c.name + (c.passed ? " ok " : " failed ") + std::to_string(c.value));
  if (!r.feasible) {
    for (const auto& c : r.diagnostics)
      if (!c.passed && !c.informational) ctx.err << "check failed: " << c.name << (c.note.empty() ? "" : ": " + c.note) << "\n";
    return infeasible;
  }
  return ok;
}

Potential potential_for(const RunConfig& cfg, int n) { return Potential::parse(cfg.potential, n); }

int cmd_ulb(const Context& ctx) {
  const auto& cfg = ctx.cfg;
  const Resolved r = resolve(cfg, true);
  if (!(r.capacity > 2.0)) throw UsageError("capacity must exceed 2");
  const Potential h = potential_for(cfg, r.n);
  ctx.info("ulb n=" + std::to_string(r.n) + " capacity=" + std::to_string(r.capacity) + " potential=" + h.spec());
  if (r.source) {
    const std::vector<double>& w = r.source->code ? r.source->code->weights() : r.source->weights;
    return emit_bound(ctx, ulb_for_weights(w, r.n, h));
  }
  return emit_bound(ctx, ulb(r.n, r.capacity, h));
}

int cmd_uub(const Context& ctx, bool design) {
  const auto& cfg = ctx.cfg;
  const Resolved r = resolve(cfg, true);
  if (!(r.capacity > 1.0)) throw UsageError("capacity must exceed 1");
  if (!r.s) throw UsageError("--s is required (or a code via --config / --weights-file)");
  const Potential h = potential_for(cfg, r.n);
  ctx.info(std::string(design ? "design-uub" : "uub") + " n=" + std::to_string(r.n) + " capacity=" +
           std::to_string(r.capacity) + " s=" + std::to_string(*r.s) + " potential=" + h.spec());
  if (design) {
    if (!cfg.tau) throw UsageError("--tau is required");
    return emit_bound(ctx, design_uub(r.n, r.capacity, *r.s, *cfg.tau, h, cfg.m_override));
  }
  return emit_bound(ctx, uub(r.n, r.capacity, *r.s, h, cfg.m_override));
}

int cmd_design_ulb(const Context& ctx) {
  const auto& cfg = ctx.cfg;
  const Resolved r = resolve(cfg, true);
  if (!(r.capacity > 2.0)) throw UsageError("capacity must exceed 2");
  if (!cfg.tau) throw UsageError("--tau is required");
  const Potential h = potential_for(cfg, r.n);
  ctx.info("design-ulb n=" + std::to_string(r.n) + " tau=" + std::to_string(*cfg.tau));
  return emit_bound(ctx, design_ulb(r.n, r.capacity, *cfg.tau, h));
}

const WeightedCode& require_code(const Resolved& r) {
  if (!r.source || !r.source->code) throw UsageError("a code is required: --config NAME or --weights-file CODE.json");
  return *r.source->code;
}

int cmd_energy(const Context& ctx) {
  const auto& cfg = ctx.cfg;
  const Resolved r = resolve(cfg, false);
  const WeightedCode& code = require_code(r);
  const Potential h = potential_for(cfg, code.dimension());
  const double e = energy(code, h);
  if (cfg.format == "csv") {
    ctx.out << "potential,energy\n" << h.spec() << "," << round_significant(e) << "\n";
  } else if (cfg.format == "text") {
    char buf[96];
    std::snprintf(buf, sizeof buf, "energy %.12g\n", e);
    ctx.out << buf;
  } else {
    Json j;
    j["schema"] = kSchemaVersion;
    j["kind"] = "energy";
    j["n"] = code.dimension();
    j["size"] = code.size();
    j["capacity"] = round_significant(code.capacity());
    j["s"] = round_significant(code.max_inner_product());
    j["potential"] = h.spec();
    j["value"] = round_significant(e);
    ctx.out << j.dump(2) << "\n";
  }
  return ok;
}

int cmd_design_check(const Context& ctx) {
  const auto& cfg = ctx.cfg;
  const Resolved r = resolve(cfg, false);
  const WeightedCode& code = require_code(r);
  const int tau_max = cfg.tau.value_or(20);
  if (tau_max < 1) throw UsageError("--tau must be at least 1");
  const DesignCheckReport rep = design_strength(code, tau_max, cfg.tol.value_or(1e-9));
  if (cfg.format == "csv") {
    ctx.out << "ell,moment\n";
    for (std::size_t l = 0; l < rep.moments.size(); ++l) ctx.out << l + 1 << "," << round_significant(rep.moments[l]) << "\n";
  } else if (cfg.format == "text") {
    ctx.out << "strength " << rep.strength << "\n";
  } else {
    ctx.out << to_json(rep).dump(2) << "\n";
  }
  return ok;
}

int cmd_test_functions(const Context& ctx) {
  const auto& cfg = ctx.cfg;
  const Resolved r = resolve(cfg, true);
  if (!(r.capacity > 2.0)) throw UsageError("capacity must exceed 2");
  if (cfg.jmax && *cfg.jmax < 1) throw UsageError("--jmax must be at least 1");
  const int jmax = cfg.jmax ? *cfg.jmax : 3 * select_degree_from_capacity(r.n, r.capacity).m;
  const TestFunctionReport rep = test_functions(r.n, r.capacity, jmax, cfg.tol.value_or(1e-9));
  if (cfg.format == "csv") {
    ctx.out << "j,q,sign\n";
    const Json j = to_json(rep);
    for (const auto& v : j["values"]) ctx.out << v["j"] << "," << v["q"] << "," << v["sign"].get<std::string>() << "\n";
  } else if (cfg.format == "text") {
    char buf[96];
    for (std::size_t i = 0; i < rep.values.size(); ++i) {
      std::snprintf(buf, sizeof buf, "Q_%-3zu % .6e\n", i + 1, rep.values[i]);
      ctx.out << buf;
    }
    ctx.out << rep.note << "\n";
  } else {
    ctx.out << to_json(rep).dump(2) << "\n";
  }
  return ok;
}

int cmd_reproduce(const Context& ctx) {
  const auto tables = reproduce(ctx.cfg.table);
  int failures = 0;
  if (ctx.cfg.format == "json") {
    Json all = Json::array();
    for (const auto& t : tables) all.push_back(to_json(t));
    ctx.out << all.dump(2) << "\n";
  } else {
    for (const auto& t : tables) ctx.out << format_table(t) << "\n";
  }
  for (const auto& t : tables) failures += t.failures();
  if (failures > 0) {
    ctx.err << failures << " cell(s) outside tolerance\n";
    return mismatch;
  }
  return ok;
}

void add_common(CLI::App* sub, RunConfig& cfg, bool capacity, bool s, bool tau, bool m_override) {
  sub->add_option("--n", cfg.n, "dimension of the ambient space")->check(CLI::Range(2, 64));
  sub->add_option("--config", cfg.config, "built-in code: pentakis, cube-cross:N, ngon:N, icosahedron, ...");
  sub->add_option("--weights-file", cfg.weights_file, "JSON code {n, points, weights} or a JSON weight list");
  if (capacity) sub->add_option("--capacity", cfg.capacity, "N_W = 1 / sum of squared weights");
  if (s) sub->add_option("--s", cfg.s, "maximal inner product");
  if (tau) sub->add_option("--tau", cfg.tau, "design strength");
  if (m_override) sub->add_option("--m-override", cfg.m_override, "degree of the Levenshtein polynomial");
  sub->add_option("--potential", cfg.potential, "riesz:A, newton[:N], gaussian:A, log, fejes-toth, shift:C:SPEC");
  sub->add_option("--format", cfg.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  sub->add_option("--tol", cfg.tol, "tolerance override");
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Universal LP bounds for weighted spherical codes and designs", "sphere-lp"};
  app.require_subcommand(1);

  auto* ulb_cmd = app.add_subcommand("ulb", "universal lower bound");
  add_common(ulb_cmd, cfg, true, false, false, false);
  auto* uub_cmd = app.add_subcommand("uub", "universal upper bound");
  add_common(uub_cmd, cfg, true, true, false, true);
  auto* dulb_cmd = app.add_subcommand("design-ulb", "lower bound for weighted designs");
  add_common(dulb_cmd, cfg, true, false, true, false);
  auto* duub_cmd = app.add_subcommand("design-uub", "upper bound for weighted designs");
  add_common(duub_cmd, cfg, true, true, true, true);
  auto* energy_cmd = app.add_subcommand("energy", "weighted energy of a code");
  add_common(energy_cmd, cfg, false, false, false, false);
  auto* dcheck_cmd = app.add_subcommand("design-check", "weighted moments and design strength");
  add_common(dcheck_cmd, cfg, false, false, true, false);
  auto* tf_cmd = app.add_subcommand("test-functions", "test functions Q_j of the ULB rule");
  add_common(tf_cmd, cfg, true, false, false, false);
  tf_cmd->add_option("--jmax", cfg.jmax, "largest j (default 3m)");
  auto* rep_cmd = app.add_subcommand("reproduce", "regenerate the example tables");
  rep_cmd->add_option("--table", cfg.table, "1, 2, 3, 4, examples or all");
  rep_cmd->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"json", "text"}));

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.format.empty()) cfg.format = cfg.command == "reproduce" ? "text" : "json";
  if (!cfg.config.empty() && !cfg.weights_file.empty()) {
    err << "error: --config and --weights-file are mutually exclusive\n";
    return usage;
  }
  const Context ctx{cfg, out, err, log_level()};

  try {
    if (cfg.command == "ulb") return cmd_ulb(ctx);
    if (cfg.command == "uub") return cmd_uub(ctx, false);
    if (cfg.command == "design-uub") return cmd_uub(ctx, true);
    if (cfg.command == "design-ulb") return cmd_design_ulb(ctx);
    if (cfg.command == "energy") return cmd_energy(ctx);
    if (cfg.command == "design-check") return cmd_design_check(ctx);
    if (cfg.command == "test-functions") return cmd_test_functions(ctx);
    if (cfg.command == "reproduce") return cmd_reproduce(ctx);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return infeasible;
  }
  err << "error: unknown command\n";
  return usage;
}

}  // namespace spherelp::cli
