#ifndef SCOL_TOOLS_CLI_APP_HPP
#define SCOL_TOOLS_CLI_APP_HPP

// Command-line front end. Exit codes: 0 all checks pass, 1 a check failed,
// 2 usage, input or hypothesis error.

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scol/scol.hpp"

namespace scol::cli {

using nlohmann::json;

struct RunConfig {
  std::string subcommand;
  std::string input;
  std::string gen;
  std::optional<int> q;
  int delta = 0;
  bool random_lists = false;
  int min_list_size = 1;
  double epsilon = 0.1;
  std::uint64_t seed = 1;
  std::size_t budget = 100000;
  std::size_t omega_cap = 200000;
  double max_product = 1e8;
  unsigned threads = default_threads();
  std::optional<double> tol;
  bool no_timestamp = false;
  std::string out;

  std::string check;
  std::string oracle_mode;
  bool no_derived = false;
  std::uint64_t steps = 1000;
  std::uint64_t chains = 1;
  std::uint64_t stride = 100;
  std::string start = "smallest";
  std::uint64_t max_steps = 1000000;
};

inline json config_json(const RunConfig& c) {
  json j{{"subcommand", c.subcommand}, {"epsilon", c.epsilon},     {"seed", c.seed},
         {"budget", c.budget},         {"omega_cap", c.omega_cap}, {"max_product", c.max_product},
         {"threads", c.threads},       {"delta", c.delta}};
  j["input"] = c.input.empty() ? json(nullptr) : json(c.input);
  j["gen"] = c.gen.empty() ? json(nullptr) : json(c.gen);
  j["q"] = c.q ? json(*c.q) : json(nullptr);
  j["tol"] = c.tol ? json(*c.tol) : json(nullptr);
  if (c.subcommand == "gen") j.update({{"random_lists", c.random_lists}, {"min_list_size", c.min_list_size}});
  if (c.subcommand == "verify") j.update({{"check", c.check}, {"include_derived", !c.no_derived}});
  if (c.subcommand == "spectral") j["check"] = c.check;
  if (c.subcommand == "oracle") j["mode"] = c.oracle_mode;
  if (c.subcommand == "sample")
    j.update({{"steps", c.steps}, {"chains", c.chains}, {"stride", c.stride}, {"start", c.start}});
  if (c.subcommand == "tv") j.update({{"steps", c.steps}, {"chains", c.chains}});
  if (c.subcommand == "couple") j["max_steps"] = c.max_steps;
  return j;
}

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class Runner {
 public:
  Runner(RunConfig cfg, std::ostream& out, std::ostream& err) : cfg_(std::move(cfg)), out_(out), err_(err) {}

  int run() {
    const auto& s = cfg_.subcommand;
    if (s == "gen") return gen();
    if (s == "oracle") return oracle();
    if (s == "verify") return verify();
    if (s == "spectral") return spectral();
    if (s == "sample") return sample();
    if (s == "tv") return tv();
    if (s == "couple") return couple();
    if (s == "bound") return bound();
    throw Error(ErrorCode::BadParams, "unknown subcommand '" + s + "'");
  }

 private:
  json header() const {
    json j{{"schema", kSchema}, {"config", config_json(cfg_)}};
    if (!cfg_.no_timestamp) j["timestamp"] = utc_timestamp();
    return j;
  }

  void emit(const json& j) {
    const std::string text = j.dump(2) + "\n";
    if (cfg_.out.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(cfg_.out, std::ios::binary);
    if (!f) throw Error(ErrorCode::ParseError, "cannot write '" + cfg_.out + "'");
    f << text;
  }

  OracleOptions oracle_options() const {
    OracleOptions o;
    o.max_product = cfg_.max_product;
    o.threads = cfg_.threads;
    return o;
  }

  int resolved_delta(const Graph& g) const { return cfg_.delta > 0 ? cfg_.delta : std::max(3, g.max_degree()); }

  ListColoringInstance instance() {
    if (!cfg_.input.empty() && !cfg_.gen.empty()) throw Error(ErrorCode::BadParams, "give either --input or --gen");
    if (!cfg_.input.empty()) return load_instance(cfg_.input, cfg_.q);
    if (cfg_.gen.empty()) throw Error(ErrorCode::BadParams, "an instance is required: --input FILE or --gen SPEC");
    if (!cfg_.q) throw Error(ErrorCode::BadParams, "--gen needs --q");
    const auto spec = gen::GeneratorSpec::parse(cfg_.gen);
    std::size_t added = 0;
    Graph g = spec.build(cfg_.seed, &added);
    generated_edges_ = g.edge_count();
    if (!cfg_.random_lists) return full_palette(std::move(g), *cfg_.q);
    auto lists = gen::random_delta_q_lists(g, *cfg_.q, resolved_delta(g), cfg_.min_list_size, split_seed(cfg_.seed, 1));
    return ListColoringInstance(std::move(g), std::move(lists), *cfg_.q);
  }

  static json instance_summary(const ListColoringInstance& inst) {
    return json{{"n", inst.size()},
                {"q", inst.q()},
                {"edges", inst.graph().edge_count()},
                {"max_degree", inst.graph().max_degree()},
                {"triangle_free", is_triangle_free(inst.graph())},
                {"glauber_valid", inst.glauber_valid()}};
  }

  int finish(json j, bool pass, const std::string& summary) {
    j["pass"] = pass;
    j["summary"] = summary;
    emit(j);
    err_ << summary << "\n";
    return pass ? 0 : 1;
  }

  int gen() {
    const auto inst = instance();
    json j = header();
    j.update(instance_to_json(inst));
    j["generated_edges"] = generated_edges_;
    j["triangle_free"] = is_triangle_free(inst.graph());
    emit(j);
    return 0;
  }

  int oracle() {
    const auto inst = instance();
    json j = header();
    j["instance"] = instance_summary(inst);
    if (cfg_.oracle_mode == "count") {
      auto o = oracle_options();
      const auto c = count_colorings(inst, o);
      j["total"] = c.total;
      json per = json::array();
      const PairIndex idx(inst);
      for (std::size_t a = 0; a < idx.size(); ++a) {
        const auto [v, col] = idx.pair(a);
        per.push_back({{"v", v}, {"c", col}, {"count", c.per_pair[a]}});
      }
      j["per_pair"] = per;
    } else {
      const Distribution d(inst, oracle_options());
      j["total"] = d.total();
      json m = json::array();
      for (int v = 0; v < inst.size(); ++v) {
        json row = json::array();
        for (Color c : inst.list(v)) row.push_back({{"c", c}, {"count", d.count(v, c)}, {"p", d.marginal(v, c)}});
        m.push_back({{"v", v}, {"marginals", row}});
      }
      j["marginals"] = m;
    }
    emit(j);
    return 0;
  }

  VerifyOptions verify_options() const {
    VerifyOptions o;
    o.epsilon = cfg_.epsilon;
    o.delta = cfg_.delta;
    o.budget = cfg_.budget;
    o.seed = cfg_.seed;
    o.threads = cfg_.threads;
    o.oracle = oracle_options();
    o.include_derived = !cfg_.no_derived;
    if (cfg_.tol) o.tol = {*cfg_.tol, *cfg_.tol, *cfg_.tol};
    return o;
  }

  int verify() {
    const auto opt = verify_options();
    std::optional<ListColoringInstance> inst;
    if (cfg_.check != "lemma26") inst = instance();
    const auto r = run_check(cfg_.check, inst ? *inst : ListColoringInstance(), opt);
    json j = header();
    if (inst) j["instance"] = instance_summary(*inst);
    j["check"] = r.check;
    j["reports"] = r.reports;
    j["warnings"] = r.warnings;
    j["candidates"] = r.candidates;
    j["sampled"] = r.sampled;
    j["skipped"] = r.skipped;
    for (const auto& w : r.warnings) err_ << "warning: " << w << "\n";
    return finish(std::move(j), r.pass(), r.summary());
  }

  int spectral() {
    const auto inst = instance();
    const double tol = cfg_.tol.value_or(1e-8);
    json j = header();
    j["instance"] = instance_summary(inst);
    j["check"] = cfg_.check;
    if (cfg_.check == "thm8") {
      if (!inst.glauber_valid()) throw Error(ErrorCode::HypothesisViolated, "|L(v)| >= deg(v) + 2 at every vertex");
      const auto r = verify_theorem8(Distribution(inst, oracle_options()), tol);
      j.update({{"lambda2_walk", r.lambda2_walk},
                {"lambda1_M", r.lambda1_m},
                {"identity_residual", r.identity_residual},
                {"max_imag", r.max_imag},
                {"null_residual_ones", r.null_residual_ones},
                {"null_residual_vertex", r.null_residual_vertex},
                {"reversibility_residual", r.reversibility},
                {"minus_multiplicity", r.minus_multiplicity},
                {"eigen_method", r.eigen_method},
                {"tol", r.tol}});
      return finish(std::move(j), r.pass,
                    std::string(r.pass ? "PASS" : "FAIL") + " identity residual " + json(r.identity_residual).dump());
    }
    if (cfg_.check == "sweep") {
      const auto rep = sweep(inst);
      j.update(sweep_json(rep));
      const bool pass = !rep.hypotheses_hold || rep.all_within_bound;
      return finish(std::move(j), pass,
                    std::string(pass ? "PASS" : "FAIL") + " sweep (" + rep.certification + ")" +
                        (rep.hypotheses_hold ? "" : ", hypotheses do not hold: bounds informational"));
    }
    if (cfg_.check == "gap") {
      const auto gm = glauber_matrix(inst, cfg_.omega_cap);
      const auto g = spectral_gap(gm);
      j.update({{"states", g.states},
                {"lambda2", g.lambda2},
                {"gap", g.gap},
                {"eigen_method", g.method},
                {"iterations", g.iterations},
                {"mixing_bound", g.mixing_bound}});
      if (g.states <= 1500) j["exact_mixing_time"] = ExactMixing(gm).mixing_time();
      bool pass = true;
      std::string summary = "PASS gap " + json(g.gap).dump();
      const int delta = resolved_delta(inst.graph());
      if (inst.size() >= 2 && detail::delta_q(inst, delta)) {
        const auto rep = sweep(inst);
        if (rep.exhaustive) {
          pass = g.gap >= rep.gap_lower_bound - 1e-9;
          j["local_expansion_gap_bound"] = rep.gap_lower_bound;
          j["local_expansion"] = sweep_json(rep);
          summary = std::string(pass ? "PASS" : "FAIL") + " gap " + json(g.gap).dump() + " vs local-expansion bound " +
                    json(rep.gap_lower_bound).dump();
        }
      }
      return finish(std::move(j), pass, summary);
    }
    if (cfg_.check == "bound") return bound_into(std::move(j), inst.size(), resolved_delta(inst.graph()), inst.q());
    throw Error(ErrorCode::BadParams, "unknown spectral check '" + cfg_.check + "'");
  }

  SweepReport sweep(const ListColoringInstance& inst) const {
    const int delta = resolved_delta(inst.graph());
    if (!detail::delta_q(inst, delta))
      throw Error(ErrorCode::HypothesisViolated,
                  "(Delta,q)-instance with Delta=" + std::to_string(delta) + ", q=" + std::to_string(inst.q()));
    SweepOptions o;
    o.epsilon = cfg_.epsilon;
    o.delta = delta;
    o.budget = cfg_.budget;
    o.seed = cfg_.seed;
    o.threads = cfg_.threads;
    o.oracle = oracle_options();
    o.oracle.threads = 1;
    return local_expansion_sweep(inst, o);
  }

  static json sweep_json(const SweepReport& rep) {
    json rows = json::array();
    for (const auto& r : rep.rows)
      rows.push_back({{"s", r.s},
                      {"evaluated", r.evaluated},
                      {"skipped", r.skipped},
                      {"not_delta_q", r.not_delta_q},
                      {"worst_lambda2", r.worst_lambda2},
                      {"bound", r.theoretical_bound},
                      {"within_bound", r.within_bound}});
    const double tail = 2.0 * std::log(static_cast<double>(rep.n)) + std::log(std::log(4.0 * rep.q));
    return json{{"delta", rep.delta},
                {"epsilon", rep.epsilon},
                {"c_bound", rep.c_bound},
                {"certification", rep.certification},
                {"hypotheses_hold", rep.hypotheses_hold},
                {"all_within_bound", rep.all_within_bound},
                {"local_expansion_table", rows},
                {"log_product_measured", rep.log_product_measured},
                {"log_product_theoretical", rep.log_product_theoretical},
                {"gap_lower_bound", rep.gap_lower_bound},
                {"log_mixing_bound", rep.log_mixing_bound_measured},
                {"log_mixing_bound_theoretical", rep.log_mixing_bound_theoretical},
                {"mixing_bound", std::exp(rep.log_product_measured + tail)}};
  }

  int bound_into(json j, int n, int delta, int q) {
    const auto b = mixing_bound_theorem1(n, delta, q, cfg_.epsilon);
    json notes = json::array();
    if (!b.alpha_below_two) notes.push_back("alpha >= 2: the argument assumes alpha < 2");
    if (!b.q_at_most_two_delta) notes.push_back("q > 2 Delta: outside the case the argument addresses");
    j.update({{"n", n},
              {"delta", delta},
              {"q", q},
              {"alpha", b.alpha},
              {"c_alpha", b.c_alpha},
              {"exponent", b.exponent},
              {"c_bound", b.c_bound},
              {"k0", b.k0},
              {"log_bound", b.log_bound},
              {"log_product_cap", b.log_product_cap},
              {"log_product_formula", b.log_product_formula},
              {"log_mixing_formula", b.log_mixing_formula},
              {"notes", notes}});
    emit(j);
    err_ << "exponent c = " << json(b.exponent).dump() << "\n";
    return 0;
  }

  int bound() {
    const auto inst = instance();
    return bound_into(header(), inst.size(), resolved_delta(inst.graph()), inst.q());
  }

  int sample() {
    const auto inst = instance();
    TraceConfig tc;
    tc.steps = cfg_.steps;
    tc.stride = cfg_.stride;
    tc.seed = cfg_.seed;
    tc.chains = static_cast<int>(cfg_.chains);
    tc.threads = cfg_.threads;
    tc.start = cfg_.start == "largest" ? StartMode::Largest : cfg_.start == "random" ? StartMode::Random : StartMode::Smallest;
    const auto tr = run_chain(inst, tc);
    json j = header();
    j["seed"] = tr.seed;
    j["stride"] = tr.stride;
    j["steps"] = tr.steps;
    json pooled = json::array();
    for (std::size_t t = 0; t < tr.chains.front().stats.size(); ++t) {
      std::uint64_t ham = 0;
      std::vector<std::uint64_t> counts(static_cast<std::size_t>(inst.q()), 0);
      for (const auto& ch : tr.chains) {
        ham += static_cast<std::uint64_t>(ch.stats[t].hamming);
        for (std::size_t c = 0; c < counts.size(); ++c) counts[c] += ch.stats[t].color_counts[c];
      }
      pooled.push_back({{"t", tr.chains.front().stats[t].t}, {"hamming", ham}, {"color_counts", counts}});
    }
    j["stats"] = pooled;
    json chains = json::array();
    for (const auto& ch : tr.chains) {
      json st = json::array();
      for (const auto& s : ch.stats) st.push_back({{"t", s.t}, {"hamming", s.hamming}, {"color_counts", s.color_counts}});
      chains.push_back({{"stream_seed", ch.stream_seed}, {"stats", st}, {"final", ch.final_coloring}});
    }
    j["chains"] = chains;
    emit(j);
    return 0;
  }

  int tv() {
    const auto inst = instance();
    const auto est = estimate_tv(inst, cfg_.steps, cfg_.chains, cfg_.seed, cfg_.threads, cfg_.omega_cap);
    json j = header();
    j["instance"] = instance_summary(inst);
    j.update({{"tv", est.tv},
              {"label", est.label},
              {"states", est.states},
              {"chains", est.chains},
              {"steps", est.steps},
              {"plugin_bias_bound", est.plugin_bias_bound},
              {"rms_bound", est.rms_bound},
              {"noise_floor", est.noise_floor},
              {"ergodic", est.ergodic}});
    if (!est.warning.empty()) {
      j["warning"] = est.warning;
      err_ << "warning: " << est.warning << "\n";
    }
    if (est.ergodic && est.states <= 1500) j["exact_worst_start_tv"] = ExactMixing(glauber_matrix(inst, cfg_.omega_cap)).worst_tv(cfg_.steps);
    emit(j);
    return 0;
  }

  int couple() {
    const auto inst = instance();
    const auto r = coupling_time(inst, cfg_.seed, cfg_.max_steps);
    json j = header();
    j["instance"] = instance_summary(inst);
    j.update({{"coalesced", r.coalesced},
              {"steps", r.steps},
              {"max_steps", r.max_steps},
              {"initial_distance", r.initial_distance},
              {"label", r.label}});
    emit(j);
    err_ << (r.coalesced ? "coalesced after " + std::to_string(r.steps) + " steps" : std::string("timeout")) << "\n";
    return 0;
  }

  RunConfig cfg_;
  std::ostream& out_;
  std::ostream& err_;
  std::size_t generated_edges_ = 0;
};

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Glauber dynamics sampler and spectral-independence checks for list colorings", "scol"};
  app.fallthrough();
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--input", cfg.input, "Instance file (JSON, or edge list with --q)");
  app.add_option("--gen", cfg.gen, "Generator spec family:params, e.g. star:3, grid:3x3");
  app.add_option("--q", cfg.q, "Palette size for --gen and edge-list input");
  app.add_option("--delta", cfg.delta, "Degree bound Delta (default max(3, max degree))");
  app.add_option("--out", cfg.out, "Write the JSON report here instead of stdout");
  app.add_option("--seed", cfg.seed, "Master seed");
  app.add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--tol", cfg.tol, "Override the pass tolerance");
  app.add_flag("--no-timestamp", cfg.no_timestamp, "Omit the timestamp field");
  app.add_option("--epsilon", cfg.epsilon, "Region parameter epsilon")->check(CLI::PositiveNumber);
  app.add_option("--budget", cfg.budget, "Cap on checked tuples; larger sets are sampled");
  app.add_option("--omega-cap", cfg.omega_cap, "Cap on enumerated colorings");
  app.add_option("--max-product", cfg.max_product, "Cap on the product of list sizes for exact counting");

  auto* gen = app.add_subcommand("gen", "Emit an instance in JSON");
  gen->add_flag("--random-lists", cfg.random_lists, "Random lists with |L(v)| >= q - Delta + deg(v)");
  gen->add_option("--min-list-size", cfg.min_list_size, "Smallest list size for --random-lists");

  auto* oracle = app.add_subcommand("oracle", "Exact counts and marginals");
  oracle->add_option("mode", cfg.oracle_mode, "count | marginals")->required()->check(CLI::IsMember({"count", "marginals"}));

  auto* verify = app.add_subcommand("verify", "Check an identity or inequality on the instance");
  verify->add_option("--check", cfg.check, "Check name")->required()->check(CLI::IsMember(check_names()));
  verify->add_flag("--no-derived", cfg.no_derived, "Skip the derived collections");

  auto* spectral = app.add_subcommand("spectral", "Walk identity, local-expansion sweep, exact gap, mixing bound");
  spectral->add_option("--check", cfg.check, "thm8 | sweep | gap | bound")
      ->required()
      ->check(CLI::IsMember({"thm8", "sweep", "gap", "bound"}));

  auto* sample = app.add_subcommand("sample", "Run Glauber chains and write a trace");
  sample->add_option("--steps", cfg.steps, "Steps per chain");
  sample->add_option("--chains", cfg.chains, "Independent chains")->check(CLI::PositiveNumber);
  sample->add_option("--stride", cfg.stride, "Snapshot stride")->check(CLI::PositiveNumber);
  sample->add_option("--start", cfg.start, "smallest | largest | random")
      ->check(CLI::IsMember({"smallest", "largest", "random"}));

  auto* tv = app.add_subcommand("tv", "Fixed-start total variation against uniform (small instances)");
  tv->add_option("--steps", cfg.steps, "Steps per chain");
  tv->add_option("--chains", cfg.chains, "Independent chains")->check(CLI::PositiveNumber);

  auto* couple = app.add_subcommand("couple", "Coalescence time of the identity coupling");
  couple->add_option("--max-steps", cfg.max_steps, "Step limit");

  app.add_subcommand("bound", "Constants of the polynomial mixing bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();

  try {
    return Runner(cfg, out, err).run();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::HypothesisViolated) err << "hypothesis violated: " << e.detail() << "\n";
    else err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace scol::cli

#endif  // SCOL_TOOLS_CLI_APP_HPP
