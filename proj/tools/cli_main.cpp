#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "transonline/adversaries.hpp"
#include "transonline/concepts.hpp"
#include "transonline/dimensions.hpp"
#include "transonline/game.hpp"
#include "transonline/learners.hpp"
#include "transonline/rng.hpp"
#include "transonline/trees.hpp"

namespace fs = std::filesystem;
using namespace transonline;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (const auto& item : split(s, ',')) out.push_back(std::stoi(item));
  return out;
}

// Class source: "constants:3,2" | "full:2,3" | "branch:3,unique" |
// "edge_branch:3" | "one_branch:3" | "nt_chain:4" | a JSON file path.
ConceptClass resolve_class(const std::string& src, const Caps& caps) {
  auto colon = src.find(':');
  if (colon == std::string::npos || fs::exists(src)) return load_class(src, caps);
  std::string family = src.substr(0, colon);
  auto params = split(src.substr(colon + 1), ',');
  auto p = [&](size_t i) { return std::stoi(params.at(i)); };
  if (family == "constants") return gen_constants(p(0), p(1), caps);
  if (family == "full") return gen_full(p(0), p(1), caps);
  if (family == "branch") {
    bool unique = params.size() > 1 && (params[1] == "unique" || params[1] == "1");
    return gen_branch_class(p(0), unique, caps);
  }
  if (family == "edge_branch") return gen_edge_labeled_branch_class(p(0), caps);
  if (family == "one_branch") return gen_one_branch_per_level_class(p(0), caps);
  if (family == "nt_chain") return gen_nt_chain(p(0), caps);
  throw std::invalid_argument("unknown class source '" + src + "'");
}

void ensure_dir(const std::string& dir) {
  if (!dir.empty()) fs::create_directories(dir);
}

int cmd_gen(const std::string& src, const std::string& out, const Caps& caps) {
  ConceptClass cls = resolve_class(src, caps);
  if (out.empty()) {
    std::cout << class_to_json(cls).dump(2) << "\n";
  } else {
    save_class(cls, out);
    std::cout << "wrote " << out << " (" << cls.size() << " concepts over " << cls.n_instances
              << " instances)\n";
  }
  return 0;
}

int cmd_dims(const std::string& src, int seq_cap, const std::string& out, const Caps& caps) {
  ConceptClass cls = resolve_class(src, caps);
  auto d = dim_level_littlestone(cls, caps);
  auto b = dim_branching(cls, seq_cap, caps);
  auto l = dim_littlestone(cls, caps);
  auto ds = dim_ds(cls, caps);
  auto g = dim_graph(cls, caps);
  auto nt = dim_nt(cls, caps);
  std::cout << "class " << cls.name << ": " << cls.size() << " concepts over "
            << cls.n_instances << " instances\n";
  std::cout << "D  = " << d.value << "\n";
  std::cout << "B  " << (b.exact ? "= " : ">= ") << b.value
            << (b.exact ? " (exact: reaches L)" : " (lower bound at seq cap " +
                                                      std::to_string(seq_cap) + ")")
            << "\n";
  std::cout << "L  = " << l.value << "\n";
  std::cout << "DS = " << ds.value << "\n";
  std::cout << "G  = " << g.value << "\n";
  std::cout << "NT = " << nt.value << "\n";
  if (!out.empty()) {
    ensure_dir(out);
    for (const auto* w : {&d, &b, &l, &ds, &g, &nt}) {
      if (w->kind == DimKind::L) continue;  // value only; not a stored artifact
      std::ofstream f(out + "/dim_" + dim_kind_name(w->kind) + ".json");
      f << witness_to_json(*w).dump(2) << "\n";
    }
    std::cout << "witnesses written to " << out << "\n";
  }
  return 0;
}

int cmd_minimax(const std::string& src, std::string xs_str, const Caps& caps) {
  ConceptClass cls = resolve_class(src, caps);
  std::vector<int> xs;
  if (xs_str.empty()) {
    xs = dim_level_littlestone(cls, caps).tree->level_instances;
    std::cerr << "note: --xs not given, using the D-witness sequence\n";
  } else {
    xs = parse_int_list(xs_str);
  }
  Rational v = minimax_mistakes(cls, xs, caps);
  nlohmann::ordered_json j;
  j["xs"] = xs;
  j["value"] = rational_to_string(v);
  j["value_float"] = static_cast<double>(v);
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_verify(const std::string& src, int T, int seq_cap, const Caps& caps) {
  ConceptClass cls = resolve_class(src, caps);
  BoundVerdict v = verify_bounds(cls, T, caps, seq_cap);
  std::cout << verdict_to_json(v).dump(2) << "\n";
  return v.pass ? 0 : 1;
}

struct SimulateConfig {
  std::string cls_src;
  std::vector<std::string> learners{"bp"};
  std::string adversary = "path";
  int T = 0;  // 0: derived from the construction
  std::uint64_t seed = 0;
  int trials = 1;
  int q = 0;  // logT branching target; 0 means use D
  std::string xs_str;
  std::string out;
  double eta_scale = 1.0;
};

int run_one_realizable(const SimulateConfig& cfg, const ConceptClass& cls,
                       const std::string& learner, const Stream& stream, int trial,
                       std::ostream& summary, const Caps& caps) {
  Transcript tr = run_realizable(learner, cls, stream, caps);
  std::string pot_ok = "-", halv_ok = "-";
  if (learner == "bp") pot_ok = verify_potential_trace(tr) ? "1" : "0";
  if (learner == "ssh") halv_ok = verify_halving_trace(tr) ? "1" : "0";
  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out + "/transcript_" + learner + "_" + std::to_string(trial) + ".csv");
    transcript_to_csv(tr, f);
  }
  summary << learner << "," << cfg.adversary << "," << stream.meta.seed << ","
          << stream.horizon() << "," << tr.mistakes << "," << tr.best_in_class_mistakes << ","
          << tr.regret() << "," << pot_ok << "," << halv_ok << "\n";
  return (pot_ok == "0" || halv_ok == "0") ? 1 : 0;
}

int cmd_simulate(const SimulateConfig& cfg, const Caps& caps) {
  ConceptClass cls = resolve_class(cfg.cls_src, caps);
  ensure_dir(cfg.out);
  auto d_witness = dim_level_littlestone(cls, caps);
  if (d_witness.value == 0 && cfg.adversary != "worst")
    throw std::invalid_argument("class has D = 0; no nontrivial stream construction");

  std::ostringstream summary;
  summary << "learner,adversary,seed,T,mistakes,best_in_class,regret,potential_ok,halving_ok\n";
  Lcg64 seeder(cfg.seed);
  int failures = 0;

  for (const auto& learner : cfg.learners) {
    for (int trial = 0; trial < cfg.trials; ++trial) {
      std::uint64_t trial_seed = cfg.seed ^ seeder.next_u64();
      Stream stream;
      if (cfg.adversary == "path") {
        stream = path_stream_seeded(cls, *d_witness.tree, trial_seed);
      } else if (cfg.adversary == "logT") {
        int q = cfg.q > 0 ? cfg.q : d_witness.value;
        LCTree norm = normalize_tree(*d_witness.tree, cls, q);
        int T = cfg.T > 0 ? cfg.T : std::max(branching_levels(norm), 1);
        stream = logT_stream_seeded(cls, norm, T, trial_seed);
      } else if (cfg.adversary == "block") {
        if (learner != "agnostic")
          throw std::invalid_argument(
              "block streams are agnostic; realizable learners require path/logT/worst");
        int T = cfg.T > 0 ? cfg.T : 4 * d_witness.value;
        stream = block_stream(cls, *d_witness.tree, T, trial_seed);
      } else if (cfg.adversary == "worst") {
        std::vector<int> xs = cfg.xs_str.empty() ? d_witness.tree->level_instances
                                                 : parse_int_list(cfg.xs_str);
        if (!is_realizable_learner(learner))
          throw std::invalid_argument("worst adversary needs a deterministic learner");
        auto [s, m] = worst_case_stream(cls, xs, learner, caps);
        stream = s;
      } else {
        throw std::invalid_argument("unknown adversary '" + cfg.adversary + "'");
      }

      if (!cfg.out.empty())
        save_stream(stream, cfg.out + "/stream_" + learner + "_" + std::to_string(trial) +
                                ".json");

      if (learner == "agnostic") {
        AgnosticSummary s =
            run_agnostic(cls, stream, {trial_seed * 2 + 1}, cfg.eta_scale, caps);
        summary << learner << "," << cfg.adversary << "," << stream.meta.seed << ","
                << stream.horizon() << "," << s.mean_mistakes << ","
                << s.best_in_class_mistakes << "," << s.mean_regret << ",-,-\n";
      } else {
        failures += run_one_realizable(cfg, cls, learner, stream, trial, summary, caps);
      }
    }
  }

  std::cout << summary.str();
  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out + "/summary.csv");
    f << summary.str();
    std::cout << "outputs written to " << cfg.out << "\n";
  }
  return failures == 0 ? 0 : 1;
}

void apply_config_file(const std::string& path, CLI::App* sim, SimulateConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config '" + path + "'");
  nlohmann::ordered_json j;
  in >> j;
  auto unset = [&](const std::string& flag) { return sim->count(flag) == 0; };
  if (j.contains("class") && unset("--class")) cfg.cls_src = j["class"];
  if (j.contains("learners") && unset("--learners"))
    cfg.learners = j["learners"].get<std::vector<std::string>>();
  if (j.contains("adversary") && unset("--adversary")) cfg.adversary = j["adversary"];
  if (j.contains("T") && unset("--T")) cfg.T = j["T"];
  if (j.contains("seed") && unset("--seed")) cfg.seed = j["seed"];
  if (j.contains("trials") && unset("--trials")) cfg.trials = j["trials"];
  if (j.contains("q") && unset("--q")) cfg.q = j["q"];
  if (j.contains("xs") && unset("--xs")) {
    std::string s;
    for (int v : j["xs"].get<std::vector<int>>()) s += (s.empty() ? "" : ",") + std::to_string(v);
    cfg.xs_str = s;
  }
  if (j.contains("out") && unset("--out")) cfg.out = j["out"];
  if (j.contains("eta_scale") && unset("--eta-scale")) cfg.eta_scale = j["eta_scale"];
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"transductive online learning toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand name

  std::string caps_str;
  app.add_option("--caps", caps_str, "cap overrides, e.g. concepts=32,subseq=20");

  auto* gen = app.add_subcommand("gen", "generate a concept class file");
  std::string gen_src, gen_out;
  gen->add_option("class", gen_src, "class source (family:params or file)")->required();
  gen->add_option("--out", gen_out, "output file (stdout when omitted)");

  auto* dims = app.add_subcommand("dims", "compute all six dimensions");
  std::string dims_src, dims_out;
  int dims_cap = 4;
  dims->add_option("class", dims_src)->required();
  dims->add_option("--seq-cap", dims_cap, "sequence sweep cap for B");
  dims->add_option("--out", dims_out, "directory for witness files");

  auto* mm = app.add_subcommand("minimax", "exact game value on a sequence");
  std::string mm_src, mm_xs;
  mm->add_option("class", mm_src)->required();
  mm->add_option("--xs", mm_xs, "comma-separated instance sequence");

  auto* verify = app.add_subcommand("verify", "check the mistake-bound sandwich");
  std::string verify_src;
  int verify_T = 3, verify_cap = 4;
  verify->add_option("class", verify_src)->required();
  verify->add_option("--T", verify_T, "horizon");
  verify->add_option("--seq-cap", verify_cap, "sequence sweep cap for B");

  auto* sim = app.add_subcommand("simulate", "run learners against adversaries");
  SimulateConfig cfg;
  std::string config_path, learners_str;
  sim->add_option("--config", config_path, "JSON config; flags override");
  sim->add_option("--class", cfg.cls_src, "class source");
  sim->add_option("--learners", learners_str, "comma list: bp,ssh,ssh-conservative,agnostic");
  sim->add_option("--adversary", cfg.adversary, "path | logT | block | worst");
  sim->add_option("--T", cfg.T, "horizon (0: construction default)");
  sim->add_option("--seed", cfg.seed, "master seed (default 0)");
  sim->add_option("--trials", cfg.trials, "number of seeded trials");
  sim->add_option("--q", cfg.q, "branching target for logT (0: use D)");
  sim->add_option("--xs", cfg.xs_str, "instance sequence for the worst adversary");
  sim->add_option("--out", cfg.out, "output directory");
  sim->add_option("--eta-scale", cfg.eta_scale, "learning-rate multiplier (agnostic)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Caps caps = parse_caps(caps_str);
    if (gen->parsed()) return cmd_gen(gen_src, gen_out, caps);
    if (dims->parsed()) return cmd_dims(dims_src, dims_cap, dims_out, caps);
    if (mm->parsed()) return cmd_minimax(mm_src, mm_xs, caps);
    if (verify->parsed()) return cmd_verify(verify_src, verify_T, verify_cap, caps);
    if (sim->parsed()) {
      if (!config_path.empty()) apply_config_file(config_path, sim, cfg);
      if (!learners_str.empty()) cfg.learners = split(learners_str, ',');
      if (cfg.cls_src.empty())
        throw std::invalid_argument("simulate needs --class (or a config file)");
      return cmd_simulate(cfg, caps);
    }
  } catch (const CapError& e) {
    std::cerr << "cap error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
