// Command line front end: instance generation, verification, streaming
// runs and the analysis experiments. All randomness comes from explicit
// seeds; reports are JSON lines, graph artifacts are plain text.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "hmlab/analysis.hpp"
#include "hmlab/game.hpp"
#include "hmlab/harness.hpp"

using json = nlohmann::ordered_json;
using namespace hmlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitUsage = 2;

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot open " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw CLI::ValidationError("cannot open " + path + " for writing");
  return out;
}

RSGraph load_rs(const std::string& path) {
  auto in = open_input(path);
  return read_rs(in);
}

GameInstance load_instance(const std::string& path) {
  auto in = open_input(path);
  return read_instance(in);
}

void emit(const json& row, std::ostream& out) { out << row.dump() << '\n'; }

json run_to_json(const AlgorithmRun& run, const GameInstance& inst,
                 const std::string& instance_path, std::uint64_t order_seed) {
  const std::size_t optimum = hopcroft_karp(inst.union_graph()).size();
  const int value = evaluate_output(inst, hidden_filter(inst, run.output));
  json snapshots = json::array();
  for (const Snapshot& s : run.snapshots) {
    snapshots.push_back({{"pass", s.pass},
                         {"phase", s.phase},
                         {"stored_edges", s.stored_edges},
                         {"stored_words", s.stored_words}});
  }
  return json{{"algorithm", run.algorithm},
              {"instance", instance_path},
              {"order_seed", order_seed},
              {"passes", run.passes},
              {"output_size", run.output.size()},
              {"optimum", optimum},
              {"ratio", optimum == 0 ? 1.0
                                     : static_cast<double>(run.output.size()) /
                                           static_cast<double>(optimum)},
              {"value", value},
              {"survivors", inst.hidden_survivors.size()},
              {"peak_stored_edges", run.peak_stored_edges},
              {"peak_stored_words", run.peak_stored_words},
              {"audit_ok", run.audit_ok},
              {"output_from_stream", run.output_from_stream},
              {"snapshots", snapshots}};
}

struct BiasLabOptions {
  std::string mode = "xor";
  // xor mode
  int dim = 10;
  int k = 2;
  std::string support = "random";
  double density = 0.5;
  int remove = 0;
  std::vector<int> dims;
  int trials = 0;  // 0 = exact
  // kkl mode
  int n = 8;
  int count = 100;
  // hiding mode
  int r = 3, t = 2, ell = 1;
  std::string encoder = "constant";
  int prefix_bits = 2;
  std::string y1, y2;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

SupportSet make_support(const std::string& kind, int dim, double density, int remove, Rng& rng) {
  if (kind == "full") return full_support(dim);
  if (kind == "even") return even_parity_support(dim);
  if (kind == "singleton") {
    return SupportSet{dim, {static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << dim))}};
  }
  SupportSet s{dim, {}};
  if (kind == "deficit") {
    // Full cube minus `remove` random points.
    std::vector<std::uint32_t> all(std::size_t{1} << dim);
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<std::uint32_t>(i);
    rng.shuffle(all);
    all.resize(all.size() - static_cast<std::size_t>(remove));
    std::sort(all.begin(), all.end());
    s.members = std::move(all);
    return s;
  }
  for (std::uint32_t x = 0; x < (std::uint32_t{1} << dim); ++x) {
    if (rng.unit() < density) s.members.push_back(x);
  }
  if (s.members.empty()) s.members.push_back(0);
  return s;
}

std::vector<std::uint8_t> parse_bits(const std::string& text) {
  std::vector<std::uint8_t> bits;
  for (char c : text) {
    if (c != '0' && c != '1') throw CLI::ValidationError("bit strings must be over {0,1}");
    bits.push_back(c == '1' ? 1 : 0);
  }
  return bits;
}

int bias_lab(const BiasLabOptions& opt, std::ostream& out) {
  if (!opt.seed_set) throw CLI::ValidationError("--seed is required (no ambient randomness)");
  Rng rng(opt.seed);
  if (opt.mode == "xor") {
    std::vector<int> dims = opt.dims.empty() ? std::vector<int>{opt.dim} : opt.dims;
    for (int dim : dims) {
      Rng sub = rng.substream("dim-" + std::to_string(dim));
      const SupportSet s = make_support(opt.support, dim, opt.density, opt.remove, sub);
      const XorBiasResult res = opt.trials > 0 ? xor_bias_sampled(s, opt.k, opt.trials, sub)
                                               : xor_bias_exact(s, opt.k);
      // ratio_cX = (mean squared bias) / (c * log2(2^d/|s|) / d)^k: how far
      // the measured decay sits from the bound shape at that constant.
      auto ratio_against = [&](double bound_sqrt) -> json {
        const double denom = bound_sqrt * bound_sqrt;
        if (denom <= 0.0) return res.mean_sq_bias == 0.0 ? json(0.0) : json();
        return res.mean_sq_bias / denom;
      };
      emit(json{{"mode", "xor"},
                {"dim", dim},
                {"k", res.k},
                {"support", opt.support},
                {"support_size", s.members.size()},
                {"subsets", res.subsets},
                {"exact", opt.trials == 0},
                {"mean_abs_bias", res.mean_abs_bias},
                {"mean_sq_bias", res.mean_sq_bias},
                {"stderr_abs", res.stderr_abs},
                {"bound_c1", res.bound_c1},
                {"bound_c2", res.bound_c2},
                {"bound_c4", res.bound_c4},
                {"ratio_c1", ratio_against(res.bound_c1)},
                {"ratio_c2", ratio_against(res.bound_c2)},
                {"ratio_c4", ratio_against(res.bound_c4)},
                {"seed", opt.seed}},
           out);
    }
    return kExitOk;
  }
  if (opt.mode == "kkl") {
    int failures = 0;
    for (int i = 0; i < opt.count; ++i) {
      std::vector<double> values(std::size_t{1} << opt.n, 0.0);
      for (double& v : values) {
        if (rng.unit() < opt.density) v = rng.bit() ? 1.0 : -1.0;
      }
      const BooleanFunction f(opt.n, values);
      for (double gamma = 0.1; gamma < 0.95; gamma += 0.1) {
        if (!kkl_check(f, gamma)) ++failures;
      }
    }
    emit(json{{"mode", "kkl"},
              {"n", opt.n},
              {"density", opt.density},
              {"functions", opt.count},
              {"gammas", 9},
              {"violations", failures},
              {"seed", opt.seed}},
         out);
    return failures == 0 ? kExitOk : kExitInvalid;
  }
  if (opt.mode == "hiding") {
    const RSGraph host = disjoint_blocks_rs(opt.r, opt.t);
    const auto y1 = parse_bits(opt.y1);
    const auto y2 = parse_bits(opt.y2);
    if (static_cast<int>(y1.size()) != opt.ell || y1.size() != y2.size()) {
      throw CLI::ValidationError("--y1/--y2 must both have length --ell");
    }
    MatrixEncoder enc = constant_encoder();
    if (opt.encoder == "identity") {
      enc = identity_encoder();
    } else if (opt.encoder == "prefix") {
      enc = prefix_encoder(opt.prefix_bits);
    } else if (opt.encoder != "constant") {
      throw CLI::ValidationError("unknown encoder " + opt.encoder);
    }
    double mean_tvd = 0.0, max_tvd = 0.0;
    const auto rows = toy_hiding_campaign(host, opt.k, y1, y2, enc);
    for (const HidingRow& row : rows) {
      mean_tvd += row.digest_probability * row.tvd;
      max_tvd = std::max(max_tvd, row.tvd);
      emit(json{{"mode", "hiding"},
                {"digest", row.digest},
                {"digest_probability", row.digest_probability},
                {"tvd", row.tvd},
                {"excluded_mass_1", row.excluded_mass_1},
                {"excluded_mass_2", row.excluded_mass_2}},
           out);
    }
    emit(json{{"mode", "hiding-summary"},
              {"r", opt.r},
              {"t", opt.t},
              {"k", opt.k},
              {"encoder", opt.encoder},
              {"digests", rows.size()},
              {"mean_tvd", mean_tvd},
              {"max_tvd", max_tvd}},
         out);
    return kExitOk;
  }
  throw CLI::ValidationError("unknown mode " + opt.mode);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hidden-matching hard-instance laboratory"};
  app.require_subcommand(1);

  // gen-rs -------------------------------------------------------------
  auto* gen_rs = app.add_subcommand("gen-rs", "construct an RS graph");
  std::string kind = "blocks", out_path;
  int opt_r = 1, opt_t = 1, opt_m = 1, opt_kmax = 9;
  std::string search = "behrend";
  gen_rs->add_option("--kind", kind)->check(CLI::IsMember({"blocks", "apfree"}));
  gen_rs->add_option("--r", opt_r);
  gen_rs->add_option("--t", opt_t);
  gen_rs->add_option("--m", opt_m);
  gen_rs->add_option("--kmax", opt_kmax);
  gen_rs->add_option("--search", search)->check(CLI::IsMember({"behrend", "exhaustive"}));
  gen_rs->add_option("--out", out_path)->required();

  // verify-rs ----------------------------------------------------------
  auto* verify_rs_cmd = app.add_subcommand("verify-rs", "check RS graph invariants");
  std::string verify_rs_path;
  verify_rs_cmd->add_option("file", verify_rs_path)->required();

  // gen-instance -------------------------------------------------------
  auto* gen_inst = app.add_subcommand("gen-instance", "sample a hard instance");
  std::string rs1_path, rs2_path, inst_out;
  int opt_k = 2;
  double opt_delta = 0.1;
  std::uint64_t opt_seed = 0;
  gen_inst->add_option("--rs1", rs1_path)->required();
  gen_inst->add_option("--rs2", rs2_path)->required();
  gen_inst->add_option("--k", opt_k);
  gen_inst->add_option("--delta", opt_delta);
  gen_inst->add_option("--seed", opt_seed)->required();
  gen_inst->add_option("--out", inst_out)->required();

  // verify-instance ----------------------------------------------------
  auto* verify_inst = app.add_subcommand("verify-instance", "re-derive all instance invariants");
  std::string verify_inst_path;
  verify_inst->add_option("file", verify_inst_path)->required();

  // run-alg -------------------------------------------------------------
  auto* run_alg = app.add_subcommand("run-alg", "run a streaming algorithm over an instance");
  std::string alg_name = "greedy", run_inst_path, report_path;
  int opt_passes = 0;
  std::uint64_t order_seed = 0;
  run_alg->add_option("--alg", alg_name)
      ->check(CLI::IsMember({"greedy", "twopass", "clairvoyant"}));
  run_alg->add_option("--instance", run_inst_path)->required();
  run_alg->add_option("--passes", opt_passes);
  run_alg->add_option("--order-seed", order_seed)->required();
  run_alg->add_option("--report", report_path);

  // eval -----------------------------------------------------------------
  auto* eval_cmd = app.add_subcommand("eval", "score an answer edge set against an instance");
  std::string eval_inst_path, answer_path;
  eval_cmd->add_option("--instance", eval_inst_path)->required();
  eval_cmd->add_option("--answer", answer_path)->required();

  // params ----------------------------------------------------------------
  auto* params_cmd = app.add_subcommand("params", "closed-form parameter calculators");
  double opt_alpha = 0.0, opt_beta = 0.0;
  bool have_alpha = false, have_beta = false;
  GameParams calc;
  bool have_game = false;
  params_cmd->add_option("--alpha", opt_alpha)->each([&](const std::string&) { have_alpha = true; });
  params_cmd->add_option("--beta", opt_beta)->each([&](const std::string&) { have_beta = true; });
  params_cmd->add_option("--n1", calc.n1)->each([&](const std::string&) { have_game = true; });
  params_cmd->add_option("--r1", calc.r1);
  params_cmd->add_option("--t1", calc.t1);
  params_cmd->add_option("--n2", calc.n2);
  params_cmd->add_option("--r2", calc.r2);
  params_cmd->add_option("--t2", calc.t2);
  params_cmd->add_option("--k", calc.k);
  params_cmd->add_option("--delta", calc.delta);

  // bias-lab ----------------------------------------------------------------
  auto* bias_cmd = app.add_subcommand("bias-lab", "Fourier / information experiments");
  BiasLabOptions bias;
  bias_cmd->add_option("--mode", bias.mode)->check(CLI::IsMember({"xor", "kkl", "hiding"}));
  bias_cmd->add_option("--dim", bias.dim);
  bias_cmd->add_option("--dims", bias.dims)->delimiter(',');
  bias_cmd->add_option("--k", bias.k);
  bias_cmd->add_option("--support", bias.support)
      ->check(CLI::IsMember({"full", "even", "singleton", "random", "deficit"}));
  bias_cmd->add_option("--density", bias.density);
  bias_cmd->add_option("--remove", bias.remove);
  bias_cmd->add_option("--trials", bias.trials);
  bias_cmd->add_option("--n", bias.n);
  bias_cmd->add_option("--count", bias.count);
  bias_cmd->add_option("--r", bias.r);
  bias_cmd->add_option("--t", bias.t);
  bias_cmd->add_option("--ell", bias.ell);
  bias_cmd->add_option("--encoder", bias.encoder);
  bias_cmd->add_option("--prefix-bits", bias.prefix_bits);
  bias_cmd->add_option("--y1", bias.y1);
  bias_cmd->add_option("--y2", bias.y2);
  bias_cmd->add_option("--seed", bias.seed)->each([&](const std::string&) {
    bias.seed_set = true;
  });

  // report ----------------------------------------------------------------
  auto* report_cmd = app.add_subcommand("report", "aggregate run reports");
  std::vector<std::string> report_inputs;
  report_cmd->add_option("inputs", report_inputs)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen_rs->parsed()) {
      RSGraph g;
      if (kind == "blocks") {
        g = disjoint_blocks_rs(opt_r, opt_t);
      } else {
        const APFreeSet s =
            search == "behrend" ? behrend_ap_free(opt_kmax) : brute_force_ap_free(opt_kmax);
        g = ap_rs(opt_m, s);
      }
      auto out = open_output(out_path);
      write_rs(out, g);
      emit(json{{"kind", kind}, {"n", g.n()}, {"r", g.r}, {"t", g.t}, {"out", out_path}},
           std::cout);
      return kExitOk;
    }

    if (verify_rs_cmd->parsed()) {
      auto in = open_input(verify_rs_path);
      const RSGraph g = read_rs(in);
      const RsReport report = verify_rs(g);
      emit(json{{"file", verify_rs_path},
                {"valid", report.valid()},
                {"violations", report.violations}},
           std::cout);
      return report.valid() ? kExitOk : kExitInvalid;
    }

    if (gen_inst->parsed()) {
      const RSGraph rs1 = load_rs(rs1_path);
      const RSGraph rs2 = load_rs(rs2_path);
      GameParams p;
      p.n1 = rs1.n();
      p.r1 = rs1.r;
      p.t1 = rs1.t;
      p.n2 = rs2.n();
      p.r2 = rs2.r;
      p.t2 = rs2.t;
      p.k = opt_k;
      p.delta = opt_delta;
      p.seed = opt_seed;
      const GameInstance inst = sample_instance(p, rs1, rs2);
      auto out = open_output(inst_out);
      write_instance(out, inst);
      emit(json{{"out", inst_out},
                {"n", inst.n()},
                {"hidden_index", inst.hidden_index + 1},
                {"survivors", inst.hidden_survivors.size()}},
           std::cout);
      return kExitOk;
    }

    if (verify_inst->parsed()) {
      GameInstance inst;
      try {
        inst = load_instance(verify_inst_path);
      } catch (const std::exception& e) {
        emit(json{{"file", verify_inst_path}, {"valid", false}, {"violations", {e.what()}}},
             std::cout);
        return kExitInvalid;
      }
      const InstanceReport report = verify_instance(inst);
      emit(json{{"file", verify_inst_path},
                {"valid", report.valid()},
                {"violations", report.violations}},
           std::cout);
      return report.valid() ? kExitOk : kExitInvalid;
    }

    if (run_alg->parsed()) {
      const GameInstance inst = load_instance(run_inst_path);
      AlgorithmFactory factory;
      int passes = 0;
      if (alg_name == "greedy") {
        factory = greedy_matching();
        passes = 1;
      } else if (alg_name == "twopass") {
        factory = two_pass_augment();
        passes = 2;
      } else {
        factory = clairvoyant(inst);
        passes = 2;
      }
      if (opt_passes != 0 && opt_passes != passes) {
        throw CLI::ValidationError(alg_name + " runs in " + std::to_string(passes) + " passes");
      }
      const EdgeStream stream = assemble_stream(inst, order_seed);
      const AlgorithmRun run = run_stream(factory, stream, inst.n(), passes);
      const json row = run_to_json(run, inst, run_inst_path, order_seed);
      if (!report_path.empty()) {
        auto out = open_output(report_path);
        emit(row, out);
      }
      emit(row, std::cout);
      return kExitOk;
    }

    if (eval_cmd->parsed()) {
      const GameInstance inst = load_instance(eval_inst_path);
      auto in = open_input(answer_path);
      std::vector<Edge> answer;
      Edge e;
      while (in >> e.left >> e.right) answer.push_back(e);
      emit(json{{"instance", eval_inst_path},
                {"answer_edges", answer.size()},
                {"value", evaluate_output(inst, answer)}},
           std::cout);
      return kExitOk;
    }

    if (params_cmd->parsed()) {
      json row;
      if (have_alpha || have_beta) {
        if (!(have_alpha && have_beta)) {
          throw CLI::ValidationError("--alpha and --beta go together");
        }
        row["alpha"] = opt_alpha;
        row["beta"] = opt_beta;
        row["ratio"] = rs_lower_bound_ratio(opt_alpha, opt_beta);
      } else if (have_game) {
        const ApproxThreshold t = approx_threshold(calc);
        row["n"] = calc.n();
        row["beta"] = t.beta;
        row["target_matching_size"] = t.target_matching_size;
        // Both couplings of the second graph's matching size offered by
        // the construction; callers pick one when generating rs2.
        row["r2_additive"] = (calc.k + calc.delta) * calc.n1;
        row["r2_capacity"] = calc.k * calc.n1 / (1.0 - calc.delta);
      } else {
        throw CLI::ValidationError("give either --alpha/--beta or game parameters");
      }
      emit(row, std::cout);
      return kExitOk;
    }

    if (bias_cmd->parsed()) {
      return bias_lab(bias, std::cout);
    }

    if (report_cmd->parsed()) {
      struct Agg {
        int runs = 0;
        double value = 0.0, ratio = 0.0, peak_edges = 0.0, peak_words = 0.0;
      };
      std::map<std::string, Agg> by_alg;
      for (const std::string& path : report_inputs) {
        auto in = open_input(path);
        std::string line;
        while (std::getline(in, line)) {
          if (line.empty()) continue;
          const json row = json::parse(line);
          if (!row.contains("algorithm")) continue;
          Agg& agg = by_alg[row["algorithm"]];
          agg.runs += 1;
          agg.value += row.value("value", 0.0);
          agg.ratio += row.value("ratio", 0.0);
          agg.peak_edges += row.value("peak_stored_edges", 0.0);
          agg.peak_words += row.value("peak_stored_words", 0.0);
        }
      }
      for (const auto& [name, agg] : by_alg) {
        emit(json{{"algorithm", name},
                  {"runs", agg.runs},
                  {"mean_value", agg.value / agg.runs},
                  {"mean_ratio", agg.ratio / agg.runs},
                  {"mean_peak_edges", agg.peak_edges / agg.runs},
                  {"mean_peak_words", agg.peak_words / agg.runs}},
             std::cout);
      }
      return kExitOk;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitUsage;
}
