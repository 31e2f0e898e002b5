// Copyright 2026 The HFT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hft/bench.hpp"
#include "hft/builder.hpp"
#include "hft/css.hpp"
#include "hft/report.hpp"
#include "hft/temporal.hpp"

using nlohmann::json;

namespace {

uint64_t resolve_seed(uint64_t cli_seed, bool seed_given) {
  if (seed_given) return cli_seed;
  if (const char* env = std::getenv("HFT_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 1;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-")
    std::cout << content;
  else
    hft::atomic_write(path, content);
}

// Textbook-style (1-based) rendering of the Steane structure.
std::string steane_text() {
  hft::CssCode code = hft::steane_code();
  std::ostringstream out;
  out << "Steane [[7,1,3]] code (self-dual CSS from the Hamming [7,4,3] "
         "code)\n\n";
  out << "Parity check matrix H (columns = qubits 1..7):\n";
  for (size_t r = 0; r < 3; r++) {
    out << "  [ ";
    for (size_t c = 0; c < 7; c++) out << (code.hz.get(r, c) ? 1 : 0) << " ";
    out << "]\n";
  }
  auto gens = [&](const hft::BinaryMatrix& h, char type) {
    std::ostringstream g;
    for (size_t r = 0; r < h.rows(); r++) {
      g << "  g" << (r + 1) << "^" << type << " =";
      for (size_t c = 0; c < h.cols(); c++)
        if (h.get(r, c)) g << " " << type << (c + 1);
      g << "\n";
    }
    return g.str();
  };
  out << "\nZ-stabilizers (detect bit flips):\n" << gens(code.hz, 'Z');
  out << "\nX-stabilizers (detect phase flips):\n" << gens(code.hx, 'X');
  out << "\nLogical operators: X_L = X1..X7, Z_L = Z1..Z7\n";
  return out.str();
}

json steane_json() {
  hft::CssCode code = hft::steane_code();
  json hz = json::array(), hx = json::array();
  for (size_t r = 0; r < code.hz.rows(); r++) {
    json row = json::array();
    for (size_t c = 0; c < code.n; c++) row.push_back(code.hz.get(r, c) ? 1 : 0);
    hz.push_back(row);
  }
  for (size_t r = 0; r < code.hx.rows(); r++) {
    json row = json::array();
    for (size_t c = 0; c < code.n; c++) row.push_back(code.hx.get(r, c) ? 1 : 0);
    hx.push_back(row);
  }
  return json{{"n", code.n}, {"k", code.k}, {"d", code.d},
              {"hz", hz},    {"hx", hx}};
}

std::string sweep_csv(const std::vector<hft::ThresholdPoint>& pts,
                      const json& envelope) {
  std::ostringstream out;
  out << "# schema_version=" << hft::kSchemaVersion
      << " tool_version=" << hft::kToolVersion << "\n";
  out << "# config=" << envelope["config"].dump()
      << " seed=" << envelope["seed"] << "\n";
  out << "d,p_phys,p_log,ci_low,ci_high,source\n";
  for (const auto& p : pts) {
    out << p.d << "," << p.p_phys << "," << p.p_log << "," << p.ci_low << ","
        << p.ci_high << "," << p.source << "\n";
  }
  return out.str();
}

json sweep_json(const std::vector<hft::ThresholdPoint>& pts,
                const json& envelope) {
  json j = envelope;
  json arr = json::array();
  for (const auto& p : pts) {
    arr.push_back({{"d", p.d},
                   {"p_phys", p.p_phys},
                   {"p_log", p.p_log},
                   {"ci_low", p.ci_low},
                   {"ci_high", p.ci_high},
                   {"source", p.source}});
  }
  j["points"] = arr;
  return j;
}

hft::CssCode load_code_file(const std::string& path) {
  json j = json::parse(hft::read_file(path));
  auto to_matrix = [&](const json& rows, size_t cols) {
    hft::BinaryMatrix m(rows.size(), cols);
    for (size_t r = 0; r < rows.size(); r++)
      for (size_t c = 0; c < cols; c++)
        if (rows[r][c].get<int>()) m.set(r, c, true);
    return m;
  };
  size_t n = j.at("n").get<size_t>();
  size_t d = j.at("d").get<size_t>();
  return hft::css_from_matrices(to_matrix(j.at("hz"), n),
                                to_matrix(j.at("hx"), n), d);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hft: Steane-code fault-tolerant syndrome extraction "
               "simulator and benchmark harness"};
  app.require_subcommand(1);

  uint64_t seed = 1;
  bool seed_given = false;
  std::string out_path, format = "json";
  int threads = 0;
  app.add_flag_callback("--version", [] {
    std::cout << "hft " << hft::kToolVersion << "\n";
    std::exit(0);
  });
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "RNG seed (env HFT_SEED overrides default)")
        ->each([&](const std::string&) { seed_given = true; });
    cmd->add_option("--out", out_path, "output file ('-' = stdout)");
    cmd->add_option("--format", format, "json|csv|text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--threads", threads, "worker threads (0 = all cores)");
  };

  // codes
  auto* codes = app.add_subcommand("codes", "inspect CSS codes");
  auto* codes_show = codes->add_subcommand("show", "print a code");
  std::string code_name = "steane";
  codes_show->add_option("name", code_name, "code name (steane)");
  add_common(codes_show);
  auto* codes_check = codes->add_subcommand("check", "validate a code file");
  std::string code_file;
  codes_check->add_option("file", code_file, "JSON {n,d,hz,hx}")->required();
  add_common(codes_check);

  // circuit
  auto* circuit = app.add_subcommand("circuit", "build and inspect circuits");
  auto* cbuild = circuit->add_subcommand("build", "emit a cycle circuit");
  std::string mode = "standard", readout = "batched";
  int rounds = 1, verify = 2;
  bool with_encoder = false;
  cbuild->add_option("--mode", mode, "standard|cat|steane");
  cbuild->add_option("--readout", readout, "sequential|batched");
  cbuild->add_option("--rounds", rounds, "correction rounds");
  cbuild->add_option("--verify", verify, "cat verification ancillas");
  cbuild->add_flag("--with-encoder", with_encoder, "prefix the encoder");
  add_common(cbuild);
  auto* cstats = circuit->add_subcommand("stats", "width/depth/gate counts");
  std::string circ_in;
  cstats->add_option("--in", circ_in, "circuit text file")->required();
  add_common(cstats);
  auto* crender = circuit->add_subcommand("render", "ASCII lanes");
  std::string render_in;
  crender->add_option("--in", render_in, "circuit text file")->required();
  add_common(crender);

  // run
  auto* run = app.add_subcommand("run", "run one experiment from a config");
  std::string run_config, run_noise;
  double run_pphys = 0.0;
  run->add_option("--config", run_config, "experiment JSON")->required();
  run->add_option("--noise", run_noise, "noise config JSON (overrides)");
  run->add_option("--pphys", run_pphys,
                  "proportional-scaling shortcut (overrides)");
  add_common(run);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "threshold sweep");
  int sweep_d = 3;
  double pmin = 1e-4, pmax = 3e-2;
  int points = 12;
  uint64_t sweep_shots = 100000;
  std::string sweep_mode = "steane";
  bool deep = false;
  sweep->add_option("--d", sweep_d, "code distance (3 = Monte Carlo)");
  sweep->add_option("--pmin", pmin, "lowest p_phys");
  sweep->add_option("--pmax", pmax, "highest p_phys");
  sweep->add_option("--points", points, "sweep points (log spaced)");
  sweep->add_option("--shots", sweep_shots, "shots per Monte-Carlo point");
  sweep->add_option("--mode", sweep_mode, "extraction mode for d=3");
  sweep->add_flag("--deep", deep, "10x shots below p=1e-3");
  add_common(sweep);

  // compare
  auto* compare = app.add_subcommand("compare", "method comparison table");
  double cmp_pphys = 1e-3;
  uint64_t cmp_shots = 50000;
  int cmp_rounds = 10;
  compare->add_option("--pphys", cmp_pphys, "physical error rate");
  compare->add_option("--shots", cmp_shots, "shots per mode");
  compare->add_option("--rounds", cmp_rounds, "rounds per shot");
  add_common(compare);

  // temporal
  auto* temporal = app.add_subcommand("temporal", "temporal decoder report");
  std::string method = "all";
  int t_rounds = 16, t_shots = 100, window = 5;
  double qflip = 0.05, robs = 0.1;
  int t_stabs = 3;
  temporal->add_option("--method", method, "majority|viterbi|bayes|all");
  temporal->add_option("--rounds", t_rounds, "rounds per shot");
  temporal->add_option("--shots", t_shots, "number of streams");
  temporal->add_option("--stabs", t_stabs, "stabilizer chains per stream");
  temporal->add_option("--window", window, "majority window");
  temporal->add_option("--qflip", qflip, "hidden flip probability");
  temporal->add_option("--robs", robs, "observation error probability");
  add_common(temporal);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    uint64_t use_seed = resolve_seed(seed, seed_given);

    if (codes_show->parsed()) {
      if (code_name != "steane") {
        std::cerr << "unknown code: " << code_name << "\n";
        return 1;
      }
      if (format == "json") {
        json j = hft::report_envelope(json{{"command", "codes show steane"}},
                                      use_seed);
        j["code"] = steane_json();
        write_output(out_path, j.dump(2) + "\n");
      } else {
        write_output(out_path, steane_text());
      }
      return 0;
    }
    if (codes_check->parsed()) {
      hft::CssCode code = load_code_file(code_file);
      std::ostringstream msg;
      msg << "valid CSS code: n=" << code.n << " k=" << code.k
          << " d=" << code.d << " decoder entries=" << code.decoder_table.size()
          << "\n";
      write_output(out_path, msg.str());
      return 0;
    }
    if (cbuild->parsed()) {
      hft::CssCode code = hft::steane_code();
      hft::SchedulerConfig cfg;
      cfg.mode = hft::mode_from_name(mode);
      cfg.readout = hft::readout_from_name(readout);
      cfg.rounds = rounds;
      cfg.verify = verify;
      hft::Circuit cyc = hft::schedule_cycle(code, cfg);
      if (with_encoder) {
        hft::Circuit enc = hft::build_encoder(code);
        enc.n_qubits = cyc.n_qubits;
        enc.n_clbits = cyc.n_clbits;
        enc.append(cyc);
        enc.qregs = cyc.qregs;
        enc.cregs = cyc.cregs;
        cyc = enc;
      }
      write_output(out_path, cyc.to_text());
      return 0;
    }
    if (cstats->parsed()) {
      hft::Circuit c = hft::Circuit::from_text(hft::read_file(circ_in));
      hft::CircuitStats st = c.stats();
      json j{{"width", st.width},
             {"depth", st.depth},
             {"measurements", st.measurements},
             {"noise_sites", st.noise_sites},
             {"gate_counts", st.gate_counts}};
      if (format == "json") {
        write_output(out_path, j.dump(2) + "\n");
      } else {
        std::ostringstream s;
        s << "width " << st.width << "\ndepth " << st.depth
          << "\nmeasurements " << st.measurements << "\nnoise_sites "
          << st.noise_sites << "\n";
        for (auto& [k, v] : st.gate_counts) s << k << " " << v << "\n";
        write_output(out_path, s.str());
      }
      return 0;
    }
    if (crender->parsed()) {
      hft::Circuit c = hft::Circuit::from_text(hft::read_file(render_in));
      write_output(out_path, c.render());
      return 0;
    }
    if (run->parsed()) {
      hft::ExperimentConfig cfg =
          hft::ExperimentConfig::from_json(json::parse(hft::read_file(run_config)));
      if (seed_given || std::getenv("HFT_SEED")) cfg.seed = use_seed;
      if (threads > 0) cfg.threads = threads;
      if (!run_noise.empty())
        cfg.noise = hft::noise_from_json(json::parse(hft::read_file(run_noise)));
      if (run_pphys > 0.0) {
        cfg.p_phys = run_pphys;
        cfg.noise.reset();
      }
      hft::BenchResult r = cfg.workload.kind == hft::WorkloadSpec::Kind::memory
                               ? hft::run_memory(cfg)
                               : hft::run_workload(cfg);
      json j = hft::report_envelope(cfg.to_json(), cfg.seed);
      j["result"] = r.to_json();
      write_output(out_path, j.dump(2) + "\n");
      return 0;
    }
    if (sweep->parsed()) {
      hft::ExperimentConfig base;
      base.scheduler.mode = hft::mode_from_name(sweep_mode);
      base.scheduler.rounds = 10;
      base.seed = use_seed;
      base.threads = threads;
      std::vector<double> ps;
      for (int i = 0; i < points; i++) {
        double t = points == 1 ? 0.0 : double(i) / double(points - 1);
        ps.push_back(pmin * std::pow(pmax / pmin, t));
      }
      std::vector<hft::ThresholdPoint> pts;
      for (double p : ps) {
        uint64_t shots = sweep_shots;
        if (deep && p < 1e-3) shots *= 10;
        auto part = hft::sweep_threshold(base, {sweep_d}, {p}, shots);
        pts.insert(pts.end(), part.begin(), part.end());
      }
      json env = hft::report_envelope(
          json{{"command", "sweep"},
               {"d", sweep_d},
               {"pmin", pmin},
               {"pmax", pmax},
               {"points", points},
               {"shots", sweep_shots},
               {"mode", sweep_mode},
               {"deep", deep}},
          use_seed);
      if (format == "csv")
        write_output(out_path, sweep_csv(pts, env));
      else
        write_output(out_path, sweep_json(pts, env).dump(2) + "\n");
      return 0;
    }
    if (compare->parsed()) {
      hft::MethodComparisonReport rep = hft::method_comparison_report(
          cmp_pphys, cmp_shots, use_seed, cmp_rounds, threads);
      json j = hft::report_envelope(json{{"command", "compare"},
                                         {"p_phys", cmp_pphys},
                                         {"shots", cmp_shots},
                                         {"rounds", cmp_rounds}},
                                    use_seed);
      j["comparison"] = rep.to_json();
      write_output(out_path, j.dump(2) + "\n");
      return 0;
    }
    if (temporal->parsed()) {
      hft::HmmParams params;
      params.q_flip = qflip;
      params.r_obs = robs;
      json shots_j = json::array();
      for (int s = 0; s < t_shots; s++) {
        hft::SyndromeStream stream = hft::sample_stream(
            size_t(t_rounds), size_t(t_stabs), params, use_seed, uint64_t(s));
        json entry;
        entry["shot"] = s + 1;
        auto add_method = [&](const std::string& name) {
          std::vector<hft::TemporalDecision> dec;
          if (name == "majority")
            dec = hft::majority_vote(stream, window);
          else if (name == "viterbi")
            dec = hft::viterbi_decode(stream, params);
          else
            dec = hft::bayes_filter(stream, params);
          json m;
          m["corrected"] = dec.back().bits;
          m["confidence"] = dec.back().confidence;
          entry[name] = m;
        };
        if (method == "all" || method == "majority") add_method("majority");
        if (method == "all" || method == "viterbi") add_method("viterbi");
        if (method == "all" || method == "bayes") add_method("bayes");
        if (method == "all") {
          hft::MethodComparison cmp =
              hft::compare_methods(stream, params, window);
          entry["disagreement_rounds"] = cmp.disagreement_rounds;
          json acc;
          for (const auto& m : cmp.methods) acc[m.method] = m.accuracy;
          entry["accuracy"] = acc;
        }
        entry["hidden_truth_final"] = (*stream.hidden_truth).back();
        shots_j.push_back(entry);
      }
      json j = hft::report_envelope(json{{"command", "temporal"},
                                         {"method", method},
                                         {"rounds", t_rounds},
                                         {"shots", t_shots},
                                         {"stabs", t_stabs},
                                         {"window", window},
                                         {"q_flip", qflip},
                                         {"r_obs", robs}},
                                    use_seed);
      j["shots"] = shots_j;
      write_output(out_path, j.dump(2) + "\n");
      return 0;
    }
    std::cerr << "no subcommand\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 2;
  }
}
