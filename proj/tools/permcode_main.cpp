// Command-line front end: structure construction, counting/sampling,
// encoding/recovery, erasure and soft decoding, permanents, ensemble
// analysis, and the erasure-channel Monte Carlo simulator.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "permcode/analysis.hpp"
#include "permcode/encoder.hpp"
#include "permcode/enumeration.hpp"
#include "permcode/erasure_decoder.hpp"
#include "permcode/grid_io.hpp"
#include "permcode/permanent.hpp"
#include "permcode/simulate.hpp"
#include "permcode/soft_decoder.hpp"

namespace {

using namespace permcode;

// Exit codes, also listed in the README.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitConstruction = 3;
constexpr int kExitContradiction = 4;
constexpr int kExitStalled = 5;
constexpr int kExitEncodingFailure = 6;

struct GraphArgs {
  std::string structure = "sudoku";
  int q = 9;
  int dv = 3;
  int n_vars = 0;
  std::uint64_t seed = 1;

  FactorGraph build() const {
    const StructureKind kind = structure_from_string(structure);
    if (kind == StructureKind::random_regular) {
      const int n = n_vars > 0 ? n_vars : q * q;
      return build_random_regular(dv, q, n, seed);
    }
    return build_structure(kind, q);
  }
};

void add_graph_options(CLI::App* cmd, GraphArgs& args, bool seed_required = false) {
  cmd->add_option("--structure", args.structure,
                  "latin|sudoku|pandiagonal|semi_pandiagonal|random_regular")
      ->required();
  cmd->add_option("--q", args.q, "alphabet size")->required();
  cmd->add_option("--dv", args.dv, "variable degree (random_regular)");
  cmd->add_option("--n", args.n_vars, "variable count (random_regular; default q^2)");
  auto* seed = cmd->add_option("--graph-seed", args.seed, "seed (random_regular)");
  if (seed_required) seed->needs("--structure");
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  return file;
}

std::vector<std::uint8_t> read_bits_file(const std::string& path, bool raw) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open bits file: " + path);
  std::vector<std::uint8_t> bits;
  if (raw) {
    char byte;
    while (in.get(byte))
      for (int b = 7; b >= 0; --b)
        bits.push_back(static_cast<std::uint8_t>(byte >> b & 1));
  } else {
    char c;
    while (in.get(c)) {
      if (c == '0' || c == '1') bits.push_back(static_cast<std::uint8_t>(c - '0'));
      else if (!std::isspace(static_cast<unsigned char>(c)))
        throw std::runtime_error("bits file must contain only 0, 1 and whitespace");
    }
  }
  return bits;
}

void write_bits(std::ostream& out, const std::vector<std::uint8_t>& bits, bool raw) {
  if (raw) {
    for (std::size_t i = 0; i < bits.size(); i += 8) {
      unsigned byte = 0;
      for (std::size_t b = 0; b < 8 && i + b < bits.size(); ++b)
        byte |= static_cast<unsigned>(bits[i + b]) << (7 - b);
      out.put(static_cast<char>(byte));
    }
  } else {
    for (auto b : bits) out.put(static_cast<char>('0' + b));
    out.put('\n');
  }
}

Eigen::MatrixXd read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<double> row;
    double x;
    while (ls >> x) row.push_back(x);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("empty matrix");
  Eigen::MatrixXd m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) throw std::runtime_error("ragged matrix");
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

int run(int argc, char** argv) {
  CLI::App app{"codes with local permutation constraints"};
  app.require_subcommand(1);

  // build
  GraphArgs build_args;
  std::string build_out;
  auto* cmd_build = app.add_subcommand("build", "construct a structure and dump its constraints");
  add_graph_options(cmd_build, build_args);
  cmd_build->add_option("--out", build_out, "output file (default stdout)");

  // count
  GraphArgs count_args;
  std::uint64_t count_limit = 0;
  auto* cmd_count = app.add_subcommand("count", "count codewords by backtracking");
  add_graph_options(cmd_count, count_args);
  cmd_count->add_option("--limit", count_limit, "cap on the count (0 = none)");

  // sample
  GraphArgs sample_args;
  std::uint64_t sample_seed = 0;
  std::string sample_out;
  auto* cmd_sample = app.add_subcommand("sample", "sample a codeword (seeded backtracking)");
  add_graph_options(cmd_sample, sample_args);
  cmd_sample->add_option("--seed", sample_seed, "sampling seed")->required();
  cmd_sample->add_option("--out", sample_out, "output grid file (default stdout)");

  // validate
  GraphArgs validate_args;
  std::string validate_grid;
  auto* cmd_validate = app.add_subcommand("validate", "check a complete grid against a structure");
  add_graph_options(cmd_validate, validate_args);
  cmd_validate->add_option("--grid", validate_grid, "grid file")->required();

  // permanent
  std::string perm_matrix;
  bool perm_naive_flag = false, perm_cofactors = false;
  auto* cmd_perm = app.add_subcommand("permanent", "permanent of a nonnegative matrix");
  cmd_perm->add_option("--matrix", perm_matrix, "whitespace-separated rows")->required();
  cmd_perm->add_flag("--naive", perm_naive_flag, "use the naive oracle (q <= 10)");
  cmd_perm->add_flag("--cofactors", perm_cofactors, "print all cofactor permanents");

  // decode-erasure
  GraphArgs de_args;
  std::string de_grid, de_out;
  auto* cmd_de = app.add_subcommand("decode-erasure", "subset BP on an erased grid");
  add_graph_options(cmd_de, de_args);
  cmd_de->add_option("--grid", de_grid, "grid file with 0/. erasures")->required();
  cmd_de->add_option("--out", de_out, "output file (default stdout)");

  // decode-soft
  GraphArgs ds_args;
  std::string ds_grid, ds_out;
  double ds_flip = -1.0;
  int ds_max_iters = 50;
  double ds_tol = 1e-8;
  auto* cmd_ds = app.add_subcommand("decode-soft", "permanent-based BP, marginals as CSV");
  add_graph_options(cmd_ds, ds_args);
  cmd_ds->add_option("--grid", ds_grid, "grid file (erasure pattern or complete word)")->required();
  cmd_ds->add_option("--flip", ds_flip, "q-ary symmetric flip probability (complete grid)");
  cmd_ds->add_option("--max-iters", ds_max_iters, "iteration cap");
  cmd_ds->add_option("--tol", ds_tol, "convergence threshold");
  cmd_ds->add_option("--out", ds_out, "output file (default stdout)");

  // encode
  GraphArgs enc_args;
  std::string enc_bits, enc_out;
  bool enc_raw = false;
  int enc_blocks = 1, enc_max_attempts = 3;
  auto* cmd_enc = app.add_subcommand("encode", "encode source bits into codewords");
  add_graph_options(cmd_enc, enc_args);
  cmd_enc->add_option("--bits", enc_bits, "source bits file")->required();
  cmd_enc->add_flag("--raw", enc_raw, "bits file is raw bytes (default ASCII 0/1)");
  cmd_enc->add_option("--blocks", enc_blocks, "number of codewords (stream mode)");
  cmd_enc->add_option("--max-attempts", enc_max_attempts, "prefix-reservation depth");
  cmd_enc->add_option("--out", enc_out, "output grid file (default stdout)");

  // recover
  GraphArgs rec_args;
  std::string rec_grid, rec_out;
  bool rec_raw = false, rec_no_flush = false;
  int rec_max_attempts = 3;
  auto* cmd_rec = app.add_subcommand("recover", "recover source bits from codewords");
  add_graph_options(cmd_rec, rec_args);
  cmd_rec->add_option("--grid", rec_grid, "grid file with one or more complete grids")->required();
  cmd_rec->add_flag("--raw", rec_raw, "write raw bytes (default ASCII 0/1)");
  cmd_rec->add_flag("--no-flush", rec_no_flush, "leave the stream tail pending");
  cmd_rec->add_option("--max-attempts", rec_max_attempts, "prefix-reservation depth");
  cmd_rec->add_option("--out", rec_out, "output bits file (default stdout)");

  // analyze
  auto* cmd_an = app.add_subcommand("analyze", "ensemble analysis");
  cmd_an->require_subcommand(1);
  int an_q = 9, an_dv = 3;
  std::string an_count;
  int an_n = 0;
  auto* cmd_rates = cmd_an->add_subcommand("rates", "cycle-free, Bethe and combinatorial rates");
  cmd_rates->add_option("--q", an_q)->required();
  cmd_rates->add_option("--dv", an_dv)->required();
  cmd_rates->add_option("--count", an_count, "codeword count M (arbitrary precision)");
  cmd_rates->add_option("--n", an_n, "block length N for --count");

  int th_q = 3, th_dv = 3, th_pop = 100000, th_iters = 500, th_repeats = 1;
  double th_res = 1e-3;
  std::uint64_t th_seed = 0;
  auto* cmd_th = cmd_an->add_subcommand("threshold", "population-dynamics BP threshold");
  cmd_th->add_option("--q", th_q)->required();
  cmd_th->add_option("--dv", th_dv)->required();
  cmd_th->add_option("--seed", th_seed)->required();
  cmd_th->add_option("--pop", th_pop, "population size");
  cmd_th->add_option("--max-iters", th_iters, "iteration cap per run");
  cmd_th->add_option("--resolution", th_res, "bisection stop width");
  cmd_th->add_option("--repeats", th_repeats, "independent repeats for the CI");

  // simulate
  SimConfig sim;
  std::string sim_structure = "sudoku", sim_eps = "0.1:0.4:0.1", sim_out;
  auto* cmd_sim = app.add_subcommand("simulate", "erasure-channel Monte Carlo (CSV)");
  cmd_sim->add_option("--structure", sim_structure)->required();
  cmd_sim->add_option("--q", sim.q)->required();
  cmd_sim->add_option("--eps", sim_eps, "start:stop:step or a single value")->required();
  cmd_sim->add_option("--seed", sim.seed)->required();
  cmd_sim->add_option("--min-codewords", sim.min_codewords);
  cmd_sim->add_option("--min-errors", sim.min_block_errors);
  cmd_sim->add_option("--max-trials", sim.max_trials);
  cmd_sim->add_option("--patterns", sim.patterns_per_codeword, "erasure patterns per codeword");
  cmd_sim->add_option("--workers", sim.workers);
  cmd_sim->add_flag("--timing", sim.timing, "fill the seconds column with wall time");
  cmd_sim->add_option("--out", sim_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  std::ofstream file;
  if (cmd_build->parsed()) {
    const FactorGraph g = build_args.build();
    auto& out = open_out(file, build_out);
    out << to_string(g.structure()) << " q=" << g.q() << " N=" << g.num_vars()
        << " constraints=" << g.num_constraints() << "\n";
    for (int c = 0; c < g.num_constraints(); ++c) {
      for (int s = 0; s < g.q(); ++s) out << g.constraint(c)[s] << (s + 1 == g.q() ? '\n' : ' ');
    }
    return kExitOk;
  }

  if (cmd_count->parsed()) {
    const FactorGraph g = count_args.build();
    const auto res = count_codewords(
        g, count_limit ? std::optional<std::uint64_t>(count_limit) : std::nullopt);
    std::cout << res.count;
    if (res.capped) std::cout << " (capped)";
    std::cout << "\n";
    return kExitOk;
  }

  if (cmd_sample->parsed()) {
    const FactorGraph g = sample_args.build();
    const Codeword w = sample_codeword(g, sample_seed);
    auto& out = open_out(file, sample_out);
    write_grid(out, PartialGrid::from_codeword(g.q(), w));
    return kExitOk;
  }

  if (cmd_validate->parsed()) {
    const FactorGraph g = validate_args.build();
    const PartialGrid grid = read_grid_file(validate_grid);
    if (!grid.all_determined()) {
      std::cout << "false (grid has undetermined cells)\n";
      return kExitContradiction;
    }
    const bool ok = validate(g, grid.to_codeword());
    std::cout << (ok ? "true" : "false") << "\n";
    return ok ? kExitOk : kExitContradiction;
  }

  if (cmd_perm->parsed()) {
    const Eigen::MatrixXd m = read_matrix_file(perm_matrix);
    if (perm_cofactors) {
      std::cout << cofactor_permanents(m) << "\n";
    } else if (perm_naive_flag) {
      std::printf("%.17g\n", perm_naive(m));
    } else {
      std::printf("%.17g\n", perm_trellis(m).value());
    }
    return kExitOk;
  }

  if (cmd_de->parsed()) {
    const FactorGraph g = de_args.build();
    const PartialGrid grid = read_grid_file(de_grid);
    const ErasureDecodeResult res = decode_erasure(g, grid);
    auto& out = open_out(file, de_out);
    out << "status " << to_string(res.status) << " iterations " << res.iterations << "\n";
    if (res.status != DecodeStatus::contradiction) write_grid(out, res.grid);
    switch (res.status) {
      case DecodeStatus::decoded: return kExitOk;
      case DecodeStatus::stalled: return kExitStalled;
      case DecodeStatus::contradiction: return kExitContradiction;
    }
  }

  if (cmd_ds->parsed()) {
    const FactorGraph g = ds_args.build();
    const PartialGrid grid = read_grid_file(ds_grid);
    ChannelPriors priors;
    if (ds_flip >= 0.0) {
      if (!grid.all_determined())
        throw std::runtime_error("--flip needs a complete grid");
      priors = priors_symmetric_flip(g.q(), grid.to_codeword(), ds_flip);
    } else {
      priors = priors_from_grid(grid);
    }
    const SoftDecodeResult res = decode_soft(g, priors, {ds_max_iters, ds_tol});
    auto& out = open_out(file, ds_out);
    out << "# status " << to_string(res.status) << " iterations " << res.iterations << "\n";
    out << "var";
    for (int s = 1; s <= g.q(); ++s) out << ",p" << s;
    out << ",hard\n";
    char buf[64];
    for (int v = 0; v < g.num_vars(); ++v) {
      out << v;
      for (int s = 0; s < g.q(); ++s) {
        std::snprintf(buf, sizeof buf, ",%.8g", res.marginals[v](s));
        out << buf;
      }
      out << "," << res.hard_decision[v] << "\n";
    }
    return res.status == SoftStatus::decoded    ? kExitOk
           : res.status == SoftStatus::max_iters ? kExitStalled
                                                  : kExitContradiction;
  }

  if (cmd_enc->parsed()) {
    const FactorGraph g = enc_args.build();
    BitSource source(read_bits_file(enc_bits, enc_raw));
    DrawCoder coder;
    const EncoderConfig cfg{enc_max_attempts};
    auto& out = open_out(file, enc_out);
    for (int b = 0; b < enc_blocks; ++b) {
      const EncodeResult res = encode_codeword(g, source, coder, cfg);
      if (res.status == EncodeStatus::failure) {
        std::cerr << "encoding failure after " << res.attempts << " attempts (block " << b
                  << ")\n";
        return kExitEncodingFailure;
      }
      write_grid(out, PartialGrid::from_codeword(g.q(), res.codeword));
      std::cerr << "block " << b << ": bits " << res.bits_consumed << " attempts "
                << res.attempts << " rate " << res.rate << "\n";
    }
    return kExitOk;
  }

  if (cmd_rec->parsed()) {
    const FactorGraph g = rec_args.build();
    std::ifstream in(rec_grid);
    if (!in) throw std::runtime_error("cannot open grid file: " + rec_grid);
    ReplayCoder coder;
    const EncoderConfig cfg{rec_max_attempts};
    int blocks = 0;
    while (true) {
      in >> std::ws;
      if (in.eof()) break;
      const PartialGrid grid = read_grid(in);
      if (!grid.all_determined()) throw std::runtime_error("recover needs complete grids");
      const int attempts = recover_codeword(g, grid.to_codeword(), coder, cfg);
      std::cerr << "block " << blocks << ": attempts " << attempts << "\n";
      ++blocks;
    }
    std::vector<std::uint8_t> bits = coder.emitted();
    if (!rec_no_flush) {
      const auto tail = coder.flush_tail();
      bits.insert(bits.end(), tail.begin(), tail.end());
    }
    auto& out = open_out(file, rec_out);
    write_bits(out, bits, rec_raw);
    std::cerr << "blocks " << blocks << " bits " << bits.size() << "\n";
    return kExitOk;
  }

  if (cmd_rates->parsed()) {
    std::cout << "q,dv,r_cf,one_minus_r_cf,r_bethe_bits,r_bethe_fraction";
    const double rcf = cycle_free_rate(an_q);
    const BetheRate rb = bethe_rate_estimate(an_q, an_dv);
    char buf[256];
    if (!an_count.empty()) {
      if (an_n <= 0) throw std::runtime_error("--count needs --n");
      const double r = combinatorial_rate(BigInt(an_count), an_n, an_q);
      std::cout << ",r_combinatorial\n";
      std::snprintf(buf, sizeof buf, "%d,%d,%.6f,%.6f,%.6f,%.6f,%.6f\n", an_q, an_dv, rcf,
                    1 - rcf, rb.bits_per_symbol, rb.fraction, r);
    } else {
      std::cout << "\n";
      std::snprintf(buf, sizeof buf, "%d,%d,%.6f,%.6f,%.6f,%.6f\n", an_q, an_dv, rcf, 1 - rcf,
                    rb.bits_per_symbol, rb.fraction);
    }
    std::cout << buf;
    return kExitOk;
  }

  if (cmd_th->parsed()) {
    EnsembleParams params;
    params.q = th_q;
    params.d_v = th_dv;
    params.population_size = th_pop;
    params.max_de_iters = th_iters;
    params.resolution = th_res;
    const DEThreshold th = de_threshold(params, th_seed, th_repeats);
    const double rcf = cycle_free_rate(th_q);
    const BetheRate rb = bethe_rate_estimate(th_q, th_dv);
    char buf[256];
    std::cout << "q,dv,theta,ci_lo,ci_hi,r_cf,r_bethe\n";
    std::snprintf(buf, sizeof buf, "%d,%d,%.4f,%.4f,%.4f,%.6f,%.6f\n", th_q, th_dv, th.theta,
                  th.ci_lo, th.ci_hi, rcf, rb.fraction);
    std::cout << buf;
    return kExitOk;
  }

  if (cmd_sim->parsed()) {
    sim.structure = structure_from_string(sim_structure);
    sim.eps_grid = parse_eps_grid(sim_eps);
    const auto records = simulate_erasure(sim);
    auto& out = open_out(file, sim_out);
    out << sim_records_to_csv(records);
    return kExitOk;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const permcode::ConstructionError& e) {
    std::cerr << "construction error: " << e.what() << "\n";
    return kExitConstruction;
  } catch (const permcode::RecoverError& e) {
    std::cerr << "recover error: " << e.what() << "\n";
    return kExitContradiction;
  } catch (const permcode::SourceExhausted& e) {
    std::cerr << e.what() << "\n";
    return kExitEncodingFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
