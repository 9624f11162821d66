#include "permcode/simulate.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "permcode/enumeration.hpp"
#include "permcode/erasure_decoder.hpp"
#include "permcode/rng.hpp"

namespace permcode {

namespace {

struct Counts {
  std::uint64_t block_errors = 0;
  std::uint64_t symbol_errors = 0;
  std::uint64_t stalled = 0;
  std::uint64_t contradictions = 0;

  void operator+=(const Counts& o) {
    block_errors += o.block_errors;
    symbol_errors += o.symbol_errors;
    stalled += o.stalled;
    contradictions += o.contradictions;
  }
};

// Trials [begin, end); trial t reuses codeword t / patterns_per_codeword.
Counts run_slice(const FactorGraph& graph, double eps, std::uint64_t begin,
                 std::uint64_t end, const SimConfig& cfg, int point_index) {
  Counts counts;
  ErasurePropagator prop(graph);
  const int n = graph.num_vars();
  Codeword word;
  std::uint64_t cached_cw = UINT64_MAX;
  PartialGrid observed;
  observed.q = graph.q();
  observed.cells.resize(n);
  for (std::uint64_t t = begin; t < end; ++t) {
    const std::uint64_t cw = t / static_cast<std::uint64_t>(cfg.patterns_per_codeword);
    if (cw != cached_cw) {
      word = sample_codeword(graph, derive_seed(cfg.seed, 0xC0DE + point_index, cw));
      cached_cw = cw;
    }
    Rng rng(derive_seed(cfg.seed, 0xE7A5 + point_index, t));
    for (int v = 0; v < n; ++v)
      observed.cells[v] = rng.unit() < eps ? full_mask(graph.q()) : symbol_bit(word[v]);
    prop.reset(observed);
    const DecodeStatus st = prop.propagate();
    if (st != DecodeStatus::decoded) ++counts.block_errors;
    if (st == DecodeStatus::stalled) {
      ++counts.stalled;
      for (int v = 0; v < n; ++v)
        if (!is_singleton(prop.cell(v))) ++counts.symbol_errors;
    } else if (st == DecodeStatus::contradiction) {
      ++counts.contradictions;
      counts.symbol_errors += static_cast<std::uint64_t>(n);
    }
  }
  return counts;
}

}  // namespace

std::vector<SimRecord> simulate_erasure(const FactorGraph& graph, const SimConfig& config) {
  if (config.eps_grid.empty()) throw std::invalid_argument("empty erasure grid");
  if (config.min_block_errors < 1 || config.patterns_per_codeword < 1 || config.workers < 1)
    throw std::invalid_argument("bad simulation parameters");

  std::vector<SimRecord> records;
  const std::uint64_t batch = static_cast<std::uint64_t>(config.patterns_per_codeword) *
                              static_cast<std::uint64_t>(config.workers);
  for (int pi = 0; pi < static_cast<int>(config.eps_grid.size()); ++pi) {
    const double eps = config.eps_grid[pi];
    if (eps < 0.0 || eps > 1.0) throw std::invalid_argument("erasure probability out of range");
    const auto started = std::chrono::steady_clock::now();
    Counts total;
    std::uint64_t trials = 0;
    for (;;) {
      const bool enough_codewords =
          trials / config.patterns_per_codeword >=
          static_cast<std::uint64_t>(config.min_codewords);
      const bool enough_errors =
          total.block_errors >= static_cast<std::uint64_t>(config.min_block_errors);
      if ((enough_codewords && enough_errors) || trials >= config.max_trials) break;
      const std::uint64_t this_batch = std::min<std::uint64_t>(batch, config.max_trials - trials);
      if (config.workers == 1 || this_batch < batch) {
        total += run_slice(graph, eps, trials, trials + this_batch, config, pi);
      } else {
        std::vector<Counts> partial(config.workers);
        std::vector<std::thread> pool;
        const std::uint64_t per = this_batch / config.workers;
        for (int w = 0; w < config.workers; ++w) {
          const std::uint64_t b = trials + w * per;
          const std::uint64_t e = (w == config.workers - 1) ? trials + this_batch : b + per;
          pool.emplace_back([&, b, e, w] { partial[w] = run_slice(graph, eps, b, e, config, pi); });
        }
        for (auto& th : pool) th.join();
        for (const auto& c : partial) total += c;
      }
      trials += this_batch;
    }
    SimRecord rec;
    rec.eps = eps;
    rec.trials = trials;
    rec.block_errors = total.block_errors;
    rec.bler = trials ? static_cast<double>(total.block_errors) / trials : 0.0;
    rec.symbol_errors = total.symbol_errors;
    rec.ser = trials ? static_cast<double>(total.symbol_errors) /
                           (static_cast<double>(trials) * graph.num_vars())
                     : 0.0;
    rec.stalled = total.stalled;
    rec.contradictions = total.contradictions;
    if (config.timing) {
      rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    }
    records.push_back(rec);
  }
  return records;
}

std::vector<SimRecord> simulate_erasure(const SimConfig& config) {
  return simulate_erasure(build_structure(config.structure, config.q), config);
}

std::string sim_records_to_csv(const std::vector<SimRecord>& records) {
  std::ostringstream os;
  os << "eps,trials,block_errors,bler,symbol_errors,ser,stalled,contradictions,seconds\n";
  char buf[256];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, "%g,%llu,%llu,%.8g,%llu,%.8g,%llu,%llu,%.3f\n", r.eps,
                  static_cast<unsigned long long>(r.trials),
                  static_cast<unsigned long long>(r.block_errors), r.bler,
                  static_cast<unsigned long long>(r.symbol_errors), r.ser,
                  static_cast<unsigned long long>(r.stalled),
                  static_cast<unsigned long long>(r.contradictions), r.seconds);
    os << buf;
  }
  return os.str();
}

std::vector<double> parse_eps_grid(const std::string& spec) {
  std::vector<double> out;
  const auto c1 = spec.find(':');
  if (c1 == std::string::npos) {
    out.push_back(std::stod(spec));
    return out;
  }
  const auto c2 = spec.find(':', c1 + 1);
  if (c2 == std::string::npos) throw std::invalid_argument("eps grid must be start:stop:step");
  const double start = std::stod(spec.substr(0, c1));
  const double stop = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
  const double step = std::stod(spec.substr(c2 + 1));
  if (step <= 0.0) throw std::invalid_argument("eps step must be positive");
  for (double e = start; e <= stop + step / 2; e += step) out.push_back(e);
  return out;
}

}  // namespace permcode
