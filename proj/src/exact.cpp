#include "ebench/exact.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "ebench/error.hpp"
#include "ebench/format.hpp"
#include "ebench/parallel.hpp"
#include "ebench/rng.hpp"
#include "gray_walk.hpp"

namespace ebench {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

constexpr std::uint64_t kChunk = std::uint64_t{1} << 20;

void require_enumerable(const Graph& g) {
  if (g.n() > kMaxEnumerationOrder)
    throw CapacityError("exact enumeration supports n <= " +
                        std::to_string(kMaxEnumerationOrder) + ", got " + std::to_string(g.n()));
}

std::uint64_t config_count(const Graph& g) { return std::uint64_t{1} << (g.n() - 1); }

std::uint64_t chunk_count(std::uint64_t total) { return (total + kChunk - 1) / kChunk; }

Partition partition_from_mask(int n, std::uint64_t side) {
  std::vector<int> labels(n);
  for (int v = 0; v < n; ++v) labels[v] = static_cast<int>(side >> v & 1);
  return Partition(std::move(labels), 2);
}

}  // namespace

std::string to_string(DosKind kind) {
  return kind == DosKind::exact ? "exact" : "monte-carlo";
}

std::uint64_t DensityOfStates::total() const {
  std::uint64_t t = 0;
  for (const auto& [cut, c] : counts) t += c;
  return t;
}

int DensityOfStates::max_cut() const {
  for (auto it = counts.rbegin(); it != counts.rend(); ++it)
    if (it->second > 0) return it->first;
  return 0;
}

ExactSolution brute_force_maxcut(const Graph& g, int workers) {
  require_enumerable(g);
  const auto start = Clock::now();
  const std::uint64_t total = config_count(g);
  const std::uint64_t chunks = chunk_count(total);
  struct Best {
    int value = -1;
    std::uint64_t side = 0;
  };
  std::vector<Best> best(chunks);
  parallel_for(chunks, workers, [&](std::size_t c) {
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(total, begin + kChunk);
    Best local;
    detail::gray_walk(g, begin, end, [&](std::uint64_t, std::uint64_t side, int cut) {
      if (cut > local.value) local = {cut, side};
      return true;
    });
    best[c] = local;
  });
  Best overall;
  for (const auto& b : best)
    if (b.value > overall.value) overall = b;

  ExactSolution sol;
  sol.best_value = overall.value;
  sol.witness = partition_from_mask(g.n(), overall.side);
  sol.proven_optimal = true;
  sol.nodes_explored = total;
  sol.wall_time = seconds_since(start);
  return sol;
}

std::optional<Partition> find_cut_above(const Graph& g, int bound, int workers) {
  require_enumerable(g);
  const std::uint64_t total = config_count(g);
  const std::uint64_t chunks = chunk_count(total);
  std::atomic<bool> found{false};
  std::vector<std::optional<std::uint64_t>> hits(chunks);
  parallel_for(chunks, workers, [&](std::size_t c) {
    if (found.load(std::memory_order_relaxed)) return;
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(total, begin + kChunk);
    detail::gray_walk(g, begin, end, [&](std::uint64_t i, std::uint64_t side, int cut) {
      if (cut > bound) {
        hits[c] = side;
        found.store(true, std::memory_order_relaxed);
        return false;
      }
      return (i & 0xFFFF) != 0 || !found.load(std::memory_order_relaxed);
    });
  });
  for (const auto& h : hits)
    if (h) return partition_from_mask(g.n(), *h);
  return std::nullopt;
}

DensityOfStates density_of_states_exact(const Graph& g, int workers) {
  require_enumerable(g);
  const std::uint64_t total = config_count(g);
  const std::uint64_t chunks = chunk_count(total);
  const std::size_t bins = g.num_edges() + 1;
  std::vector<std::vector<std::uint64_t>> tallies(chunks);
  parallel_for(chunks, workers, [&](std::size_t c) {
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(total, begin + kChunk);
    std::vector<std::uint64_t> local(bins, 0);
    detail::gray_walk(g, begin, end, [&](std::uint64_t, std::uint64_t, int cut) {
      ++local[cut];
      return true;
    });
    tallies[c] = std::move(local);
  });

  DensityOfStates dos;
  dos.n = g.n();
  dos.k = 2;
  dos.kind = DosKind::exact;
  dos.config_space_size = static_cast<double>(total);
  for (std::size_t cut = 0; cut < bins; ++cut) {
    std::uint64_t sum = 0;
    for (const auto& t : tallies) sum += t[cut];
    if (sum > 0) dos.counts[static_cast<int>(cut)] = sum;
  }
  return dos;
}

namespace {

class BranchAndBound {
 public:
  BranchAndBound(const Graph& g, int k, double budget)
      : g_(g), k_(k), budget_(budget), start_(Clock::now()) {
    const int n = g.n();
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](int a, int b) { return g.degree(a) > g.degree(b); });
    position_.resize(n);
    for (int i = 0; i < n; ++i) position_[order_[i]] = i;

    // closed_[d]: edges with both endpoints among the first d vertices of the order.
    closed_.assign(n + 1, 0);
    for (const auto& [u, v] : g.edges()) ++closed_[std::max(position_[u], position_[v]) + 1];
    for (int d = 1; d <= n; ++d) closed_[d] += closed_[d - 1];

    labels_.assign(n, -1);
    best_labels_.assign(n, 0);
  }

  ExactSolution run() {
    search(0, 0, -1);
    ExactSolution sol;
    sol.best_value = best_;
    sol.witness = Partition(best_labels_, k_);
    sol.proven_optimal = !timed_out_;
    sol.nodes_explored = nodes_;
    sol.wall_time = seconds_since(start_);
    return sol;
  }

 private:
  int open_edges(int depth) const {
    return static_cast<int>(g_.num_edges()) - closed_[depth];
  }

  bool out_of_time() {
    if (budget_ <= 0.0 || (nodes_ & 1023) != 0) return timed_out_;
    if (seconds_since(start_) > budget_) timed_out_ = true;
    return timed_out_;
  }

  void search(int depth, int cut, int max_label) {
    ++nodes_;
    if (timed_out_ || out_of_time()) return;
    const int n = g_.n();
    if (depth == n) {
      if (cut > best_) {
        best_ = cut;
        best_labels_ = labels_;
      }
      return;
    }
    if (cut + open_edges(depth) <= best_) return;

    const int w = order_[depth];
    // Tally labels of already-assigned neighbors.
    std::vector<int> same(k_, 0);
    int assigned = 0;
    for (int u : g_.neighbors(w)) {
      if (position_[u] < depth) {
        ++same[labels_[u]];
        ++assigned;
      }
    }
    const int label_cap = std::min(k_ - 1, max_label + 1);
    std::vector<int> candidates(label_cap + 1);
    std::iota(candidates.begin(), candidates.end(), 0);
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](int a, int b) { return same[a] < same[b]; });
    for (int c : candidates) {
      const int next_cut = cut + assigned - same[c];
      if (next_cut + open_edges(depth + 1) <= best_) continue;
      labels_[w] = c;
      search(depth + 1, next_cut, std::max(max_label, c));
      labels_[w] = -1;
      if (best_ == static_cast<int>(g_.num_edges()) || timed_out_) return;
    }
  }

  const Graph& g_;
  int k_;
  double budget_;
  Clock::time_point start_;
  std::vector<int> order_, position_, closed_, labels_, best_labels_;
  int best_ = -1;
  std::uint64_t nodes_ = 0;
  bool timed_out_ = false;
};

}  // namespace

ExactSolution branch_and_bound_maxkcut(const Graph& g, int k, double time_budget) {
  if (k < 2) throw ContractViolation("branch_and_bound_maxkcut: k must be >= 2");
  return BranchAndBound(g, k, time_budget).run();
}

DensityOfStates dos_monte_carlo(const Graph& g, int k, std::uint64_t samples, std::uint64_t seed,
                                int workers, const std::vector<Partition>& inject) {
  if (k < 1) throw ContractViolation("dos_monte_carlo: k must be >= 1");
  if (samples < 1) throw ContractViolation("dos_monte_carlo: samples must be >= 1");
  constexpr std::uint64_t kBlock = std::uint64_t{1} << 16;
  const std::uint64_t blocks = (samples + kBlock - 1) / kBlock;
  const std::size_t bins = g.num_edges() + 1;
  std::vector<std::vector<std::uint64_t>> tallies(blocks);
  parallel_for(blocks, workers, [&](std::size_t b) {
    const std::uint64_t count = std::min(kBlock, samples - b * kBlock);
    Rng rng = make_rng(mix_seed(seed, b));
    std::vector<int> labels(g.n());
    std::vector<std::uint64_t> local(bins, 0);
    for (std::uint64_t s = 0; s < count; ++s) {
      for (int& x : labels) x = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(k)));
      ++local[cut_value(g, labels)];
    }
    tallies[b] = std::move(local);
  });

  DensityOfStates dos;
  dos.n = g.n();
  dos.k = k;
  dos.kind = DosKind::monte_carlo;
  dos.samples = samples;
  dos.seed = seed;
  dos.config_space_size = std::pow(static_cast<double>(k), g.n());
  for (std::size_t cut = 0; cut < bins; ++cut) {
    std::uint64_t sum = 0;
    for (const auto& t : tallies) sum += t[cut];
    if (sum > 0) dos.counts[static_cast<int>(cut)] = sum;
  }
  for (const auto& p : inject) ++dos.injected[cut_value(g, p)];
  return dos;
}

std::string dos_to_csv(const DensityOfStates& dos) {
  std::string out = "k,count\n";
  for (const auto& [cut, c] : dos.counts) out += std::to_string(cut) + "," + std::to_string(c) + "\n";
  return out;
}

std::string dos_metadata_json(const DensityOfStates& dos) {
  nlohmann::ordered_json j;
  j["n"] = dos.n;
  j["k"] = dos.k;
  j["kind"] = to_string(dos.kind);
  j["samples"] = dos.samples;
  j["config_space_size"] = dos.config_space_size;
  j["seed"] = dos.seed;
  j["labelings"] = dos.kind == DosKind::exact ? "complement-identified, vertex 0 pinned"
                                              : "ordered labelings, no permutation quotient";
  if (!dos.injected.empty()) {
    auto inj = nlohmann::ordered_json::array();
    for (const auto& [cut, c] : dos.injected) inj.push_back({{"k", cut}, {"count", c}});
    j["injected"] = std::move(inj);
  }
  return j.dump(2) + "\n";
}

DensityOfStates dos_from_csv(const std::string& csv, int n, int k) {
  std::istringstream in(csv);
  std::string line;
  DensityOfStates dos;
  dos.n = n;
  dos.k = k;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1) {
      if (line != "k,count") throw IoError("DOS CSV: expected header \"k,count\"");
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw IoError("DOS CSV line " + std::to_string(lineno));
    try {
      const int cut = std::stoi(line.substr(0, comma));
      const auto c = static_cast<std::uint64_t>(std::stoull(line.substr(comma + 1)));
      dos.counts[cut] += c;
    } catch (const std::exception&) {
      throw IoError("DOS CSV line " + std::to_string(lineno) + ": bad number");
    }
  }
  dos.config_space_size = static_cast<double>(dos.total());
  return dos;
}

}  // namespace ebench
