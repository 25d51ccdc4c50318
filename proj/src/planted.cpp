#include "ebench/planted.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <optional>

#include <json.hpp>

#include "ebench/exact.hpp"
#include "ebench/heuristics.hpp"
#include "ebench/rng.hpp"

namespace ebench {

void PlantedGraphSpec::validate() const {
  const auto [a, b] = side_sizes;
  if (n < 2 || a < 1 || b < 1 || a + b != n)
    throw ContractViolation("planted spec: side sizes must be positive and sum to n");
  const std::int64_t slots = static_cast<std::int64_t>(n) * (n - 1) / 2;
  if (target_cut < 0 || target_cut > a * b)
    throw ContractViolation("planted spec: target_cut must lie in [0, a*b]");
  if (m < target_cut || m > slots)
    throw ContractViolation("planted spec: need target_cut <= m <= n(n-1)/2");
}

PlantedGraphSpec PlantedGraphSpec::paper30() { return {30, 233, 146, 191, 210, {15, 15}}; }

namespace {

enum SlotClass { kCrossing = 0, kSplitA = 1, kSplitB = 2, kWithin = 3, kClasses = 4 };

// Working state of one candidate: every vertex pair belongs to exactly one
// class, and each class keeps its present edges and absent slots.
class Candidate {
 public:
  Candidate(const PlantedGraphSpec& spec, Rng& rng) : n_(spec.n) {
    const auto [a, b] = spec.side_sizes;
    const int a1 = a / 2, b1 = b / 2;
    group_.resize(n_);
    for (int v = 0; v < n_; ++v) {
      if (v < a)
        group_[v] = v < a1 ? 0 : 1;
      else
        group_[v] = v - a < b1 ? 2 : 3;
    }
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v) absent_[classify(u, v)].emplace_back(u, v);

    const int internal = spec.m - spec.target_cut;
    const int need3 = std::max(0, spec.min_3cut - spec.target_cut);
    const int need4 = std::max(0, spec.min_4cut - spec.target_cut);
    const int cap_a = static_cast<int>(absent_[kSplitA].size());
    const int cap_b = static_cast<int>(absent_[kSplitB].size());
    int x = std::min({cap_a, internal, std::max(need3, (need4 + 1) / 2)});
    int y = std::min({cap_b, internal - x, std::max(0, need4 - x)});
    x = std::min({cap_a, internal - y, std::max(x, need4 - y)});
    int w = internal - x - y;
    const int cap_w = static_cast<int>(absent_[kWithin].size());
    // Spill what the within-group slots cannot hold onto the split slots.
    int spill = std::max(0, w - cap_w);
    w -= spill;
    const int extra_a = std::min(spill, cap_a - x);
    x += extra_a;
    y += spill - extra_a;

    draw(kCrossing, spec.target_cut, rng);
    draw(kSplitA, x, rng);
    draw(kSplitB, y, rng);
    draw(kWithin, w, rng);
  }

  SlotClass classify(int u, int v) const {
    const bool side_u = group_[u] >= 2, side_v = group_[v] >= 2;
    if (side_u != side_v) return kCrossing;
    if (group_[u] == group_[v]) return kWithin;
    return side_u ? kSplitB : kSplitA;
  }

  Graph graph() const {
    std::vector<Edge> edges;
    for (const auto& cls : present_) edges.insert(edges.end(), cls.begin(), cls.end());
    return Graph::from_edges(n_, std::move(edges));
  }

  int split_edges(SlotClass c) const { return static_cast<int>(present_[c].size()); }
  const std::vector<int>& groups() const { return group_; }

  // Lowers cut(labels) to at most `target` by class-preserving swaps.
  // Returns the number of swaps, or -1 when no legal swap remains.
  int repair(const std::vector<int>& labels, int target, Rng& rng) {
    auto crosses = [&](const Edge& e) { return labels[e.first] != labels[e.second]; };
    int cut = 0;
    for (const auto& cls : present_)
      for (const auto& e : cls) cut += crosses(e);
    int swaps = 0;
    while (cut > target) {
      std::vector<std::pair<int, std::size_t>> cut_edges;
      for (int c = 0; c < kClasses; ++c)
        for (std::size_t i = 0; i < present_[c].size(); ++i)
          if (crosses(present_[c][i])) cut_edges.emplace_back(c, i);
      std::shuffle(cut_edges.begin(), cut_edges.end(), rng);
      bool swapped = false;
      for (const auto& [c, i] : cut_edges) {
        std::vector<std::size_t> free;
        for (std::size_t j = 0; j < absent_[c].size(); ++j)
          if (!crosses(absent_[c][j])) free.push_back(j);
        if (free.empty()) continue;
        const std::size_t j = free[uniform_below(rng, free.size())];
        std::swap(present_[c][i], absent_[c][j]);
        --cut;
        ++swaps;
        swapped = true;
        break;
      }
      if (!swapped) return -1;
    }
    return swaps;
  }

 private:
  void draw(SlotClass c, int count, Rng& rng) {
    auto& pool = absent_[c];
    for (int i = 0; i < count; ++i) {
      const std::size_t j = i + uniform_below(rng, pool.size() - i);
      std::swap(pool[i], pool[j]);
    }
    present_[c].assign(pool.begin(), pool.begin() + count);
    pool.erase(pool.begin(), pool.begin() + count);
  }

  int n_;
  std::vector<int> group_;
  std::vector<Edge> present_[kClasses];
  std::vector<Edge> absent_[kClasses];
};

std::optional<std::vector<int>> probe_with_tabu(const Graph& g, int target, Rng& rng) {
  for (int probe = 0; probe < 4; ++probe) {
    TabuParams p;
    p.max_iterations = 300;
    p.seed = rng();
    const auto r = tabu_search(g, 2, p);
    if (r.best_value > target) return r.witness.labels;
  }
  return std::nullopt;
}

PlantedGraph finish(const Candidate& cand, int attempts, int repairs, Rng& rng) {
  const auto& group = cand.groups();
  const int n = static_cast<int>(group.size());
  // Hide the block structure behind a random vertex relabeling.
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);

  const Graph plain = cand.graph();
  std::vector<Edge> edges;
  edges.reserve(plain.num_edges());
  for (const auto& [u, v] : plain.edges()) edges.emplace_back(perm[u], perm[v]);

  const bool split_a = cand.split_edges(kSplitA) >= cand.split_edges(kSplitB);
  std::vector<int> two(n), three(n), four(n);
  for (int v = 0; v < n; ++v) {
    const int gr = group[v];
    two[perm[v]] = gr >= 2;
    four[perm[v]] = gr;
    three[perm[v]] = split_a ? std::min(gr, 2) : (gr <= 1 ? 0 : gr - 1);
  }
  PlantedGraph out{Graph::from_edges(n, std::move(edges)), Partition(two, 2), Partition(three, 3),
                   Partition(four, 4), attempts, repairs};
  out.bipartition = out.bipartition.canonical();
  return out;
}

}  // namespace

PlantedGraph plant_graph(const PlantedGraphSpec& spec, std::uint64_t seed,
                         const PlantOptions& options) {
  spec.validate();
  Rng rng = make_rng(seed);
  int attempts = 0;
  int repairs = 0;
  std::optional<Candidate> last;
  while (attempts < options.max_attempts) {
    Candidate cand(spec, rng);
    bool abandoned = false;
    for (int round = 0;; ++round) {
      if (round >= options.repair_rounds) {
        abandoned = true;
        break;
      }
      const Graph g = cand.graph();
      auto better = probe_with_tabu(g, spec.target_cut, rng);
      if (!better) {
        if (attempts >= options.max_attempts) break;
        ++attempts;
        if (g.n() <= kMaxEnumerationOrder) {
          if (auto p = find_cut_above(g, spec.target_cut, options.workers)) better = p->labels;
        }
        if (!better) return finish(cand, attempts, repairs, rng);
      }
      const int swaps = cand.repair(*better, spec.target_cut, rng);
      if (swaps < 0) {
        abandoned = true;
        break;
      }
      repairs += swaps;
    }
    last = std::move(cand);
    if (abandoned) ++attempts;
  }
  if (!last) last.emplace(spec, rng);
  throw ConstructionFailed("planted construction exhausted " + std::to_string(options.max_attempts) +
                               " attempts",
                           finish(*last, attempts, repairs, rng));
}

VerificationReport verify_planted(const Graph& g, const PlantedGraphSpec& spec,
                                  const std::vector<Partition>& witnesses,
                                  const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (g.n() != spec.n) throw ContractViolation("verify_planted: graph order differs from spec");
  VerificationReport rep;
  rep.n = g.n();
  rep.m = static_cast<int>(g.num_edges());
  rep.target_cut = spec.target_cut;
  rep.min_3cut = spec.min_3cut;
  rep.min_4cut = spec.min_4cut;

  if (g.n() <= kMaxEnumerationOrder) {
    const auto exact = brute_force_maxcut(g, options.workers);
    rep.max2cut = exact.best_value;
    rep.max2_witness = exact.witness;
    rep.max2cut_exact = true;
  } else {
    TabuParams p;
    p.max_iterations = 50 * g.n();
    const auto run = run_trials({"tabu", p}, g, 2, options.heuristic_trials, spec.target_cut,
                                options.seed, options.workers);
    for (const auto& r : run.results)
      if (r.best_value >= rep.max2cut) {
        rep.max2cut = r.best_value;
        rep.max2_witness = r.witness;
      }
  }
  rep.max2cut_matches = rep.max2cut == spec.target_cut;

  auto best_k = [&](int k) {
    int best = 0;
    for (const auto& w : witnesses)
      if (w.k == k && w.size() == g.n()) best = std::max(best, cut_value(g, w));
    TabuParams tabu;
    tabu.max_iterations = std::max(500, 20 * g.n());
    SaParams sa;
    const auto t = run_trials({"tabu", tabu}, g, k, options.heuristic_trials, 0,
                              mix_seed(options.seed, 2 * k), options.workers);
    const auto s = run_trials({"sa", sa}, g, k, options.heuristic_trials, 0,
                              mix_seed(options.seed, 2 * k + 1), options.workers);
    return std::max({best, t.summary.best, s.summary.best});
  };
  rep.best_3cut = best_k(3);
  rep.best_4cut = best_k(4);
  rep.reaches_3cut = rep.best_3cut >= spec.min_3cut;
  rep.reaches_4cut = rep.best_4cut >= spec.min_4cut;
  rep.pass = rep.max2cut_matches && rep.reaches_3cut && rep.reaches_4cut;
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::string VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["m"] = m;
  j["target_cut"] = target_cut;
  j["max2cut"] = max2cut;
  j["max2cut_exact"] = max2cut_exact;
  j["max2cut_matches"] = max2cut_matches;
  j["max2_witness"] = max2_witness.labels;
  j["min_3cut"] = min_3cut;
  j["best_3cut"] = best_3cut;
  j["reaches_3cut"] = reaches_3cut;
  j["min_4cut"] = min_4cut;
  j["best_4cut"] = best_4cut;
  j["reaches_4cut"] = reaches_4cut;
  j["pass"] = pass;
  return j.dump(2) + "\n";
}

std::string witnesses_to_json(const PlantedGraph& planted) {
  nlohmann::ordered_json j;
  j["bipartition"] = planted.bipartition.labels;
  j["witness3"] = planted.witness3.labels;
  j["witness4"] = planted.witness4.labels;
  j["attempts"] = planted.attempts;
  return j.dump() + "\n";
}

std::vector<Partition> witnesses_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("witness JSON: ") + e.what());
  }
  std::vector<Partition> out;
  const std::pair<const char*, int> keys[] = {{"bipartition", 2}, {"witness3", 3}, {"witness4", 4}};
  for (const auto& [key, k] : keys)
    if (j.contains(key)) out.emplace_back(j.at(key).get<std::vector<int>>(), k);
  return out;
}

}  // namespace ebench
