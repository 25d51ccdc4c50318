#include "ebench/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "ebench/error.hpp"

namespace ebench {

Graph::Graph(int n) : n_(n), offsets_(static_cast<std::size_t>(n) + 1, 0) {
  if (n < 1) throw ContractViolation("graph needs at least one vertex");
  if (n <= kMaskLimit) masks_.assign(n, 0);
}

Graph Graph::from_edges(int n, std::vector<Edge> edges) {
  Graph g(n);
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw ContractViolation("edge endpoint out of range: " + std::to_string(u) + "-" +
                              std::to_string(v));
    if (u == v) throw ContractViolation("self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw ContractViolation("duplicate edge");

  std::vector<int> degree(n, 0);
  for (const auto& [u, v] : edges) {
    ++degree[u];
    ++degree[v];
  }
  for (int v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  g.adjacency_.resize(2 * edges.size());
  std::vector<int> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    g.adjacency_[fill[u]++] = v;
    g.adjacency_[fill[v]++] = u;
  }
  for (int v = 0; v < n; ++v)
    std::sort(g.adjacency_.begin() + g.offsets_[v], g.adjacency_.begin() + g.offsets_[v + 1]);
  if (g.has_masks()) {
    for (const auto& [u, v] : edges) {
      g.masks_[u] |= std::uint64_t{1} << v;
      g.masks_[v] |= std::uint64_t{1} << u;
    }
  }
  g.edges_ = std::move(edges);
  return g;
}

int Graph::max_degree() const noexcept {
  int best = 0;
  for (int v = 0; v < n_; ++v) best = std::max(best, degree(v));
  return best;
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return false;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

Partition::Partition(std::vector<int> l, int parts) : labels(std::move(l)), k(parts) {
  if (k < 1) throw ContractViolation("partition needs k >= 1");
  for (int x : labels)
    if (x < 0 || x >= k) throw ContractViolation("partition label out of range");
}

Partition Partition::complement() const {
  if (k != 2) throw ContractViolation("complement is defined for 2-partitions only");
  Partition out = *this;
  for (int& x : out.labels) x = 1 - x;
  return out;
}

Partition Partition::canonical() const {
  if (k != 2 || labels.empty() || labels[0] == 0) return *this;
  return complement();
}

int cut_value(const Graph& g, std::span<const int> labels) {
  if (static_cast<int>(labels.size()) != g.n())
    throw ContractViolation("partition length " + std::to_string(labels.size()) +
                            " does not match graph order " + std::to_string(g.n()));
  int cut = 0;
  for (const auto& [u, v] : g.edges()) cut += labels[u] != labels[v];
  return cut;
}

int cut_value(const Graph& g, const Partition& part) { return cut_value(g, part.labels); }

Graph gen_gnp(int n, double p, std::uint64_t seed) {
  if (n < 1) throw ContractViolation("gen_gnp: n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw ContractViolation("gen_gnp: p must lie in [0, 1]");
  Rng rng = make_rng(seed);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (uniform01(rng) < p) edges.emplace_back(u, v);
  return Graph::from_edges(n, std::move(edges));
}

namespace {

// Maps a pair index in [0, n(n-1)/2) to (u, v), u < v, row-major.
Edge pair_from_index(int n, std::int64_t idx) {
  int u = 0;
  std::int64_t row = n - 1;
  while (idx >= row) {
    idx -= row;
    ++u;
    --row;
  }
  return {u, u + 1 + static_cast<int>(idx)};
}

}  // namespace

Graph gen_gnm(int n, std::int64_t m, std::uint64_t seed) {
  if (n < 1) throw ContractViolation("gen_gnm: n must be >= 1");
  const std::int64_t slots = static_cast<std::int64_t>(n) * (n - 1) / 2;
  if (m < 0 || m > slots)
    throw RangeError("gen_gnm: m=" + std::to_string(m) + " outside [0, " +
                     std::to_string(slots) + "]");
  Rng rng = make_rng(seed);
  // Floyd's sampling of m distinct indices.
  std::unordered_set<std::int64_t> chosen;
  chosen.reserve(static_cast<std::size_t>(m) * 2);
  for (std::int64_t j = slots - m; j < slots; ++j) {
    const auto t = static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(j + 1)));
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (auto idx : chosen) edges.push_back(pair_from_index(n, idx));
  return Graph::from_edges(n, std::move(edges));
}

Graph complete_graph(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph::from_edges(n, std::move(edges));
}

Graph cycle_graph(int n) {
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return Graph::from_edges(n, std::move(edges));
}

Graph complete_bipartite(int a, int b) {
  std::vector<Edge> edges;
  for (int u = 0; u < a; ++u)
    for (int v = a; v < a + b; ++v) edges.emplace_back(u, v);
  return Graph::from_edges(a + b, std::move(edges));
}

std::string to_json(const Graph& g) {
  nlohmann::json j;
  j["n"] = g.n();
  auto edges = nlohmann::json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  return j.dump() + "\n";
}

Graph graph_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("graph JSON: ") + e.what());
  }
  if (!j.contains("n") || !j.contains("edges"))
    throw IoError("graph JSON needs keys \"n\" and \"edges\"");
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw IoError("graph JSON: edge must be [u, v]");
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return Graph::from_edges(j.at("n").get<int>(), std::move(edges));
}

std::string to_dimacs(const Graph& g) {
  std::ostringstream out;
  out << "p edge " << g.n() << ' ' << g.num_edges() << '\n';
  for (const auto& [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
  return out.str();
}

Graph graph_from_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n = -1;
  std::int64_t declared = -1;
  std::vector<Edge> edges;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "p") {
      std::string kind;
      if (!(ls >> kind >> n >> declared) || n < 1)
        throw IoError("DIMACS line " + std::to_string(lineno) + ": bad problem line");
    } else if (tag == "e") {
      int u, v;
      if (n < 0 || !(ls >> u >> v))
        throw IoError("DIMACS line " + std::to_string(lineno) + ": bad edge line");
      edges.emplace_back(u - 1, v - 1);
    } else {
      throw IoError("DIMACS line " + std::to_string(lineno) + ": unknown tag '" + tag + "'");
    }
  }
  if (n < 0) throw IoError("DIMACS: missing problem line");
  if (declared != static_cast<std::int64_t>(edges.size()))
    throw IoError("DIMACS: header declares " + std::to_string(declared) + " edges, found " +
                  std::to_string(edges.size()));
  return Graph::from_edges(n, std::move(edges));
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

Graph load_graph(const std::string& path) {
  const std::string text = read_file(path);
  if (ends_with(path, ".json")) return graph_from_json(text);
  if (ends_with(path, ".dimacs") || ends_with(path, ".col") || ends_with(path, ".txt"))
    return graph_from_dimacs(text);
  // Sniff: JSON starts with '{'.
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return graph_from_json(text);
  return graph_from_dimacs(text);
}

void save_graph(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << (ends_with(path, ".json") ? to_json(g) : to_dimacs(g));
}

}  // namespace ebench
