#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ebench/rng.hpp"

namespace ebench {

/// Unordered edge stored with first < second.
using Edge = std::pair<int, int>;

/// Undirected simple graph, immutable after construction.
///
/// Edges are kept sorted lexicographically with u < v. Neighbor lists are
/// stored in CSR form; graphs with at most 64 vertices additionally carry one
/// 64-bit neighbor mask per vertex for the enumeration kernels.
class Graph {
 public:
  static constexpr int kMaskLimit = 64;

  explicit Graph(int n = 1);

  /// Validates and normalizes an edge list. Throws ContractViolation on
  /// self-loops, duplicates or out-of-range ids.
  static Graph from_edges(int n, std::vector<Edge> edges);

  int n() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::span<const int> neighbors(int v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  int degree(int v) const { return offsets_[v + 1] - offsets_[v]; }
  int max_degree() const noexcept;
  bool has_edge(int u, int v) const;

  bool has_masks() const noexcept { return !masks_.empty(); }
  /// Neighbor bitset of `v`; only valid when has_masks().
  std::uint64_t mask(int v) const { return masks_[v]; }

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
  }

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<int> offsets_;
  std::vector<int> adjacency_;
  std::vector<std::uint64_t> masks_;
};

/// k-way label assignment over the vertices of a graph.
struct Partition {
  std::vector<int> labels;
  int k = 2;

  Partition() = default;
  Partition(std::vector<int> l, int parts);

  int size() const noexcept { return static_cast<int>(labels.size()); }
  /// Swaps the two labels of a 2-partition.
  Partition complement() const;
  /// Relabels a 2-partition so that vertex 0 carries label 0.
  Partition canonical() const;
  bool operator==(const Partition&) const = default;
};

/// Number of edges whose endpoints carry different labels.
int cut_value(const Graph& g, const Partition& part);
int cut_value(const Graph& g, std::span<const int> labels);

/// Each of the n(n-1)/2 pairs is present independently with probability p.
Graph gen_gnp(int n, double p, std::uint64_t seed);

/// Uniform sample among simple graphs on n vertices with exactly m edges.
Graph gen_gnm(int n, std::int64_t m, std::uint64_t seed);

Graph complete_graph(int n);
Graph cycle_graph(int n);
Graph complete_bipartite(int a, int b);

// Serialization. JSON is {"n": int, "edges": [[u, v], ...]} with u < v and
// edges sorted; the DIMACS-like text form uses "p edge n m" and 1-based
// "e u v" lines.
std::string to_json(const Graph& g);
Graph graph_from_json(const std::string& text);
std::string to_dimacs(const Graph& g);
Graph graph_from_dimacs(const std::string& text);

Graph load_graph(const std::string& path);
void save_graph(const Graph& g, const std::string& path);

}  // namespace ebench
