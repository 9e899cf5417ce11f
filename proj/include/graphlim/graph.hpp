#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace graphlim {

struct Edge {
  std::size_t u;
  std::size_t v;
  bool operator==(const Edge&) const = default;
};

// Labeled finite simple graph on {0..n-1}, n >= 1. Adjacency is a dense
// bitset matrix so that sampled graphs with 10^4 nodes stay compact and
// neighbourhood intersections are word-parallel.
class SimpleGraph {
 public:
  explicit SimpleGraph(std::size_t n);
  SimpleGraph(std::size_t n, std::span<const Edge> edges);

  // Builds a graph from rows of n * ceil(n/64) words in which row u holds
  // only neighbours v > u; the lower triangle is filled in by transposing
  // 64x64 blocks. Used by the samplers, which write rows sequentially.
  static SimpleGraph from_upper_rows(std::size_t n, std::vector<std::uint64_t> bits);

  std::size_t node_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_; }

  bool has_edge(std::size_t u, std::size_t v) const;
  void add_edge(std::size_t u, std::size_t v);
  void remove_edge(std::size_t u, std::size_t v);
  void set_edge(std::size_t u, std::size_t v, bool present);
  void toggle_edge(std::size_t u, std::size_t v);

  std::size_t degree(std::size_t u) const;

  // Canonical (min, max) pairs in lexicographic order.
  std::vector<Edge> edges() const;

  std::size_t words_per_row() const noexcept { return words_; }
  std::span<const std::uint64_t> row(std::size_t u) const noexcept {
    return {bits_.data() + u * words_, words_};
  }

  // Induced subgraph on `nodes`, relabeled 0..k-1 in the given order.
  SimpleGraph induced(std::span<const std::size_t> nodes) const;
  // Node i of the result is node perm[i] of this graph.
  SimpleGraph relabeled(std::span<const std::size_t> perm) const;
  SimpleGraph complement() const;

  bool operator==(const SimpleGraph& other) const noexcept {
    return n_ == other.n_ && bits_ == other.bits_;
  }

 private:
  void check_pair(std::size_t u, std::size_t v) const;

  std::size_t n_;
  std::size_t words_;
  std::size_t edges_ = 0;
  std::vector<std::uint64_t> bits_;
};

SimpleGraph complete_graph(std::size_t n);
SimpleGraph edgeless_graph(std::size_t n);
SimpleGraph cycle_graph(std::size_t n);
SimpleGraph path_graph(std::size_t n);
SimpleGraph star_graph(std::size_t n);

// Named motifs: Kn, Cn, Pn, Sn (star on n nodes), En (edgeless), "paw",
// "diamond". Throws on unknown names.
SimpleGraph motif(std::string_view name);
std::vector<std::string> motif_names();

// Bit (index of pair i<j in lexicographic order) is set iff ij is an edge.
// Defined for up to 11 nodes (55 pair bits).
std::uint64_t labeled_code(const SimpleGraph& g);
SimpleGraph graph_from_code(std::size_t k, std::uint64_t code);
std::size_t pair_count(std::size_t k) noexcept;

// All labeled graphs on k nodes, indexed by their code.
std::vector<SimpleGraph> all_labeled_graphs(std::size_t k);
// One representative per isomorphism class of graphs with 2..max_nodes nodes
// and no isolated node. Isolated nodes never change a homomorphism density,
// so this is the motif family used for density-based distance bounds.
std::vector<SimpleGraph> motifs_without_isolated(std::size_t max_nodes);

// Graph file: first line "n", then one "u v" pair per line, 0-indexed.
// Blank lines and lines starting with '#' are skipped.
SimpleGraph parse_graph_text(std::string_view text);
std::string graph_to_text(const SimpleGraph& g);
SimpleGraph load_graph_file(const std::string& path);
void save_graph_file(const SimpleGraph& g, const std::string& path);

}  // namespace graphlim
