#include "graphlim/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "graphlim/error.hpp"

namespace graphlim {

SimpleGraph::SimpleGraph(std::size_t n) : n_(n), words_((n + 63) / 64) {
  require(n >= 1, ErrorCode::invalid_argument, "graph must have at least one node");
  bits_.assign(n_ * words_, 0);
}

SimpleGraph::SimpleGraph(std::size_t n, std::span<const Edge> edges) : SimpleGraph(n) {
  for (const Edge& e : edges) add_edge(e.u, e.v);
}

namespace {

// In-place transpose of a 64x64 bit block; element (r, c) is bit c of a[r].
void transpose64(std::uint64_t* a) {
  std::uint64_t m = 0x00000000FFFFFFFFULL;
  for (unsigned j = 32; j != 0; j >>= 1, m ^= m << j) {
    for (unsigned k = 0; k < 64; k = ((k | j) + 1) & ~j) {
      const std::uint64_t t = ((a[k] >> j) ^ a[k | j]) & m;
      a[k | j] ^= t;
      a[k] ^= t << j;
    }
  }
}

}  // namespace

SimpleGraph SimpleGraph::from_upper_rows(std::size_t n, std::vector<std::uint64_t> bits) {
  SimpleGraph g(n);
  const std::size_t words = g.words_;
  require(bits.size() == n * words, ErrorCode::invalid_argument, "adjacency rows have the wrong size");
  for (std::size_t u = 0; u < n; ++u) {
    // Bits at or left of the diagonal, or past node n-1, must be clear.
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t allowed = ~0ULL;
      const std::size_t lo = w * 64;
      if (u + 1 > lo) allowed = u + 1 - lo >= 64 ? 0 : allowed << (u + 1 - lo);
      if (n < lo + 64) allowed &= n <= lo ? 0 : (~0ULL >> (lo + 64 - n));
      require((bits[u * words + w] & ~allowed) == 0, ErrorCode::invalid_argument,
              "adjacency rows must hold only pairs above the diagonal");
    }
  }
  std::uint64_t block[64];
  for (std::size_t bi = 0; bi < words; ++bi) {
    for (std::size_t bj = bi; bj < words; ++bj) {
      for (std::size_t r = 0; r < 64; ++r) {
        const std::size_t row = bi * 64 + r;
        block[r] = row < n ? bits[row * words + bj] : 0;
      }
      transpose64(block);
      for (std::size_t r = 0; r < 64; ++r) {
        const std::size_t row = bj * 64 + r;
        if (row < n) bits[row * words + bi] |= block[r];
      }
    }
  }
  std::size_t degree_sum = 0;
  for (std::uint64_t x : bits) degree_sum += static_cast<std::size_t>(std::popcount(x));
  g.bits_ = std::move(bits);
  g.edges_ = degree_sum / 2;
  return g;
}

void SimpleGraph::check_pair(std::size_t u, std::size_t v) const {
  require(u < n_ && v < n_, ErrorCode::out_of_range,
          "node index out of range: " + std::to_string(std::max(u, v)) + " >= " + std::to_string(n_));
  require(u != v, ErrorCode::invalid_argument, "loops are not allowed (node " + std::to_string(u) + ")");
}

bool SimpleGraph::has_edge(std::size_t u, std::size_t v) const {
  if (u >= n_ || v >= n_ || u == v) return false;
  return (bits_[u * words_ + v / 64] >> (v % 64)) & 1U;
}

void SimpleGraph::set_edge(std::size_t u, std::size_t v, bool present) {
  check_pair(u, v);
  if (has_edge(u, v) == present) return;
  const std::uint64_t bv = std::uint64_t{1} << (v % 64);
  const std::uint64_t bu = std::uint64_t{1} << (u % 64);
  bits_[u * words_ + v / 64] ^= bv;
  bits_[v * words_ + u / 64] ^= bu;
  if (present)
    ++edges_;
  else
    --edges_;
}

void SimpleGraph::add_edge(std::size_t u, std::size_t v) { set_edge(u, v, true); }
void SimpleGraph::remove_edge(std::size_t u, std::size_t v) { set_edge(u, v, false); }
void SimpleGraph::toggle_edge(std::size_t u, std::size_t v) {
  check_pair(u, v);
  set_edge(u, v, !has_edge(u, v));
}

std::size_t SimpleGraph::degree(std::size_t u) const {
  require(u < n_, ErrorCode::out_of_range, "node index out of range");
  std::size_t d = 0;
  for (std::uint64_t w : row(u)) d += std::popcount(w);
  return d;
}

std::vector<Edge> SimpleGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edges_);
  for (std::size_t u = 0; u < n_; ++u) {
    auto r = row(u);
    for (std::size_t w = u / 64; w < words_; ++w) {
      std::uint64_t bits = r[w];
      if (w == u / 64) bits &= ~((std::uint64_t{2} << (u % 64)) - 1);
      while (bits) {
        std::size_t v = w * 64 + std::countr_zero(bits);
        out.push_back({u, v});
        bits &= bits - 1;
      }
    }
  }
  return out;
}

SimpleGraph SimpleGraph::induced(std::span<const std::size_t> nodes) const {
  SimpleGraph g(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    require(nodes[i] < n_, ErrorCode::out_of_range, "induced: node out of range");
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      require(nodes[i] != nodes[j], ErrorCode::invalid_argument, "induced: repeated node");
      if (has_edge(nodes[i], nodes[j])) g.add_edge(i, j);
    }
  }
  return g;
}

SimpleGraph SimpleGraph::relabeled(std::span<const std::size_t> perm) const {
  require(perm.size() == n_, ErrorCode::invalid_argument, "relabel: permutation size mismatch");
  std::vector<bool> seen(n_, false);
  for (std::size_t p : perm) {
    require(p < n_ && !seen[p], ErrorCode::invalid_argument, "relabel: not a permutation");
    seen[p] = true;
  }
  return induced(perm);
}

SimpleGraph SimpleGraph::complement() const {
  SimpleGraph g(n_);
  for (std::size_t u = 0; u < n_; ++u)
    for (std::size_t v = u + 1; v < n_; ++v)
      if (!has_edge(u, v)) g.add_edge(u, v);
  return g;
}

SimpleGraph complete_graph(std::size_t n) {
  SimpleGraph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

SimpleGraph edgeless_graph(std::size_t n) { return SimpleGraph(n); }

SimpleGraph cycle_graph(std::size_t n) {
  require(n >= 3, ErrorCode::invalid_argument, "cycle needs at least 3 nodes");
  SimpleGraph g(n);
  for (std::size_t u = 0; u < n; ++u) g.add_edge(u, (u + 1) % n);
  return g;
}

SimpleGraph path_graph(std::size_t n) {
  SimpleGraph g(n);
  for (std::size_t u = 0; u + 1 < n; ++u) g.add_edge(u, u + 1);
  return g;
}

SimpleGraph star_graph(std::size_t n) {
  SimpleGraph g(n);
  for (std::size_t v = 1; v < n; ++v) g.add_edge(0, v);
  return g;
}

SimpleGraph motif(std::string_view name) {
  auto sized = [&](std::string_view prefix, std::size_t lo) -> std::size_t {
    if (name.size() <= prefix.size() || name.substr(0, prefix.size()) != prefix) return 0;
    std::size_t n = 0;
    auto body = name.substr(prefix.size());
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), n);
    if (ec != std::errc{} || ptr != body.data() + body.size() || n < lo || n > 64) return 0;
    return n;
  };
  if (name == "paw") {
    SimpleGraph g = complete_graph(3);
    SimpleGraph p(4);
    for (const Edge& e : g.edges()) p.add_edge(e.u, e.v);
    p.add_edge(2, 3);
    return p;
  }
  if (name == "diamond") {
    SimpleGraph g = complete_graph(4);
    g.remove_edge(0, 3);
    return g;
  }
  if (auto n = sized("K", 1)) return complete_graph(n);
  if (auto n = sized("C", 3)) return cycle_graph(n);
  if (auto n = sized("P", 1)) return path_graph(n);
  if (auto n = sized("S", 2)) return star_graph(n);
  if (auto n = sized("E", 1)) return edgeless_graph(n);
  fail(ErrorCode::invalid_argument, "unknown motif name: " + std::string(name));
}

std::vector<std::string> motif_names() {
  return {"K1", "K2", "K3", "K4", "K5", "K6", "C3", "C4", "C5", "C6", "P2", "P3",
          "P4", "P5", "P6", "S3", "S4", "S5", "E1", "E2", "E3", "paw", "diamond"};
}

std::size_t pair_count(std::size_t k) noexcept { return k * (k - 1) / 2; }

std::uint64_t labeled_code(const SimpleGraph& g) {
  const std::size_t k = g.node_count();
  require(k <= 11, ErrorCode::unsupported, "labeled codes are defined for at most 11 nodes");
  std::uint64_t code = 0;
  std::size_t bit = 0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j, ++bit)
      if (g.has_edge(i, j)) code |= std::uint64_t{1} << bit;
  return code;
}

SimpleGraph graph_from_code(std::size_t k, std::uint64_t code) {
  require(k <= 11, ErrorCode::unsupported, "labeled codes are defined for at most 11 nodes");
  SimpleGraph g(k);
  std::size_t bit = 0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j, ++bit)
      if ((code >> bit) & 1U) g.add_edge(i, j);
  return g;
}

std::vector<SimpleGraph> all_labeled_graphs(std::size_t k) {
  require(k >= 1 && k <= 6, ErrorCode::unsupported, "labeled enumeration supports 1..6 nodes");
  const std::uint64_t count = std::uint64_t{1} << pair_count(k);
  std::vector<SimpleGraph> out;
  out.reserve(count);
  for (std::uint64_t c = 0; c < count; ++c) out.push_back(graph_from_code(k, c));
  return out;
}

namespace {

std::uint64_t canonical_code(const SimpleGraph& g) {
  std::vector<std::size_t> perm(g.node_count());
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = ~std::uint64_t{0};
  do {
    best = std::min(best, labeled_code(g.relabeled(perm)));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

std::vector<SimpleGraph> motifs_without_isolated(std::size_t max_nodes) {
  require(max_nodes <= 5, ErrorCode::unsupported, "motif family supports at most 5 nodes");
  std::vector<SimpleGraph> out;
  for (std::size_t k = 2; k <= max_nodes; ++k) {
    std::set<std::uint64_t> seen;
    for (const SimpleGraph& g : all_labeled_graphs(k)) {
      bool isolated = false;
      for (std::size_t v = 0; v < k; ++v) isolated = isolated || g.degree(v) == 0;
      if (isolated) continue;
      if (seen.insert(canonical_code(g)).second) out.push_back(g);
    }
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_size(std::string_view tok, std::size_t& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && ptr == tok.data() + tok.size();
}

}  // namespace

SimpleGraph parse_graph_text(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t n = 0;
  bool have_n = false;
  std::vector<Edge> edges;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    auto where = [&] { return "graph file line " + std::to_string(line_no) + ": "; };
    if (!have_n) {
      if (!parse_size(line, n) || n == 0)
        fail(ErrorCode::parse, where() + "expected positive node count, got '" + std::string(line) + "'");
      have_n = true;
      continue;
    }
    auto sp = line.find_first_of(" \t");
    if (sp == std::string_view::npos) fail(ErrorCode::parse, where() + "expected 'u v'");
    std::size_t u = 0, v = 0;
    if (!parse_size(trim(line.substr(0, sp)), u) || !parse_size(trim(line.substr(sp + 1)), v))
      fail(ErrorCode::parse, where() + "expected two non-negative integers");
    if (u >= n || v >= n) fail(ErrorCode::parse, where() + "node index out of range");
    if (u == v) fail(ErrorCode::parse, where() + "loop edge");
    edges.push_back({std::min(u, v), std::max(u, v)});
  }
  if (!have_n) fail(ErrorCode::parse, "graph file: missing node count");
  SimpleGraph g(n);
  for (const Edge& e : edges) {
    // Duplicate edge lines are tolerated: the edge set is what matters.
    g.add_edge(e.u, e.v);
  }
  return g;
}

std::string graph_to_text(const SimpleGraph& g) {
  std::ostringstream os;
  os << g.node_count() << '\n';
  for (const Edge& e : g.edges()) os << e.u << ' ' << e.v << '\n';
  return os.str();
}

SimpleGraph load_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open graph file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph_text(buf.str());
}

void save_graph_file(const SimpleGraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io, "cannot write graph file: " + path);
  out << graph_to_text(g);
}

}  // namespace graphlim
