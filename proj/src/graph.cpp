#include "contain/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <queue>

#include "contain/errors.hpp"
#include "contain/union_find.hpp"

namespace contain {

NodeSet::NodeSet(std::vector<NodeId> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

NodeSet::NodeSet(std::initializer_list<NodeId> members) : NodeSet(std::vector<NodeId>(members)) {}

bool NodeSet::contains(NodeId v) const { return std::binary_search(members_.begin(), members_.end(), v); }

void NodeSet::validate(const Graph& g) const {
  if (!members_.empty() && members_.back() >= g.num_nodes()) {
    throw DomainError("node id " + std::to_string(members_.back()) + " out of range (n=" +
                      std::to_string(g.num_nodes()) + ")");
  }
}

NodeSet set_union(const NodeSet& a, const NodeSet& b) {
  std::vector<NodeId> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return NodeSet(std::move(out));
}

NodeSet set_intersection(const NodeSet& a, const NodeSet& b) {
  std::vector<NodeId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return NodeSet(std::move(out));
}

NodeSet set_difference(const NodeSet& a, const NodeSet& b) {
  std::vector<NodeId> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return NodeSet(std::move(out));
}

double Graph::edge_weight(NodeId u, NodeId v) const {
  check_node(u);
  check_node(v);
  // Adjacency rows are sorted by neighbor id.
  auto row = neighbors(u);
  auto it = std::lower_bound(row.begin(), row.end(), v,
                             [](const Neighbor& nb, NodeId target) { return nb.node < target; });
  return (it != row.end() && it->node == v) ? it->weight : 0.0;
}

NodeId Graph::internal_id(std::string_view external) const {
  auto it = index_.find(std::string(external));
  if (it == index_.end()) throw DomainError("unknown node id '" + std::string(external) + "'");
  return it->second;
}

bool Graph::has_external_id(std::string_view external) const {
  return index_.find(std::string(external)) != index_.end();
}

void Graph::check_node(NodeId v) const {
  if (v >= num_nodes()) {
    throw DomainError("node id " + std::to_string(v) + " out of range (n=" + std::to_string(num_nodes()) + ")");
  }
}

Graph Graph::from_canonical(std::vector<std::string> external_ids, std::vector<Edge> edges) {
  Graph g;
  const std::size_t n = external_ids.size();
  g.external_ids_ = std::move(external_ids);
  g.index_.reserve(n);
  for (NodeId v = 0; v < n; ++v) g.index_.emplace(g.external_ids_[v], v);

  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  g.edges_ = std::move(edges);

  std::vector<std::size_t> counts(n + 1, 0);
  for (const Edge& e : g.edges_) {
    ++counts[e.u + 1];
    ++counts[e.v + 1];
  }
  std::partial_sum(counts.begin(), counts.end(), counts.begin());
  g.offsets_ = counts;
  g.adjacency_.resize(2 * g.edges_.size());
  g.weighted_degrees_.assign(n, 0.0);
  std::vector<std::size_t> cursor(counts.begin(), counts.end() - 1);
  for (EdgeId id = 0; id < g.edges_.size(); ++id) {
    const Edge& e = g.edges_[id];
    g.adjacency_[cursor[e.u]++] = {e.v, e.weight, id};
    g.adjacency_[cursor[e.v]++] = {e.u, e.weight, id};
    g.weighted_degrees_[e.u] += e.weight;
    g.weighted_degrees_[e.v] += e.weight;
  }
  for (NodeId v = 0; v < n; ++v) {
    std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
              g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]),
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
  g.total_weight_ = std::accumulate(g.weighted_degrees_.begin(), g.weighted_degrees_.end(), 0.0);
  return g;
}

namespace {

bool is_unsigned_integer(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// Numeric order for digit strings (leading zeros ignored), string order as tie-break.
bool numeric_less(std::string_view a, std::string_view b) {
  auto strip = [](std::string_view s) {
    auto pos = s.find_first_not_of('0');
    return pos == std::string_view::npos ? std::string_view("0") : s.substr(pos);
  };
  auto sa = strip(a), sb = strip(b);
  if (sa.size() != sb.size()) return sa.size() < sb.size();
  if (sa != sb) return sa < sb;
  return a < b;
}

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> tokenize(std::string_view line, EdgeListFormat format) {
  std::vector<std::string_view> tokens;
  if (format == EdgeListFormat::csv) {
    std::size_t start = 0;
    while (true) {
      auto comma = line.find(',', start);
      tokens.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return tokens;
  }
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

bool is_comment_or_blank(std::string_view line) {
  return line.empty() || line.front() == '#' || line.front() == '%';
}

}  // namespace

NodeId GraphBuilder::intern(std::string_view id) {
  auto [it, inserted] = index_.try_emplace(std::string(id), static_cast<NodeId>(ids_.size()));
  if (inserted) ids_.emplace_back(id);
  return it->second;
}

void GraphBuilder::add_node(std::string_view id) { intern(id); }

void GraphBuilder::add_edge(std::string_view u, std::string_view v, double weight) {
  NodeId a = intern(u);
  NodeId b = intern(v);
  if (a == b) {
    ++self_loops_;
    return;
  }
  if (a > b) std::swap(a, b);
  raw_edges_.push_back({a, b, weight});
}

Graph GraphBuilder::build() const {
  const std::size_t n = ids_.size();
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  const bool numeric = std::all_of(ids_.begin(), ids_.end(), [](const std::string& s) { return is_unsigned_integer(s); });
  if (numeric) {
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return numeric_less(ids_[a], ids_[b]); });
  } else {
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return ids_[a] < ids_[b]; });
  }
  std::vector<NodeId> rank(n);
  std::vector<std::string> canonical(n);
  for (NodeId r = 0; r < n; ++r) {
    rank[order[r]] = r;
    canonical[r] = ids_[order[r]];
  }

  std::vector<Edge> edges;
  edges.reserve(raw_edges_.size());
  for (const Edge& e : raw_edges_) {
    NodeId a = rank[e.u], b = rank[e.v];
    if (a > b) std::swap(a, b);
    edges.push_back({a, b, e.weight});
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& x, const Edge& y) { return x.u != y.u ? x.u < y.u : x.v < y.v; });
  std::vector<Edge> merged;
  merged.reserve(edges.size());
  for (const Edge& e : edges) {
    if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v) {
      merged.back().weight += e.weight;
    } else {
      merged.push_back(e);
    }
  }
  return Graph::from_canonical(std::move(canonical), std::move(merged));
}

Graph make_graph(std::size_t n, std::span<const Edge> edges) {
  std::vector<std::string> ids(n);
  for (std::size_t v = 0; v < n; ++v) ids[v] = std::to_string(v);
  GraphBuilder builder;
  for (const auto& id : ids) builder.add_node(id);
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) throw DomainError("edge endpoint out of range");
    builder.add_edge(ids[e.u], ids[e.v], e.weight);
  }
  return builder.build();
}

Graph make_graph(std::size_t n, std::initializer_list<std::pair<NodeId, NodeId>> edges) {
  std::vector<Edge> list;
  for (auto [u, v] : edges) list.push_back({u, v, 1.0});
  return make_graph(n, list);
}

Graph load_edge_list(const std::filesystem::path& path, EdgeListFormat format, bool weighted, LoadStats* stats) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open edge list '" + path.string() + "'", 0);

  GraphBuilder builder;
  std::string raw;
  std::size_t line_no = 0;
  const std::size_t expected = weighted ? 3 : 2;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (is_comment_or_blank(line)) continue;
    auto tokens = tokenize(line, format);
    if (tokens.size() != expected) {
      throw ParseError("expected " + std::to_string(expected) + " fields, found " + std::to_string(tokens.size()),
                       line_no);
    }
    if (tokens[0].empty() || tokens[1].empty()) throw ParseError("empty node id", line_no);
    double weight = 1.0;
    if (weighted) {
      auto tok = tokens[2];
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), weight);
      if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError("invalid weight '" + std::string(tok) + "'", line_no);
      }
      if (!(weight >= 0.0)) throw ParseError("negative weight '" + std::string(tok) + "'", line_no);
    }
    builder.add_edge(tokens[0], tokens[1], weight);
  }
  if (stats != nullptr) {
    stats->lines = line_no;
    stats->self_loops_dropped = builder.dropped_self_loops();
  }
  return builder.build();
}

NodeSet load_node_set(const std::filesystem::path& path, const Graph& g) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open node set '" + path.string() + "'", 0);
  std::vector<NodeId> ids;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (is_comment_or_blank(line)) continue;
    if (!g.has_external_id(line)) throw ParseError("unknown node id '" + std::string(line) + "'", line_no);
    ids.push_back(g.internal_id(line));
  }
  return NodeSet(std::move(ids));
}

Graph induced_subgraph(const Graph& g, const NodeSet& nodes) {
  nodes.validate(g);
  std::vector<NodeId> remap(g.num_nodes(), static_cast<NodeId>(-1));
  std::vector<std::string> ids;
  ids.reserve(nodes.size());
  for (NodeId v : nodes) {
    remap[v] = static_cast<NodeId>(ids.size());
    ids.push_back(g.external_id(v));
  }
  std::vector<Edge> edges;
  for (NodeId v : nodes) {
    for (const Neighbor& nb : g.neighbors(v)) {
      if (nb.node > v && remap[nb.node] != static_cast<NodeId>(-1)) {
        edges.push_back({remap[v], remap[nb.node], nb.weight});
      }
    }
  }
  // Canonical order is preserved because ascending internal ids are ascending external ids.
  return Graph::from_canonical(std::move(ids), std::move(edges));
}

NodeSet neighborhood(const Graph& g, NodeId v) {
  g.check_node(v);
  std::vector<NodeId> out;
  out.reserve(g.degree(v));
  for (const Neighbor& nb : g.neighbors(v)) out.push_back(nb.node);
  return NodeSet(std::move(out));
}

std::vector<NodeSet> connected_components(const Graph& g) {
  const std::size_t n = g.num_nodes();
  UnionFind uf(n);
  for (const Edge& e : g.edges()) uf.unite(e.u, e.v);

  std::vector<std::vector<NodeId>> groups;
  std::vector<std::size_t> slot(n, static_cast<std::size_t>(-1));
  for (NodeId v = 0; v < n; ++v) {
    NodeId root = uf.find(v);
    if (slot[root] == static_cast<std::size_t>(-1)) {
      slot[root] = groups.size();
      groups.emplace_back();
    }
    groups[slot[root]].push_back(v);
  }
  // Scanning v in ascending order already orders groups by smallest member.
  std::vector<NodeSet> components;
  components.reserve(groups.size());
  for (auto& members : groups) components.emplace_back(std::move(members));
  return components;
}

}  // namespace contain
