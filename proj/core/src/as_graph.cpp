#include "amparse/as_graph.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <tuple>

#include "amparse/errors.hpp"
#include "text_util.hpp"

namespace amparse {

int AsGraph::add_node(std::string id, std::optional<std::string> label) {
  nodes.push_back({std::move(id), std::move(label), std::nullopt, std::nullopt});
  return static_cast<int>(nodes.size()) - 1;
}

std::optional<int> AsGraph::find_source(const SourceName& s) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].source == s) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::optional<int> AsGraph::find_id(const std::string& id) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].id == id) return static_cast<int>(i);
  }
  return std::nullopt;
}

void validate_graph(const AsGraph& g) {
  const int n = static_cast<int>(g.nodes.size());
  if (n == 0) throw GraphError("graph has no nodes");
  if (g.root < 0 || g.root >= n) throw GraphError("root out of range");
  std::set<std::string> ids;
  std::set<SourceName> sources;
  for (const auto& node : g.nodes) {
    if (!ids.insert(node.id).second) throw GraphError("duplicate node id '" + node.id + "'");
    if (node.request && !node.source) throw GraphError("request on non-source node '" + node.id + "'");
    if (node.source) {
      if (!is_source_name(*node.source)) throw GraphError("bad source name '" + *node.source + "'");
      if (!sources.insert(*node.source).second) throw GraphError("duplicate source '" + *node.source + "'");
    }
  }
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.edges) {
    if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n) throw GraphError("edge endpoint out of range");
    parent[find(e.from)] = find(e.to);
  }
  for (int i = 0; i < n; ++i) {
    if (find(i) != find(g.root)) throw GraphError("node '" + g.nodes[i].id + "' not connected to the root");
  }
}

Type graph_type(const AsGraph& g) {
  SourceSet names;
  std::vector<std::pair<SourceName, SourceName>> edges;
  for (const auto& node : g.nodes) {
    if (node.source) names.insert(*node.source);
  }
  for (const auto& node : g.nodes) {
    if (!node.source || !node.request) continue;
    for (const auto& r : node.request->nodes()) {
      if (!names.count(r)) {
        throw GraphError("request of '" + *node.source + "' names unknown source '" + r + "'");
      }
      edges.emplace_back(*node.source, r);
    }
    for (const auto& e : node.request->edges()) edges.push_back(e);
  }
  Type t;
  try {
    t = Type::from_edges(names, edges);
  } catch (const TypeError& e) {
    throw GraphError(std::string("inconsistent request annotations: ") + e.what());
  }
  for (const auto& node : g.nodes) {
    if (!node.source) continue;
    Type annotated = node.request.value_or(Type{});
    if (request(t, *node.source) != annotated) {
      throw GraphError("inconsistent request annotation at source '" + *node.source + "'");
    }
  }
  return t;
}

namespace {

// Disjoint union of a and b (b's nodes offset by a.size()), then merge the
// given node pairs. Sources equal by name are expected in `pairs` already.
AsGraph merge_graphs(const AsGraph& a, const AsGraph& b, const std::vector<std::pair<int, int>>& pairs,
                     int root) {
  const int na = static_cast<int>(a.nodes.size());
  const int total = na + static_cast<int>(b.nodes.size());
  std::vector<const GraphNode*> all;
  for (const auto& node : a.nodes) all.push_back(&node);
  for (const auto& node : b.nodes) all.push_back(&node);

  std::vector<int> parent(total);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [x, y] : pairs) {
    int rx = find(x), ry = find(na + y);
    if (rx != ry) parent[std::max(rx, ry)] = std::min(rx, ry);
  }

  AsGraph out;
  std::vector<int> slot(total, -1);
  for (int i = 0; i < total; ++i) {
    int r = find(i);
    if (slot[r] < 0) {
      slot[r] = out.add_node("n" + std::to_string(out.nodes.size()));
    }
    slot[i] = slot[r];
    GraphNode& dst = out.nodes[slot[i]];
    const GraphNode& src = *all[i];
    if (src.label) {
      if (dst.label) throw GraphError("label conflict merging '" + *dst.label + "' and '" + *src.label + "'");
      dst.label = src.label;
    }
    if (src.source) {
      if (dst.source && *dst.source != *src.source) {
        throw GraphError("source conflict merging '" + *dst.source + "' and '" + *src.source + "'");
      }
      dst.source = src.source;
      if (src.request && !src.request->empty()) {
        if (dst.request && *dst.request != *src.request) {
          throw GraphError("request conflict at source '" + *src.source + "'");
        }
        dst.request = src.request;
      }
    }
  }
  std::set<std::tuple<int, std::string, int>> seen;
  auto add_edges = [&](const AsGraph& g, int offset) {
    for (const auto& e : g.edges) {
      int f = slot[offset + e.from], t = slot[offset + e.to];
      if (seen.emplace(f, e.label, t).second) out.add_edge(f, e.label, t);
    }
  };
  add_edges(a, 0);
  add_edges(b, na);
  out.root = slot[root];
  return out;
}

std::vector<std::pair<int, int>> shared_sources(const AsGraph& a, const AsGraph& b) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t j = 0; j < b.nodes.size(); ++j) {
    if (!b.nodes[j].source) continue;
    if (auto i = a.find_source(*b.nodes[j].source)) out.emplace_back(*i, static_cast<int>(j));
  }
  return out;
}

}  // namespace

AsGraph graph_apply(const AsGraph& head, const SourceName& a, const AsGraph& arg) {
  auto slot = head.find_source(a);
  if (!slot) throw GraphError("APP_" + a + ": head has no '" + a + "' source");
  if (!type_combine(EdgeLabel::app(a), graph_type(head), graph_type(arg))) {
    throw GraphError("APP_" + a + ": type mismatch");
  }
  AsGraph h = head;
  h.nodes[*slot].source.reset();
  h.nodes[*slot].request.reset();
  auto pairs = shared_sources(h, arg);
  pairs.emplace_back(*slot, arg.root);
  return merge_graphs(h, arg, pairs, head.root);
}

AsGraph graph_modify(const AsGraph& head, const SourceName& b, const AsGraph& mod) {
  auto slot = mod.find_source(b);
  if (!slot) throw GraphError("MOD_" + b + ": modifier has no '" + b + "' source");
  if (mod.nodes[*slot].request && !mod.nodes[*slot].request->empty()) {
    throw GraphError("MOD_" + b + ": source has a non-empty request");
  }
  if (!type_combine(EdgeLabel::mod(b), graph_type(head), graph_type(mod))) {
    throw GraphError("MOD_" + b + ": type mismatch");
  }
  AsGraph m = mod;
  m.nodes[*slot].source.reset();
  m.nodes[*slot].request.reset();
  auto pairs = shared_sources(head, m);
  pairs.emplace_back(head.root, *slot);
  return merge_graphs(head, m, pairs, head.root);
}

namespace {

struct IsoSearch {
  const AsGraph& g1;
  const AsGraph& g2;
  std::vector<int> order;  // g1 nodes, each adjacent to an earlier one
  std::vector<int> map12, map21;
  std::map<std::tuple<int, std::string, int>, int> e1, e2;

  bool compatible(int x, int y) const {
    const auto& a = g1.nodes[x];
    const auto& b = g2.nodes[y];
    return a.label == b.label && a.source == b.source &&
           a.request.value_or(Type{}) == b.request.value_or(Type{});
  }

  int count(const std::map<std::tuple<int, std::string, int>, int>& m, int f, const std::string& l, int t) const {
    auto it = m.find({f, l, t});
    return it == m.end() ? 0 : it->second;
  }

  bool consistent(int x, int y) const {
    for (const auto& [key, c] : e1) {
      auto& [f, l, t] = key;
      if (f != x && t != x) continue;
      int mf = f == x ? y : map12[f];
      int mt = t == x ? y : map12[t];
      if (mf < 0 || mt < 0) continue;
      if (count(e2, mf, l, mt) != c) return false;
    }
    for (const auto& [key, c] : e2) {
      auto& [f, l, t] = key;
      if (f != y && t != y) continue;
      int mf = f == y ? x : map21[f];
      int mt = t == y ? x : map21[t];
      if (mf < 0 || mt < 0) continue;
      if (count(e1, mf, l, mt) != c) return false;
    }
    return true;
  }

  bool extend(std::size_t depth) {
    if (depth == order.size()) return true;
    int x = order[depth];
    for (int y = 0; y < static_cast<int>(g2.nodes.size()); ++y) {
      if (map21[y] >= 0 || !compatible(x, y)) continue;
      if (depth == 0 && y != g2.root) continue;
      if (!consistent(x, y)) continue;
      map12[x] = y;
      map21[y] = x;
      if (extend(depth + 1)) return true;
      map12[x] = -1;
      map21[y] = -1;
    }
    return false;
  }
};

}  // namespace

bool graphs_isomorphic(const AsGraph& g1, const AsGraph& g2) {
  if (g1.nodes.size() != g2.nodes.size() || g1.edges.size() != g2.edges.size()) return false;
  IsoSearch s{g1, g2, {}, std::vector<int>(g1.nodes.size(), -1), std::vector<int>(g2.nodes.size(), -1), {}, {}};
  for (const auto& e : g1.edges) ++s.e1[{e.from, e.label, e.to}];
  for (const auto& e : g2.edges) ++s.e2[{e.from, e.label, e.to}];
  if (s.e1.size() != s.e2.size()) return false;

  std::vector<std::vector<int>> adj(g1.nodes.size());
  for (const auto& e : g1.edges) {
    adj[e.from].push_back(e.to);
    adj[e.to].push_back(e.from);
  }
  std::vector<char> queued(g1.nodes.size(), 0);
  s.order.push_back(g1.root);
  queued[g1.root] = 1;
  for (std::size_t h = 0; h < s.order.size(); ++h) {
    for (int m : adj[s.order[h]]) {
      if (!queued[m]) {
        queued[m] = 1;
        s.order.push_back(m);
      }
    }
  }
  for (std::size_t i = 0; i < g1.nodes.size(); ++i) {
    if (!queued[i]) s.order.push_back(static_cast<int>(i));
  }
  return s.extend(0);
}

void write_graph_block(std::ostream& out, const std::string& keyword, const std::string& name,
                       const AsGraph& g) {
  out << keyword << ' ' << name << '\n';
  for (const auto& node : g.nodes) out << "node " << node.id << ' ' << node.label.value_or("_") << '\n';
  out << "root " << g.nodes.at(g.root).id << '\n';
  for (const auto& node : g.nodes) {
    if (!node.source) continue;
    out << "source " << node.id << ' ' << *node.source;
    if (node.request && !node.request->empty()) out << " request " << serialize_type(*node.request);
    out << '\n';
  }
  for (const auto& e : g.edges) {
    out << "edge " << g.nodes[e.from].id << ' ' << e.label << ' ' << g.nodes[e.to].id << '\n';
  }
  out << "end\n";
}

AsGraph parse_graph_block(const std::vector<std::pair<int, std::string>>& body) {
  AsGraph g;
  std::optional<std::string> root_id;
  int root_line = 0;
  std::vector<std::tuple<int, std::string, std::string, std::string>> pending_edges;
  std::vector<std::tuple<int, std::string, std::string, std::string>> pending_sources;
  for (const auto& [line_no, text] : body) {
    auto words = detail::split_ws(text);
    const std::string& kw = words.at(0);
    if (kw == "node") {
      if (words.size() != 3) throw FormatError(line_no, "expected 'node <id> <label|_>'");
      if (g.find_id(words[1])) throw FormatError(line_no, "duplicate node id '" + words[1] + "'");
      std::optional<std::string> label;
      if (words[2] != "_") label = words[2];
      g.add_node(words[1], label);
    } else if (kw == "root") {
      if (words.size() != 2) throw FormatError(line_no, "expected 'root <id>'");
      if (root_id) throw FormatError(line_no, "duplicate root line");
      root_id = words[1];
      root_line = line_no;
    } else if (kw == "source") {
      if (words.size() < 3) throw FormatError(line_no, "expected 'source <id> <name> [request <type>]'");
      std::string req;
      if (words.size() > 3) {
        if (words[3] != "request") throw FormatError(line_no, "expected 'request'");
        req = detail::rest_after(text, 4);
        if (req.empty()) throw FormatError(line_no, "missing request type");
      }
      pending_sources.emplace_back(line_no, words[1], words[2], req);
    } else if (kw == "edge") {
      if (words.size() != 4) throw FormatError(line_no, "expected 'edge <from> <label> <to>'");
      pending_edges.emplace_back(line_no, words[1], words[2], words[3]);
    } else {
      throw FormatError(line_no, "unexpected '" + kw + "' in graph block");
    }
  }
  if (!root_id) throw FormatError(body.empty() ? 0 : body.back().first, "graph block without root");
  auto lookup = [&](int line_no, const std::string& id) {
    auto idx = g.find_id(id);
    if (!idx) throw FormatError(line_no, "unknown node id '" + id + "'");
    return *idx;
  };
  g.root = lookup(root_line, *root_id);
  for (const auto& [line_no, id, name, req] : pending_sources) {
    int idx = lookup(line_no, id);
    if (!is_source_name(name)) throw FormatError(line_no, "bad source name '" + name + "'");
    if (g.nodes[idx].source) throw FormatError(line_no, "node '" + id + "' already has a source");
    g.nodes[idx].source = name;
    if (!req.empty()) {
      try {
        Type t = parse_type(req);
        if (!t.empty()) g.nodes[idx].request = t;
      } catch (const TypeError& e) {
        throw FormatError(line_no, e.what());
      }
    }
  }
  for (const auto& [line_no, from, label, to] : pending_edges) {
    g.add_edge(lookup(line_no, from), label, lookup(line_no, to));
  }
  try {
    validate_graph(g);
    graph_type(g);
  } catch (const GraphError& e) {
    throw FormatError(body.empty() ? 0 : body.front().first, e.what());
  }
  return g;
}

std::vector<std::pair<std::string, AsGraph>> read_graph_file(std::istream& in, const std::string& keyword) {
  std::vector<std::pair<std::string, AsGraph>> out;
  std::string raw;
  int line_no = 0;
  std::optional<std::string> name;
  int header_line = 0;
  std::vector<std::pair<int, std::string>> body;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string text(detail::strip_comment(raw));
    if (text.empty()) continue;
    auto words = detail::split_ws(text);
    if (!name) {
      if (words[0] != keyword || words.size() != 2) {
        throw FormatError(line_no, "expected '" + keyword + " <name>'");
      }
      name = words[1];
      header_line = line_no;
      body.clear();
    } else if (words[0] == "end" && words.size() == 1) {
      out.emplace_back(*name, parse_graph_block(body));
      name.reset();
    } else {
      body.emplace_back(line_no, text);
    }
  }
  if (name) throw FormatError(header_line, "unterminated block '" + *name + "'");
  return out;
}

}  // namespace amparse
