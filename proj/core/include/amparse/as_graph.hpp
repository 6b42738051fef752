#ifndef AMPARSE_AS_GRAPH_HPP
#define AMPARSE_AS_GRAPH_HPP

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "amparse/type.hpp"

namespace amparse {

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GraphNode {
  std::string id;
  std::optional<std::string> label;
  std::optional<SourceName> source;
  std::optional<Type> request;  // only on source nodes; absent means []
};

struct GraphEdge {
  int from = 0;
  std::string label;
  int to = 0;
};

/// A rooted graph with source-marked nodes. Edges refer to node positions;
/// `GraphNode::id` is only used for file I/O.
struct AsGraph {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;
  int root = 0;

  int add_node(std::string id, std::optional<std::string> label = std::nullopt);
  void add_edge(int from, std::string label, int to) { edges.push_back({from, std::move(label), to}); }
  std::optional<int> find_source(const SourceName& s) const;
  std::optional<int> find_id(const std::string& id) const;
};

/// Throws GraphError if any AsGraph invariant is violated.
void validate_graph(const AsGraph& g);

Type graph_type(const AsGraph& g);

/// APP_a: arg's root is merged into head's a-source, shared sources merge.
AsGraph graph_apply(const AsGraph& head, const SourceName& a, const AsGraph& arg);

/// MOD_b: head's root is merged into mod's b-source, shared sources merge.
AsGraph graph_modify(const AsGraph& head, const SourceName& b, const AsGraph& mod);

bool graphs_isomorphic(const AsGraph& g1, const AsGraph& g2);

/// Block syntax shared by lexicon and graph files. `keyword` is the header
/// word ("constant" or "graph"). The reader consumes lines up to "end".
void write_graph_block(std::ostream& out, const std::string& keyword, const std::string& name,
                       const AsGraph& g);

/// Parses the body lines of one block (between the header and "end"); each
/// entry is (line number, comment-stripped text). Throws FormatError.
AsGraph parse_graph_block(const std::vector<std::pair<int, std::string>>& body);

std::vector<std::pair<std::string, AsGraph>> read_graph_file(std::istream& in,
                                                            const std::string& keyword = "graph");

}  // namespace amparse

#endif  // AMPARSE_AS_GRAPH_HPP
