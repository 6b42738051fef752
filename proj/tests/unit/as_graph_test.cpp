#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "amparse/as_graph.hpp"
#include "amparse/errors.hpp"
#include "amparse/lexicon.hpp"
#include "fixtures.hpp"

namespace amparse {
namespace {

Type T(const char* s) { return parse_type(s); }

const AsGraph& desk(const std::string& name) {
  static const Lexicon lex = desk_lexicon();
  return lex.constant(name);
}

// Same graph with node positions shuffled and ids renamed.
AsGraph permuted(const AsGraph& g, std::mt19937_64& rng) {
  std::vector<int> perm(g.nodes.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  std::shuffle(perm.begin(), perm.end(), rng);
  AsGraph out;
  out.nodes.resize(g.nodes.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    out.nodes[perm[i]] = g.nodes[i];
    out.nodes[perm[i]].id = "p" + std::to_string(perm[i]);
  }
  std::vector<GraphEdge> edges;
  for (const auto& e : g.edges) edges.push_back({perm[e.from], e.label, perm[e.to]});
  std::shuffle(edges.begin(), edges.end(), rng);
  out.edges = edges;
  out.root = perm[g.root];
  return out;
}

AsGraph random_graph(std::mt19937_64& rng) {
  static const char* labels[] = {"a", "b", "c"};
  std::uniform_int_distribution<int> nodes(1, 5), pick(0, 2);
  AsGraph g;
  int k = nodes(rng);
  for (int i = 0; i < k; ++i) g.add_node("n" + std::to_string(i), labels[pick(rng)]);
  for (int i = 1; i < k; ++i) {
    int from = std::uniform_int_distribution<int>(0, i - 1)(rng);
    g.add_edge(from, labels[pick(rng)], i);
  }
  return g;
}

TEST(GraphType, DeskConstants) {
  EXPECT_EQ(graph_type(desk("want")), T("[s, o[s]]"));
  EXPECT_EQ(graph_type(desk("writer")), T("[]"));
  EXPECT_EQ(graph_type(desk("sleep")), T("[s]"));
  EXPECT_EQ(graph_type(desk("soundly")), T("[m]"));
  EXPECT_EQ(graph_type(desk("soundly_ctl")), T("[m, s]"));
}

TEST(GraphType, NoSourcesIsEmpty) {
  AsGraph g;
  g.root = g.add_node("x", "thing");
  g.add_edge(g.root, "r", g.add_node("y", "other"));
  EXPECT_TRUE(graph_type(g).empty());
}

TEST(GraphType, InconsistentRequestsRejected) {
  AsGraph g;
  g.root = g.add_node("r", "p");
  int a = g.add_node("a");
  int b = g.add_node("b");
  g.nodes[a].source = "a";
  g.nodes[a].request = T("[b]");
  g.nodes[b].source = "b";
  g.nodes[b].request = T("[a]");
  g.add_edge(g.root, "x", a);
  g.add_edge(g.root, "y", b);
  EXPECT_THROW(graph_type(g), GraphError);
}

TEST(ValidateGraph, Invariants) {
  EXPECT_NO_THROW(validate_graph(desk("want")));
  AsGraph empty;
  EXPECT_THROW(validate_graph(empty), GraphError);

  AsGraph dup = desk("sleep");
  dup.nodes[0].source = "s";
  EXPECT_THROW(validate_graph(dup), GraphError);

  AsGraph island = desk("writer");
  island.add_node("lonely", "x");
  EXPECT_THROW(validate_graph(island), GraphError);

  AsGraph req = desk("writer");
  req.nodes[0].request = T("[]");
  EXPECT_THROW(validate_graph(req), GraphError);
}

TEST(GraphModify, SleepSoundly) {
  AsGraph c = graph_modify(desk("sleep"), "m", desk("soundly"));
  EXPECT_EQ(graph_type(c), T("[s]"));
  AsGraph expected;
  expected.root = expected.add_node("z", "sleep");
  int s = expected.add_node("s");
  expected.nodes[s].source = "s";
  expected.add_edge(expected.root, "ARG0", s);
  expected.add_edge(expected.root, "manner", expected.add_node("d", "sound"));
  EXPECT_TRUE(graphs_isomorphic(c, expected));
}

TEST(GraphModify, SharedSourceMergesAndHeadTypeKept) {
  AsGraph c = graph_modify(desk("sleep"), "m", desk("soundly_ctl"));
  EXPECT_EQ(graph_type(c), T("[s]"));
  EXPECT_EQ(c.nodes.size(), 3u);  // sleep, sound, the single merged s node
  auto s = c.find_source("s");
  ASSERT_TRUE(s);
  int incoming = 0;
  for (const auto& e : c.edges) incoming += e.to == *s;
  EXPECT_EQ(incoming, 1);  // both ARG0 edges become the same edge after merging
  EXPECT_EQ(c.edges.size(), 2u);
}

TEST(GraphModify, Errors) {
  EXPECT_THROW(graph_modify(desk("sleep"), "m", desk("writer")), GraphError);  // no m source
  AsGraph bad = desk("soundly");
  bad.nodes[bad.root].request = T("[s]");
  int s = bad.add_node("s");
  bad.nodes[s].source = "s";
  bad.add_edge(bad.root, "x", s);
  EXPECT_THROW(graph_modify(desk("sleep"), "m", bad), GraphError);  // nonempty request
  EXPECT_THROW(graph_modify(desk("writer"), "m", desk("soundly_ctl")), GraphError);  // head lacks s
}

TEST(GraphApply, FullDerivation) {
  AsGraph c = graph_modify(desk("sleep"), "m", desk("soundly"));
  AsGraph d = graph_apply(desk("want"), "o", c);
  EXPECT_EQ(graph_type(d), T("[s]"));
  EXPECT_EQ(d.nodes.size(), 4u);  // want, sleep, sound, shared s
  AsGraph b = graph_apply(d, "s", desk("writer"));
  EXPECT_TRUE(graph_type(b).empty());
  EXPECT_TRUE(graphs_isomorphic(b, testing::fig1b_graph()));
}

TEST(GraphApply, SleepWriter) {
  AsGraph g = graph_apply(desk("sleep"), "s", desk("writer"));
  EXPECT_TRUE(graph_type(g).empty());
  AsGraph expected;
  expected.root = expected.add_node("z", "sleep");
  expected.add_edge(expected.root, "ARG0", expected.add_node("w", "writer"));
  EXPECT_TRUE(graphs_isomorphic(g, expected));
}

TEST(GraphApply, Errors) {
  EXPECT_THROW(graph_apply(desk("writer"), "s", desk("writer")), GraphError);
  EXPECT_THROW(graph_apply(desk("want"), "s", desk("writer")), GraphError);  // s has an incoming request
  EXPECT_THROW(graph_apply(desk("want"), "o", desk("writer")), GraphError);  // request [s] unmet
  AsGraph labelled = desk("sleep");
  labelled.nodes[*labelled.find_source("s")].label = "person";
  EXPECT_THROW(graph_apply(labelled, "s", desk("writer")), GraphError);  // two labels on merge
}

TEST(GraphApply, ResultTypeMatchesTypeCombine) {
  AsGraph c = graph_modify(desk("sleep"), "m", desk("soundly"));
  auto expect = type_combine(EdgeLabel::app("o"), graph_type(desk("want")), graph_type(c));
  ASSERT_TRUE(expect);
  EXPECT_EQ(graph_type(graph_apply(desk("want"), "o", c)), *expect);
}

TEST(Isomorphism, Examples) {
  const AsGraph& g = desk("want");
  EXPECT_TRUE(graphs_isomorphic(g, g));
  AsGraph relabeled = g;
  relabeled.edges[0].label = "ARG9";
  EXPECT_FALSE(graphs_isomorphic(g, relabeled));
  AsGraph resourced = g;
  resourced.nodes[1].source = "x";
  EXPECT_FALSE(graphs_isomorphic(g, resourced));
  AsGraph rerooted = desk("sleep");
  AsGraph moved = rerooted;
  moved.nodes[0].label.reset();
  moved.nodes[1].label = "sleep";
  std::swap(moved.nodes[0].source, moved.nodes[1].source);
  EXPECT_FALSE(graphs_isomorphic(rerooted, moved));
}

TEST(Isomorphism, EquivalenceRelation) {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 200; ++k) {
    AsGraph a = random_graph(rng);
    AsGraph b = permuted(a, rng);
    AsGraph c = permuted(b, rng);
    EXPECT_TRUE(graphs_isomorphic(a, a));
    EXPECT_TRUE(graphs_isomorphic(a, b));
    EXPECT_TRUE(graphs_isomorphic(b, a));
    EXPECT_TRUE(graphs_isomorphic(b, c));
    EXPECT_TRUE(graphs_isomorphic(a, c));
    AsGraph other = random_graph(rng);
    EXPECT_EQ(graphs_isomorphic(a, other), graphs_isomorphic(other, a));
    EXPECT_EQ(graphs_isomorphic(a, other), graphs_isomorphic(c, other));
  }
}

TEST(GraphBlock, RoundTrip) {
  for (const char* name : {"want", "writer", "sleep", "soundly", "soundly_ctl"}) {
    std::ostringstream out;
    write_graph_block(out, "graph", name, desk(name));
    std::istringstream in(out.str());
    auto graphs = read_graph_file(in);
    ASSERT_EQ(graphs.size(), 1u);
    EXPECT_EQ(graphs[0].first, name);
    EXPECT_TRUE(graphs_isomorphic(graphs[0].second, desk(name)));
    std::ostringstream again;
    write_graph_block(again, "graph", name, graphs[0].second);
    EXPECT_EQ(again.str(), out.str());
  }
}

TEST(GraphBlock, FormatErrors) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_graph_file(in);
  };
  EXPECT_THROW(parse("graph g\nnode a x\nend\n"), FormatError);            // no root
  EXPECT_THROW(parse("graph g\nnode a x\nroot a\n"), FormatError);          // unterminated
  EXPECT_THROW(parse("graph g\nnode a x\nroot b\nend\n"), FormatError);     // unknown id
  EXPECT_THROW(parse("graph g\nnode a x\nnode a y\nroot a\nend\n"), FormatError);
  EXPECT_THROW(parse("graph g\nnode a x\nroot a\nsource a S\nend\n"), FormatError);
  EXPECT_THROW(parse("graph g\nnode a x\nroot a\nfoo\nend\n"), FormatError);
  try {
    parse("graph g\nnode a x\nroot a\nedge a r b\nend\n");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
}

TEST(GraphBlock, RequestAnnotation) {
  std::istringstream in(
      "graph g\nnode r want\nnode a _\nnode b _\nroot r\nsource a s\nsource b o request [s]\n"
      "edge r ARG0 a\nedge r ARG1 b\nend\n");
  auto graphs = read_graph_file(in);
  ASSERT_EQ(graphs.size(), 1u);
  EXPECT_EQ(graph_type(graphs[0].second), T("[s, o[s]]"));
  EXPECT_TRUE(graphs_isomorphic(graphs[0].second, desk("want")));
}

}  // namespace
}  // namespace amparse
