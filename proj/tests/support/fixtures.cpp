#include "fixtures.hpp"

#include <fstream>
#include <stdexcept>

namespace amparse::testing {

Lexicon fixture_lexicon() { return load_lexicon_file(data_path("desk.lex")); }

AmDepTree fig1a_tree() {
  auto records = read_tree_file(data_path("fig1a.tree"));
  if (records.size() != 1 || !records[0].tree) throw std::runtime_error("fig1a.tree must hold one tree");
  return *records[0].tree;
}

AsGraph fig1b_graph() {
  std::ifstream in(data_path("fig1b.graph"));
  if (!in) throw std::runtime_error("cannot open fig1b.graph");
  auto graphs = read_graph_file(in, "graph");
  if (graphs.size() != 1) throw std::runtime_error("fig1b.graph must hold one graph");
  return graphs[0].second;
}

SentenceCosts gold_zero_fixture() {
  auto sentences = load_costs_file(data_path("gold_zero.costs"));
  if (sentences.size() != 1) throw std::runtime_error("gold_zero.costs must hold one sentence");
  return sentences[0];
}

const Lexicon& augmented_desk() {
  static const Lexicon lex = augment_closure(desk_lexicon());
  return lex;
}

}  // namespace amparse::testing
