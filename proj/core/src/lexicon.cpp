#include "amparse/lexicon.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "amparse/errors.hpp"
#include "text_util.hpp"

namespace amparse {

void Lexicon::add_constant(const std::string& name, AsGraph g) {
  Type t = graph_type(g);
  constants_[name] = std::move(g);
  types_[name] = t;
  omega_.insert(std::move(t));
}

const AsGraph& Lexicon::constant(const std::string& name) const {
  auto it = constants_.find(name);
  if (it == constants_.end()) throw std::out_of_range("unknown graph constant '" + name + "'");
  return it->second;
}

const Type& Lexicon::type_of(const std::string& name) const {
  auto it = types_.find(name);
  if (it == types_.end()) throw std::out_of_range("unknown graph constant '" + name + "'");
  return it->second;
}

SourceSet Lexicon::sources() const {
  SourceSet out;
  for (const auto& t : omega_) {
    for (const auto& s : t.nodes()) out.insert(s);
  }
  return out;
}

ClosureReport validate_closure(const Lexicon& lex) {
  ClosureReport report;
  std::set<Type> realized;
  for (const auto& [name, _] : lex.constants()) realized.insert(lex.type_of(name));
  for (const auto& t : lex.omega()) {
    if (!realized.count(t)) {
      report.violations.push_back({1, "type " + serialize_type(t) + " has no graph constant"});
    }
  }
  for (const auto& t : lex.omega()) {
    for (const auto& a : t.nodes()) {
      Type r = request(t, a);
      if (!lex.omega().count(r)) {
        report.violations.push_back({2, "request(" + serialize_type(t) + ", " + a + ") = " + serialize_type(r) +
                                            " is not in omega"});
      }
    }
  }
  for (const auto& l : lex.labels()) {
    if (!l.is_mod()) continue;
    Type single = Type::from_edges({l.source}, {});
    if (!lex.omega().count(single)) {
      report.violations.push_back({3, to_string(l) + " but " + serialize_type(single) + " is not in omega"});
    }
  }
  for (const auto& a : lex.sources()) {
    if (!lex.has_label(EdgeLabel::app(a))) {
      report.violations.push_back({4, "source " + a + " occurs but APP_" + a + " is not an operation"});
    }
  }
  return report;
}

namespace {

AsGraph synthesize(const Type& t) {
  AsGraph g;
  g.root = g.add_node("n0", "_synth");
  int k = 1;
  for (const auto& s : t.nodes()) {
    int node = g.add_node("n" + std::to_string(k));
    g.nodes[node].source = s;
    Type r = request(t, s);
    if (!r.empty()) g.nodes[node].request = r;
    g.add_edge(g.root, "op" + std::to_string(k), node);
    ++k;
  }
  return g;
}

}  // namespace

Lexicon augment_closure(const Lexicon& lex) {
  Lexicon out = lex;
  out.add_type(Type{});
  for (const auto& l : lex.labels()) {
    if (l.is_mod()) out.add_type(Type::from_edges({l.source}, {}));
  }
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Type> missing;
    for (const auto& t : out.omega()) {
      for (const auto& a : t.nodes()) {
        Type r = request(t, a);
        if (!out.omega().count(r)) missing.push_back(r);
      }
    }
    for (auto& t : missing) {
      if (!out.omega().count(t)) {
        out.add_type(std::move(t));
        changed = true;
      }
    }
  }
  std::set<Type> realized;
  for (const auto& [name, _] : out.constants()) realized.insert(out.type_of(name));
  int next = 1;
  for (const auto& t : std::vector<Type>(out.omega().begin(), out.omega().end())) {
    if (realized.count(t)) continue;
    std::string name;
    do {
      name = "_synth" + std::to_string(next++);
    } while (out.has_constant(name));
    out.add_constant(name, synthesize(t));
  }
  for (const auto& a : out.sources()) out.add_label(EdgeLabel::app(a));
  return out;
}

std::vector<std::string> constants_of_type(const Lexicon& lex, const Type& t) {
  if (!lex.omega().count(t)) throw std::invalid_argument("type " + serialize_type(t) + " is not in omega");
  std::vector<std::string> out;
  for (const auto& [name, _] : lex.constants()) {
    if (lex.type_of(name) == t) out.push_back(name);
  }
  return out;
}

Lexicon load_lexicon(std::istream& in) {
  Lexicon lex;
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
    if (name) {
      if (words[0] == "end" && words.size() == 1) {
        AsGraph g = parse_graph_block(body);
        lex.add_constant(*name, std::move(g));
        name.reset();
      } else {
        body.emplace_back(line_no, text);
      }
      continue;
    }
    if (words[0] == "constant") {
      if (words.size() != 2) throw FormatError(line_no, "expected 'constant <name>'");
      if (words[1] == kBottom) throw FormatError(line_no, "'" + kBottom + "' is reserved");
      if (lex.has_constant(words[1])) throw FormatError(line_no, "duplicate constant '" + words[1] + "'");
      name = words[1];
      header_line = line_no;
      body.clear();
    } else if (words[0] == "omega") {
      try {
        lex.add_type(parse_type(detail::rest_after(text, 1)));
      } catch (const TypeError& e) {
        throw FormatError(line_no, e.what());
      }
    } else if (words[0] == "modlabel") {
      if (words.size() != 2 || !is_source_name(words[1])) throw FormatError(line_no, "expected 'modlabel <source>'");
      lex.add_label(EdgeLabel::mod(words[1]));
    } else {
      throw FormatError(line_no, "unexpected '" + words[0] + "'");
    }
  }
  if (name) throw FormatError(header_line, "unterminated constant '" + *name + "'");
  for (const auto& [cname, _] : lex.constants()) {
    for (const auto& s : lex.type_of(cname).nodes()) lex.add_label(EdgeLabel::app(s));
  }
  return lex;
}

Lexicon load_lexicon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open lexicon file '" + path + "'");
  return load_lexicon(in);
}

void write_lexicon(std::ostream& out, const Lexicon& lex) {
  std::set<Type> realized;
  for (const auto& [name, g] : lex.constants()) {
    write_graph_block(out, "constant", name, g);
    realized.insert(lex.type_of(name));
  }
  for (const auto& t : lex.omega()) {
    if (!realized.count(t)) out << "omega " << serialize_type(t) << '\n';
  }
  for (const auto& l : lex.labels()) {
    if (l.is_mod()) out << "modlabel " << l.source << '\n';
  }
}

Lexicon desk_lexicon() {
  Lexicon lex;
  {
    AsGraph g;
    g.root = g.add_node("n0", "want");
    int s = g.add_node("n1");
    int o = g.add_node("n2");
    g.nodes[s].source = "s";
    g.nodes[o].source = "o";
    g.nodes[o].request = parse_type("[s]");
    g.add_edge(g.root, "ARG0", s);
    g.add_edge(g.root, "ARG1", o);
    lex.add_constant("want", std::move(g));
  }
  {
    AsGraph g;
    g.root = g.add_node("n0", "writer");
    lex.add_constant("writer", std::move(g));
  }
  {
    AsGraph g;
    g.root = g.add_node("n0", "sleep");
    int s = g.add_node("n1");
    g.nodes[s].source = "s";
    g.add_edge(g.root, "ARG0", s);
    lex.add_constant("sleep", std::move(g));
  }
  {
    AsGraph g;
    g.root = g.add_node("n0");
    g.nodes[g.root].source = "m";
    int sound = g.add_node("n1", "sound");
    g.add_edge(g.root, "manner", sound);
    lex.add_constant("soundly", std::move(g));
  }
  {
    AsGraph g;
    g.root = g.add_node("n0");
    g.nodes[g.root].source = "m";
    int sound = g.add_node("n1", "sound");
    int s = g.add_node("n2");
    g.nodes[s].source = "s";
    g.add_edge(g.root, "manner", sound);
    g.add_edge(g.root, "ARG0", s);
    lex.add_constant("soundly_ctl", std::move(g));
  }
  for (const auto& s : lex.sources()) lex.add_label(EdgeLabel::app(s));
  lex.add_label(EdgeLabel::mod("m"));
  return lex;
}

}  // namespace amparse
