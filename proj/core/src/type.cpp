#include "amparse/type.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace amparse {

namespace {

const SourceSet kNoSources;

// One mention of a source inside a bracketed type, with its nested mentions.
struct Mention {
  SourceName name;
  bool has_request = false;
  std::vector<Mention> children;
};

class TypeParser {
 public:
  explicit TypeParser(std::string_view text) : text_(text) {}

  std::vector<Mention> parse() {
    auto entries = parse_bracket();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return entries;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw TypeError("type syntax error at offset " + std::to_string(pos_) + ": " + what +
                    " in \"" + std::string(text_) + "\"");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::vector<Mention> parse_bracket() {
    expect('[');
    std::vector<Mention> out;
    if (peek(']')) {
      ++pos_;
      return out;
    }
    while (true) {
      out.push_back(parse_entry());
      if (peek(',')) {
        ++pos_;
        continue;
      }
      expect(']');
      return out;
    }
  }

  Mention parse_entry() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= text_.size() || !(text_[pos_] >= 'a' && text_[pos_] <= 'z')) fail("expected source name");
    ++pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_') {
        ++pos_;
      } else {
        break;
      }
    }
    Mention m;
    m.name = std::string(text_.substr(start, pos_ - start));
    if (peek('[')) {
      m.has_request = true;
      m.children = parse_bracket();
    }
    return m;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void collect(const std::vector<Mention>& ms, const SourceName* parent, SourceSet& nodes,
             std::vector<std::pair<SourceName, SourceName>>& edges) {
  for (const auto& m : ms) {
    nodes.insert(m.name);
    if (parent) edges.emplace_back(*parent, m.name);
    collect(m.children, &m.name, nodes, edges);
  }
}

Type type_of_mentions(const std::vector<Mention>& ms) {
  SourceSet nodes;
  std::vector<std::pair<SourceName, SourceName>> edges;
  collect(ms, nullptr, nodes, edges);
  return Type::from_edges(nodes, edges);
}

void check_mentions(const Type& whole, const std::vector<Mention>& ms) {
  for (const auto& m : ms) {
    Type rendered = type_of_mentions(m.children);
    if (rendered != request(whole, m.name)) {
      throw TypeError("inconsistent request for repeated source '" + m.name + "'");
    }
    check_mentions(whole, m.children);
  }
}

void render_mention(const Type& t, const SourceName& s, std::string& out) {
  out += s;
  SourceSet direct = t.direct_successors(s);
  if (direct.empty()) return;
  out += '[';
  bool first = true;
  for (const auto& d : direct) {
    if (!first) out += ", ";
    first = false;
    render_mention(t, d, out);
  }
  out += ']';
}

}  // namespace

bool is_source_name(std::string_view name) {
  if (name.empty() || !(name[0] >= 'a' && name[0] <= 'z')) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

Type Type::from_edges(const SourceSet& nodes,
                      const std::vector<std::pair<SourceName, SourceName>>& edges) {
  Type t;
  for (const auto& n : nodes) t.succ_[n];
  for (const auto& [from, to] : edges) {
    if (from == to) throw TypeError("self-loop on source '" + from + "'");
    t.succ_[from].insert(to);
    t.succ_[to];
  }
  // Transitive closure by repeated DFS; detects cycles along the way.
  std::map<SourceName, SourceSet> closed;
  std::map<SourceName, int> state;  // 0 = new, 1 = on stack, 2 = done
  std::function<void(const SourceName&)> visit = [&](const SourceName& n) {
    int& st = state[n];
    if (st == 2) return;
    if (st == 1) throw TypeError("cycle in type through source '" + n + "'");
    st = 1;
    SourceSet reach;
    for (const auto& m : t.succ_.at(n)) {
      visit(m);
      reach.insert(m);
      const auto& sub = closed.at(m);
      reach.insert(sub.begin(), sub.end());
    }
    closed[n] = std::move(reach);
    state[n] = 2;
  };
  for (const auto& [n, _] : t.succ_) visit(n);
  t.succ_ = std::move(closed);
  return t;
}

SourceSet Type::nodes() const {
  SourceSet out;
  for (const auto& [n, _] : succ_) out.insert(out.end(), n);
  return out;
}

const SourceSet& Type::successors(const SourceName& s) const {
  auto it = succ_.find(s);
  return it == succ_.end() ? kNoSources : it->second;
}

bool Type::has_edge(const SourceName& from, const SourceName& to) const {
  return successors(from).count(to) > 0;
}

bool Type::has_incoming(const SourceName& s) const {
  return std::any_of(succ_.begin(), succ_.end(), [&](const auto& kv) { return kv.second.count(s) > 0; });
}

SourceSet Type::direct_successors(const SourceName& s) const {
  SourceSet out;
  const auto& reach = successors(s);
  for (const auto& d : reach) {
    bool implied = std::any_of(reach.begin(), reach.end(),
                               [&](const SourceName& mid) { return mid != d && has_edge(mid, d); });
    if (!implied) out.insert(d);
  }
  return out;
}

std::vector<std::pair<SourceName, SourceName>> Type::edges() const {
  std::vector<std::pair<SourceName, SourceName>> out;
  for (const auto& [n, reach] : succ_) {
    for (const auto& m : reach) out.emplace_back(n, m);
  }
  return out;
}

Type Type::induced(const SourceSet& keep) const {
  Type t;
  for (const auto& [n, reach] : succ_) {
    if (!keep.count(n)) continue;
    auto& dst = t.succ_[n];
    for (const auto& m : reach) {
      if (keep.count(m)) dst.insert(m);
    }
  }
  return t;
}

Type Type::without(const SourceName& s) const {
  SourceSet keep = nodes();
  keep.erase(s);
  return induced(keep);
}

Type parse_type(std::string_view text) {
  auto mentions = TypeParser(text).parse();
  Type whole = type_of_mentions(mentions);
  check_mentions(whole, mentions);
  return whole;
}

std::string serialize_type(const Type& t) {
  std::string out = "[";
  bool first = true;
  for (const auto& n : t.nodes()) {
    if (!first) out += ", ";
    first = false;
    render_mention(t, n, out);
  }
  out += ']';
  return out;
}

Type request(const Type& t, const SourceName& a) {
  if (!t.contains(a)) throw TypeError("source '" + a + "' not in type " + serialize_type(t));
  return t.induced(t.successors(a));
}

bool is_induced_subtype(const Type& sub, const Type& super) {
  for (const auto& n : sub.nodes()) {
    if (!super.contains(n)) return false;
  }
  return super.induced(sub.nodes()) == sub;
}

std::optional<Type> type_combine(const EdgeLabel& label, const Type& head, const Type& arg) {
  if (label.is_app()) {
    const auto& a = label.source;
    if (!head.contains(a) || head.has_incoming(a)) return std::nullopt;
    if (arg != request(head, a)) return std::nullopt;
    return head.without(a);
  }
  if (label.is_mod()) {
    const auto& b = label.source;
    if (!arg.contains(b) || !arg.successors(b).empty()) return std::nullopt;
    if (!is_induced_subtype(arg.without(b), head)) return std::nullopt;
    return head;
  }
  return std::nullopt;
}

std::optional<SourceSet> apply_set(const Type& lex, const Type& term) {
  if (!is_induced_subtype(term, lex)) return std::nullopt;
  SourceSet removed;
  for (const auto& n : lex.nodes()) {
    if (!term.contains(n)) removed.insert(n);
  }
  for (const auto& n : term.nodes()) {
    for (const auto& m : lex.successors(n)) {
      if (removed.count(m)) return std::nullopt;
    }
  }
  return removed;
}

bool apply_reachable(const Type& lex, const Type& term) { return apply_set(lex, term).has_value(); }

}  // namespace amparse
