#include "amparse/dep_tree.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "amparse/errors.hpp"
#include "text_util.hpp"

namespace amparse {

int AmDepTree::root() const {
  for (int i = 1; i <= n(); ++i) {
    if (entry(i).label.kind == EdgeLabel::Kind::Root) return i;
  }
  return 0;
}

std::vector<int> AmDepTree::children(int h) const {
  std::vector<int> out;
  for (int i = 1; i <= n(); ++i) {
    if (!entry(i).ignored() && entry(i).head == h) out.push_back(i);
  }
  return out;
}

void validate_tree(const AmDepTree& t) {
  const int n = t.n();
  auto fail = [](int i, const std::string& why) {
    throw std::invalid_argument("token " + std::to_string(i) + ": " + why);
  };
  int roots = 0;
  for (int i = 1; i <= n; ++i) {
    const auto& e = t.entry(i);
    if (e.head < 0 || e.head > n) fail(i, "head out of range");
    if (e.head == i) fail(i, "token is its own head");
    bool ignore_label = e.label.kind == EdgeLabel::Kind::Ignore;
    if (e.ignored() != ignore_label) fail(i, "IGNORE label iff BOT constant");
    if (ignore_label && e.head != 0) fail(i, "IGNORE edge must come from 0");
    if (e.label.kind == EdgeLabel::Kind::Root) {
      ++roots;
      if (e.head != 0) fail(i, "ROOT edge must come from 0");
    }
    if (!e.ignored() && e.head == 0 && e.label.kind != EdgeLabel::Kind::Root) fail(i, "edge from 0 must be ROOT");
    if (e.head != 0) {
      if (!e.label.is_operation()) fail(i, "edge between tokens must be APP or MOD");
      if (t.entry(e.head).ignored()) fail(i, "head is an ignored token");
    }
  }
  if (roots != 1) throw std::invalid_argument("tree must have exactly one ROOT token");
  for (int i = 1; i <= n; ++i) {
    int cur = i, steps = 0;
    while (cur != 0) {
      cur = t.entry(cur).head;
      if (++steps > n) fail(i, "cycle in head structure");
    }
  }
}

bool is_projective(const AmDepTree& t) {
  auto dominates = [&](int h, int d) {
    while (d != 0) {
      if (d == h) return true;
      d = t.entry(d).head;
    }
    return false;
  };
  for (int d = 1; d <= t.n(); ++d) {
    const auto& e = t.entry(d);
    if (e.ignored() || e.head == 0) continue;
    int lo = std::min(e.head, d), hi = std::max(e.head, d);
    for (int k = lo + 1; k < hi; ++k) {
      if (!t.entry(k).ignored() && !dominates(e.head, k)) return false;
    }
  }
  return true;
}

namespace {

struct Fold {
  Type term;
  std::vector<int> app_order;
};

// Term type at `h` from its lexical type and its children's term types:
// MOD children against the lexical type, then APP children whenever their
// source has no incoming edge left.
std::optional<Fold> fold_node(const AmDepTree& t, int h, const Type& lexical, const std::map<int, Type>& terms,
                              const AppOrderPolicy& policy, std::string& why) {
  Fold out{lexical, {}};
  std::vector<int> apps;
  for (int c : t.children(h)) {
    const auto& label = t.entry(c).label;
    if (label.is_mod()) {
      if (!type_combine(label, lexical, terms.at(c))) {
        why = to_string(label) + " child " + std::to_string(c) + " of type " + serialize_type(terms.at(c)) +
              " does not fit " + serialize_type(lexical);
        return std::nullopt;
      }
    } else {
      apps.push_back(c);
    }
  }
  while (!apps.empty()) {
    std::vector<int> eligible;
    for (int c : apps) {
      const auto& a = t.entry(c).label.source;
      if (out.term.contains(a) && !out.term.has_incoming(a)) eligible.push_back(c);
    }
    if (eligible.empty()) {
      why = "no APP child can be applied to " + serialize_type(out.term);
      return std::nullopt;
    }
    std::size_t pick = policy ? policy(eligible) : 0;
    int c = eligible.at(pick);
    const auto& label = t.entry(c).label;
    auto next = type_combine(label, out.term, terms.at(c));
    if (!next) {
      why = to_string(label) + " child " + std::to_string(c) + " of type " + serialize_type(terms.at(c)) +
            " does not match request " + serialize_type(request(out.term, label.source));
      return std::nullopt;
    }
    out.term = std::move(*next);
    out.app_order.push_back(c);
    apps.erase(std::find(apps.begin(), apps.end(), c));
  }
  return out;
}

struct Typed {
  TypingReport report;
  std::map<int, std::vector<int>> app_orders;
};

Typed type_tree(const AmDepTree& t, const Lexicon& lex, const AppOrderPolicy& policy) {
  Typed out;
  auto& report = out.report;
  try {
    validate_tree(t);
  } catch (const std::invalid_argument& e) {
    report.failure = {0, e.what()};
    return out;
  }
  std::function<bool(int)> visit = [&](int h) -> bool {
    for (int c : t.children(h)) {
      if (!visit(c)) return false;
    }
    const auto& name = t.entry(h).constant;
    if (!lex.has_constant(name)) {
      report.failure = {h, "unknown graph constant '" + name + "'"};
      return false;
    }
    std::string why;
    auto fold = fold_node(t, h, lex.type_of(name), report.term_types, policy, why);
    if (!fold) {
      report.failure = {h, why};
      return false;
    }
    report.term_types[h] = fold->term;
    out.app_orders[h] = fold->app_order;
    return true;
  };
  int r = t.root();
  if (!visit(r)) return out;
  if (!report.term_types.at(r).empty()) {
    report.failure = {r, "root term type " + serialize_type(report.term_types.at(r)) + " is not []"};
    return out;
  }
  report.ok = true;
  return out;
}

}  // namespace

TypingReport check_well_typed(const AmDepTree& t, const Lexicon& lex) { return type_tree(t, lex, {}).report; }

AsGraph evaluate_tree(const AmDepTree& t, const Lexicon& lex, const AppOrderPolicy& policy) {
  Typed typed = type_tree(t, lex, policy);
  if (!typed.report.ok) {
    const auto& f = *typed.report.failure;
    throw std::invalid_argument("tree is not well-typed at token " + std::to_string(f.first) + ": " + f.second);
  }
  std::function<AsGraph(int)> eval = [&](int h) {
    AsGraph g = lex.constant(t.entry(h).constant);
    for (int c : t.children(h)) {
      if (t.entry(c).label.is_mod()) g = graph_modify(g, t.entry(c).label.source, eval(c));
    }
    for (int c : typed.app_orders.at(h)) g = graph_apply(g, t.entry(c).label.source, eval(c));
    return g;
  };
  return eval(t.root());
}

void write_tree(std::ostream& out, const AmDepTree& t) {
  for (int i = 1; i <= t.n(); ++i) {
    const auto& e = t.entry(i);
    out << i << '\t' << e.form << '\t' << e.constant << '\t' << e.head << '\t' << to_string(e.label) << '\n';
  }
}

void write_tree_records(std::ostream& out, const std::vector<TreeRecord>& records) {
  bool first = true;
  for (const auto& r : records) {
    if (!first) out << '\n';
    first = false;
    out << "# sentence " << r.id << '\n';
    if (r.tree) {
      write_tree(out, *r.tree);
    } else {
      out << r.marker << '\n';
    }
  }
}

std::vector<TreeRecord> read_tree_records(std::istream& in) {
  std::vector<TreeRecord> out;
  std::string raw;
  int line_no = 0;
  TreeRecord cur;
  bool open = false;
  std::string pending_id;
  auto flush = [&]() {
    if (!open) return;
    if (cur.tree) {
      try {
        validate_tree(*cur.tree);
      } catch (const std::invalid_argument& e) {
        throw FormatError(line_no, e.what());
      }
    }
    if (cur.id.empty()) cur.id = std::to_string(out.size() + 1);
    out.push_back(std::move(cur));
    cur = TreeRecord{};
    open = false;
  };
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty()) {
      flush();
      continue;
    }
    if (raw[0] == '#') {
      auto words = detail::split_ws(raw.substr(1));
      if (words.size() == 2 && words[0] == "sentence") {
        flush();
        cur.id = words[1];
        open = true;
      }
      continue;
    }
    open = true;
    if (raw == "NO-PARSE" || raw == "LIMIT") {
      if (cur.tree) throw FormatError(line_no, "marker inside a tree block");
      cur.marker = raw;
      continue;
    }
    std::vector<std::string> cols;
    std::stringstream ss(raw);
    std::string col;
    while (std::getline(ss, col, '\t')) cols.push_back(col);
    if (cols.size() != 5) throw FormatError(line_no, "expected 5 tab-separated columns");
    if (!cur.marker.empty()) throw FormatError(line_no, "tree line after a marker");
    if (!cur.tree) cur.tree = AmDepTree{};
    int idx = detail::parse_int(cols[0], line_no);
    if (idx != cur.tree->n() + 1) throw FormatError(line_no, "token indices must be consecutive from 1");
    TreeEntry e;
    e.form = cols[1];
    e.constant = cols[2];
    e.head = detail::parse_int(cols[3], line_no);
    try {
      e.label = parse_edge_label(cols[4]);
    } catch (const std::invalid_argument& err) {
      throw FormatError(line_no, err.what());
    }
    cur.tree->entries.push_back(std::move(e));
  }
  flush();
  return out;
}

std::vector<TreeRecord> read_tree_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open tree file '" + path + "'");
  return read_tree_records(in);
}

}  // namespace amparse
