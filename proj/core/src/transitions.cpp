#include "amparse/transitions.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace amparse {

namespace {

constexpr int kNoCandidate = 1 << 20;

int kind_rank(Transition::Kind k) {
  switch (k) {
    case Transition::Kind::Init:
      return 0;
    case Transition::Kind::Apply:
      return 1;
    case Transition::Kind::Modify:
      return 2;
    case Transition::Kind::Choose:
    case Transition::Kind::Finish:
      return 3;
    case Transition::Kind::Pop:
      return 4;
  }
  return 5;
}

std::string mask_text(TypeIndex& types, SourceMask m) {
  std::string out = "{";
  bool first = true;
  for (const auto& s : types.mask_to_set(m)) {
    if (!first) out += ",";
    out += s;
    first = false;
  }
  return out + "}";
}

std::string types_text(TypeIndex& types, const std::vector<TypeId>& ts) {
  std::string out = "{";
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (k) out += ", ";
    out += types.text(ts[k]);
  }
  return out + "}";
}

}  // namespace

System parse_system(const std::string& name) {
  if (name == "ltf" || name == "LTF") return System::LTF;
  if (name == "ltl" || name == "LTL") return System::LTL;
  throw std::invalid_argument("unknown transition system '" + name + "'");
}

std::string to_string(System s) { return s == System::LTF ? "ltf" : "ltl"; }

std::string to_string(const Transition& tr, Grammar& g) {
  auto& types = g.types();
  switch (tr.kind) {
    case Transition::Kind::Init:
      return "Init(" + std::to_string(tr.token) + ")";
    case Transition::Kind::Apply:
      return "Apply(" + types.source_name(tr.source) + "," + std::to_string(tr.token) + ")";
    case Transition::Kind::Modify:
      return "Modify(" + types.source_name(tr.source) + "," + std::to_string(tr.token) + ")";
    case Transition::Kind::Choose:
      return "Choose(" + types.text(tr.type) + "," + g.constant_name(tr.constant) + ")";
    case Transition::Kind::Finish:
      return "Finish(" + g.constant_name(tr.constant) + ")";
    case Transition::Kind::Pop:
      return "Pop";
  }
  return "?";
}

Transition parse_transition(const std::string& raw, Grammar& g) {
  std::string text = raw;
  text.erase(std::remove_if(text.begin(), text.end(), [](unsigned char ch) { return std::isspace(ch); }),
             text.end());
  auto bad = [&](const std::string& why) { return std::invalid_argument("bad transition '" + raw + "': " + why); };
  if (text == "Pop") return Transition::pop();
  auto open = text.find('(');
  if (open == std::string::npos || text.back() != ')') throw bad("expected Name(args)");
  std::string name = text.substr(0, open);
  std::string args = text.substr(open + 1, text.size() - open - 2);
  // Split at the last comma outside brackets.
  int depth = 0;
  std::size_t comma = std::string::npos;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == '[') ++depth;
    if (args[k] == ']') --depth;
    if (args[k] == ',' && depth == 0) comma = k;
  }
  auto constant = [&](const std::string& c) {
    int idx = g.constant_index(c);
    if (idx < 0) throw bad("unknown constant '" + c + "'");
    return idx;
  };
  auto token = [&](const std::string& t) {
    try {
      std::size_t used = 0;
      int v = std::stoi(t, &used);
      if (used != t.size() || v < 1) throw bad("bad token");
      return v;
    } catch (const std::logic_error&) {
      throw bad("bad token '" + t + "'");
    }
  };
  auto source = [&](const std::string& s) {
    auto bit = g.types().find_source_bit(s);
    if (!bit) throw bad("unknown source '" + s + "'");
    return *bit;
  };
  if (name == "Init" && comma == std::string::npos) return Transition::init(token(args));
  if (name == "Finish" && comma == std::string::npos) return Transition::finish(constant(args));
  if (comma == std::string::npos) throw bad("missing argument");
  std::string a = args.substr(0, comma), b = args.substr(comma + 1);
  if (name == "Apply") return Transition::apply(source(a), token(b));
  if (name == "Modify") return Transition::modify(source(a), token(b));
  if (name == "Choose") {
    TypeId t;
    try {
      t = g.types().intern(parse_type(a));
    } catch (const std::exception& e) {
      throw bad(e.what());
    }
    return Transition::choose(t, constant(b));
  }
  throw bad("unknown transition name '" + name + "'");
}

TransitionSystem::TransitionSystem(Grammar& grammar, System system, bool type_check)
    : grammar_(&grammar), system_(system), type_check_(type_check) {
  if (!type_check && system == System::LTF) {
    throw std::invalid_argument("disabling type checks is only supported for LTL");
  }
}

Configuration TransitionSystem::initial(int n) const {
  if (n < 1) throw std::invalid_argument("sentence must have at least one token");
  Configuration c;
  c.n = n;
  c.E.assign(n + 1, {});
  c.T.assign(n + 1, {});
  c.A.assign(n + 1, 0);
  c.has_A.assign(n + 1, 0);
  c.G.assign(n + 1, -1);
  return c;
}

int TransitionSystem::W(const Configuration& c) const {
  int w = 0;
  for (int j = 1; j <= c.n; ++j) w += c.headless(j) ? 1 : 0;
  return w;
}

std::optional<OwedWitness> TransitionSystem::owed_witness(const Configuration& c, int i) {
  if (c.T[i].empty() || !c.has_A[i]) return OwedWitness{};
  auto& types = grammar_->types();
  std::vector<TypeId> K;
  if (c.G[i] >= 0) {
    K.push_back(grammar_->constant_type(c.G[i]));
  } else {
    K = grammar_->omega();
  }
  std::optional<OwedWitness> best;
  for (TypeId lam : K) {
    for (TypeId t : c.T[i]) {
      auto as = types.apply_set(lam, t);
      if (!as || (c.A[i] & ~*as) != 0) continue;
      int count = std::popcount(*as & ~c.A[i]);
      if (!best || count < best->count) best = OwedWitness{count, lam, t};
    }
  }
  return best;
}

int TransitionSystem::owed(const Configuration& c, int i) {
  auto w = owed_witness(c, i);
  return w ? w->count : kNoCandidate;
}

int TransitionSystem::O(const Configuration& c) {
  int o = 0;
  for (int i = 1; i <= c.n; ++i) o += owed(c, i);
  return o;
}

std::vector<Transition> TransitionSystem::legal(const Configuration& c) {
  std::vector<Transition> out;
  if (c.initial()) {
    for (int i = 1; i <= c.n; ++i) out.push_back(Transition::init(i));
    return out;
  }
  if (c.S.empty()) return out;
  auto& types = grammar_->types();
  const int i = c.active();
  const int w = W(c);
  std::vector<int> headless;
  for (int j = 1; j <= c.n; ++j) {
    if (c.headless(j)) headless.push_back(j);
  }

  if (system_ == System::LTF) {
    const int budget = w - O(c);
    if (c.G[i] < 0) {
      for (TypeId t : c.T[i]) {
        for (TypeId lam : grammar_->poss_lex(t, 0, budget)) {
          for (int g : grammar_->constants_of(lam)) out.push_back(Transition::choose(t, g));
        }
      }
      return out;
    }
    TypeId lam = grammar_->constant_type(c.G[i]);
    auto as = types.apply_set(lam, c.T[i].front());
    SourceMask todo = as ? (*as & ~c.A[i]) : 0;
    for (int bit : grammar_->app_sources()) {
      if (!(todo & (SourceMask{1} << bit))) continue;
      for (int j : headless) out.push_back(Transition::apply(bit, j));
    }
    if (budget >= 1) {
      for (int bit : grammar_->mod_sources()) {
        if (grammar_->mod_targets(lam, bit).empty()) continue;
        for (int j : headless) out.push_back(Transition::modify(bit, j));
      }
    }
    if (as && *as == c.A[i]) out.push_back(Transition::pop());
    return out;
  }

  // LTL: the active node has T and A defined and G undefined.
  for (int bit : grammar_->app_sources()) {
    SourceMask b = SourceMask{1} << bit;
    if (c.A[i] & b) continue;
    if (headless.empty()) break;
    bool ok = !type_check_;
    for (std::size_t k = 0; !ok && k < c.T[i].size(); ++k) {
      ok = !grammar_->poss_lex(c.T[i][k], c.A[i] | b, w - 1).empty();
    }
    if (!ok) continue;
    for (int j : headless) out.push_back(Transition::apply(bit, j));
  }
  if (!type_check_ || w - O(c) >= 1) {
    for (int bit : grammar_->mod_sources()) {
      for (int j : headless) out.push_back(Transition::modify(bit, j));
    }
  }
  std::vector<std::pair<int, int>> mod_children;  // (token, bit)
  for (int j = 1; j <= c.n; ++j) {
    if (c.E[j].head == i && c.E[j].kind == EdgeLabel::Kind::Mod) mod_children.emplace_back(j, c.E[j].source);
  }
  for (int g = 0; g < grammar_->constant_count(); ++g) {
    if (type_check_) {
      TypeId lam = grammar_->constant_type(g);
      bool fits = false;
      for (TypeId t : c.T[i]) {
        auto as = types.apply_set(lam, t);
        if (as && *as == c.A[i]) fits = true;
      }
      if (!fits) continue;
      bool targets = true;
      for (auto [j, bit] : mod_children) targets = targets && !grammar_->mod_targets(lam, bit).empty();
      if (!targets) continue;
    }
    out.push_back(Transition::finish(g));
  }
  return out;
}

bool TransitionSystem::is_legal(const Configuration& c, const Transition& tr) {
  auto ls = legal(c);
  return std::find(ls.begin(), ls.end(), tr) != ls.end();
}

void TransitionSystem::apply(Configuration& c, const Transition& tr) {
  if (!is_legal(c, tr)) throw std::invalid_argument("illegal transition " + to_string(tr, *grammar_));
  apply_unchecked(c, tr);
}

std::vector<TypeId> TransitionSystem::mod_child_types(TypeId head_lex, int bit) {
  const auto& ts = grammar_->mod_targets(head_lex, bit);
  if (ts.empty()) return {grammar_->types().empty_type()};
  return ts;
}

void TransitionSystem::apply_unchecked(Configuration& c, const Transition& tr) {
  auto& types = grammar_->types();
  const int i = c.active();
  auto add_edge = [&](int head, int j, EdgeLabel::Kind kind, int bit) {
    c.E[j] = {head, kind, bit, c.edges_created++};
  };
  switch (tr.kind) {
    case Transition::Kind::Init:
      add_edge(0, tr.token, EdgeLabel::Kind::Root, -1);
      c.T[tr.token] = {types.empty_type()};
      if (system_ == System::LTL) {
        c.A[tr.token] = 0;
        c.has_A[tr.token] = 1;
      }
      c.S = {tr.token};
      return;
    case Transition::Kind::Choose:
      c.T[i] = {tr.type};
      c.A[i] = 0;
      c.has_A[i] = 1;
      c.G[i] = tr.constant;
      return;
    case Transition::Kind::Apply: {
      add_edge(i, tr.token, EdgeLabel::Kind::App, tr.source);
      c.A[i] |= SourceMask{1} << tr.source;
      if (system_ == System::LTF) {
        c.T[tr.token] = {types.request(grammar_->constant_type(c.G[i]), tr.source)};
        c.S.push_back(tr.token);
      }
      return;
    }
    case Transition::Kind::Modify:
      add_edge(i, tr.token, EdgeLabel::Kind::Mod, tr.source);
      if (system_ == System::LTF) {
        c.T[tr.token] = mod_child_types(grammar_->constant_type(c.G[i]), tr.source);
        c.S.push_back(tr.token);
      }
      return;
    case Transition::Kind::Pop:
      c.S.pop_back();
      return;
    case Transition::Kind::Finish: {
      TypeId lam = grammar_->constant_type(tr.constant);
      std::optional<TypeId> term;
      for (TypeId t : c.T[i]) {
        auto as = types.apply_set(lam, t);
        if (as && *as == c.A[i]) {
          term = t;
          break;
        }
      }
      if (!term) term = c.T[i].front();
      c.T[i] = {*term};
      c.G[i] = tr.constant;
      c.S.pop_back();
      std::vector<int> children;
      for (int j = 1; j <= c.n; ++j) {
        if (c.E[j].head == i) children.push_back(j);
      }
      std::sort(children.begin(), children.end(), [&](int a, int b) { return c.E[a].created < c.E[b].created; });
      for (int j : children) {
        int bit = c.E[j].source;
        if (c.E[j].kind == EdgeLabel::Kind::App) {
          bool has = types.nodes_mask(lam) & (SourceMask{1} << bit);
          c.T[j] = {has ? types.request(lam, bit) : types.empty_type()};
        } else {
          c.T[j] = mod_child_types(lam, bit);
        }
        c.A[j] = 0;
        c.has_A[j] = 1;
      }
      for (auto it = children.rbegin(); it != children.rend(); ++it) c.S.push_back(*it);
      return;
    }
  }
}

bool TransitionSystem::is_goal(const Configuration& c) const {
  if (!c.S.empty()) return false;
  return std::any_of(c.G.begin() + 1, c.G.end(), [](int g) { return g >= 0; });
}

bool TransitionSystem::is_full_goal(const Configuration& c) {
  if (!c.S.empty() || c.initial()) return false;
  auto& types = grammar_->types();
  for (int j = 1; j <= c.n; ++j) {
    if (c.headless(j)) {
      if (c.G[j] >= 0) return false;
      continue;
    }
    if (c.T[j].size() != 1 || c.G[j] < 0 || !c.has_A[j]) return false;
    auto as = types.apply_set(grammar_->constant_type(c.G[j]), c.T[j].front());
    if (!as || *as != c.A[j]) return false;
  }
  return true;
}

EdgeLabel TransitionSystem::label_of(const IncomingEdge& e) const {
  auto& types = grammar_->types();
  switch (e.kind) {
    case EdgeLabel::Kind::App:
      return EdgeLabel::app(types.source_name(e.source));
    case EdgeLabel::Kind::Mod:
      return EdgeLabel::mod(types.source_name(e.source));
    case EdgeLabel::Kind::Root:
      return EdgeLabel::root();
    case EdgeLabel::Kind::Ignore:
      return EdgeLabel::ignore();
  }
  return EdgeLabel::ignore();
}

AmDepTree TransitionSystem::to_tree(const Configuration& c, const std::vector<std::string>& forms) const {
  if (!is_goal(c)) throw std::invalid_argument("not a goal configuration");
  AmDepTree t;
  for (int j = 1; j <= c.n; ++j) {
    TreeEntry e;
    e.form = j - 1 < static_cast<int>(forms.size()) ? forms[j - 1] : "w" + std::to_string(j);
    if (!c.headless(j)) {
      if (c.G[j] < 0) throw std::invalid_argument("attached token " + std::to_string(j) + " has no constant");
      e.constant = grammar_->constant_name(c.G[j]);
      e.head = c.E[j].head;
      e.label = label_of(c.E[j]);
    }
    t.entries.push_back(std::move(e));
  }
  return t;
}

std::string TransitionSystem::canonical(const Configuration& c) {
  auto& types = grammar_->types();
  std::ostringstream out;
  out << "n=" << c.n;
  for (int j = 1; j <= c.n; ++j) {
    out << ";" << j << ":";
    if (c.headless(j)) {
      out << "-";
    } else {
      out << c.E[j].head << "," << to_string(label_of(c.E[j])) << "#" << c.E[j].created;
    }
    out << "|" << types_text(types, c.T[j]) << "|";
    if (c.has_A[j]) {
      out << mask_text(types, c.A[j]);
    } else {
      out << "-";
    }
    out << "|" << (c.G[j] >= 0 ? grammar_->constant_name(c.G[j]) : "-");
  }
  out << ";S=";
  for (int s : c.S) out << s << " ";
  out << ";e=" << c.edges_created;
  return out.str();
}

std::string TransitionSystem::digest(const Configuration& c) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : canonical(c)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Cost score_transition(const Configuration& c, const Transition& tr, const SentenceCosts& costs, Grammar& g) {
  auto& types = g.types();
  const int i = c.active();
  switch (tr.kind) {
    case Transition::Kind::Init:
      return costs.edge_cost(0, tr.token, EdgeLabel::root());
    case Transition::Kind::Apply:
      return costs.edge_cost(i, tr.token, EdgeLabel::app(types.source_name(tr.source)));
    case Transition::Kind::Modify:
      return costs.edge_cost(i, tr.token, EdgeLabel::mod(types.source_name(tr.source)));
    case Transition::Kind::Choose:
    case Transition::Kind::Finish:
      return costs.tag_cost(i, g.constant_name(tr.constant));
    case Transition::Kind::Pop:
      return 0;
  }
  return 0;
}

bool transition_before(const Transition& a, const Transition& b, Grammar& g) {
  if (kind_rank(a.kind) != kind_rank(b.kind)) return kind_rank(a.kind) < kind_rank(b.kind);
  if (a.token != b.token) return a.token < b.token;
  auto& types = g.types();
  if (a.source != b.source) {
    if (a.source < 0 || b.source < 0) return a.source < b.source;
    return types.source_name(a.source) < types.source_name(b.source);
  }
  if (a.constant != b.constant) return a.constant < b.constant;  // constants are numbered by name
  if (a.type != b.type) {
    if (a.type < 0 || b.type < 0) return a.type < b.type;
    return types.text(a.type) < types.text(b.type);
  }
  return false;
}

TransitionDecodeResult decode(const SentenceCosts& costs, Grammar& grammar, const DecodeOptions& opts) {
  if (opts.beam < 1) throw std::invalid_argument("beam size must be at least 1");
  TransitionSystem ts(grammar, opts.system, opts.type_check);
  struct Hyp {
    Configuration c;
    std::vector<Transition> seq;
    Cost score = 0;
    bool done = false;
  };
  std::vector<Hyp> beam;
  beam.push_back({ts.initial(costs.n), {}, 0, false});
  auto open = [&] { return std::any_of(beam.begin(), beam.end(), [](const Hyp& h) { return !h.done; }); };
  while (open()) {
    std::vector<Hyp> next;
    for (auto& h : beam) {
      if (h.done) {
        next.push_back(std::move(h));
        continue;
      }
      auto moves = ts.legal(h.c);
      std::sort(moves.begin(), moves.end(),
                [&](const Transition& a, const Transition& b) { return transition_before(a, b, grammar); });
      for (const auto& tr : moves) {
        Hyp x = h;
        x.score += score_transition(x.c, tr, costs, grammar);
        ts.apply_unchecked(x.c, tr);
        x.seq.push_back(tr);
        x.done = ts.is_goal(x.c);
        next.push_back(std::move(x));
      }
    }
    if (next.empty()) throw std::logic_error("transition decoder reached a dead end");
    std::stable_sort(next.begin(), next.end(), [](const Hyp& a, const Hyp& b) { return a.score < b.score; });
    if (static_cast<int>(next.size()) > opts.beam) next.resize(opts.beam);
    beam = std::move(next);
  }
  TransitionDecodeResult best;
  for (const auto& h : beam) {
    AmDepTree t = ts.to_tree(h.c, costs.forms);
    Cost c = tree_cost(t, costs);
    if (best.transitions.empty() || c < best.cost) {
      best.tree = std::move(t);
      best.cost = c;
      best.transitions = h.seq;
    }
  }
  return best;
}

std::string trace_table(TransitionSystem& ts, int n, const std::vector<std::string>& forms,
                        const std::vector<Transition>& transitions) {
  Grammar& g = ts.grammar();
  auto& types = g.types();
  auto name = [&](int j) {
    std::string f = j >= 1 && j - 1 < static_cast<int>(forms.size()) ? forms[j - 1] : std::to_string(j);
    return f;
  };
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"step", "E", "T", "A", "G", "S", "transition"});
  Configuration c = ts.initial(n);
  int step = 0;
  for (const auto& tr : transitions) {
    Configuration before = c;
    ts.apply(c, tr);
    std::vector<std::string> e, t, a, gd;
    for (int j = 1; j <= n; ++j) {
      if (c.E[j].head != before.E[j].head) {
        std::string head = c.E[j].head == 0 ? "0" : name(c.E[j].head);
        EdgeLabel l = c.E[j].kind == EdgeLabel::Kind::Root  ? EdgeLabel::root()
                      : c.E[j].kind == EdgeLabel::Kind::App ? EdgeLabel::app(types.source_name(c.E[j].source))
                                                            : EdgeLabel::mod(types.source_name(c.E[j].source));
        e.push_back(head + " -" + to_string(l) + "-> " + name(j));
      }
      if (c.T[j] != before.T[j]) t.push_back(name(j) + " : " + types_text(types, c.T[j]));
      if (c.has_A[j] != before.has_A[j] || c.A[j] != before.A[j]) {
        a.push_back(name(j) + " : " + mask_text(types, c.A[j]));
      }
      if (c.G[j] != before.G[j]) gd.push_back(name(j) + " : " + g.constant_name(c.G[j]));
    }
    auto join = [](const std::vector<std::string>& xs) {
      std::string out;
      for (std::size_t k = 0; k < xs.size(); ++k) out += (k ? "; " : "") + xs[k];
      return out.empty() ? std::string("-") : out;
    };
    std::string stack;
    for (int s : c.S) stack += (stack.empty() ? "" : " ") + std::to_string(s);
    rows.push_back({std::to_string(++step), join(e), join(t), join(a), join(gd), stack.empty() ? "-" : stack,
                    to_string(tr, g)});
  }
  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& r : rows) {
    for (std::size_t k = 0; k < r.size(); ++k) width[k] = std::max(width[k], r[k].size());
  }
  std::ostringstream out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t k = 0; k < r.size(); ++k) {
      line += r[k];
      if (k + 1 < r.size()) line += std::string(width[k] - r[k].size() + 2, ' ');
    }
    out << line << "\n";
  }
  return out.str();
}

}  // namespace amparse
