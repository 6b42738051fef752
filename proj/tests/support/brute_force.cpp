#include "brute_force.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <vector>

namespace amparse::testing {

namespace {

struct Choice {
  Cost cost = kInf;
  std::string constant;
  std::vector<std::pair<EdgeLabel, Type>> children;  // aligned with the node's child list
};

using States = std::map<Type, Choice>;

Type request_of(const Type& t, const SourceName& a) { return t.induced(t.successors(a)); }

bool removable(const Type& lam, const SourceSet& removed) {
  for (const auto& x : lam.nodes()) {
    if (removed.count(x)) continue;
    for (const auto& y : lam.successors(x)) {
      if (removed.count(y)) return false;
    }
  }
  return true;
}

bool modifies(const Type& head, const Type& mod, const SourceName& beta) {
  if (!mod.contains(beta) || !mod.successors(beta).empty()) return false;
  Type rest = mod.without(beta);
  for (const auto& x : rest.nodes()) {
    if (!head.contains(x)) return false;
  }
  return head.induced(rest.nodes()) == rest;
}

class Search {
 public:
  Search(const SentenceCosts& c, const Lexicon& lex) : c_(c), lex_(lex) {
    for (const auto& l : lex.labels()) {
      if (l.is_operation()) ops_.push_back(l);
    }
  }

  BruteForce run() {
    BruteForce out;
    const int n = c_.n;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> attached;
      for (int j = 1; j <= n; ++j) {
        if (mask & (1u << (j - 1))) attached.push_back(j);
      }
      Cost ignored = 0;
      for (int j = 1; j <= n; ++j) {
        if (!(mask & (1u << (j - 1)))) ignored += c_.tag_cost(j, kBottom) + c_.edge_cost(0, j, EdgeLabel::ignore());
      }
      if (!(ignored < kInf)) continue;
      std::vector<int> head(n + 1, -1);
      assign(attached, 0, head, mask, ignored, out);
    }
    return out;
  }

 private:
  void assign(const std::vector<int>& attached, std::size_t pos, std::vector<int>& head, unsigned mask, Cost ignored,
              BruteForce& out) {
    if (pos == attached.size()) {
      evaluate(attached, head, mask, ignored, out);
      return;
    }
    int j = attached[pos];
    head[j] = 0;
    assign(attached, pos + 1, head, mask, ignored, out);
    for (int h : attached) {
      if (h == j) continue;
      head[j] = h;
      assign(attached, pos + 1, head, mask, ignored, out);
    }
    head[j] = -1;
  }

  void evaluate(const std::vector<int>& attached, const std::vector<int>& head, unsigned mask, Cost ignored,
                BruteForce& out) {
    const int n = c_.n;
    int root = 0, roots = 0;
    for (int j : attached) {
      if (head[j] == 0) {
        root = j;
        ++roots;
      }
    }
    if (roots != 1) return;
    for (int j : attached) {
      int x = j, steps = 0;
      while (x != 0 && steps <= n) {
        x = head[x];
        ++steps;
      }
      if (x != 0) return;
    }
    AmDepTree shape;
    for (int j = 1; j <= n; ++j) {
      TreeEntry e;
      e.form = c_.forms.at(j - 1);
      if (mask & (1u << (j - 1))) {
        e.constant = "?";
        e.head = head[j];
        e.label = head[j] == 0 ? EdgeLabel::root() : EdgeLabel::app("x");
      }
      shape.entries.push_back(e);
    }
    if (!projective_by_definition(shape)) return;
    ++out.shapes;

    std::map<int, States> states;
    std::vector<int> order;
    post_order(shape, root, order);
    for (int v : order) states[v] = node_states(shape, v, states);
    auto it = states[root].find(Type{});
    if (it == states[root].end()) return;
    Cost total = ignored + it->second.cost + c_.edge_cost(0, root, EdgeLabel::root());
    if (total < out.best) {
      out.best = total;
      AmDepTree t = shape;
      t.entry(root).label = EdgeLabel::root();
      fill(t, root, Type{}, states);
      out.tree = t;
    }
  }

  void post_order(const AmDepTree& t, int v, std::vector<int>& order) const {
    for (int ch : t.children(v)) post_order(t, ch, order);
    order.push_back(v);
  }

  void fill(AmDepTree& t, int v, const Type& term, std::map<int, States>& states) const {
    const Choice& ch = states.at(v).at(term);
    t.entry(v).constant = ch.constant;
    auto kids = t.children(v);
    for (std::size_t k = 0; k < kids.size(); ++k) {
      t.entry(kids[k]).label = ch.children[k].first;
      fill(t, kids[k], ch.children[k].second, states);
    }
  }

  States node_states(const AmDepTree& t, int v, const std::map<int, States>& states) const {
    States out;
    auto kids = t.children(v);
    for (const auto& [name, g] : lex_.constants()) {
      Cost tag = c_.tag_cost(v, name);
      if (!(tag < kInf)) continue;
      const Type& lam = lex_.type_of(name);
      std::vector<std::pair<EdgeLabel, Type>> picks(kids.size());
      SourceSet applied;
      std::function<void(std::size_t, Cost)> rec = [&](std::size_t k, Cost acc) {
        if (k == kids.size()) {
          if (!removable(lam, applied)) return;
          SourceSet keep;
          for (const auto& x : lam.nodes()) {
            if (!applied.count(x)) keep.insert(x);
          }
          Type term = lam.induced(keep);
          auto& slot = out[term];
          if (acc < slot.cost) slot = Choice{acc, name, picks};
          return;
        }
        int d = kids[k];
        const States& child = states.at(d);
        for (const auto& l : ops_) {
          Cost e = c_.edge_cost(v, d, l);
          if (!(e < kInf)) continue;
          if (l.is_app()) {
            if (!lam.contains(l.source) || applied.count(l.source)) continue;
            auto it = child.find(request_of(lam, l.source));
            if (it == child.end()) continue;
            applied.insert(l.source);
            picks[k] = {l, it->first};
            rec(k + 1, acc + e + it->second.cost);
            applied.erase(l.source);
          } else {
            const Choice* best = nullptr;
            const Type* best_t = nullptr;
            for (const auto& [tau, choice] : child) {
              if (!modifies(lam, tau, l.source)) continue;
              if (!best || choice.cost < best->cost) {
                best = &choice;
                best_t = &tau;
              }
            }
            if (!best) continue;
            picks[k] = {l, *best_t};
            rec(k + 1, acc + e + best->cost);
          }
        }
      };
      rec(0, tag);
    }
    return out;
  }

  const SentenceCosts& c_;
  const Lexicon& lex_;
  std::vector<EdgeLabel> ops_;
};

}  // namespace

bool projective_by_definition(const AmDepTree& t) {
  auto descends = [&](int x, int h) {
    for (int steps = 0; x != 0 && steps <= t.n(); ++steps) {
      if (x == h) return true;
      x = t.entry(x).head;
    }
    return false;
  };
  for (int d = 1; d <= t.n(); ++d) {
    if (t.entry(d).ignored()) continue;
    int h = t.entry(d).head;
    if (h == 0) continue;
    for (int x = std::min(h, d) + 1; x < std::max(h, d); ++x) {
      if (!t.entry(x).ignored() && !descends(x, h)) return false;
    }
  }
  return true;
}

BruteForce brute_force_parse(const SentenceCosts& c, const Lexicon& lex) { return Search(c, lex).run(); }

Cost outside_bound(const SentenceCosts& c, const Lexicon& lex, int i, int k) {
  SentenceCosts masked = c;
  for (int j = i; j < k; ++j) {
    for (auto& [g, v] : masked.tags[j - 1]) {
      if (v < kInf) v = 0;
    }
  }
  for (auto& [key, v] : masked.edges) {
    int to = std::get<1>(key);
    if (to >= i && to < k && v < kInf) v = 0;
  }
  return brute_force_parse(masked, lex).best;
}

}  // namespace amparse::testing
