#include "amparse/astar.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace amparse {

HeuristicKind parse_heuristic(const std::string& name) {
  if (name == "trivial") return HeuristicKind::Trivial;
  if (name == "supertag") return HeuristicKind::Supertag;
  if (name == "edge") return HeuristicKind::Edge;
  if (name == "ignore-aware") return HeuristicKind::IgnoreAware;
  throw std::invalid_argument("unknown heuristic '" + name + "'");
}

std::string to_string(HeuristicKind kind) {
  switch (kind) {
    case HeuristicKind::Trivial:
      return "trivial";
    case HeuristicKind::Supertag:
      return "supertag";
    case HeuristicKind::Edge:
      return "edge";
    case HeuristicKind::IgnoreAware:
      return "ignore-aware";
  }
  return "?";
}

OutsideHeuristic::OutsideHeuristic(HeuristicKind kind, const SentenceCosts& costs, const Lexicon& lex)
    : n_(costs.n), per_token_(costs.n + 2, 0) {
  std::vector<Cost> min_tag(n_ + 1, kInf), min_any_edge(n_ + 1, kInf), min_op_edge(n_ + 1, kInf);
  for (int j = 1; j <= n_; ++j) {
    for (const auto& [name, _] : lex.constants()) min_tag[j] = std::min(min_tag[j], costs.tag_cost(j, name));
  }
  for (const auto& [key, v] : costs.edges) {
    auto& [from, to, label] = key;
    if (!lex.has_label(label)) continue;
    min_any_edge[to] = std::min(min_any_edge[to], v);
    if (label.is_operation()) min_op_edge[to] = std::min(min_op_edge[to], v);
  }
  for (int j = 1; j <= n_; ++j) {
    Cost bot = costs.tag_cost(j, kBottom);
    Cost ignore = bot + costs.edge_cost(0, j, EdgeLabel::ignore());
    Cost root = min_tag[j] + costs.edge_cost(0, j, EdgeLabel::root());
    Cost any_tag = std::min(min_tag[j], bot);
    switch (kind) {
      case HeuristicKind::Trivial:
        per_token_[j] = 0;
        break;
      case HeuristicKind::Supertag:
        per_token_[j] = any_tag;
        break;
      case HeuristicKind::Edge:
        per_token_[j] = any_tag + min_any_edge[j];
        break;
      case HeuristicKind::IgnoreAware:
        per_token_[j] = std::min({ignore, min_tag[j] + min_op_edge[j], root});
        break;
    }
  }
  prefix_.assign(n_ + 2, 0);
  prefix_inf_.assign(n_ + 2, 0);
  suffix_.assign(n_ + 3, 0);
  suffix_inf_.assign(n_ + 3, 0);
  for (int j = 1; j <= n_; ++j) {
    bool inf = !std::isfinite(per_token_[j]);
    prefix_[j + 1] = prefix_[j] + (inf ? 0 : per_token_[j]);
    prefix_inf_[j + 1] = prefix_inf_[j] + (inf ? 1 : 0);
  }
  for (int j = n_; j >= 1; --j) {
    bool inf = !std::isfinite(per_token_[j]);
    suffix_[j] = suffix_[j + 1] + (inf ? 0 : per_token_[j]);
    suffix_inf_[j] = suffix_inf_[j + 1] + (inf ? 1 : 0);
  }
}

Cost OutsideHeuristic::operator()(int i, int k) const {
  // prefix_[i] covers tokens 1..i-1; suffix_[k] covers k..n.
  if (prefix_inf_[i] + suffix_inf_[k] > 0) return kInf;
  return prefix_[i] + suffix_[k];
}

Cost heuristic(HeuristicKind kind, const ParseItem& item, const SentenceCosts& costs, const Lexicon& lex) {
  return OutsideHeuristic(kind, costs, lex)(item);
}

DecodeResult astar_parse(const SentenceCosts& costs, const Lexicon& lex, const AstarOptions& opts) {
  Grammar grammar(lex);
  return astar_parse(costs, grammar, opts);
}

namespace {

struct Entry {
  Cost f;
  int len;
  int head;
  TypeId lexical;
  SourceMask applied;
  std::uint64_t seq;
  int id;
};

}  // namespace

DecodeResult astar_parse(const SentenceCosts& costs, Grammar& grammar, const AstarOptions& opts) {
  if (opts.dequeue_limit < 1) throw std::invalid_argument("dequeue limit must be at least 1");
  auto start = std::chrono::steady_clock::now();
  ProjectiveSchema schema(grammar, costs, opts.k_tags);
  OutsideHeuristic h(opts.heuristic, costs, grammar.lexicon());
  TypeIndex& types = grammar.types();
  const int n = schema.n();

  auto worse = [&](const Entry& a, const Entry& b) {
    if (a.f != b.f) return a.f > b.f;
    if (a.len != b.len) return a.len > b.len;
    if (a.head != b.head) return a.head > b.head;
    if (a.lexical != b.lexical) return types.text(a.lexical) > types.text(b.lexical);
    if (a.applied != b.applied) return a.applied > b.applied;
    return a.seq > b.seq;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> agenda(worse);

  // Goals use signature head = head and lexical = -1 to stay apart.
  auto key_of = [](const ParseItem& it) {
    ItemSignature s = ProjectiveSchema::signature(it);
    if (it.is_goal()) s.lexical = -1;
    return s;
  };

  DecodeResult result;
  std::vector<ParseItem> arena;
  std::unordered_map<ItemSignature, Cost, ItemSignatureHash> pushed_best, seen;
  std::unordered_map<ItemSignature, int, ItemSignatureHash> chart;
  std::vector<std::vector<ItemSignature>> by_start(n + 2), by_end(n + 2);
  std::uint64_t seq = 0;

  auto push = [&](ParseItem&& it) {
    auto key = key_of(it);
    auto pb = pushed_best.find(key);
    if (pb != pushed_best.end() && pb->second <= it.cost) return;
    Cost est = h(it);
    if (!std::isfinite(est) || !std::isfinite(it.cost)) return;
    pushed_best[key] = it.cost;
    int id = static_cast<int>(arena.size());
    arena.push_back(it);
    agenda.push({it.cost + est, it.k - it.i, it.head, it.lexical, it.applied, seq++, id});
    ++result.stats.pushed;
  };

  for (int i = 1; i <= n; ++i) {
    for (auto& it : schema.init_items(i)) push(std::move(it));
  }

  while (!agenda.empty()) {
    Entry top = agenda.top();
    const ParseItem cur = arena[top.id];
    auto key = key_of(cur);
    auto s = seen.find(key);
    if (s != seen.end() && s->second <= cur.cost) {
      agenda.pop();
      continue;
    }
    if (result.stats.dequeued >= opts.dequeue_limit) {
      result.stats.limit_hit = true;
      break;
    }
    agenda.pop();
    ++result.stats.dequeued;
    seen[key] = cur.cost;
    if (opts.on_dequeue) opts.on_dequeue(cur, h(cur));

    if (cur.is_goal()) {
      result.status = DecodeStatus::Ok;
      result.cost = cur.cost;
      result.stats.goal_cost = cur.cost;
      result.tree = schema.extract(arena, top.id);
      break;
    }

    auto sig = ProjectiveSchema::signature(cur);
    if (!chart.count(sig)) {
      by_start[cur.i].push_back(sig);
      by_end[cur.k].push_back(sig);
    }
    chart[sig] = top.id;

    if (auto it = schema.skip_left(cur, top.id)) push(std::move(*it));
    if (auto it = schema.skip_right(cur, top.id)) push(std::move(*it));
    const std::vector<ItemSignature> rights = by_start[cur.k];
    for (const auto& rs : rights) {
      int rid = chart.at(rs);
      ParseItem right = arena[rid];
      schema.arcs(cur, top.id, right, rid, push);
    }
    const std::vector<ItemSignature> lefts = by_end[cur.i];
    for (const auto& ls : lefts) {
      int lid = chart.at(ls);
      ParseItem left = arena[lid];
      schema.arcs(left, lid, cur, top.id, push);
    }
    if (auto g = schema.goal(cur, top.id)) push(std::move(*g));
  }

  result.stats.items = seen.size();
  result.stats.elapsed = std::chrono::steady_clock::now() - start;
  if (result.status != DecodeStatus::Ok) {
    result.status = result.stats.limit_hit ? DecodeStatus::Limit : DecodeStatus::NoParse;
  }
  return result;
}

}  // namespace amparse
