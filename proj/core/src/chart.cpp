#include "amparse/chart.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace amparse {

std::size_t ItemSignatureHash::operator()(const ItemSignature& s) const {
  std::size_t h = static_cast<std::size_t>(s.i);
  for (std::size_t v : {static_cast<std::size_t>(s.k), static_cast<std::size_t>(s.head),
                        static_cast<std::size_t>(s.lexical), static_cast<std::size_t>(s.applied)}) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

ProjectiveSchema::ProjectiveSchema(Grammar& grammar, const SentenceCosts& costs, int k_tags)
    : grammar_(&grammar), costs_(&costs), n_(costs.n), k_tags_(k_tags) {
  auto& types = grammar.types();
  for (const auto& l : grammar.lexicon().labels()) {
    if (!l.is_operation()) continue;
    labels_.push_back(l);
    label_bits_.push_back(types.source_bit(l.source));
  }
  const std::size_t L = labels_.size();
  edge_.assign(static_cast<std::size_t>(n_ + 1) * (n_ + 1) * std::max<std::size_t>(L, 1), kInf);
  for (int h = 1; h <= n_; ++h) {
    for (int d = 1; d <= n_; ++d) {
      if (h == d) continue;
      for (std::size_t l = 0; l < L; ++l) edge_[(h * (n_ + 1) + d) * L + l] = costs.edge_cost(h, d, labels_[l]);
    }
  }
  skip_.assign(n_ + 1, kInf);
  root_.assign(n_ + 1, kInf);
  for (int j = 1; j <= n_; ++j) {
    skip_[j] = costs.tag_cost(j, kBottom) + costs.edge_cost(0, j, EdgeLabel::ignore());
    root_[j] = costs.edge_cost(0, j, EdgeLabel::root());
  }
}

std::vector<ParseItem> ProjectiveSchema::init_items(int i) const {
  std::vector<std::pair<Cost, int>> tags;
  for (int g = 0; g < grammar_->constant_count(); ++g) {
    Cost c = costs_->tag_cost(i, grammar_->constant_name(g));
    if (std::isfinite(c)) tags.emplace_back(c, g);
  }
  std::stable_sort(tags.begin(), tags.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  if (static_cast<int>(tags.size()) > k_tags_) tags.resize(std::max(k_tags_, 0));
  std::vector<ParseItem> out;
  for (auto [c, g] : tags) {
    ParseItem it;
    it.i = i;
    it.k = i + 1;
    it.head = i;
    it.lexical = grammar_->constant_type(g);
    it.cost = c;
    it.rule = ParseItem::Rule::Init;
    it.constant = g;
    out.push_back(it);
  }
  return out;
}

std::optional<ParseItem> ProjectiveSchema::skip_left(const ParseItem& it, int id) const {
  if (it.i < 2 || it.is_goal()) return std::nullopt;
  Cost c = skip_[it.i - 1];
  if (!std::isfinite(c)) return std::nullopt;
  ParseItem out = it;
  out.i = it.i - 1;
  out.cost = it.cost + c;
  out.rule = ParseItem::Rule::SkipL;
  out.left = id;
  out.right = -1;
  out.constant = -1;
  out.label = -1;
  return out;
}

std::optional<ParseItem> ProjectiveSchema::skip_right(const ParseItem& it, int id) const {
  if (it.k > n_ || it.is_goal()) return std::nullopt;
  Cost c = skip_[it.k];
  if (!std::isfinite(c)) return std::nullopt;
  ParseItem out = it;
  out.k = it.k + 1;
  out.cost = it.cost + c;
  out.rule = ParseItem::Rule::SkipR;
  out.left = id;
  out.right = -1;
  out.constant = -1;
  out.label = -1;
  return out;
}

void ProjectiveSchema::arcs(const ParseItem& left, int left_id, const ParseItem& right, int right_id,
                            const std::function<void(ParseItem&&)>& emit) {
  if (left.k != right.i) return;
  auto& types = grammar_->types();
  // Head `h` takes dependent `d` (whose type must be defined).
  auto attach = [&](const ParseItem& h, const ParseItem& d, ParseItem::Rule rule) {
    auto dep_type = term(d);
    if (!dep_type) return;
    for (std::size_t l = 0; l < labels_.size(); ++l) {
      Cost e = edge(h.head, d.head, static_cast<int>(l));
      if (!std::isfinite(e)) continue;
      int bit = label_bits_[l];
      SourceMask applied = h.applied;
      if (labels_[l].is_app()) {
        SourceMask b = SourceMask{1} << bit;
        if (!(types.nodes_mask(h.lexical) & b) || (h.applied & b)) continue;
        if (!types.app_fits(h.lexical, bit, *dep_type)) continue;
        applied |= b;
      } else if (!types.mod_ok(h.lexical, *dep_type, bit)) {
        continue;
      }
      ParseItem out;
      out.i = left.i;
      out.k = right.k;
      out.head = h.head;
      out.lexical = h.lexical;
      out.applied = applied;
      out.cost = left.cost + right.cost + e;
      out.rule = rule;
      out.left = left_id;
      out.right = right_id;
      out.label = static_cast<int>(l);
      emit(std::move(out));
    }
  };
  attach(left, right, ParseItem::Rule::ArcR);
  attach(right, left, ParseItem::Rule::ArcL);
}

std::optional<ParseItem> ProjectiveSchema::goal(const ParseItem& it, int id) {
  if (it.is_goal() || it.i != 1 || it.k != n_ + 1) return std::nullopt;
  auto t = term(it);
  if (!t || *t != grammar_->types().empty_type()) return std::nullopt;
  Cost c = root_[it.head];
  if (!std::isfinite(c)) return std::nullopt;
  ParseItem out = it;
  out.i = 0;
  out.cost = it.cost + c;
  out.rule = ParseItem::Rule::Goal;
  out.left = id;
  out.right = -1;
  out.constant = -1;
  out.label = -1;
  return out;
}

AmDepTree ProjectiveSchema::extract(const std::vector<ParseItem>& arena, int goal_id) const {
  AmDepTree t;
  for (int j = 1; j <= n_; ++j) t.entries.push_back({costs_->forms.at(j - 1), kBottom, 0, EdgeLabel::ignore()});
  std::vector<int> todo{goal_id};
  while (!todo.empty()) {
    const ParseItem& it = arena.at(todo.back());
    todo.pop_back();
    switch (it.rule) {
      case ParseItem::Rule::Init:
        t.entry(it.head).constant = grammar_->constant_name(it.constant);
        break;
      case ParseItem::Rule::SkipL:
      case ParseItem::Rule::SkipR:
        todo.push_back(it.left);
        break;
      case ParseItem::Rule::Goal:
        t.entry(it.head).head = 0;
        t.entry(it.head).label = EdgeLabel::root();
        todo.push_back(it.left);
        break;
      case ParseItem::Rule::ArcR:
      case ParseItem::Rule::ArcL: {
        const ParseItem& l = arena.at(it.left);
        const ParseItem& r = arena.at(it.right);
        int dep = it.rule == ParseItem::Rule::ArcR ? r.head : l.head;
        t.entry(dep).head = it.head;
        t.entry(dep).label = labels_.at(it.label);
        todo.push_back(it.left);
        todo.push_back(it.right);
        break;
      }
    }
  }
  return t;
}

DecodeResult chart_parse(const SentenceCosts& costs, const Lexicon& lex, int k_tags) {
  Grammar grammar(lex);
  return chart_parse(costs, grammar, k_tags);
}

DecodeResult chart_parse(const SentenceCosts& costs, Grammar& grammar, int k_tags) {
  auto start = std::chrono::steady_clock::now();
  ProjectiveSchema schema(grammar, costs, k_tags);
  const int n = schema.n();
  DecodeResult result;
  std::vector<ParseItem> arena;
  // cell[(i, k)] holds the ids of the best item per signature over [i, k).
  std::vector<std::vector<int>> cell(static_cast<std::size_t>(n + 2) * (n + 2));
  auto at = [&](int i, int k) -> std::vector<int>& { return cell[static_cast<std::size_t>(i) * (n + 2) + k]; };

  for (int len = 1; len <= n; ++len) {
    for (int i = 1; i + len <= n + 1; ++i) {
      const int k = i + len;
      std::unordered_map<ItemSignature, int, ItemSignatureHash> best;
      std::vector<int>& out = at(i, k);
      auto offer = [&](ParseItem&& it) {
        ++result.stats.pushed;
        auto sig = ProjectiveSchema::signature(it);
        auto found = best.find(sig);
        if (found != best.end()) {
          if (it.cost < arena[found->second].cost) arena[found->second] = it;
          return;
        }
        best.emplace(sig, static_cast<int>(arena.size()));
        out.push_back(static_cast<int>(arena.size()));
        arena.push_back(it);
      };
      if (len == 1) {
        for (auto& it : schema.init_items(i)) offer(std::move(it));
      } else {
        for (int id : std::vector<int>(at(i, k - 1))) {
          if (auto s = schema.skip_right(arena[id], id)) offer(std::move(*s));
        }
        for (int id : std::vector<int>(at(i + 1, k))) {
          if (auto s = schema.skip_left(arena[id], id)) offer(std::move(*s));
        }
        for (int j = i + 1; j < k; ++j) {
          const std::vector<int> lefts = at(i, j), rights = at(j, k);
          for (int l : lefts) {
            for (int r : rights) {
              ParseItem left = arena[l], right = arena[r];
              schema.arcs(left, l, right, r, offer);
            }
          }
        }
      }
      result.stats.items += out.size();
    }
  }

  int goal_id = -1;
  for (int id : std::vector<int>(at(1, n + 1))) {
    if (auto g = schema.goal(arena[id], id)) {
      ++result.stats.items;
      if (goal_id < 0 || g->cost < arena[goal_id].cost) {
        goal_id = static_cast<int>(arena.size());
        arena.push_back(*g);
      }
    }
  }
  result.stats.elapsed = std::chrono::steady_clock::now() - start;
  if (goal_id < 0) {
    result.status = DecodeStatus::NoParse;
    return result;
  }
  result.status = DecodeStatus::Ok;
  result.cost = arena[goal_id].cost;
  result.stats.goal_cost = result.cost;
  result.tree = schema.extract(arena, goal_id);
  return result;
}

}  // namespace amparse
