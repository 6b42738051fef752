#include "amparse/costs.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "amparse/errors.hpp"
#include "text_util.hpp"

namespace amparse {

Cost SentenceCosts::tag_cost(int i, const std::string& constant) const {
  if (i < 1 || i > n) return kInf;
  const auto& m = tags[i - 1];
  auto it = m.find(constant);
  return it == m.end() ? kInf : it->second;
}

Cost SentenceCosts::edge_cost(int from, int to, const EdgeLabel& label) const {
  auto it = edges.find({from, to, label});
  return it == edges.end() ? kInf : it->second;
}

void SentenceCosts::set_tag(int i, const std::string& constant, Cost c) { tags.at(i - 1)[constant] = c; }

void SentenceCosts::set_edge(int from, int to, const EdgeLabel& label, Cost c) { edges[{from, to, label}] = c; }

SentenceCosts make_sentence(std::string id, std::vector<std::string> forms) {
  SentenceCosts c;
  c.id = std::move(id);
  c.n = static_cast<int>(forms.size());
  c.forms = std::move(forms);
  c.tags.resize(c.n);
  return c;
}

void validate_costs(const SentenceCosts& c) {
  auto bad = [&](const std::string& why) { throw std::invalid_argument("sentence " + c.id + ": " + why); };
  if (static_cast<int>(c.forms.size()) != c.n || static_cast<int>(c.tags.size()) != c.n) bad("size mismatch");
  for (int i = 1; i <= c.n; ++i) {
    for (const auto& [g, v] : c.tags[i - 1]) {
      if (!(v >= 0)) bad("negative tag cost for token " + std::to_string(i));
    }
  }
  for (const auto& [key, v] : c.edges) {
    auto& [from, to, label] = key;
    if (!(v >= 0)) bad("negative edge cost");
    if (to < 1 || to > c.n || from < 0 || from > c.n) bad("edge index out of range");
    if (label.is_operation()) {
      if (from == 0 || from == to) bad(to_string(label) + " edge must join two distinct tokens");
    } else if (from != 0) {
      bad(to_string(label) + " edge must come from 0");
    }
  }
}

std::vector<SentenceCosts> load_costs(std::istream& in) {
  std::vector<SentenceCosts> out;
  std::string raw;
  int line_no = 0;
  bool open = false;
  SentenceCosts cur;
  int start_line = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string text(detail::strip_comment(raw));
    if (text.empty()) continue;
    auto w = detail::split_ws(text);
    auto need = [&](std::size_t k) {
      if (w.size() != k) throw FormatError(line_no, "expected " + std::to_string(k) + " fields in '" + w[0] + "' line");
    };
    auto token = [&](const std::string& s, int lo) {
      int i = detail::parse_int(s, line_no);
      if (i < lo || i > cur.n) throw FormatError(line_no, "token index " + s + " out of range");
      return i;
    };
    auto cost = [&](const std::string& s) {
      Cost v = detail::parse_double(s, line_no);
      if (!(v >= 0)) throw FormatError(line_no, "negative cost " + s);
      return v;
    };
    if (!open) {
      if (w[0] != "sentence") throw FormatError(line_no, "expected 'sentence <id> <n>'");
      need(3);
      int n = detail::parse_int(w[2], line_no);
      if (n < 1) throw FormatError(line_no, "sentence length must be positive");
      cur = make_sentence(w[1], std::vector<std::string>(n));
      for (int i = 1; i <= n; ++i) cur.forms[i - 1] = "w" + std::to_string(i);
      open = true;
      start_line = line_no;
    } else if (w[0] == "form") {
      if (w.size() < 3) throw FormatError(line_no, "expected 'form <i> <string>'");
      cur.forms[token(w[1], 1) - 1] = detail::rest_after(text, 2);
    } else if (w[0] == "tag") {
      need(4);
      cur.set_tag(token(w[1], 1), w[2], cost(w[3]));
    } else if (w[0] == "edge") {
      need(5);
      int from = token(w[1], 0), to = token(w[2], 1);
      EdgeLabel label;
      try {
        label = parse_edge_label(w[3]);
      } catch (const std::invalid_argument& e) {
        throw FormatError(line_no, e.what());
      }
      if (label.is_operation() ? (from == 0 || from == to) : from != 0) {
        throw FormatError(line_no, "illegal endpoints for " + w[3]);
      }
      cur.set_edge(from, to, label, cost(w[4]));
    } else if (w[0] == "end") {
      need(1);
      out.push_back(std::move(cur));
      cur = SentenceCosts{};
      open = false;
    } else {
      throw FormatError(line_no, "unexpected '" + w[0] + "'");
    }
  }
  if (open) throw FormatError(start_line, "unterminated sentence");
  return out;
}

std::vector<SentenceCosts> load_costs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open cost file '" + path + "'");
  return load_costs(in);
}

void write_costs(std::ostream& out, const std::vector<SentenceCosts>& sentences) {
  std::ostringstream buf;
  buf << std::setprecision(17);
  for (const auto& c : sentences) {
    buf << "sentence " << c.id << ' ' << c.n << '\n';
    for (int i = 1; i <= c.n; ++i) buf << "form " << i << ' ' << c.forms[i - 1] << '\n';
    for (int i = 1; i <= c.n; ++i) {
      for (const auto& [g, v] : c.tags[i - 1]) buf << "tag " << i << ' ' << g << ' ' << v << '\n';
    }
    for (const auto& [key, v] : c.edges) {
      auto& [from, to, label] = key;
      buf << "edge " << from << ' ' << to << ' ' << to_string(label) << ' ' << v << '\n';
    }
    buf << "end\n";
  }
  out << buf.str();
}

Cost tree_cost(const AmDepTree& t, const SentenceCosts& c) {
  if (t.n() != c.n) throw std::invalid_argument("tree length does not match sentence length");
  Cost total = 0;
  for (int i = 1; i <= t.n(); ++i) {
    const auto& e = t.entry(i);
    total += c.tag_cost(i, e.constant) + c.edge_cost(e.head, i, e.label);
  }
  return total;
}

namespace {

template <typename F>
void for_each_decision(int n, const Lexicon& lex, F&& f) {
  for (int i = 1; i <= n; ++i) {
    for (const auto& [name, _] : lex.constants()) f(i, name, 0, EdgeLabel{}, true);
    f(i, kBottom, 0, EdgeLabel{}, true);
  }
  for (int j = 1; j <= n; ++j) {
    f(j, std::string(), 0, EdgeLabel::root(), false);
    f(j, std::string(), 0, EdgeLabel::ignore(), false);
    for (const auto& l : lex.labels()) {
      if (!l.is_operation()) continue;
      for (int h = 1; h <= n; ++h) {
        if (h != j) f(j, std::string(), h, l, false);
      }
    }
  }
}

}  // namespace

SentenceCosts gen_synthetic(std::uint64_t seed, int n, const Lexicon& lex, const SyntheticParams& params) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (!(params.lo >= 0) || !(params.hi >= params.lo) || !std::isfinite(params.hi)) {
    throw std::invalid_argument("cost range must satisfy 0 <= lo <= hi < inf");
  }
  std::mt19937_64 rng(seed);
  const long lo_k = static_cast<long>(std::ceil(params.lo * 64));
  const long hi_k = static_cast<long>(std::floor(params.hi * 64));
  auto sample = [&]() -> Cost {
    if (hi_k < lo_k) return params.lo;
    return static_cast<Cost>(std::uniform_int_distribution<long>(lo_k, hi_k)(rng)) / 64.0;
  };
  std::vector<std::string> forms;
  for (int i = 1; i <= n; ++i) forms.push_back("w" + std::to_string(i));
  SentenceCosts c = make_sentence("syn" + std::to_string(seed), std::move(forms));
  for_each_decision(n, lex, [&](int j, const std::string& g, int h, const EdgeLabel& l, bool is_tag) {
    if (is_tag) {
      c.set_tag(j, g, sample());
    } else {
      c.set_edge(h, j, l, sample());
    }
  });
  return c;
}

SentenceCosts gold_zero_costs(const AmDepTree& gold, const Lexicon& lex, std::string id) {
  std::vector<std::string> forms;
  for (const auto& e : gold.entries) forms.push_back(e.form);
  SentenceCosts c = make_sentence(std::move(id), std::move(forms));
  for_each_decision(gold.n(), lex, [&](int j, const std::string& g, int h, const EdgeLabel& l, bool is_tag) {
    const auto& e = gold.entry(j);
    if (is_tag) {
      c.set_tag(j, g, g == e.constant ? 0.0 : 1.0);
    } else {
      c.set_edge(h, j, l, (h == e.head && l == e.label) ? 0.0 : 1.0);
    }
  });
  return c;
}

std::vector<std::pair<std::string, Cost>> top_k_tags(const SentenceCosts& c, int i, int k) {
  if (i < 1 || i > c.n) throw std::out_of_range("token index out of range");
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  std::vector<std::pair<std::string, Cost>> all;
  for (const auto& [g, v] : c.tags[i - 1]) {
    if (g != kBottom && std::isfinite(v)) all.emplace_back(g, v);
  }
  std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  if (static_cast<int>(all.size()) > k) all.resize(k);
  return all;
}

}  // namespace amparse
