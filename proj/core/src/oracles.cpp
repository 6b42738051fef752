#include "amparse/oracles.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <random>
#include <stdexcept>

namespace amparse {

namespace {

int first_constant_of(Grammar& g, TypeId t) {
  const auto& cs = g.constants_of(t);
  if (cs.empty()) throw std::logic_error("no constant realizes type " + g.types().text(t));
  return cs.front();
}

std::vector<int> sorted_bits(TypeIndex& types, SourceMask m) {
  std::vector<int> out;
  for (const auto& s : types.mask_to_set(m)) out.push_back(*types.find_source_bit(s));
  return out;
}

std::vector<int> first_headless(const Configuration& c, std::size_t count) {
  std::vector<int> out;
  for (int j = 1; j <= c.n && out.size() < count; ++j) {
    if (c.headless(j)) out.push_back(j);
  }
  if (out.size() < count) throw std::logic_error("not enough tokens without heads");
  return out;
}

}  // namespace

std::vector<Transition> oracle_sequence(const AmDepTree& t, TransitionSystem& ts) {
  Grammar& g = ts.grammar();
  auto& types = g.types();
  TypingReport rep = check_well_typed(t, g.lexicon());
  if (!rep.ok) throw std::invalid_argument("tree is not well-typed");
  const int root = t.root();
  std::vector<Transition> out{Transition::init(root)};

  auto constant = [&](int i) {
    int idx = g.constant_index(t.entry(i).constant);
    if (idx < 0) throw std::invalid_argument("unknown constant " + t.entry(i).constant);
    return idx;
  };
  auto bit = [&](const EdgeLabel& l) { return types.source_bit(l.source); };
  auto split = [&](int i, std::vector<int>& app, std::vector<int>& mod) {
    for (int j : t.children(i)) (t.entry(j).label.is_app() ? app : mod).push_back(j);
  };

  std::function<void(int)> visit_ltf = [&](int i) {
    out.push_back(Transition::choose(types.intern(rep.term_types.at(i)), constant(i)));
    std::vector<int> app, mod;
    split(i, app, mod);
    for (int j : app) {
      out.push_back(Transition::apply(bit(t.entry(j).label), j));
      visit_ltf(j);
    }
    for (int j : mod) {
      out.push_back(Transition::modify(bit(t.entry(j).label), j));
      visit_ltf(j);
    }
    out.push_back(Transition::pop());
  };

  std::function<void(int)> visit_ltl = [&](int i) {
    std::vector<int> app, mod;
    split(i, app, mod);
    for (int j : app) out.push_back(Transition::apply(bit(t.entry(j).label), j));
    for (int j : mod) out.push_back(Transition::modify(bit(t.entry(j).label), j));
    out.push_back(Transition::finish(constant(i)));
    // Children sit on the stack in creation order, first created on top.
    for (int j : app) visit_ltl(j);
    for (int j : mod) visit_ltl(j);
  };

  if (ts.system() == System::LTF) {
    visit_ltf(root);
  } else {
    visit_ltl(root);
  }
  return out;
}

std::vector<Transition> complete_step(const Configuration& c, TransitionSystem& ts) {
  Grammar& g = ts.grammar();
  auto& types = g.types();
  const TypeId empty = types.empty_type();
  if (c.initial()) {
    int g0 = first_constant_of(g, empty);
    if (ts.system() == System::LTF) return {Transition::init(1), Transition::choose(empty, g0), Transition::pop()};
    return {Transition::init(1), Transition::finish(g0)};
  }
  if (c.S.empty()) return {};
  const int i = c.active();
  std::vector<Transition> out;

  if (ts.system() == System::LTF) {
    if (c.G[i] < 0) {
      // Lexicographically first constant whose type is a possible term type.
      for (int k = 0; k < g.constant_count(); ++k) {
        TypeId lam = g.constant_type(k);
        if (std::find(c.T[i].begin(), c.T[i].end(), lam) != c.T[i].end()) {
          return {Transition::choose(lam, k), Transition::pop()};
        }
      }
      throw std::logic_error("no constant realizes a possible term type");
    }
    TypeId lam = g.constant_type(c.G[i]);
    auto as = types.apply_set(lam, c.T[i].front());
    if (!as || (c.A[i] & ~*as) != 0) throw std::logic_error("active node has no apply set");
    std::vector<int> o = sorted_bits(types, *as & ~c.A[i]);
    std::vector<int> a = first_headless(c, o.size());
    for (std::size_t k = 0; k < o.size(); ++k) {
      TypeId rho = types.request(lam, o[k]);
      out.push_back(Transition::apply(o[k], a[k]));
      out.push_back(Transition::choose(rho, first_constant_of(g, rho)));
      out.push_back(Transition::pop());
    }
    out.push_back(Transition::pop());
    return out;
  }

  auto w = ts.owed_witness(c, i);
  if (!w || w->lexical < 0) throw std::logic_error("active node has no compatible lexical type");
  auto as = types.apply_set(w->lexical, w->term);
  std::vector<int> o = sorted_bits(types, *as & ~c.A[i]);
  std::vector<int> a = first_headless(c, o.size());
  for (std::size_t k = 0; k < o.size(); ++k) out.push_back(Transition::apply(o[k], a[k]));
  out.push_back(Transition::finish(first_constant_of(g, w->lexical)));
  return out;
}

std::vector<Transition> complete_config(Configuration& c, TransitionSystem& ts) {
  std::vector<Transition> out;
  // Each step attaches a token or closes one; 2n + 2 steps always suffice.
  for (int guard = 0; !ts.is_goal(c); ++guard) {
    if (guard > 2 * c.n + 2) throw std::logic_error("completion did not terminate");
    for (const auto& tr : complete_step(c, ts)) {
      ts.apply(c, tr);
      out.push_back(tr);
    }
  }
  return out;
}

Episode fuzz_episode(std::uint64_t seed, TransitionSystem& ts, const FuzzOptions& opts) {
  Grammar& g = ts.grammar();
  std::mt19937_64 rng(seed);
  Episode e;
  e.seed = seed;
  e.system = ts.system();
  e.lexicon_id = opts.lexicon_id;
  e.n = opts.n;
  Configuration c = ts.initial(opts.n);
  auto record = [&](const Transition& tr) { e.trace.push_back({tr, to_string(tr, g), ts.digest(c)}); };
  for (int s = 0; s < opts.steps && !ts.is_goal(c); ++s) {
    auto moves = ts.legal(c);
    if (moves.empty()) break;
    std::size_t pick;
    if (opts.weighted) {
      std::vector<double> weights;
      for (const auto& m : moves) weights.push_back(m.kind == Transition::Kind::Apply ? 8.0 : 1.0);
      pick = std::discrete_distribution<std::size_t>(weights.begin(), weights.end())(rng);
    } else {
      pick = std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng);
    }
    ts.apply_unchecked(c, moves[pick]);
    record(moves[pick]);
    ++e.random_steps;
  }
  while (!ts.is_goal(c)) {
    for (const auto& tr : complete_step(c, ts)) {
      ts.apply(c, tr);
      record(tr);
    }
  }
  std::vector<std::string> forms;
  for (int j = 1; j <= opts.n; ++j) forms.push_back("w" + std::to_string(j));
  e.tree = ts.to_tree(c, forms);
  return e;
}

bool replay_episode(const Episode& e, TransitionSystem& ts) {
  Configuration c = ts.initial(e.n);
  for (const auto& step : e.trace) {
    if (!ts.is_legal(c, step.transition)) return false;
    ts.apply_unchecked(c, step.transition);
    if (ts.digest(c) != step.digest) return false;
  }
  if (!ts.is_goal(c)) return false;
  std::vector<std::string> forms;
  for (const auto& en : e.tree.entries) forms.push_back(en.form);
  return ts.to_tree(c, forms) == e.tree;
}

}  // namespace amparse
