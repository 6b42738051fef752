#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <mutex>
#include <sstream>
#include <thread>

#include "amparse/astar.hpp"
#include "amparse/chart.hpp"
#include "amparse/errors.hpp"
#include "amparse/oracles.hpp"
#include "amparse/transitions.hpp"

using json = nlohmann::ordered_json;
using namespace amparse;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNoParse = 2;
constexpr int kExitLimit = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  fn(out);
}

Lexicon read_lexicon(const std::string& path, bool augment) {
  Lexicon lex = load_lexicon_file(path);
  return augment ? augment_closure(lex) : lex;
}

void require_closed(const Lexicon& lex) {
  auto rep = validate_closure(lex);
  if (rep.closed()) return;
  std::string msg = "lexicon is not closed (rerun with --augment):";
  for (const auto& v : rep.violations) msg += "\n  assumption " + std::to_string(v.assumption) + ": " + v.witness;
  throw InputError(msg);
}

json tree_json(const AmDepTree& t) {
  json rows = json::array();
  for (const auto& e : t.entries) rows.push_back({e.form, e.constant, e.head, to_string(e.label)});
  return rows;
}

double ms(std::chrono::nanoseconds d) { return std::chrono::duration<double, std::milli>(d).count(); }

/// Runs fn(index, worker) over [0, count) with `jobs` threads; each worker
/// owns one Grammar.
template <class Fn>
void parallel_for(std::size_t count, int jobs, const Lexicon& lex, Fn&& fn) {
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(std::max<std::size_t>(count, 1))));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    Grammar grammar(lex);
    for (std::size_t k; (k = next.fetch_add(1)) < count;) {
      try {
        fn(k, grammar);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

// ---------------------------------------------------------------- parse

struct ParseFlags {
  std::string costs, lexicon, out, report, decoder = "astar", heuristic = "ignore-aware";
  int k_tags = 6, beam = 1, jobs = 1;
  std::size_t dequeue_limit = 1000000;
  bool trace = false, no_type_check = false, augment = false;
};

struct SentenceOutcome {
  TreeRecord record;
  json report;
  std::string trace;
};

SentenceOutcome parse_one(const SentenceCosts& sc, Grammar& grammar, const ParseFlags& f) {
  SentenceOutcome out;
  out.record.id = sc.id;
  json r = {{"id", sc.id}, {"n", sc.n}, {"decoder", f.decoder}};
  auto start = std::chrono::steady_clock::now();
  if (f.decoder == "chart" || f.decoder == "astar") {
    DecodeResult res;
    if (f.decoder == "chart") {
      res = chart_parse(sc, grammar, f.k_tags);
    } else {
      AstarOptions opts;
      opts.heuristic = parse_heuristic(f.heuristic);
      opts.k_tags = f.k_tags;
      opts.dequeue_limit = f.dequeue_limit;
      res = astar_parse(sc, grammar, opts);
      r["heuristic"] = f.heuristic;
    }
    r["status"] = res.status == DecodeStatus::Ok ? "ok" : res.status == DecodeStatus::Limit ? "limit" : "no-parse";
    r["stats"] = {{"dequeued", res.stats.dequeued}, {"pushed", res.stats.pushed}, {"items", res.stats.items}};
    if (res.status == DecodeStatus::Ok) {
      out.record.tree = res.tree;
    } else {
      out.record.marker = res.status == DecodeStatus::Limit ? "LIMIT" : "NO-PARSE";
    }
  } else {
    DecodeOptions opts;
    opts.system = parse_system(f.decoder);
    opts.beam = f.beam;
    opts.type_check = !f.no_type_check;
    auto res = decode(sc, grammar, opts);
    out.record.tree = res.tree;
    r["mode"] = f.beam > 1 ? "beam" + std::to_string(f.beam) : "greedy";
    if (f.no_type_check) r["mode"] = r["mode"].get<std::string>() + "+no-type-check";
    r["status"] = "ok";
    r["stats"] = {{"transitions", res.transitions.size()}};
    if (f.trace) {
      TransitionSystem ts(grammar, opts.system, opts.type_check);
      out.trace = "# sentence " + sc.id + "\n" + trace_table(ts, sc.n, sc.forms, res.transitions);
    }
  }
  r["wall_ms"] = ms(std::chrono::steady_clock::now() - start);
  if (out.record.tree) {
    r["cost"] = tree_cost(*out.record.tree, sc);
    r["well_typed"] = check_well_typed(*out.record.tree, grammar.lexicon()).ok;
  } else {
    r["cost"] = nullptr;
    r["well_typed"] = nullptr;
  }
  out.report = std::move(r);
  return out;
}

int cmd_parse(const ParseFlags& f) {
  static const std::vector<std::string> decoders = {"chart", "astar", "ltf", "ltl"};
  if (std::find(decoders.begin(), decoders.end(), f.decoder) == decoders.end()) {
    throw InputError("unknown decoder '" + f.decoder + "'");
  }
  if (f.no_type_check && f.decoder != "ltl") throw InputError("--no-type-check requires --decoder ltl");
  parse_heuristic(f.heuristic);
  Lexicon lex = read_lexicon(f.lexicon, f.augment);
  if (f.decoder == "ltf" || f.decoder == "ltl") require_closed(lex);
  auto sentences = load_costs_file(f.costs);

  std::vector<SentenceOutcome> outcomes(sentences.size());
  auto start = std::chrono::steady_clock::now();
  parallel_for(sentences.size(), f.jobs, lex,
               [&](std::size_t k, Grammar& g) { outcomes[k] = parse_one(sentences[k], g, f); });
  double wall = ms(std::chrono::steady_clock::now() - start);

  std::vector<TreeRecord> records;
  json per = json::array();
  int code = kExitOk;
  long tokens = 0, ill_typed = 0;
  for (auto& o : outcomes) {
    if (o.record.marker == "NO-PARSE") code = std::max(code, kExitNoParse);
    if (o.record.marker == "LIMIT") code = std::max(code, kExitLimit);
    if (o.report["well_typed"].is_boolean() && !o.report["well_typed"].get<bool>()) ++ill_typed;
    tokens += o.report["n"].get<long>();
    if (!o.trace.empty()) std::cerr << o.trace;
    records.push_back(std::move(o.record));
    per.push_back(std::move(o.report));
  }
  with_output(f.out, [&](std::ostream& os) { write_tree_records(os, records); });
  json report = {{"sentences", per},
                 {"aggregate",
                  {{"sentences", records.size()},
                   {"tokens", tokens},
                   {"ill_typed", ill_typed},
                   {"wall_ms", wall},
                   {"tokens_per_sec", wall > 0 ? tokens / (wall / 1000.0) : 0.0}}}};
  if (f.report.empty()) {
    std::cerr << report.dump(2) << "\n";
  } else {
    with_output(f.report, [&](std::ostream& os) { os << report.dump(2) << "\n"; });
  }
  return code;
}

// ---------------------------------------------------------------- evaluate

int cmd_evaluate(const std::string& tree_path, const std::string& lex_path, const std::string& out_path) {
  Lexicon lex = load_lexicon_file(lex_path);
  auto records = read_tree_file(tree_path);
  std::ostringstream buf;
  for (const auto& rec : records) {
    if (!rec.tree) throw InputError("sentence " + rec.id + " has no tree");
    auto rep = check_well_typed(*rec.tree, lex);
    if (!rep.ok) {
      std::cerr << "sentence " << rec.id << ": not well-typed";
      if (rep.failure) std::cerr << " at token " << rep.failure->first << ": " << rep.failure->second;
      std::cerr << "\n";
      return kExitInput;
    }
    write_graph_block(buf, "graph", rec.id, evaluate_tree(*rec.tree, lex));
  }
  with_output(out_path, [&](std::ostream& os) { os << buf.str(); });
  return kExitOk;
}

// ---------------------------------------------------------------- oracle / complete / fuzz

int cmd_oracle(const std::string& tree_path, const std::string& lex_path, const std::string& system, bool trace,
               bool augment) {
  Lexicon lex = read_lexicon(lex_path, augment);
  Grammar grammar(lex);
  TransitionSystem ts(grammar, parse_system(system));
  for (const auto& rec : read_tree_file(tree_path)) {
    if (!rec.tree) throw InputError("sentence " + rec.id + " has no tree");
    std::vector<Transition> seq;
    try {
      seq = oracle_sequence(*rec.tree, ts);
    } catch (const std::invalid_argument& e) {
      std::cerr << "sentence " << rec.id << ": " << e.what() << "\n";
      return kExitInput;
    }
    std::cout << "# sentence " << rec.id << "\n";
    if (trace) {
      std::vector<std::string> forms;
      for (const auto& e : rec.tree->entries) forms.push_back(e.form);
      std::cout << trace_table(ts, rec.tree->n(), forms, seq);
    } else {
      for (const auto& tr : seq) std::cout << to_string(tr, grammar) << "\n";
    }
    std::cout << "\n";
  }
  return kExitOk;
}

std::vector<std::string> split_transitions(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if ((ch == ';' || ch == '\n') && depth == 0) {
      if (cur.find_first_not_of(" \t\r") != std::string::npos) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (cur.find_first_not_of(" \t\r") != std::string::npos) out.push_back(cur);
  return out;
}

int cmd_complete(const std::string& lex_path, const std::string& system, int n, const std::string& prefix,
                 bool augment) {
  Lexicon lex = read_lexicon(lex_path, augment);
  require_closed(lex);
  Grammar grammar(lex);
  TransitionSystem ts(grammar, parse_system(system));
  Configuration c = ts.initial(n);
  for (const auto& text : split_transitions(prefix)) {
    Transition tr = parse_transition(text, grammar);
    if (!ts.is_legal(c, tr)) throw InputError("prefix transition " + text + " is not legal");
    ts.apply_unchecked(c, tr);
  }
  for (const auto& tr : complete_config(c, ts)) std::cout << to_string(tr, grammar) << "\n";
  std::vector<std::string> forms;
  for (int j = 1; j <= n; ++j) forms.push_back("w" + std::to_string(j));
  std::cout << "\n";
  write_tree(std::cout, ts.to_tree(c, forms));
  return kExitOk;
}

struct FuzzFlags {
  std::string lexicon, system = "ltl", out;
  std::uint64_t seed = 1;
  int episodes = 100, n = 6, steps = 8, jobs = 1;
  bool weighted = false, augment = false;
};

int cmd_fuzz(const FuzzFlags& f) {
  Lexicon lex = read_lexicon(f.lexicon, f.augment);
  require_closed(lex);
  const System sys = parse_system(f.system);
  if (f.episodes < 0) throw InputError("--episodes must be non-negative");
  std::vector<std::string> lines(f.episodes);
  std::atomic<long> failures{0};
  parallel_for(lines.size(), f.jobs, lex, [&](std::size_t k, Grammar& g) {
    TransitionSystem ts(g, sys);
    FuzzOptions opts;
    opts.n = f.n;
    opts.steps = f.steps;
    opts.weighted = f.weighted;
    opts.lexicon_id = f.lexicon;
    Episode e = fuzz_episode(f.seed + k, ts, opts);
    bool typed = check_well_typed(e.tree, lex).ok;
    if (!typed) ++failures;
    json trace = json::array();
    for (const auto& s : e.trace) trace.push_back({{"digest", s.digest}, {"transition", s.text}});
    json j = {{"seed", e.seed},
              {"system", to_string(e.system)},
              {"lexicon", e.lexicon_id},
              {"n", e.n},
              {"random_steps", e.random_steps},
              {"trace", trace},
              {"tree", tree_json(e.tree)},
              {"well_typed", typed}};
    lines[k] = j.dump();
  });
  with_output(f.out, [&](std::ostream& os) {
    for (const auto& l : lines) os << l << "\n";
  });
  if (failures > 0) std::cerr << failures << " episode(s) produced ill-typed trees\n";
  return failures > 0 ? kExitInput : kExitOk;
}

// ---------------------------------------------------------------- lexicon / costs

int cmd_validate_lexicon(const std::string& path) {
  Lexicon lex = load_lexicon_file(path);
  auto rep = validate_closure(lex);
  std::cout << "constants " << lex.constants().size() << "\n";
  std::cout << "omega " << lex.omega().size() << "\n";
  for (const auto& v : rep.violations) std::cout << "violation " << v.assumption << " " << v.witness << "\n";
  std::cout << (rep.closed() ? "closed" : "not closed") << "\n";
  return rep.closed() ? kExitOk : kExitInput;
}

int cmd_augment_lexicon(const std::string& path, const std::string& out) {
  Lexicon lex = augment_closure(load_lexicon_file(path));
  with_output(out, [&](std::ostream& os) { write_lexicon(os, lex); });
  return kExitOk;
}

struct GenFlags {
  std::string lexicon, out, gold;
  std::uint64_t seed = 1;
  int n = 6, count = 1;
  double lo = 0, hi = 1;
  bool augment = false;
};

int cmd_gen_costs(const GenFlags& f) {
  Lexicon lex = read_lexicon(f.lexicon, f.augment);
  std::vector<SentenceCosts> out;
  if (!f.gold.empty()) {
    for (const auto& rec : read_tree_file(f.gold)) {
      if (!rec.tree) throw InputError("sentence " + rec.id + " has no tree");
      out.push_back(gold_zero_costs(*rec.tree, lex, rec.id));
    }
  } else {
    SyntheticParams p{f.lo, f.hi};
    for (int k = 0; k < f.count; ++k) out.push_back(gen_synthetic(f.seed + k, f.n, lex, p));
  }
  with_output(f.out, [&](std::ostream& os) { write_costs(os, out); });
  return kExitOk;
}

// ---------------------------------------------------------------- bench

struct BenchFlags {
  std::string costs, lexicon, json_out;
  std::vector<std::string> decoders = {"chart", "astar", "ltf", "ltl"};
  std::vector<std::string> heuristics = {"trivial", "supertag", "edge", "ignore-aware"};
  int repeat = 3, k_tags = 6;
  bool augment = false;
};

int cmd_bench(const BenchFlags& f) {
  if (f.repeat < 1) throw InputError("--repeat must be at least 1");
  Lexicon lex = read_lexicon(f.lexicon, f.augment);
  auto sentences = load_costs_file(f.costs);
  Grammar grammar(lex);
  struct Config {
    std::string decoder, variant;
  };
  std::vector<Config> configs;
  for (const auto& d : f.decoders) {
    if (d == "astar") {
      for (const auto& h : f.heuristics) configs.push_back({d, h});
    } else if (d == "chart" || d == "ltf" || d == "ltl") {
      configs.push_back({d, d == "chart" ? "-" : "greedy"});
    } else {
      throw InputError("unknown decoder '" + d + "'");
    }
  }
  for (const auto& c : configs) {
    if (c.decoder == "astar") parse_heuristic(c.variant);
    if (c.decoder == "ltf" || c.decoder == "ltl") require_closed(lex);
  }
  json rows = json::array();
  long tokens = 0;
  for (const auto& s : sentences) tokens += s.n;
  for (const auto& c : configs) {
    std::vector<double> times;
    std::size_t work = 0;
    double cost_sum = 0;
    for (int r = 0; r < f.repeat; ++r) {
      work = 0;
      cost_sum = 0;
      auto start = std::chrono::steady_clock::now();
      for (const auto& s : sentences) {
        if (c.decoder == "chart") {
          auto res = chart_parse(s, grammar, f.k_tags);
          work += res.stats.items;
          cost_sum += res.cost;
        } else if (c.decoder == "astar") {
          AstarOptions o;
          o.heuristic = parse_heuristic(c.variant);
          o.k_tags = f.k_tags;
          auto res = astar_parse(s, grammar, o);
          work += res.stats.dequeued;
          cost_sum += res.cost;
        } else {
          DecodeOptions o;
          o.system = parse_system(c.decoder);
          auto res = decode(s, grammar, o);
          work += res.transitions.size();
          cost_sum += res.cost;
        }
      }
      times.push_back(ms(std::chrono::steady_clock::now() - start));
    }
    std::sort(times.begin(), times.end());
    double median = times[times.size() / 2];
    rows.push_back({{"decoder", c.decoder},
                    {"variant", c.variant},
                    {"sentences", sentences.size()},
                    {"work", work},
                    {"total_cost", cost_sum},
                    {"median_ms", median},
                    {"tokens_per_sec", median > 0 ? tokens / (median / 1000.0) : 0.0}});
  }
  std::cout << std::left << std::setw(8) << "decoder" << std::setw(14) << "variant" << std::right << std::setw(10)
            << "work" << std::setw(14) << "total_cost" << std::setw(12) << "median_ms" << std::setw(14)
            << "tokens/sec" << "\n";
  for (const auto& r : rows) {
    std::cout << std::left << std::setw(8) << r["decoder"].get<std::string>() << std::setw(14)
              << r["variant"].get<std::string>() << std::right << std::setw(10) << r["work"].get<std::size_t>()
              << std::setw(14) << std::fixed << std::setprecision(4) << r["total_cost"].get<double>()
              << std::setw(12) << std::setprecision(3) << r["median_ms"].get<double>() << std::setw(14)
              << std::setprecision(1) << r["tokens_per_sec"].get<double>() << "\n";
  }
  json report = {{"repeat", f.repeat}, {"tokens", tokens}, {"rows", rows}};
  if (!f.json_out.empty()) with_output(f.json_out, [&](std::ostream& os) { os << report.dump(2) << "\n"; });
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AM dependency parsing toolkit: projective chart, A*, and LTF/LTL transition decoders"};
  app.require_subcommand(1);
  int code = kExitOk;

  std::string tree, lex, out, system = "ltl", prefix;
  bool trace = false, augment = false;
  int n = 6;

  auto* evaluate = app.add_subcommand("evaluate", "Evaluate AM dependency trees to graphs");
  evaluate->add_option("--tree", tree, "Tree file")->required();
  evaluate->add_option("--lexicon", lex, "Lexicon file")->required();
  evaluate->add_option("-o,--out", out, "Output graph file (default stdout)");
  evaluate->callback([&] { code = cmd_evaluate(tree, lex, out); });

  ParseFlags pf;
  auto* parse = app.add_subcommand("parse", "Decode cost files into trees");
  parse->add_option("--costs", pf.costs, "Cost file")->required();
  parse->add_option("--lexicon", pf.lexicon, "Lexicon file")->required();
  parse->add_option("--decoder", pf.decoder, "chart | astar | ltf | ltl")->capture_default_str();
  parse->add_option("--heuristic", pf.heuristic, "trivial | supertag | edge | ignore-aware")->capture_default_str();
  parse->add_option("--k-supertags", pf.k_tags, "Init items per token (chart, astar)")->capture_default_str();
  parse->add_option("--dequeue-limit", pf.dequeue_limit, "A* dequeue budget")->capture_default_str();
  parse->add_option("--beam", pf.beam, "Beam size for ltf/ltl (1 = greedy)")->capture_default_str();
  parse->add_flag("--trace", pf.trace, "Print transition tables to stderr (ltf, ltl)");
  parse->add_flag("--no-type-check", pf.no_type_check, "Skip type constraints (ltl only)");
  parse->add_flag("--augment", pf.augment, "Close the lexicon before decoding");
  parse->add_option("--jobs", pf.jobs, "Worker threads")->capture_default_str();
  parse->add_option("-o,--out", pf.out, "Output tree file (default stdout)");
  parse->add_option("--report", pf.report, "JSON report file (default stderr)");
  parse->callback([&] { code = cmd_parse(pf); });

  auto* oracle = app.add_subcommand("oracle", "Print the transition sequence that builds each tree");
  oracle->add_option("--tree", tree, "Tree file")->required();
  oracle->add_option("--lexicon", lex, "Lexicon file")->required();
  oracle->add_option("--system", system, "ltf | ltl")->capture_default_str();
  oracle->add_flag("--trace", trace, "Print the full configuration table");
  oracle->add_flag("--augment", augment, "Close the lexicon first");
  oracle->callback([&] { code = cmd_oracle(tree, lex, system, trace, augment); });

  auto* complete = app.add_subcommand("complete", "Complete a transition prefix to a goal configuration");
  complete->add_option("--lexicon", lex, "Lexicon file")->required();
  complete->add_option("--system", system, "ltf | ltl")->capture_default_str();
  complete->add_option("--n", n, "Sentence length")->capture_default_str();
  complete->add_option("--prefix", prefix, "Transitions separated by ';'");
  complete->add_flag("--augment", augment, "Close the lexicon first");
  complete->callback([&] { code = cmd_complete(lex, system, n, prefix, augment); });

  FuzzFlags ff;
  auto* fuzz = app.add_subcommand("fuzz", "Random legal walks completed to goals, as JSON lines");
  fuzz->add_option("--lexicon", ff.lexicon, "Lexicon file")->required();
  fuzz->add_option("--system", ff.system, "ltf | ltl")->capture_default_str();
  fuzz->add_option("--episodes", ff.episodes, "Episode count")->capture_default_str();
  fuzz->add_option("--seed", ff.seed, "Seed of the first episode")->capture_default_str();
  fuzz->add_option("--n", ff.n, "Sentence length")->capture_default_str();
  fuzz->add_option("--steps", ff.steps, "Random transitions before completion")->capture_default_str();
  fuzz->add_flag("--weighted", ff.weighted, "Prefer Apply transitions");
  fuzz->add_flag("--augment", ff.augment, "Close the lexicon first");
  fuzz->add_option("--jobs", ff.jobs, "Worker threads")->capture_default_str();
  fuzz->add_option("-o,--out", ff.out, "Output file (default stdout)");
  fuzz->callback([&] { code = cmd_fuzz(ff); });

  auto* validate = app.add_subcommand("validate-lexicon", "Check the closure assumptions");
  validate->add_option("--lexicon", lex, "Lexicon file")->required();
  validate->callback([&] { code = cmd_validate_lexicon(lex); });

  auto* augment_cmd = app.add_subcommand("augment-lexicon", "Write the closed lexicon");
  augment_cmd->add_option("--lexicon", lex, "Lexicon file")->required();
  augment_cmd->add_option("-o,--out", out, "Output lexicon file (default stdout)");
  augment_cmd->callback([&] { code = cmd_augment_lexicon(lex, out); });

  GenFlags gf;
  auto* gen = app.add_subcommand("gen-costs", "Write synthetic or gold-zero cost files");
  gen->add_option("--lexicon", gf.lexicon, "Lexicon file")->required();
  gen->add_option("--n", gf.n, "Sentence length")->capture_default_str();
  gen->add_option("--count", gf.count, "Sentence count")->capture_default_str();
  gen->add_option("--seed", gf.seed, "Seed of the first sentence")->capture_default_str();
  gen->add_option("--lo", gf.lo, "Lowest cost")->capture_default_str();
  gen->add_option("--hi", gf.hi, "Highest cost")->capture_default_str();
  gen->add_option("--gold", gf.gold, "Tree file: 0 for gold decisions, 1 otherwise");
  gen->add_flag("--augment", gf.augment, "Close the lexicon first");
  gen->add_option("-o,--out", gf.out, "Output cost file (default stdout)");
  gen->callback([&] { code = cmd_gen_costs(gf); });

  BenchFlags bf;
  auto* bench = app.add_subcommand("bench", "Time every decoder configuration on a cost file");
  bench->add_option("--costs", bf.costs, "Cost file")->required();
  bench->add_option("--lexicon", bf.lexicon, "Lexicon file")->required();
  bench->add_option("--decoders", bf.decoders, "Decoders to run")->delimiter(',')->capture_default_str();
  bench->add_option("--heuristics", bf.heuristics, "A* heuristics to run")->delimiter(',')->capture_default_str();
  bench->add_option("--repeat", bf.repeat, "Repeats; the median is reported")->capture_default_str();
  bench->add_option("--k-supertags", bf.k_tags, "Init items per token")->capture_default_str();
  bench->add_flag("--augment", bf.augment, "Close the lexicon first");
  bench->add_option("--json", bf.json_out, "JSON report file");
  bench->callback([&] { code = cmd_bench(bf); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return code;
}
