#ifndef AMPARSE_TRANSITIONS_HPP
#define AMPARSE_TRANSITIONS_HPP

#include <optional>
#include <string>
#include <vector>

#include "amparse/costs.hpp"
#include "amparse/dep_tree.hpp"
#include "amparse/grammar.hpp"

namespace amparse {

enum class System { LTF, LTL };

System parse_system(const std::string& name);
std::string to_string(System s);

struct Transition {
  enum class Kind { Init, Apply, Modify, Choose, Finish, Pop };

  Kind kind = Kind::Pop;
  int token = 0;        // Init, Apply, Modify
  int source = -1;      // source bit: Apply, Modify
  TypeId type = -1;     // Choose
  int constant = -1;    // Choose, Finish

  static Transition init(int i) { return {Kind::Init, i, -1, -1, -1}; }
  static Transition apply(int bit, int j) { return {Kind::Apply, j, bit, -1, -1}; }
  static Transition modify(int bit, int j) { return {Kind::Modify, j, bit, -1, -1}; }
  static Transition choose(TypeId t, int g) { return {Kind::Choose, 0, -1, t, g}; }
  static Transition finish(int g) { return {Kind::Finish, 0, -1, -1, g}; }
  static Transition pop() { return {Kind::Pop, 0, -1, -1, -1}; }

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// "Init(3)", "Apply(s,2)", "Modify(m,6)", "Choose([s],sleep)", "Pop", "Finish(want)".
std::string to_string(const Transition& tr, Grammar& g);
Transition parse_transition(const std::string& text, Grammar& g);

struct IncomingEdge {
  int head = -1;  // -1: no incoming edge; 0: ROOT
  EdgeLabel::Kind kind = EdgeLabel::Kind::Root;
  int source = -1;
  int created = -1;  // creation order among all edges
};

/// Parser state <E, T, A, G, S>. Vectors are indexed by token 1..n; T(i) is
/// undefined when empty, A(i) when has_A[i] is false, G(i) when G[i] < 0.
struct Configuration {
  int n = 0;
  std::vector<IncomingEdge> E;
  std::vector<std::vector<TypeId>> T;
  std::vector<SourceMask> A;
  std::vector<char> has_A;
  std::vector<int> G;
  std::vector<int> S;
  int edges_created = 0;

  bool initial() const { return edges_created == 0; }
  bool headless(int j) const { return E[j].head < 0; }
  int active() const { return S.empty() ? 0 : S.back(); }
};

struct OwedWitness {
  int count = 0;
  TypeId lexical = -1;
  TypeId term = -1;
};

class TransitionSystem {
 public:
  TransitionSystem(Grammar& grammar, System system, bool type_check = true);

  Grammar& grammar() { return *grammar_; }
  System system() const { return system_; }
  bool type_check() const { return type_check_; }

  Configuration initial(int n) const;

  /// Tokens without an incoming edge.
  int W(const Configuration& c) const;
  /// O_c(i); 0 when T(i) or A(i) is undefined. The minimum ranges over
  /// lexical types whose apply set covers A(i).
  int owed(const Configuration& c, int i);
  /// The minimizing (lambda, t), ties broken by their serializations.
  std::optional<OwedWitness> owed_witness(const Configuration& c, int i);
  int O(const Configuration& c);

  std::vector<Transition> legal(const Configuration& c);
  bool is_legal(const Configuration& c, const Transition& tr);
  /// Throws std::invalid_argument if `tr` is not legal in `c`.
  void apply(Configuration& c, const Transition& tr);
  void apply_unchecked(Configuration& c, const Transition& tr);

  /// Empty stack and some constant assigned.
  bool is_goal(const Configuration& c) const;
  /// The full goal definition, checked token by token.
  bool is_full_goal(const Configuration& c);

  /// Throws std::invalid_argument unless is_goal(c).
  AmDepTree to_tree(const Configuration& c, const std::vector<std::string>& forms) const;

  /// Canonical text of the configuration, edge creation order included;
  /// equal iff the states are equal.
  std::string canonical(const Configuration& c);
  /// 16 hex digits of a 64-bit FNV-1a hash of canonical(c).
  std::string digest(const Configuration& c);

 private:
  EdgeLabel label_of(const IncomingEdge& e) const;
  std::vector<TypeId> mod_child_types(TypeId head_lex, int bit);

  Grammar* grammar_;
  System system_;
  bool type_check_;
};

/// Static transition scores: Init = ROOT edge, Apply/Modify = edge cost,
/// Choose/Finish = supertag cost, Pop = 0.
Cost score_transition(const Configuration& c, const Transition& tr, const SentenceCosts& costs, Grammar& g);

/// Total order used to break score ties.
bool transition_before(const Transition& a, const Transition& b, Grammar& g);

struct DecodeOptions {
  System system = System::LTL;
  int beam = 1;  // 1 = greedy
  bool type_check = true;
};

struct TransitionDecodeResult {
  AmDepTree tree;
  Cost cost = kInf;
  std::vector<Transition> transitions;
};

TransitionDecodeResult decode(const SentenceCosts& costs, Grammar& grammar, const DecodeOptions& opts = {});

/// Row-per-step table: step, E, T, A and G changes, full stack, transition.
std::string trace_table(TransitionSystem& ts, int n, const std::vector<std::string>& forms,
                        const std::vector<Transition>& transitions);

}  // namespace amparse

#endif  // AMPARSE_TRANSITIONS_HPP
