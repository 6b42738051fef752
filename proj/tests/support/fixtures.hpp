#ifndef AMPARSE_TESTS_FIXTURES_HPP
#define AMPARSE_TESTS_FIXTURES_HPP

#include <string>

#include "amparse/as_graph.hpp"
#include "amparse/costs.hpp"
#include "amparse/dep_tree.hpp"
#include "amparse/lexicon.hpp"

namespace amparse::testing {

inline std::string data_path(const std::string& name) { return std::string(AMPARSE_TEST_DATA) + "/" + name; }

Lexicon fixture_lexicon();
AmDepTree fig1a_tree();
AsGraph fig1b_graph();
SentenceCosts gold_zero_fixture();

/// Desk lexicon passed through augment_closure.
const Lexicon& augmented_desk();

}  // namespace amparse::testing

#endif  // AMPARSE_TESTS_FIXTURES_HPP
