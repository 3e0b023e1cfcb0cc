#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "algkex/grammar.hpp"

namespace algkex {

/// Chomsky normal form of L(g) \ {epsilon}, plus a flag for epsilon.
/// Built in the usual order: isolate terminals, binarize, drop epsilon
/// rules via the nullable set, collapse unit chains.
struct CnfGrammar {
    struct Binary {
        std::size_t lhs, left, right;
    };
    struct Terminal {
        std::size_t lhs;
        std::uint32_t code;  // Token::code()
    };

    std::size_t num_nonterminals = 0;
    std::size_t start = 0;
    bool accepts_empty = false;
    std::vector<Binary> binary;
    std::vector<Terminal> terminal;

    static CnfGrammar from(const CFGrammar& g);
};

class CykRecognizer {
public:
    explicit CykRecognizer(const CFGrammar& g);

    const CnfGrammar& cnf() const { return cnf_; }
    bool accepts(const GroupWord& w) const;

private:
    CnfGrammar cnf_;
    std::size_t words_per_cell_;
    // binary rules grouped by left child: (right, lhs)
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> by_left_;
    std::vector<std::vector<std::size_t>> by_code_;
};

/// Language membership w in L(g).
bool cfg_membership(const GroupWord& w, const CFGrammar& g);

}  // namespace algkex
