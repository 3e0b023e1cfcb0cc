#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "algkex/group.hpp"
#include "algkex/random.hpp"

namespace algkex {

struct Symbol {
    enum class Kind : std::uint8_t { Nonterminal, Terminal };

    Kind kind = Kind::Terminal;
    std::size_t nonterminal = 0;
    Token token;

    static Symbol nt(std::size_t id) { return Symbol{Kind::Nonterminal, id, {}}; }
    static Symbol term(Token tok) { return Symbol{Kind::Terminal, 0, tok}; }
    bool is_terminal() const { return kind == Kind::Terminal; }

    friend bool operator==(const Symbol&, const Symbol&) = default;
};

struct Rule {
    std::size_t lhs = 0;
    std::vector<Symbol> rhs;  // empty rhs is an epsilon rule

    friend bool operator==(const Rule&, const Rule&) = default;
};

/// Rule in textual form: rhs entries naming a declared nonterminal are
/// nonterminals, everything else must parse as a token.
struct NamedRule {
    std::string lhs;
    std::vector<std::string> rhs;
};

/// Least fixpoint of "some rule has only productive/terminal symbols".
std::vector<bool> productive_set(std::size_t num_nonterminals, std::span<const Rule> rules);

/// Context-free grammar over the token alphabet. Construction rejects
/// undeclared symbols, names that collide with tokens, and grammars whose
/// start symbol derives no terminal word.
class CFGrammar {
public:
    CFGrammar(std::vector<std::string> nonterminals, std::size_t start, std::vector<Rule> rules);
    static CFGrammar from_named(std::vector<std::string> nonterminals, const std::string& start,
                                const std::vector<NamedRule>& rules);

    std::size_t num_nonterminals() const { return names_.size(); }
    const std::vector<std::string>& nonterminals() const { return names_; }
    const std::string& name(std::size_t id) const { return names_[id]; }
    std::optional<std::size_t> find(const std::string& name) const;
    std::size_t start() const { return start_; }
    const std::vector<Rule>& rules() const { return rules_; }

    std::set<Token> terminals() const;
    std::vector<NamedRule> named_rules() const;

    friend bool operator==(const CFGrammar&, const CFGrammar&) = default;

private:
    std::vector<std::string> names_;
    std::size_t start_;
    std::vector<Rule> rules_;
};

/// Names of the productive nonterminals.
std::set<std::string> productive_check(const CFGrammar& g);

/// An algebraic subset: the image of L(grammar) in the group.
class SubsetSpec {
public:
    /// Throws ValidationError if a terminal uses a generator index > m.
    SubsetSpec(CFGrammar grammar, GroupParams params);

    const CFGrammar& grammar() const { return grammar_; }
    const GroupParams& params() const { return params_; }

private:
    CFGrammar grammar_;
    GroupParams params_;
};

struct SamplePolicy {
    std::size_t max_length = 64;
    std::size_t depth_cap = 16;
    double terminal_bias = 0.75;  // in (0, 1]
    std::uint64_t seed = 0;

    /// Throws ValidationError on out-of-range fields.
    void validate() const;
    SamplePolicy with_seed(std::uint64_t s) const {
        SamplePolicy p = *this;
        p.seed = s;
        return p;
    }
};

inline constexpr std::size_t kSampleAttempts = 64;

/// Precomputed tables for repeated seeded sampling from one grammar.
///
/// Derivations are leftmost. Rules are drawn uniformly among those whose
/// symbols are all productive. Past depth_cap, with probability
/// terminal_bias the draw is restricted to the rules of minimal height for
/// the current nonterminal (for nonterminals with a terminal-only rule these
/// are exactly the terminal-only rules), which forces the derivation down.
class GrammarSampler {
public:
    explicit GrammarSampler(const CFGrammar& grammar);

    const CFGrammar& grammar() const { return grammar_; }
    /// Minimal derivation-tree height per nonterminal.
    std::size_t height(std::size_t nonterminal) const { return height_[nonterminal]; }
    /// One shortest terminal word derivable from the nonterminal.
    const GroupWord& shortest_yield(std::size_t nonterminal) const { return shortest_[nonterminal]; }
    /// Indices into grammar().rules() usable for the nonterminal.
    const std::vector<std::size_t>& eligible_rules(std::size_t nonterminal) const {
        return eligible_[nonterminal];
    }

    /// Throws BudgetExhausted after kSampleAttempts over-long derivations.
    GroupWord sample(const SamplePolicy& policy) const;

private:
    bool attempt(Rng& rng, const SamplePolicy& policy, GroupWord& out) const;

    CFGrammar grammar_;
    std::vector<std::size_t> height_;
    std::vector<GroupWord> shortest_;
    std::vector<std::vector<std::size_t>> eligible_;
    std::vector<std::vector<std::size_t>> boosted_;
};

GroupWord cfg_sample(const SubsetSpec& spec, const SamplePolicy& policy);
GroupWord cfg_sample(const CFGrammar& grammar, const SamplePolicy& policy);

/// L(result) = { inverse of w : w in L(g) }.
CFGrammar cfg_invert(const CFGrammar& g);
CFGrammar cfg_union(const CFGrammar& g1, const CFGrammar& g2);
/// Kleene star, including the empty word.
CFGrammar cfg_star(const CFGrammar& g);

/// Grammar for (L u L^-1)*, whose image is the subgroup generated by the
/// image of L.
SubsetSpec subgroup_closure(const SubsetSpec& spec);

enum class OrbitRange { Naturals, Integers };

/// Language { t^-k w t^k } for k >= 0, or for all k in Z.
CFGrammar orbit_grammar(const GroupParams& params, const GroupWord& w, OrbitRange range);
SubsetSpec orbit_spec(const GroupParams& params, const GroupWord& w, OrbitRange range);

std::string to_string(OrbitRange range);
OrbitRange parse_orbit_range(const std::string& text);

}  // namespace algkex
