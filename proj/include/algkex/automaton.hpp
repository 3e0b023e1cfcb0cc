#pragma once

#include <cstddef>
#include <vector>

#include "algkex/grammar.hpp"

namespace algkex {

/// Nondeterministic finite automaton over tokens, used as the rational
/// (finitely generated subgroup) baseline.
class FSAutomaton {
public:
    struct Transition {
        std::size_t from;
        Token label;
        std::size_t to;
    };

    /// Throws ValidationError if a state index is out of range or no final
    /// state is reachable from the initial one.
    FSAutomaton(std::size_t num_states, std::size_t initial, std::vector<std::size_t> finals,
                std::vector<Transition> transitions);

    std::size_t num_states() const { return num_states_; }
    std::size_t initial() const { return initial_; }
    bool is_final(std::size_t s) const { return final_[s]; }
    const std::vector<Transition>& transitions() const { return transitions_; }
    const std::vector<std::size_t>& outgoing(std::size_t s) const { return outgoing_[s]; }

    bool accepts(const GroupWord& w) const;

private:
    std::size_t num_states_;
    std::size_t initial_;
    std::vector<bool> final_;
    std::vector<Transition> transitions_;
    std::vector<std::vector<std::size_t>> outgoing_;
};

/// Hub state 0 (initial and final) with one loop per generator word and one
/// per inverse word; the language is all products of generators.
FSAutomaton fsa_subgroup(const std::vector<GroupWord>& gens);

/// Seeded random walk that stops only in final states. Until depth_cap
/// steps, stopping competes uniformly with the outgoing edges; afterwards a
/// final state stops with probability terminal_bias.
GroupWord fsa_sample(const FSAutomaton& fsa, const SamplePolicy& policy);

}  // namespace algkex
