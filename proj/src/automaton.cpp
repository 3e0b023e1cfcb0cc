#include "algkex/automaton.hpp"

#include <deque>

#include "algkex/errors.hpp"

namespace algkex {

FSAutomaton::FSAutomaton(std::size_t num_states, std::size_t initial,
                         std::vector<std::size_t> finals, std::vector<Transition> transitions)
    : num_states_(num_states),
      initial_(initial),
      final_(num_states, false),
      transitions_(std::move(transitions)),
      outgoing_(num_states) {
    if (initial_ >= num_states_) throw ValidationError("initial state out of range");
    for (std::size_t f : finals) {
        if (f >= num_states_) throw ValidationError("final state out of range");
        final_[f] = true;
    }
    for (std::size_t i = 0; i < transitions_.size(); ++i) {
        const auto& t = transitions_[i];
        if (t.from >= num_states_ || t.to >= num_states_)
            throw ValidationError("transition state out of range");
        if (!t.label.is_stable() && t.label.index == 0) throw ValidationError("invalid label");
        outgoing_[t.from].push_back(i);
    }
    std::vector<bool> seen(num_states_, false);
    std::deque<std::size_t> queue{initial_};
    seen[initial_] = true;
    bool reachable = false;
    while (!queue.empty()) {
        const std::size_t s = queue.front();
        queue.pop_front();
        if (final_[s]) reachable = true;
        for (std::size_t ti : outgoing_[s]) {
            const std::size_t to = transitions_[ti].to;
            if (!seen[to]) {
                seen[to] = true;
                queue.push_back(to);
            }
        }
    }
    if (!reachable) throw ValidationError("automaton accepts no word");
}

bool FSAutomaton::accepts(const GroupWord& w) const {
    std::vector<bool> current(num_states_, false);
    current[initial_] = true;
    for (const Token& tok : w) {
        std::vector<bool> next(num_states_, false);
        for (const auto& t : transitions_)
            if (current[t.from] && t.label == tok) next[t.to] = true;
        current = std::move(next);
    }
    for (std::size_t s = 0; s < num_states_; ++s)
        if (current[s] && final_[s]) return true;
    return false;
}

FSAutomaton fsa_subgroup(const std::vector<GroupWord>& gens) {
    if (gens.empty()) throw ValidationError("fsa_subgroup needs at least one generator");
    std::size_t states = 1;
    std::vector<FSAutomaton::Transition> transitions;
    auto add_loop = [&](const GroupWord& w) {
        if (w.empty()) return;
        std::size_t from = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            const std::size_t to = (i + 1 == w.size()) ? 0 : states++;
            transitions.push_back({from, w[i], to});
            from = to;
        }
    };
    for (const GroupWord& g : gens) {
        add_loop(g);
        add_loop(invert_word(g));
    }
    return FSAutomaton(states, 0, {0}, std::move(transitions));
}

GroupWord fsa_sample(const FSAutomaton& fsa, const SamplePolicy& policy) {
    policy.validate();
    Rng rng(policy.seed);
    for (std::size_t attempt = 0; attempt < kSampleAttempts; ++attempt) {
        GroupWord out;
        std::size_t state = fsa.initial();
        for (std::size_t step = 0;; ++step) {
            const auto& edges = fsa.outgoing(state);
            if (fsa.is_final(state)) {
                const bool stop = step > policy.depth_cap
                                      ? rng.bernoulli(policy.terminal_bias)
                                      : rng.index(edges.size() + 1) == edges.size();
                if (stop || edges.empty()) return out;
            }
            if (edges.empty() || out.size() >= policy.max_length) break;
            const auto& t = fsa.transitions()[edges[rng.index(edges.size())]];
            out.push_back(t.label);
            state = t.to;
        }
    }
    throw BudgetExhausted("no accepted walk within max_length " +
                          std::to_string(policy.max_length));
}

}  // namespace algkex
