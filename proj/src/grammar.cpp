#include "algkex/grammar.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "algkex/errors.hpp"

namespace algkex {

namespace {

constexpr std::size_t kInfinite = std::numeric_limits<std::size_t>::max();

std::string fresh_name(std::string base, const std::set<std::string>& taken) {
    while (taken.count(base)) base += "_";
    return base;
}

// Copies the rules of g into out with nonterminal ids shifted by offset.
void append_shifted(const CFGrammar& g, std::size_t offset, std::vector<Rule>& out) {
    for (const Rule& r : g.rules()) {
        Rule copy{r.lhs + offset, r.rhs};
        for (Symbol& s : copy.rhs)
            if (!s.is_terminal()) s.nonterminal += offset;
        out.push_back(std::move(copy));
    }
}

}  // namespace

std::vector<bool> productive_set(std::size_t num_nonterminals, std::span<const Rule> rules) {
    std::vector<bool> productive(num_nonterminals, false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Rule& r : rules) {
            if (productive[r.lhs]) continue;
            const bool all = std::all_of(r.rhs.begin(), r.rhs.end(), [&](const Symbol& s) {
                return s.is_terminal() || productive[s.nonterminal];
            });
            if (all) {
                productive[r.lhs] = true;
                changed = true;
            }
        }
    }
    return productive;
}

CFGrammar::CFGrammar(std::vector<std::string> nonterminals, std::size_t start,
                     std::vector<Rule> rules)
    : names_(std::move(nonterminals)), start_(start), rules_(std::move(rules)) {
    if (names_.empty()) throw ValidationError("grammar has no nonterminals");
    if (start_ >= names_.size()) throw ValidationError("start symbol is not a nonterminal");
    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (n.empty()) throw ValidationError("empty nonterminal name");
        if (Token::is_token(n)) throw ValidationError("nonterminal name '" + n + "' is a token");
        if (!seen.insert(n).second) throw ValidationError("duplicate nonterminal '" + n + "'");
    }
    for (const Rule& r : rules_) {
        if (r.lhs >= names_.size()) throw ValidationError("rule lhs is not a nonterminal");
        for (const Symbol& s : r.rhs) {
            if (!s.is_terminal() && s.nonterminal >= names_.size())
                throw ValidationError("rule rhs references an undeclared nonterminal");
            if (s.is_terminal() && !s.token.is_stable() && s.token.index == 0)
                throw ValidationError("invalid terminal token");
        }
    }
    if (!productive_set(names_.size(), rules_)[start_])
        throw ValidationError("grammar language is empty (start symbol '" + names_[start_] +
                              "' is unproductive)");
}

CFGrammar CFGrammar::from_named(std::vector<std::string> nonterminals, const std::string& start,
                                const std::vector<NamedRule>& rules) {
    std::map<std::string, std::size_t> ids;
    for (std::size_t i = 0; i < nonterminals.size(); ++i) ids.emplace(nonterminals[i], i);
    auto lookup = [&](const std::string& name) -> std::optional<std::size_t> {
        auto it = ids.find(name);
        if (it == ids.end()) return std::nullopt;
        return it->second;
    };
    auto start_id = lookup(start);
    if (!start_id) throw ValidationError("start symbol '" + start + "' is not declared");
    std::vector<Rule> out;
    out.reserve(rules.size());
    for (const NamedRule& nr : rules) {
        auto lhs = lookup(nr.lhs);
        if (!lhs) throw ValidationError("rule lhs '" + nr.lhs + "' is not declared");
        Rule r{*lhs, {}};
        for (const auto& s : nr.rhs) {
            if (auto id = lookup(s))
                r.rhs.push_back(Symbol::nt(*id));
            else
                r.rhs.push_back(Symbol::term(Token::parse(s)));
        }
        out.push_back(std::move(r));
    }
    return CFGrammar(std::move(nonterminals), *start_id, std::move(out));
}

std::optional<std::size_t> CFGrammar::find(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
}

std::set<Token> CFGrammar::terminals() const {
    std::set<Token> out;
    for (const Rule& r : rules_)
        for (const Symbol& s : r.rhs)
            if (s.is_terminal()) out.insert(s.token);
    return out;
}

std::vector<NamedRule> CFGrammar::named_rules() const {
    std::vector<NamedRule> out;
    out.reserve(rules_.size());
    for (const Rule& r : rules_) {
        NamedRule nr{names_[r.lhs], {}};
        for (const Symbol& s : r.rhs)
            nr.rhs.push_back(s.is_terminal() ? s.token.str() : names_[s.nonterminal]);
        out.push_back(std::move(nr));
    }
    return out;
}

std::set<std::string> productive_check(const CFGrammar& g) {
    const auto flags = productive_set(g.num_nonterminals(), g.rules());
    std::set<std::string> out;
    for (std::size_t i = 0; i < flags.size(); ++i)
        if (flags[i]) out.insert(g.name(i));
    return out;
}

SubsetSpec::SubsetSpec(CFGrammar grammar, GroupParams params)
    : grammar_(std::move(grammar)), params_(std::move(params)) {
    for (const Token& tok : grammar_.terminals())
        if (!params_.valid_token(tok))
            throw ValidationError("grammar terminal '" + tok.str() + "' exceeds dimension " +
                                  std::to_string(params_.dim()));
}

void SamplePolicy::validate() const {
    if (max_length < 1) throw ValidationError("max_length must be at least 1");
    if (depth_cap < 1) throw ValidationError("depth_cap must be at least 1");
    if (!(terminal_bias > 0.0 && terminal_bias <= 1.0))
        throw ValidationError("terminal_bias must lie in (0, 1]");
}

GrammarSampler::GrammarSampler(const CFGrammar& grammar) : grammar_(grammar) {
    const std::size_t n = grammar_.num_nonterminals();
    const auto& rules = grammar_.rules();
    height_.assign(n, kInfinite);
    std::vector<std::size_t> shortest_len(n, kInfinite);
    shortest_.assign(n, {});

    auto rule_height = [&](const Rule& r) {
        std::size_t h = 0;
        for (const Symbol& s : r.rhs) {
            if (s.is_terminal()) continue;
            if (height_[s.nonterminal] == kInfinite) return kInfinite;
            h = std::max(h, height_[s.nonterminal]);
        }
        return h + 1;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (const Rule& r : rules) {
            const std::size_t h = rule_height(r);
            if (h < height_[r.lhs]) {
                height_[r.lhs] = h;
                changed = true;
            }
            // shortest yields: sum of lengths, strict improvement only
            std::size_t len = 0;
            bool finite = true;
            for (const Symbol& s : r.rhs) {
                if (s.is_terminal()) {
                    ++len;
                } else if (shortest_len[s.nonterminal] == kInfinite) {
                    finite = false;
                    break;
                } else {
                    len += shortest_len[s.nonterminal];
                }
            }
            if (finite && len < shortest_len[r.lhs]) {
                GroupWord w;
                w.reserve(len);
                for (const Symbol& s : r.rhs) {
                    if (s.is_terminal())
                        w.push_back(s.token);
                    else
                        w.insert(w.end(), shortest_[s.nonterminal].begin(),
                                 shortest_[s.nonterminal].end());
                }
                shortest_len[r.lhs] = len;
                shortest_[r.lhs] = std::move(w);
                changed = true;
            }
        }
    }

    eligible_.assign(n, {});
    boosted_.assign(n, {});
    for (std::size_t i = 0; i < rules.size(); ++i) {
        const std::size_t h = rule_height(rules[i]);
        if (h == kInfinite) continue;
        eligible_[rules[i].lhs].push_back(i);
        if (h == height_[rules[i].lhs]) boosted_[rules[i].lhs].push_back(i);
    }
}

bool GrammarSampler::attempt(Rng& rng, const SamplePolicy& policy, GroupWord& out) const {
    out.clear();
    struct Pending {
        Symbol symbol;
        std::size_t depth;
    };
    std::vector<Pending> stack{{Symbol::nt(grammar_.start()), 0}};
    std::size_t pending_terminals = 0;
    std::size_t steps = 0;
    const std::size_t step_cap = 64 * policy.max_length + 4096;
    const auto& rules = grammar_.rules();

    while (!stack.empty()) {
        Pending top = std::move(stack.back());
        stack.pop_back();
        if (top.symbol.is_terminal()) {
            out.push_back(top.symbol.token);
            --pending_terminals;
            continue;
        }
        if (++steps > step_cap) return false;
        const std::size_t nt = top.symbol.nonterminal;
        const auto& choices = (top.depth > policy.depth_cap && rng.bernoulli(policy.terminal_bias))
                                  ? boosted_[nt]
                                  : eligible_[nt];
        const Rule& rule = rules[choices[rng.index(choices.size())]];
        for (auto it = rule.rhs.rbegin(); it != rule.rhs.rend(); ++it) {
            stack.push_back({*it, top.depth + 1});
            if (it->is_terminal()) ++pending_terminals;
        }
        if (out.size() + pending_terminals > policy.max_length) return false;
    }
    return out.size() <= policy.max_length;
}

GroupWord GrammarSampler::sample(const SamplePolicy& policy) const {
    policy.validate();
    Rng rng(policy.seed);
    GroupWord out;
    for (std::size_t i = 0; i < kSampleAttempts; ++i)
        if (attempt(rng, policy, out)) return out;
    throw BudgetExhausted("no derivation within max_length " + std::to_string(policy.max_length) +
                          " after " + std::to_string(kSampleAttempts) + " attempts");
}

GroupWord cfg_sample(const CFGrammar& grammar, const SamplePolicy& policy) {
    return GrammarSampler(grammar).sample(policy);
}

GroupWord cfg_sample(const SubsetSpec& spec, const SamplePolicy& policy) {
    return cfg_sample(spec.grammar(), policy);
}

CFGrammar cfg_invert(const CFGrammar& g) {
    std::vector<Rule> rules;
    rules.reserve(g.rules().size());
    for (const Rule& r : g.rules()) {
        Rule inv{r.lhs, {}};
        for (auto it = r.rhs.rbegin(); it != r.rhs.rend(); ++it)
            inv.rhs.push_back(it->is_terminal() ? Symbol::term(it->token.inverted()) : *it);
        rules.push_back(std::move(inv));
    }
    return CFGrammar(g.nonterminals(), g.start(), std::move(rules));
}

CFGrammar cfg_union(const CFGrammar& g1, const CFGrammar& g2) {
    std::vector<std::string> names;
    for (const auto& n : g1.nonterminals()) names.push_back("L_" + n);
    for (const auto& n : g2.nonterminals()) names.push_back("R_" + n);
    const std::string start = fresh_name("U", {names.begin(), names.end()});
    names.insert(names.begin(), start);

    const std::size_t off1 = 1;
    const std::size_t off2 = 1 + g1.num_nonterminals();
    std::vector<Rule> rules{{0, {Symbol::nt(g1.start() + off1)}},
                            {0, {Symbol::nt(g2.start() + off2)}}};
    append_shifted(g1, off1, rules);
    append_shifted(g2, off2, rules);
    return CFGrammar(std::move(names), 0, std::move(rules));
}

CFGrammar cfg_star(const CFGrammar& g) {
    std::vector<std::string> names = g.nonterminals();
    const std::string start = fresh_name("Z", {names.begin(), names.end()});
    names.insert(names.begin(), start);
    std::vector<Rule> rules{{0, {}}, {0, {Symbol::nt(g.start() + 1), Symbol::nt(0)}}};
    append_shifted(g, 1, rules);
    return CFGrammar(std::move(names), 0, std::move(rules));
}

SubsetSpec subgroup_closure(const SubsetSpec& spec) {
    const CFGrammar& g = spec.grammar();
    return SubsetSpec(cfg_star(cfg_union(g, cfg_invert(g))), spec.params());
}

CFGrammar orbit_grammar(const GroupParams& params, const GroupWord& w, OrbitRange range) {
    if (w.empty()) throw ValidationError("orbit grammar needs a nonempty word");
    for (const Token& tok : w)
        if (!params.valid_token(tok)) throw ValidationError("unknown token '" + tok.str() + "'");

    const Symbol t = Symbol::term(Token::stable());
    const Symbol t_inv = Symbol::term(Token::stable(true));
    std::vector<Symbol> body;
    for (const Token& tok : w) body.push_back(Symbol::term(tok));

    if (range == OrbitRange::Naturals) {
        std::vector<Rule> rules{{0, {t_inv, Symbol::nt(0), t}}, {0, body}};
        return CFGrammar({"S"}, 0, std::move(rules));
    }
    // S -> A | B ; A -> t^-1 A t | w ; B -> t B t^-1 | t w t^-1
    std::vector<Symbol> conj{t};
    conj.insert(conj.end(), body.begin(), body.end());
    conj.push_back(t_inv);
    std::vector<Rule> rules{{0, {Symbol::nt(1)}},
                            {0, {Symbol::nt(2)}},
                            {1, {t_inv, Symbol::nt(1), t}},
                            {1, body},
                            {2, {t, Symbol::nt(2), t_inv}},
                            {2, conj}};
    return CFGrammar({"S", "A", "B"}, 0, std::move(rules));
}

SubsetSpec orbit_spec(const GroupParams& params, const GroupWord& w, OrbitRange range) {
    return SubsetSpec(orbit_grammar(params, w, range), params);
}

std::string to_string(OrbitRange range) {
    return range == OrbitRange::Naturals ? "naturals" : "integers";
}

OrbitRange parse_orbit_range(const std::string& text) {
    if (text == "naturals") return OrbitRange::Naturals;
    if (text == "integers") return OrbitRange::Integers;
    throw ValidationError("orbit range must be 'naturals' or 'integers', got '" + text + "'");
}

}  // namespace algkex
