#include "algkex/cyk.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace algkex {

namespace {

struct Sym {
    bool terminal;
    std::size_t id;  // nonterminal id or token code

    friend auto operator<=>(const Sym&, const Sym&) = default;
};

struct WorkRule {
    std::size_t lhs;
    std::vector<Sym> rhs;

    friend auto operator<=>(const WorkRule&, const WorkRule&) = default;
};

}  // namespace

CnfGrammar CnfGrammar::from(const CFGrammar& g) {
    std::size_t count = g.num_nonterminals();
    std::vector<WorkRule> rules;
    for (const Rule& r : g.rules()) {
        WorkRule w{r.lhs, {}};
        for (const Symbol& s : r.rhs)
            w.rhs.push_back(s.is_terminal() ? Sym{true, s.token.code()} : Sym{false, s.nonterminal});
        rules.push_back(std::move(w));
    }

    // TERM: terminals inside rules of length >= 2 get their own nonterminal
    std::vector<std::pair<std::uint32_t, std::size_t>> term_nt;
    auto nt_for_terminal = [&](std::size_t code) {
        for (const auto& [c, id] : term_nt)
            if (c == code) return id;
        term_nt.emplace_back(static_cast<std::uint32_t>(code), count);
        return count++;
    };
    for (auto& r : rules) {
        if (r.rhs.size() < 2) continue;
        for (auto& s : r.rhs)
            if (s.terminal) s = Sym{false, nt_for_terminal(s.id)};
    }
    for (const auto& [code, id] : term_nt) rules.push_back({id, {Sym{true, code}}});

    // BIN: A -> X1 ... Xk becomes a right-leaning chain
    std::vector<WorkRule> binarized;
    for (auto& r : rules) {
        if (r.rhs.size() <= 2) {
            binarized.push_back(std::move(r));
            continue;
        }
        std::size_t lhs = r.lhs;
        for (std::size_t i = 0; i + 2 < r.rhs.size(); ++i) {
            const std::size_t next = count++;
            binarized.push_back({lhs, {r.rhs[i], Sym{false, next}}});
            lhs = next;
        }
        binarized.push_back({lhs, {r.rhs[r.rhs.size() - 2], r.rhs.back()}});
    }

    // DEL: nullable set, then expand optional symbols in rules of length 2
    std::vector<bool> nullable(count, false);
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& r : binarized) {
            if (nullable[r.lhs]) continue;
            if (std::all_of(r.rhs.begin(), r.rhs.end(),
                            [&](const Sym& s) { return !s.terminal && nullable[s.id]; })) {
                nullable[r.lhs] = true;
                changed = true;
            }
        }
    }
    std::set<WorkRule> nonempty;
    for (const auto& r : binarized) {
        if (r.rhs.empty()) continue;
        nonempty.insert(r);
        if (r.rhs.size() == 2) {
            if (!r.rhs[0].terminal && nullable[r.rhs[0].id]) nonempty.insert({r.lhs, {r.rhs[1]}});
            if (!r.rhs[1].terminal && nullable[r.rhs[1].id]) nonempty.insert({r.lhs, {r.rhs[0]}});
        }
    }

    // UNIT: A =>* B by unit rules; A inherits every non-unit rule of B
    std::vector<std::vector<bool>> reach(count, std::vector<bool>(count, false));
    for (std::size_t a = 0; a < count; ++a) reach[a][a] = true;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& r : nonempty) {
            if (r.rhs.size() != 1 || r.rhs[0].terminal) continue;
            const std::size_t b = r.rhs[0].id;
            for (std::size_t a = 0; a < count; ++a) {
                if (!reach[a][r.lhs]) continue;
                for (std::size_t c = 0; c < count; ++c) {
                    if (reach[b][c] && !reach[a][c]) {
                        reach[a][c] = true;
                        changed = true;
                    }
                }
            }
        }
    }

    CnfGrammar out;
    out.num_nonterminals = count;
    out.start = g.start();
    out.accepts_empty = nullable[g.start()];
    std::set<std::tuple<std::size_t, std::size_t, std::size_t>> bins;
    std::set<std::pair<std::size_t, std::uint32_t>> terms;
    for (std::size_t a = 0; a < count; ++a) {
        for (const auto& r : nonempty) {
            if (!reach[a][r.lhs]) continue;
            if (r.rhs.size() == 2)
                bins.insert({a, r.rhs[0].id, r.rhs[1].id});
            else if (r.rhs[0].terminal)
                terms.insert({a, static_cast<std::uint32_t>(r.rhs[0].id)});
        }
    }
    for (const auto& [a, b, c] : bins) out.binary.push_back({a, b, c});
    for (const auto& [a, code] : terms) out.terminal.push_back({a, code});
    return out;
}

CykRecognizer::CykRecognizer(const CFGrammar& g)
    : cnf_(CnfGrammar::from(g)), words_per_cell_((cnf_.num_nonterminals + 63) / 64) {
    by_left_.assign(cnf_.num_nonterminals, {});
    for (const auto& b : cnf_.binary) by_left_[b.left].emplace_back(b.right, b.lhs);
    for (const auto& t : cnf_.terminal) {
        if (by_code_.size() <= t.code) by_code_.resize(t.code + 1);
        by_code_[t.code].push_back(t.lhs);
    }
}

bool CykRecognizer::accepts(const GroupWord& w) const {
    const std::size_t n = w.size();
    if (n == 0) return cnf_.accepts_empty;
    const std::size_t words = words_per_cell_;
    // cell(i, len): nonterminals deriving w[i, i + len)
    std::vector<std::uint64_t> table(n * (n + 1) * words, 0);
    auto cell = [&](std::size_t i, std::size_t len) { return &table[(i * (n + 1) + len) * words]; };
    auto test = [](const std::uint64_t* c, std::size_t a) { return (c[a / 64] >> (a % 64)) & 1U; };
    auto set = [](std::uint64_t* c, std::size_t a) { c[a / 64] |= std::uint64_t{1} << (a % 64); };

    for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t code = w[i].code();
        if (code >= by_code_.size()) return false;
        for (std::size_t a : by_code_[code]) set(cell(i, 1), a);
    }
    for (std::size_t len = 2; len <= n; ++len) {
        for (std::size_t i = 0; i + len <= n; ++i) {
            std::uint64_t* target = cell(i, len);
            for (std::size_t split = 1; split < len; ++split) {
                const std::uint64_t* left = cell(i, split);
                const std::uint64_t* right = cell(i + split, len - split);
                for (std::size_t wi = 0; wi < words; ++wi) {
                    std::uint64_t bits = left[wi];
                    while (bits) {
                        const std::size_t b = wi * 64 + static_cast<std::size_t>(__builtin_ctzll(bits));
                        bits &= bits - 1;
                        for (const auto& [c, a] : by_left_[b])
                            if (test(right, c)) set(target, a);
                    }
                }
            }
        }
    }
    return test(cell(0, n), cnf_.start);
}

bool cfg_membership(const GroupWord& w, const CFGrammar& g) {
    return CykRecognizer(g).accepts(w);
}

}  // namespace algkex
