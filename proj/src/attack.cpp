#include "algkex/attack.hpp"

#include <algorithm>
#include <set>

namespace algkex {

namespace {

using Clock = std::chrono::steady_clock;

Rational power_of_two(unsigned bits) {
    Int x;
    mpz_ui_pow_ui(x.get_mpz_t(), 2, bits);
    return Rational(x);
}

const Rational kStablePenalty = power_of_two(64);

/// Window lattices of B, built on first use.
class BLattices {
public:
    BLattices(const GroupParams& params, const IntVector& gen) : params_(params), gen_(gen) {}

    const OrbitLattice& at(std::size_t window) {
        auto it = cache_.find(window);
        if (it == cache_.end()) it = cache_.emplace(window, OrbitLattice(params_, {gen_}, window)).first;
        return it->second;
    }

private:
    const GroupParams& params_;
    IntVector gen_;
    std::map<std::size_t, OrbitLattice> cache_;
};

// b = w^-1 a^-1 target
GroupElement b_candidate(const GroupParams& g, const GroupElement& w_inv, const GroupElement& a,
                         const GroupElement& target) {
    return multiply(g, multiply(g, w_inv, invert(g, a)), target);
}

bool spot_commutes(const GroupParams& params, const GroupElement& x, const GrammarSampler& sampler,
                   std::size_t checks, std::uint64_t seed) {
    const SamplePolicy base;
    for (std::size_t i = 0; i < checks; ++i) {
        const auto y = evaluate_word(params, sampler.sample(base.with_seed(derive_seed(seed, "verify", i))));
        if (!(multiply(params, x, y) == multiply(params, y, x))) return false;
    }
    return true;
}

}  // namespace

const Rational kUnknownDistance = power_of_two(256);

std::vector<GroupElement> orbit_generators(const GroupParams& params, const IntVector& u,
                                           std::size_t radius, OrbitRange range) {
    std::vector<GroupElement> out;
    const GroupElement base = from_base(params, u);
    auto push = [&](std::int64_t k) {
        GroupElement g = conj_by_stable(params, base, k);
        if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(std::move(g));
    };
    push(0);
    for (std::size_t k = 1; k <= radius; ++k) {
        push(static_cast<std::int64_t>(k));
        if (range == OrbitRange::Integers) push(-static_cast<std::int64_t>(k));
    }
    return out;
}

AttackInstance make_attack_instance(const PublicParams1& pub, const P1Round& round,
                                    std::size_t gen_radius) {
    return AttackInstance{pub, round.msgA, orbit_generators(pub.params, pub.u, gen_radius, pub.range),
                          std::nullopt};
}

Rational orbit_distance(const GroupParams& params, const GroupElement& candidate,
                        const OrbitLattice& lattice) {
    const OracleElement x = oracle_embed(params, candidate);
    const auto residual = lattice.residual_norm(x.a);
    if (!residual) return kUnknownDistance;
    Rational score = *residual;
    if (x.d != 0) score += kStablePenalty * Rational(Int(static_cast<long>(x.d < 0 ? -x.d : x.d)));
    return score;
}

Rational bitlength_distance(const GroupParams& params, const GroupElement& candidate,
                            const OrbitLattice& lattice) {
    const OracleElement x = oracle_embed(params, candidate);
    const auto residual = lattice.residual(x.a);
    if (!residual) return kUnknownDistance;
    std::size_t bits = 0;
    for (const Rational& r : *residual) bits += bitlength(round_nearest(abs(r)));
    Rational score(Int(static_cast<unsigned long>(bits)));
    if (x.d != 0) score += kStablePenalty * Rational(Int(static_cast<long>(x.d < 0 ? -x.d : x.d)));
    return score;
}

std::size_t default_window(const GroupElement& candidate) {
    return candidate.p + candidate.q + 8;
}

bool verify_pair(const PublicParams1& pub, const GroupElement& target, const GroupElement& a,
                 const GroupElement& b, std::size_t checks) {
    const GroupParams& g = pub.params;
    if (!is_reduced(g, a) || !is_reduced(g, b)) return false;
    if (!(multiply(g, multiply(g, a, pub.w), b) == target)) return false;
    const std::uint64_t seed = derive_seed(0, "verify_break");
    return spot_commutes(g, a, GrammarSampler(pub.specB.grammar()), checks, seed) &&
           spot_commutes(g, b, GrammarSampler(pub.specA.grammar()), checks, seed);
}

bool verify_break(const PublicParams1& pub, const GroupElement& target1,
                  const GroupElement& target2, const GroupElement& a, const GroupElement& b,
                  const GroupElement& c, const GroupElement& d, std::size_t checks) {
    const GroupParams& g = pub.params;
    if (!is_reduced(g, c) || !is_reduced(g, d)) return false;
    if (!(multiply(g, multiply(g, c, pub.w), d) == target2)) return false;
    return verify_pair(pub, target1, a, b, checks);
}

AttackResult rst_greedy(const AttackInstance& instance, const LengthFn& ell,
                        const DistanceFn& dist, std::size_t max_iter) {
    const auto started = Clock::now();
    const PublicParams1& pub = instance.pub;
    const GroupParams& g = pub.params;
    const GroupElement w_inv = invert(g, pub.w);
    BLattices lattices(g, pub.v);

    AttackResult result;
    auto finish = [&]() -> AttackResult {
        result.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - started);
        return result;
    };
    auto try_success = [&](const GroupElement& a, const GroupElement& b) {
        if (!lattices.at(instance.window.value_or(default_window(b))).verdict(oracle_embed(g, b)).member()) return false;
        if (!verify_pair(pub, instance.target, a, b)) return false;
        result.success = true;
        result.recovered = std::make_pair(a, b);
        return true;
    };

    GroupElement a_tilde = identity(g);
    {
        const GroupElement b = b_candidate(g, w_inv, a_tilde, instance.target);
        result.best_score = dist(g, b, lattices.at(instance.window.value_or(default_window(b))));
        if (try_success(a_tilde, b)) return finish();
    }

    std::vector<std::pair<GroupElement, std::int64_t>> moves;
    for (std::size_t i = 0; i < instance.gensA.size(); ++i) {
        const auto idx = static_cast<std::int64_t>(i + 1);
        moves.emplace_back(instance.gensA[i], idx);
        moves.emplace_back(invert(g, instance.gensA[i]), -idx);
    }

    for (std::size_t it = 1; it <= max_iter && !moves.empty(); ++it) {
        result.iterations = it;
        std::optional<std::size_t> best;
        Rational best_dist;
        std::size_t best_len = 0;
        GroupElement best_a;
        for (std::size_t mi = 0; mi < moves.size(); ++mi) {
            GroupElement a = multiply(g, a_tilde, moves[mi].first);
            const GroupElement b = b_candidate(g, w_inv, a, instance.target);
            ++result.nodes;
            if (try_success(a, b)) {
                result.path.push_back(moves[mi].second);
                return finish();
            }
            const Rational d = dist(g, b, lattices.at(instance.window.value_or(default_window(b))));
            const std::size_t len = ell(g, b);
            if (!best || d < best_dist || (d == best_dist && len < best_len)) {
                best = mi;
                best_dist = d;
                best_len = len;
                best_a = std::move(a);
            }
        }
        if (best_dist < result.best_score) result.best_score = best_dist;
        a_tilde = std::move(best_a);
        result.path.push_back(moves[*best].second);
    }
    return finish();
}

AttackResult derivation_descent(const AttackInstance& instance, const LengthFn& ell,
                                std::size_t beam, std::size_t max_nodes) {
    const auto started = Clock::now();
    const PublicParams1& pub = instance.pub;
    const GroupParams& g = pub.params;
    const GroupElement w_inv = invert(g, pub.w);
    const GrammarSampler analysis(pub.specA.grammar());
    const auto& rules = analysis.grammar().rules();
    BLattices lattices(g, pub.v);

    struct Node {
        GroupWord prefix;
        std::vector<Symbol> pending;  // back() is the leftmost symbol
        Rational score;
    };

    AttackResult result;
    result.best_score = kUnknownDistance;
    std::set<GroupWord> checked;
    auto finish = [&]() -> AttackResult {
        result.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - started);
        return result;
    };
    // shift leading terminals into the prefix
    auto normalize = [](Node& n) {
        while (!n.pending.empty() && n.pending.back().is_terminal()) {
            n.prefix.push_back(n.pending.back().token);
            n.pending.pop_back();
        }
    };
    // scores the node by its optimistic completion; true on success
    auto evaluate = [&](Node& n) {
        GroupWord word = n.prefix;
        for (auto it = n.pending.rbegin(); it != n.pending.rend(); ++it) {
            if (it->is_terminal())
                word.push_back(it->token);
            else
                word.insert(word.end(), analysis.shortest_yield(it->nonterminal).begin(),
                            analysis.shortest_yield(it->nonterminal).end());
        }
        const GroupElement a = evaluate_word(g, word);
        const GroupElement b = b_candidate(g, w_inv, a, instance.target);
        n.score = Rational(Int(static_cast<unsigned long>(ell(g, b))));
        if (n.score < result.best_score) result.best_score = n.score;
        if (!checked.insert(std::move(word)).second) return false;
        if (!lattices.at(instance.window.value_or(default_window(b))).verdict(oracle_embed(g, b)).member()) return false;
        if (!verify_pair(pub, instance.target, a, b)) return false;
        result.success = true;
        result.recovered = std::make_pair(a, b);
        return true;
    };

    Node root{{}, {Symbol::nt(analysis.grammar().start())}, {}};
    ++result.nodes;
    if (evaluate(root)) return finish();

    std::vector<Node> frontier{std::move(root)};
    while (!frontier.empty() && result.nodes < max_nodes) {
        ++result.iterations;
        std::vector<Node> children;
        for (const Node& parent : frontier) {
            if (parent.pending.empty()) continue;
            const std::size_t nt = parent.pending.back().nonterminal;
            for (std::size_t ri : analysis.eligible_rules(nt)) {
                if (result.nodes >= max_nodes) break;
                Node child{parent.prefix, parent.pending, {}};
                child.pending.pop_back();
                const auto& rhs = rules[ri].rhs;
                for (auto it = rhs.rbegin(); it != rhs.rend(); ++it) child.pending.push_back(*it);
                normalize(child);
                ++result.nodes;
                if (evaluate(child)) return finish();
                children.push_back(std::move(child));
            }
        }
        std::stable_sort(children.begin(), children.end(),
                         [](const Node& x, const Node& y) { return x.score < y.score; });
        if (children.size() > beam) children.resize(beam);
        frontier = std::move(children);
    }
    return finish();
}

}  // namespace algkex
