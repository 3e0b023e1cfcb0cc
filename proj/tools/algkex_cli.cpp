#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "algkex/cyk.hpp"
#include "algkex/errors.hpp"
#include "algkex/experiments.hpp"
#include "algkex/generate.hpp"
#include "algkex/json_io.hpp"

using namespace algkex;

namespace {

struct Options {
    std::uint64_t seed = 0;
    std::string params;
    std::string out;
    std::size_t trials = 0;
    std::size_t max_len = 24;
    std::size_t beam = 8;
    std::optional<std::size_t> window;
    std::size_t dim = 2;
    std::int64_t bound = 3;
    std::size_t max_iter = 64;
    std::size_t max_nodes = 4096;
    std::size_t radius = 2;
    std::size_t count = 1;
    std::size_t threads = 1;
    std::uint64_t max_exp = 1024;
    std::string grammar;
    std::string word;
    std::string range = "integers";
    std::string dist = "euclid";
    bool timing = false;
    bool verbose = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Inline JSON when the argument looks like JSON, otherwise a file path.
Json load_json(const std::string& arg) {
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '['))
        return parse_json(arg);
    return parse_json(read_file(arg));
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw ValidationError("cannot write '" + o.out + "'");
    f << text;
}

void emit_json(const Options& o, const Json& j) { emit(o, j.dump(2) + "\n"); }

SamplePolicy policy(const Options& o) {
    SamplePolicy p;
    p.max_length = o.max_len;
    p.depth_cap = std::min<std::size_t>(p.depth_cap, std::max<std::size_t>(1, o.max_len / 4));
    p.validate();
    return p;
}

InstanceFile generate_instance(const std::string& protocol, const GroupParams& params,
                               std::uint64_t seed, OrbitRange range) {
    Rng rng(derive_seed(seed, "instance"));
    const std::size_t m = params.dim();
    InstanceFile inst;
    inst.protocol = protocol;
    inst.matrix = params.matrix();
    if (protocol == "orbit-dh") {
        inst.x = random_nonzero_vector(rng, m, 5);
        return inst;
    }
    inst.w = random_element(params, rng, 2, 5);
    if (protocol == "p1") {
        inst.u = random_nonzero_vector(rng, m, 3);
        inst.v = random_nonzero_vector(rng, m, 3);
        inst.range = range;
    } else {
        inst.u_alice = random_nonzero_vector(rng, m, 3);
        inst.u_bob = random_nonzero_vector(rng, m, 3);
    }
    return inst;
}

/// --params holds either a bare matrix or an instance file; a bare matrix is
/// expanded into a seeded instance.
InstanceFile load_instance(const Options& o, const std::string& protocol) {
    if (o.params.empty()) throw ValidationError("--params is required");
    const Json j = load_json(o.params);
    if (j.is_object() && j.contains("protocol")) {
        InstanceFile inst = instance_from_json(j);
        if (inst.protocol != protocol)
            throw ValidationError("instance is for '" + inst.protocol + "', expected '" + protocol + "'");
        return inst;
    }
    return generate_instance(protocol, params_from_json(j), o.seed, parse_orbit_range(o.range));
}

std::optional<GroupParams> optional_params(const Options& o) {
    if (o.params.empty()) return std::nullopt;
    const Json j = load_json(o.params);
    return params_from_json(j.is_object() && j.contains("protocol") ? j.at("matrix") : j);
}

CFGrammar load_grammar(const Options& o) {
    if (o.grammar.empty()) throw ValidationError("--grammar is required");
    CFGrammar g = grammar_from_json(load_json(o.grammar));
    if (auto params = optional_params(o)) SubsetSpec check(g, *params);
    return g;
}

GroupWord load_word(const Options& o) {
    if (o.word.empty()) throw ValidationError("--word is required");
    return word_from_json(parse_json(o.word));
}

PublicParams1 p1_public(const InstanceFile& inst) {
    return p1_setup(GroupParams(inst.matrix), *inst.u, *inst.v, *inst.w,
                    inst.range.value_or(OrbitRange::Integers));
}

int params_gen(const Options& o) {
    if (o.dim == 0) throw ValidationError("--dim must be positive");
    if (o.bound < 1) throw ValidationError("--bound must be positive");
    Rng rng(derive_seed(o.seed, "params"));
    emit_json(o, matrix_to_json(random_matrix(rng, o.dim, o.bound)));
    return 0;
}

int instance_gen(const Options& o, const std::string& protocol) {
    if (o.params.empty()) throw ValidationError("--params is required");
    const Json j = load_json(o.params);
    const GroupParams params = params_from_json(j.is_object() && j.contains("protocol") ? j.at("matrix") : j);
    emit_json(o, instance_to_json(generate_instance(protocol, params, o.seed, parse_orbit_range(o.range))));
    return 0;
}

int kex_p1(const Options& o) {
    const InstanceFile inst = load_instance(o, "p1");
    const PublicParams1 pub = p1_public(inst);
    const SamplePolicy pol = policy(o);
    const auto sa = derive_seed(o.seed, "alice"), sb = derive_seed(o.seed, "bob");
    const P1Round round = p1_round(pub, pol.with_seed(sa), pol.with_seed(sb));
    const SessionKeys keys = p1_keys(pub, round.alice, round.msgB, round.bob, round.msgA);
    emit_json(o, transcript_to_json(p1_transcript(pub, round, keys, {{"master", o.seed}, {"alice", sa}, {"bob", sb}})));
    return 0;
}

int kex_p2(const Options& o) {
    const InstanceFile inst = load_instance(o, "p2");
    const PublicParams2 pub{GroupParams(inst.matrix), *inst.w};
    const SamplePolicy pol = policy(o);
    const auto sa = derive_seed(o.seed, "alice"), sb = derive_seed(o.seed, "bob"),
               sx = derive_seed(o.seed, "exchange");
    const Party2State alice = p2_party_setup(pub, *inst.u_alice, pol.with_seed(sa));
    const Party2State bob = p2_party_setup(pub, *inst.u_bob, pol.with_seed(sb));
    const P2Exchange ex = p2_exchange(pub, alice, bob, pol.with_seed(sx));
    emit_json(o, transcript_to_json(p2_transcript(pub, ex, {{"master", o.seed}, {"alice", sa}, {"bob", sb}, {"exchange", sx}})));
    return 0;
}

int kex_orbit_dh(const Options& o) {
    const InstanceFile inst = load_instance(o, "orbit-dh");
    const GroupParams params(inst.matrix);
    if (o.max_exp > kOrbitExponentBound) throw ValidationError("--max-exp exceeds the exponent bound");
    const auto sa = derive_seed(o.seed, "alice"), sb = derive_seed(o.seed, "bob");
    Rng ra(sa), rb(sb);
    const auto mA = ra.index(o.max_exp + 1), nB = rb.index(o.max_exp + 1);
    const OrbitDHResult r = orbit_dh(params, *inst.x, mA, nB);
    emit_json(o, transcript_to_json(orbit_dh_transcript(params, *inst.x, r, {{"master", o.seed}, {"alice", sa}, {"bob", sb}})));
    return 0;
}

int grammar_sample(const Options& o) {
    const GrammarSampler sampler(load_grammar(o));
    const SamplePolicy pol = policy(o);
    std::string text;
    for (std::size_t i = 0; i < o.count; ++i)
        text += word_to_json(sampler.sample(pol.with_seed(derive_seed(o.seed, "sample", i)))).dump() + "\n";
    emit(o, text);
    return 0;
}

int grammar_member(const Options& o) {
    emit(o, cfg_membership(load_word(o), load_grammar(o)) ? "true\n" : "false\n");
    return 0;
}

int grammar_closure(const Options& o) {
    const CFGrammar g = load_grammar(o);
    std::size_t m = 1;
    for (const Token& tok : g.terminals()) m = std::max<std::size_t>(m, tok.index);
    const GroupParams params = optional_params(o).value_or(GroupParams(IntMatrix::identity(m)));
    emit_json(o, grammar_to_json(subgroup_closure(SubsetSpec(g, params)).grammar()));
    return 0;
}

int grammar_orbit(const Options& o) {
    const GroupWord w = load_word(o);
    std::size_t m = 1;
    for (const Token& tok : w) m = std::max<std::size_t>(m, tok.index);
    const GroupParams params = optional_params(o).value_or(GroupParams(IntMatrix::identity(m)));
    emit_json(o, grammar_to_json(orbit_grammar(params, w, parse_orbit_range(o.range))));
    return 0;
}

int attack(const Options& o, bool descent) {
    const InstanceFile inst = load_instance(o, "p1");
    const PublicParams1 pub = p1_public(inst);
    const SamplePolicy pol = policy(o);
    const P1Round round =
        p1_round(pub, pol.with_seed(derive_seed(o.seed, "alice")), pol.with_seed(derive_seed(o.seed, "bob")));
    AttackInstance instance = make_attack_instance(pub, round, o.radius);
    instance.window = o.window;
    const AttackResult r = descent ? derivation_descent(instance, length, o.beam, o.max_nodes)
                                   : rst_greedy(instance, length,
                                                o.dist == "bitlength" ? bitlength_distance : orbit_distance,
                                                o.max_iter);
    Json out;
    out["mode"] = descent ? "descent" : "rst";
    out["target"] = element_to_json(instance.target);
    out["result"] = attack_result_to_json(r, o.timing);
    emit_json(o, out);
    return 0;
}

int attack_sweep(const Options& o, const CLI::App& sub) {
    std::vector<GridPoint> grid;
    if (o.params.empty()) {
        grid = default_grid();
    } else {
        const InstanceFile inst = load_instance(o, "p1");
        grid.push_back(GridPoint{"custom", GroupParams(inst.matrix), *inst.u, *inst.v,
                                 inst.range.value_or(OrbitRange::Integers)});
    }
    for (auto& p : grid) {
        if (sub.count("--beam")) p.beam = o.beam;
        if (sub.count("--max-iter")) p.max_iter = o.max_iter;
        if (sub.count("--max-nodes")) p.max_nodes = o.max_nodes;
        if (sub.count("--max-len")) p.policy = policy(o);
        if (sub.count("--radius")) p.gen_radius = o.radius;
    }
    ExperimentOptions opts;
    opts.trials = sub.count("--trials") ? o.trials : 10;
    opts.seed = o.seed;
    opts.threads = std::max<std::size_t>(1, o.threads);
    opts.timing = o.timing;
    opts.trial_log = o.verbose ? &std::cerr : nullptr;
    emit(o, to_csv(run_experiments(grid, opts), o.timing));
    return 0;
}

int selftest_oracle(const Options& o, const CLI::App& sub) {
    const std::size_t trials = sub.count("--trials") ? o.trials : 1000;
    std::size_t passed = 0;
    for (std::size_t i = 0; i < trials; ++i) {
        Rng rng(derive_seed(o.seed, "selftest", i));
        const GroupParams params(random_matrix(rng, 1 + rng.index(4), 3));
        const GroupWord w1 = random_word(params, rng, 40), w2 = random_word(params, rng, 40);
        const GroupElement g = evaluate_word(params, w1), h = evaluate_word(params, w2);
        GroupWord joined = w1;
        joined.insert(joined.end(), w2.begin(), w2.end());
        const GroupElement gh = multiply(params, g, h);
        const bool ok = gh == evaluate_word(params, joined) &&
                        oracle_embed(params, gh) ==
                            oracle_multiply(params, oracle_embed(params, g), oracle_embed(params, h));
        if (ok) {
            ++passed;
        } else if (o.verbose) {
            std::cerr << "mismatch at trial " << i << "\n";
        }
    }
    emit(o, "oracle selftest: " + std::to_string(passed) + "/" + std::to_string(trials) + " passed\n");
    if (passed != trials) throw InvariantViolation("oracle selftest failed");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Subset-based key exchange over ascending HNN-extensions of Z^m"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* c) {
        c->add_option("--seed", o.seed, "Master seed");
        c->add_option("--out", o.out, "Output file (default stdout)");
    };
    auto sampling = [&](CLI::App* c) { c->add_option("--max-len", o.max_len, "Maximum sampled word length"); };
    auto range = [&](CLI::App* c) {
        c->add_option("--range", o.range, "Conjugation exponents: integers or naturals")
            ->check(CLI::IsMember({"integers", "naturals"}));
    };

    auto* params = app.add_subcommand("params", "Group parameters")->require_subcommand(1);
    auto* params_gen_cmd = params->add_subcommand("gen", "Random matrix with nonzero determinant");
    common(params_gen_cmd);
    params_gen_cmd->add_option("--dim", o.dim, "Dimension m");
    params_gen_cmd->add_option("--bound", o.bound, "Entry bound");

    auto* instance = app.add_subcommand("instance", "Protocol instances")->require_subcommand(1);
    std::vector<std::pair<std::string, CLI::App*>> instance_gens;
    for (const char* proto : {"p1", "p2"}) {
        auto* p = instance->add_subcommand(proto, std::string("Protocol ") + proto)->require_subcommand(1);
        auto* gen = p->add_subcommand("gen", "Generate an instance from a parameter file");
        common(gen);
        range(gen);
        gen->add_option("--params", o.params, "Matrix or instance JSON")->required();
        instance_gens.emplace_back(proto, gen);
    }

    auto* kex = app.add_subcommand("kex", "Protocol simulation")->require_subcommand(1);
    std::vector<std::pair<std::string, CLI::App*>> simulations;
    for (const char* proto : {"p1", "p2", "orbit-dh"}) {
        auto* p = kex->add_subcommand(proto, std::string("Protocol ") + proto)->require_subcommand(1);
        auto* sim = p->add_subcommand("simulate", "Run one seeded session and print the transcript");
        common(sim);
        sampling(sim);
        range(sim);
        sim->add_option("--params", o.params, "Matrix or instance JSON")->required();
        if (std::string(proto) == "orbit-dh") sim->add_option("--max-exp", o.max_exp, "Largest secret exponent");
        simulations.emplace_back(proto, sim);
    }

    auto* grammar = app.add_subcommand("grammar", "Grammar tools")->require_subcommand(1);
    auto* g_sample = grammar->add_subcommand("sample", "Seeded words from a grammar");
    auto* g_member = grammar->add_subcommand("member", "Membership of a word");
    auto* g_closure = grammar->add_subcommand("closure", "Grammar of the generated subgroup");
    auto* g_orbit = grammar->add_subcommand("orbit", "Grammar of stable-letter conjugates of a word");
    for (auto* c : {g_sample, g_member, g_closure, g_orbit}) {
        common(c);
        c->add_option("--params", o.params, "Matrix JSON used to validate generator indices");
    }
    for (auto* c : {g_sample, g_member, g_closure})
        c->add_option("--grammar", o.grammar, "Grammar JSON (file or inline)")->required();
    for (auto* c : {g_member, g_orbit}) c->add_option("--word", o.word, "Word as a JSON array of tokens")->required();
    sampling(g_sample);
    g_sample->add_option("--count", o.count, "Number of words");
    range(g_orbit);

    auto* attack_cmd = app.add_subcommand("attack", "Length-based attacks")->require_subcommand(1);
    auto* a_rst = attack_cmd->add_subcommand("rst", "Greedy generator walk");
    auto* a_descent = attack_cmd->add_subcommand("descent", "Beam search over derivations");
    auto* a_sweep = attack_cmd->add_subcommand("sweep", "Seeded experiment grid as CSV");
    for (auto* c : {a_rst, a_descent, a_sweep}) {
        common(c);
        sampling(c);
        range(c);
        c->add_option("--params", o.params, "Matrix or p1 instance JSON");
        c->add_option("--max-iter", o.max_iter, "Greedy iteration budget");
        c->add_option("--beam", o.beam, "Beam width");
        c->add_option("--max-nodes", o.max_nodes, "Descent node budget");
        c->add_option("--radius", o.radius, "Orbit generators t^-k u t^k with |k| <= radius");
        c->add_flag("--timing", o.timing, "Report wall-clock time");
    }
    for (auto* c : {a_rst, a_descent}) c->add_option("--window", o.window, "Fixed membership window K");
    a_rst->add_option("--dist", o.dist, "Residual score: euclid (squared norm) or bitlength")
        ->check(CLI::IsMember({"euclid", "bitlength"}));
    a_sweep->add_option("--trials", o.trials, "Trials per grid point");
    a_sweep->add_option("--threads", o.threads, "Worker threads");
    a_sweep->add_flag("--verbose", o.verbose, "Per-trial JSON on stderr");

    auto* selftest = app.add_subcommand("selftest", "Self checks")->require_subcommand(1);
    auto* s_oracle = selftest->add_subcommand("oracle", "Normal-form arithmetic against the semidirect model");
    common(s_oracle);
    s_oracle->add_option("--trials", o.trials, "Random word pairs");
    s_oracle->add_flag("--verbose", o.verbose, "Report mismatches");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*params_gen_cmd) return params_gen(o);
        for (const auto& [proto, c] : instance_gens)
            if (*c) return instance_gen(o, proto);
        for (const auto& [proto, c] : simulations) {
            if (!*c) continue;
            if (proto == "p1") return kex_p1(o);
            if (proto == "p2") return kex_p2(o);
            return kex_orbit_dh(o);
        }
        if (*g_sample) return grammar_sample(o);
        if (*g_member) return grammar_member(o);
        if (*g_closure) return grammar_closure(o);
        if (*g_orbit) return grammar_orbit(o);
        if (*a_rst) return attack(o, false);
        if (*a_descent) return attack(o, true);
        if (*a_sweep) return attack_sweep(o, *a_sweep);
        if (*s_oracle) return selftest_oracle(o, *s_oracle);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violated: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
