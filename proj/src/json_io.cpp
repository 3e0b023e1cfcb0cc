#include "algkex/json_io.hpp"

#include <limits>

#include "algkex/errors.hpp"

namespace algkex {

namespace {

const Json& field(const Json& j, const char* name) {
    if (!j.is_object()) throw ValidationError(std::string("expected an object with field '") + name + "'");
    auto it = j.find(name);
    if (it == j.end()) throw ValidationError(std::string("missing field '") + name + "'");
    return *it;
}

std::uint64_t uint_from_json(const Json& j, const char* what) {
    if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0))
        throw ValidationError(std::string(what) + " must be a nonnegative integer");
    return j.get<std::uint64_t>();
}

std::string string_from_json(const Json& j, const char* what) {
    if (!j.is_string()) throw ValidationError(std::string(what) + " must be a string");
    return j.get<std::string>();
}

bool is_decimal(const std::string& s) {
    std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

}  // namespace

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("invalid JSON: ") + e.what());
    }
}

Json int_to_json(const Int& x) {
    if (x.fits_slong_p()) return static_cast<std::int64_t>(x.get_si());
    return x.get_str();
}

Int int_from_json(const Json& j) {
    if (j.is_number_unsigned()) return Int(std::to_string(j.get<std::uint64_t>()));
    if (j.is_number_integer()) return Int(std::to_string(j.get<std::int64_t>()));
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (!is_decimal(s)) throw ValidationError("'" + s + "' is not a decimal integer");
        return Int(s);
    }
    throw ValidationError("expected an integer (number or decimal string)");
}

Json vector_to_json(const IntVector& v) {
    Json out = Json::array();
    for (const auto& e : v) out.push_back(e.get_str());
    return out;
}

IntVector vector_from_json(const Json& j, std::optional<std::size_t> dim) {
    if (!j.is_array()) throw ValidationError("vector must be an array");
    std::vector<Int> entries;
    for (const auto& e : j) entries.push_back(int_from_json(e));
    if (dim && entries.size() != *dim)
        throw ValidationError("vector has length " + std::to_string(entries.size()) +
                              ", expected " + std::to_string(*dim));
    return IntVector(std::move(entries));
}

Json matrix_to_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.dim(); ++k) row.push_back(int_to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    Json out;
    out["m"] = m.dim();
    out["rows"] = std::move(rows);
    return out;
}

IntMatrix matrix_from_json(const Json& j) {
    const std::uint64_t m = uint_from_json(field(j, "m"), "m");
    const Json& rows = field(j, "rows");
    if (!rows.is_array() || rows.size() != m) throw ValidationError("rows must be an array of m rows");
    std::vector<std::vector<Int>> data;
    for (const auto& r : rows) {
        if (!r.is_array() || r.size() != m) throw ValidationError("each row must have m entries");
        std::vector<Int> row;
        for (const auto& e : r) row.push_back(int_from_json(e));
        data.push_back(std::move(row));
    }
    return IntMatrix(data);
}

GroupParams params_from_json(const Json& j) {
    return GroupParams(matrix_from_json(j));
}

Json element_to_json(const GroupElement& g) {
    Json out;
    out["p"] = g.p;
    out["v"] = vector_to_json(g.v);
    out["q"] = g.q;
    return out;
}

GroupElement element_from_json(const GroupParams& params, const Json& j) {
    GroupElement g{uint_from_json(field(j, "p"), "p"), vector_from_json(field(j, "v"), params.dim()),
                   uint_from_json(field(j, "q"), "q")};
    if (!is_reduced(params, g)) throw ValidationError("element is not Britton-reduced");
    return g;
}

Json word_to_json(const GroupWord& w) {
    Json out = Json::array();
    for (const Token& tok : w) out.push_back(tok.str());
    return out;
}

GroupWord word_from_json(const Json& j) {
    if (!j.is_array()) throw ValidationError("word must be an array of token strings");
    GroupWord w;
    for (const auto& e : j) w.push_back(Token::parse(string_from_json(e, "token")));
    return w;
}

Json grammar_to_json(const CFGrammar& g) {
    Json out;
    out["nonterminals"] = g.nonterminals();
    out["start"] = g.name(g.start());
    Json rules = Json::array();
    for (const NamedRule& r : g.named_rules()) {
        Json rule;
        rule["lhs"] = r.lhs;
        rule["rhs"] = r.rhs;
        rules.push_back(std::move(rule));
    }
    out["rules"] = std::move(rules);
    return out;
}

CFGrammar grammar_from_json(const Json& j) {
    const Json& nts = field(j, "nonterminals");
    if (!nts.is_array()) throw ValidationError("nonterminals must be an array");
    std::vector<std::string> names;
    for (const auto& n : nts) names.push_back(string_from_json(n, "nonterminal"));
    const std::string start = string_from_json(field(j, "start"), "start");
    const Json& rules = field(j, "rules");
    if (!rules.is_array()) throw ValidationError("rules must be an array");
    std::vector<NamedRule> named;
    for (const auto& r : rules) {
        NamedRule nr{string_from_json(field(r, "lhs"), "lhs"), {}};
        const Json& rhs = field(r, "rhs");
        if (!rhs.is_array()) throw ValidationError("rhs must be an array");
        for (const auto& s : rhs) nr.rhs.push_back(string_from_json(s, "rhs symbol"));
        named.push_back(std::move(nr));
    }
    return CFGrammar::from_named(std::move(names), start, named);
}

Json attack_result_to_json(const AttackResult& r, bool timing) {
    Json out;
    out["success"] = r.success;
    if (r.recovered) {
        Json rec;
        rec["a"] = element_to_json(r.recovered->first);
        rec["b"] = element_to_json(r.recovered->second);
        out["recovered"] = std::move(rec);
    } else {
        out["recovered"] = nullptr;
    }
    out["iterations"] = r.iterations;
    out["nodes"] = r.nodes;
    out["best_score"] = r.best_score.get_str();
    out["path"] = r.path;
    if (timing) out["elapsed_ms"] = std::chrono::duration<double, std::milli>(r.elapsed).count();
    return out;
}

Json payload_to_json(const Payload& p) {
    return std::visit(
        [](const auto& value) -> Json {
            using T = std::decay_t<decltype(value)>;
            if constexpr (std::is_same_v<T, GroupElement>)
                return element_to_json(value);
            else if constexpr (std::is_same_v<T, IntVector>)
                return vector_to_json(value);
            else
                return grammar_to_json(value);
        },
        p);
}

Payload payload_from_json(const GroupParams& params, const Json& j) {
    if (j.is_array()) return vector_from_json(j, params.dim());
    if (j.is_object() && j.contains("nonterminals")) {
        CFGrammar g = grammar_from_json(j);
        SubsetSpec check(g, params);
        return g;
    }
    return element_from_json(params, j);
}

Json transcript_to_json(const Transcript& t) {
    Json params;
    params["matrix"] = matrix_to_json(t.matrix);
    if (t.w) params["w"] = element_to_json(*t.w);
    if (t.u) params["u"] = vector_to_json(*t.u);
    if (t.v) params["v"] = vector_to_json(*t.v);
    if (t.range) params["range"] = to_string(*t.range);
    if (t.x) params["x"] = vector_to_json(*t.x);

    Json messages = Json::array();
    for (const auto& m : t.messages) {
        Json msg;
        msg["from"] = m.from;
        msg["value"] = payload_to_json(m.value);
        messages.push_back(std::move(msg));
    }
    Json keys;
    keys["alice"] = payload_to_json(t.key_alice);
    keys["bob"] = payload_to_json(t.key_bob);
    Json seeds = Json::object();
    for (const auto& [name, value] : t.seeds) seeds[name] = value;

    Json out;
    out["protocol"] = t.protocol;
    out["params"] = std::move(params);
    out["messages"] = std::move(messages);
    out["keys"] = std::move(keys);
    out["seeds"] = std::move(seeds);
    return out;
}

Transcript transcript_from_json(const Json& j) {
    const std::string protocol = string_from_json(field(j, "protocol"), "protocol");
    if (protocol != "p1" && protocol != "p2" && protocol != "orbit-dh")
        throw ValidationError("unknown protocol '" + protocol + "'");
    const Json& params = field(j, "params");
    const GroupParams gp = params_from_json(field(params, "matrix"));

    Transcript t{protocol, gp.matrix(), {}, {}, {}, {}, {}, {}, IntVector{}, IntVector{}, {}};
    if (params.contains("w")) t.w = element_from_json(gp, params["w"]);
    if (params.contains("u")) t.u = vector_from_json(params["u"], gp.dim());
    if (params.contains("v")) t.v = vector_from_json(params["v"], gp.dim());
    if (params.contains("range")) t.range = parse_orbit_range(string_from_json(params["range"], "range"));
    if (params.contains("x")) t.x = vector_from_json(params["x"], gp.dim());

    const Json& messages = field(j, "messages");
    if (!messages.is_array()) throw ValidationError("messages must be an array");
    for (const auto& m : messages)
        t.messages.push_back({string_from_json(field(m, "from"), "from"),
                              payload_from_json(gp, field(m, "value"))});
    const Json& keys = field(j, "keys");
    t.key_alice = payload_from_json(gp, field(keys, "alice"));
    t.key_bob = payload_from_json(gp, field(keys, "bob"));
    const Json& seeds = field(j, "seeds");
    if (!seeds.is_object()) throw ValidationError("seeds must be an object");
    for (const auto& [name, value] : seeds.items())
        t.seeds.emplace_back(name, uint_from_json(value, "seed"));
    return t;
}

Transcript p1_transcript(const PublicParams1& pub, const P1Round& round, const SessionKeys& keys,
                         std::vector<std::pair<std::string, std::uint64_t>> seeds) {
    Transcript t{"p1", pub.params.matrix(), pub.w, pub.u, pub.v, pub.range, std::nullopt,
                 {{"alice", round.msgA}, {"bob", round.msgB}},
                 keys.alice, keys.bob, std::move(seeds)};
    return t;
}

Transcript p2_transcript(const PublicParams2& pub, const P2Exchange& ex,
                         std::vector<std::pair<std::string, std::uint64_t>> seeds) {
    Transcript t{"p2", pub.params.matrix(), pub.w, std::nullopt, std::nullopt, std::nullopt,
                 std::nullopt,
                 {{"alice", ex.alice.published_spec.grammar()},
                  {"bob", ex.bob.published_spec.grammar()},
                  {"alice", ex.msgA},
                  {"bob", ex.msgB}},
                 ex.keys.alice, ex.keys.bob, std::move(seeds)};
    return t;
}

Transcript orbit_dh_transcript(const GroupParams& params, const IntVector& x,
                               const OrbitDHResult& r,
                               std::vector<std::pair<std::string, std::uint64_t>> seeds) {
    Transcript t{"orbit-dh", params.matrix(), std::nullopt, std::nullopt, std::nullopt,
                 std::nullopt, x, {{"alice", r.msgA}, {"bob", r.msgB}}, r.key, r.key,
                 std::move(seeds)};
    return t;
}

Json instance_to_json(const InstanceFile& inst) {
    Json out;
    out["protocol"] = inst.protocol;
    out["matrix"] = matrix_to_json(inst.matrix);
    if (inst.w) out["w"] = element_to_json(*inst.w);
    if (inst.u) out["u"] = vector_to_json(*inst.u);
    if (inst.v) out["v"] = vector_to_json(*inst.v);
    if (inst.range) out["range"] = to_string(*inst.range);
    if (inst.u_alice) out["u_alice"] = vector_to_json(*inst.u_alice);
    if (inst.u_bob) out["u_bob"] = vector_to_json(*inst.u_bob);
    if (inst.x) out["x"] = vector_to_json(*inst.x);
    return out;
}

InstanceFile instance_from_json(const Json& j) {
    InstanceFile inst;
    inst.protocol = string_from_json(field(j, "protocol"), "protocol");
    const GroupParams gp = params_from_json(field(j, "matrix"));
    inst.matrix = gp.matrix();
    auto vec = [&](const char* name) -> std::optional<IntVector> {
        if (!j.contains(name)) return std::nullopt;
        return vector_from_json(j[name], gp.dim());
    };
    if (j.contains("w")) inst.w = element_from_json(gp, j["w"]);
    inst.u = vec("u");
    inst.v = vec("v");
    if (j.contains("range")) inst.range = parse_orbit_range(string_from_json(j["range"], "range"));
    inst.u_alice = vec("u_alice");
    inst.u_bob = vec("u_bob");
    inst.x = vec("x");
    if (inst.protocol == "p1") {
        if (!inst.w || !inst.u || !inst.v) throw ValidationError("p1 instance needs w, u and v");
    } else if (inst.protocol == "p2") {
        if (!inst.w || !inst.u_alice || !inst.u_bob)
            throw ValidationError("p2 instance needs w, u_alice and u_bob");
    } else if (inst.protocol == "orbit-dh") {
        if (!inst.x) throw ValidationError("orbit-dh instance needs x");
    } else {
        throw ValidationError("unknown protocol '" + inst.protocol + "'");
    }
    return inst;
}

}  // namespace algkex
