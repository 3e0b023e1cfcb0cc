#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "algkex/attack.hpp"

namespace algkex {

/// Insertion-ordered, so emitted field order is fixed.
using Json = nlohmann::ordered_json;

/// Parses JSON text; syntax errors become ValidationError.
Json parse_json(const std::string& text);

Json int_to_json(const Int& x);  // number when it fits in int64, else decimal string
Int int_from_json(const Json& j);

Json vector_to_json(const IntVector& v);  // array of decimal strings
IntVector vector_from_json(const Json& j, std::optional<std::size_t> dim = std::nullopt);

/// {"m":2,"rows":[[2,1],[0,3]]}
Json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);
GroupParams params_from_json(const Json& j);

/// {"p":1,"v":["3","-7"],"q":0}; decoding rejects unreduced triples.
Json element_to_json(const GroupElement& g);
GroupElement element_from_json(const GroupParams& params, const Json& j);

Json word_to_json(const GroupWord& w);
GroupWord word_from_json(const Json& j);

/// {"nonterminals":[...],"start":"S","rules":[{"lhs":"S","rhs":[...]}]}
Json grammar_to_json(const CFGrammar& g);
CFGrammar grammar_from_json(const Json& j);

Json attack_result_to_json(const AttackResult& r, bool timing);

using Payload = std::variant<GroupElement, IntVector, CFGrammar>;

Json payload_to_json(const Payload& p);
Payload payload_from_json(const GroupParams& params, const Json& j);

struct TranscriptMessage {
    std::string from;
    Payload value;
};

/// {"protocol":..,"params":..,"messages":[..],"keys":{"alice":..,"bob":..},"seeds":{..}}
struct Transcript {
    std::string protocol;  // "p1", "p2" or "orbit-dh"
    IntMatrix matrix;
    std::optional<GroupElement> w;
    std::optional<IntVector> u;
    std::optional<IntVector> v;
    std::optional<OrbitRange> range;
    std::optional<IntVector> x;
    std::vector<TranscriptMessage> messages;
    Payload key_alice;
    Payload key_bob;
    std::vector<std::pair<std::string, std::uint64_t>> seeds;
};

Json transcript_to_json(const Transcript& t);
Transcript transcript_from_json(const Json& j);

Transcript p1_transcript(const PublicParams1& pub, const P1Round& round, const SessionKeys& keys,
                         std::vector<std::pair<std::string, std::uint64_t>> seeds);
Transcript p2_transcript(const PublicParams2& pub, const P2Exchange& ex,
                         std::vector<std::pair<std::string, std::uint64_t>> seeds);
Transcript orbit_dh_transcript(const GroupParams& params, const IntVector& x,
                               const OrbitDHResult& r,
                               std::vector<std::pair<std::string, std::uint64_t>> seeds);

/// Protocol instance files produced by `instance ... gen`.
struct InstanceFile {
    std::string protocol;
    IntMatrix matrix;
    std::optional<GroupElement> w;
    std::optional<IntVector> u;
    std::optional<IntVector> v;
    std::optional<OrbitRange> range;
    std::optional<IntVector> u_alice;
    std::optional<IntVector> u_bob;
    std::optional<IntVector> x;
};

Json instance_to_json(const InstanceFile& inst);
InstanceFile instance_from_json(const Json& j);

}  // namespace algkex
