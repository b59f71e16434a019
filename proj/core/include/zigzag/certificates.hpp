#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zigzag/families.hpp"
#include "zigzag/witness.hpp"

namespace zigzag {

using Json = nlohmann::json;

// JSON conventions: big integers are decimal strings, rationals are "p/q"
// strings, indices are plain numbers, keys come out sorted so equal
// certificates dump to identical bytes.

Json to_json(const Block& b);
Block block_from_json(const Json& j);

Json to_json(const BlockChain& c);
BlockChain chain_from_json(const Json& j);

Json to_json(const Sequence& s);           // may be empty (depth-0 subsystems)
Sequence sequence_from_json(const Json& j);

Json to_json(const FiniteMPS& s);
FiniteMPS system_from_json(const Json& j);

Json to_json(const FamilySpec& spec);
FamilySpec family_spec_from_json(const Json& j);

Json to_json(const VerifiedElement& el);
VerifiedElement element_from_json(const Json& j);

std::string to_string(WitnessFormula f);
WitnessFormula witness_formula_from_string(const std::string& s);

// Certificate kinds. Every builder produces a self-contained object with a
// "kind" tag; check_certificate_json recomputes the claim from the inputs
// embedded in the certificate and compares.
Json witness_certificate_json(int r, WitnessFormula formula, const Sequence& entries);
Json refutation_certificate_json(const Sequence& seq, const RefutationCertificate& cert);
Json hit_certificate_json(const BlockChain& chain1, const BlockChain& chain2,
                          const ZigzagHitCertificate& cert);
Json counterexample_report_json(int depth, int trials, std::uint64_t seed,
                                const std::vector<SampledHit>& hits);
Json family_certificate_json(const ZigzagCertificate& cert, bool complete,
                             int failed_step, const std::string& note);
ZigzagCertificate family_certificate_from_json(const Json& j);

struct CheckResult {
    bool ok = false;
    std::string why;
};

// Re-derives the certificate from its own inputs and compares. Malformed
// shapes (missing keys, bad types, unbuildable family) throw InputError;
// a well-formed certificate whose claim does not recompute yields ok=false
// with the reason. CapExceeded propagates.
CheckResult check_certificate_json(const Json& j);

// dump(2) with a trailing newline; the one serialization everything uses.
std::string dump_json(const Json& j);

}  // namespace zigzag
