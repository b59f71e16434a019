#include "zigzag/certificates.hpp"

#include <utility>

#include "zigzag/errors.hpp"

namespace zigzag {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) throw InputError("certificate node is not an object");
    auto it = j.find(key);
    if (it == j.end())
        throw InputError(std::string("certificate is missing field \"") + key + "\"");
    return *it;
}

int int_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_integer() && !v.is_number_unsigned())
        throw InputError(std::string("field \"") + key + "\" is not an integer");
    return v.get<int>();
}

std::string string_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_string())
        throw InputError(std::string("field \"") + key + "\" is not a string");
    return v.get<std::string>();
}

std::uint64_t seed_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        throw InputError(std::string("field \"") + key +
                         "\" is not a nonnegative integer");
    return v.get<std::uint64_t>();
}

mpz_class mpz_from_json(const Json& v) {
    if (v.is_number_integer() || v.is_number_unsigned())
        return mpz_class(v.get<long>());
    if (v.is_string()) {
        try {
            return mpz_class(v.get<std::string>(), 10);
        } catch (const std::invalid_argument&) {
            throw InputError("\"" + v.get<std::string>() + "\" is not a decimal integer");
        }
    }
    throw InputError("expected a decimal integer");
}

mpq_class mpq_from_string(const std::string& s) {
    mpq_class q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
        throw InputError("\"" + s + "\" is not a rational p/q");
    if (q.get_den() == 0) throw InputError("rational \"" + s + "\" has denominator 0");
    q.canonicalize();
    return q;
}

}  // namespace

Json to_json(const Block& b) {
    Json arr = Json::array();
    for (int i : b.indices) arr.push_back(i);
    return arr;
}

Block block_from_json(const Json& j) {
    if (!j.is_array()) throw InputError("block is not an array");
    Block b;
    for (const Json& v : j) {
        if (!v.is_number_integer() && !v.is_number_unsigned())
            throw InputError("block index is not an integer");
        b.indices.push_back(v.get<int>());
    }
    validate(b);
    return b;
}

Json to_json(const BlockChain& c) {
    Json arr = Json::array();
    for (const Block& b : c.blocks) arr.push_back(to_json(b));
    return arr;
}

BlockChain chain_from_json(const Json& j) {
    if (!j.is_array()) throw InputError("chain is not an array");
    BlockChain c;
    for (const Json& v : j) c.blocks.push_back(block_from_json(v));
    validate(c);
    return c;
}

Json to_json(const Sequence& s) {
    Json arr = Json::array();
    for (const mpz_class& e : s.entries) arr.push_back(e.get_str());
    return arr;
}

Sequence sequence_from_json(const Json& j) {
    if (!j.is_array()) throw InputError("sequence is not an array");
    Sequence s;
    for (const Json& v : j) s.entries.push_back(mpz_from_json(v));
    return s;
}

Json to_json(const FiniteMPS& s) {
    Json j;
    j["size"] = s.size;
    Json perm = Json::array();
    for (int p : s.perm) perm.push_back(p);
    j["perm"] = std::move(perm);
    Json mass = Json::array();
    for (const mpq_class& m : s.mass) mass.push_back(m.get_str());
    j["mass"] = std::move(mass);
    return j;
}

FiniteMPS system_from_json(const Json& j) {
    FiniteMPS s;
    s.size = int_field(j, "size");
    const Json& perm = field(j, "perm");
    if (!perm.is_array()) throw InputError("field \"perm\" is not an array");
    for (const Json& v : perm) {
        if (!v.is_number_integer() && !v.is_number_unsigned())
            throw InputError("permutation image is not an integer");
        s.perm.push_back(v.get<int>());
    }
    const Json& mass = field(j, "mass");
    if (!mass.is_array()) throw InputError("field \"mass\" is not an array");
    for (const Json& v : mass) {
        if (!v.is_string()) throw InputError("mass is not a rational string");
        s.mass.push_back(mpq_from_string(v.get<std::string>()));
    }
    validate(s);
    return s;
}

Json to_json(const FamilySpec& spec) {
    Json j;
    switch (spec.kind) {
        case FamilySpec::Kind::modular:
            j["kind"] = "modular";
            j["d"] = spec.d;
            return j;
        case FamilySpec::Kind::dynamical: {
            j["kind"] = "dynamical";
            j["system"] = to_json(spec.system);
            Json pts = Json::array();
            for (int p : spec.points) pts.push_back(p);
            j["set"] = std::move(pts);
            return j;
        }
    }
    throw InputError("unknown family kind");
}

FamilySpec family_spec_from_json(const Json& j) {
    FamilySpec spec;
    const std::string kind = string_field(j, "kind");
    if (kind == "modular") {
        spec.kind = FamilySpec::Kind::modular;
        const Json& d = field(j, "d");
        if (!d.is_number_integer() && !d.is_number_unsigned())
            throw InputError("field \"d\" is not an integer");
        spec.d = d.get<long>();
        return spec;
    }
    if (kind == "dynamical") {
        spec.kind = FamilySpec::Kind::dynamical;
        spec.system = system_from_json(field(j, "system"));
        const Json& pts = field(j, "set");
        if (!pts.is_array()) throw InputError("field \"set\" is not an array");
        for (const Json& v : pts) {
            if (!v.is_number_integer() && !v.is_number_unsigned())
                throw InputError("set point is not an integer");
            spec.points.push_back(v.get<int>());
        }
        return spec;
    }
    throw InputError("unknown family kind \"" + kind + "\"");
}

Json to_json(const VerifiedElement& el) {
    Json j;
    j["structure"] = el.structure;
    j["h"] = to_json(el.h);
    Json choices = Json::array();
    for (int c : el.choices) choices.push_back(c);
    j["choices"] = std::move(choices);
    j["value"] = el.value.get_str();
    return j;
}

VerifiedElement element_from_json(const Json& j) {
    VerifiedElement el;
    el.structure = string_field(j, "structure");
    if (el.structure != "sum" && el.structure != "product")
        throw InputError("element structure must be \"sum\" or \"product\"");
    el.h = block_from_json(field(j, "h"));
    const Json& choices = field(j, "choices");
    if (!choices.is_array()) throw InputError("field \"choices\" is not an array");
    for (const Json& v : choices) {
        if (!v.is_number_integer() && !v.is_number_unsigned())
            throw InputError("choice is not an integer");
        el.choices.push_back(v.get<int>());
    }
    el.value = mpz_from_json(field(j, "value"));
    return el;
}

std::string to_string(WitnessFormula f) {
    return f == WitnessFormula::repaired ? "repaired" : "printed";
}

WitnessFormula witness_formula_from_string(const std::string& s) {
    if (s == "repaired") return WitnessFormula::repaired;
    if (s == "printed") return WitnessFormula::printed;
    throw InputError("unknown witness formula \"" + s + "\"");
}

Json witness_certificate_json(int r, WitnessFormula formula, const Sequence& entries) {
    Json j;
    j["kind"] = "ipr-witness";
    j["inputs"] = Json::object({{"formula", to_string(formula)}, {"r", r}});
    j["entries"] = to_json(entries);
    const ValueSet fs = fs_enumerate(entries);
    j["fs_count"] = fs.size();
    if (fs.size() <= 4096) {
        Json arr = Json::array();
        for (const mpz_class& v : fs) arr.push_back(v.get_str());
        j["fs"] = std::move(arr);
    }
    j["verified"] = true;
    return j;
}

Json refutation_certificate_json(const Sequence& seq, const RefutationCertificate& cert) {
    Json j;
    j["kind"] = "refutation";
    j["inputs"] = Json::object({{"entries", to_json(seq)}});
    j["subset"] = to_json(cert.subset);
    j["value"] = cert.value.get_str();
    j["reason"] = cert.reason;
    j["verified"] = true;
    return j;
}

namespace {

Json hit_body(const ZigzagHitCertificate& cert) {
    Json j;
    j["index_pair"] = Json::array({1, cert.k});
    j["block_a"] = to_json(cert.block_a);
    j["block_b"] = to_json(cert.block_b);
    j["h1"] = to_json(cert.decomp.h1);
    j["h2"] = to_json(cert.decomp.h2);
    j["value"] = cert.value.get_str();
    return j;
}

}  // namespace

Json hit_certificate_json(const BlockChain& chain1, const BlockChain& chain2,
                          const ZigzagHitCertificate& cert) {
    Json j = hit_body(cert);
    j["kind"] = "zigzag-hit";
    j["inputs"] = Json::object({{"chain1", to_json(chain1)}, {"chain2", to_json(chain2)}});
    j["verified"] = true;
    return j;
}

Json counterexample_report_json(int depth, int trials, std::uint64_t seed,
                                const std::vector<SampledHit>& hits) {
    Json j;
    j["kind"] = "counterexample-report";
    j["depth"] = depth;
    j["trials"] = trials;
    j["seed"] = seed;
    j["certified"] = hits.size();
    Json arr = Json::array();
    for (const SampledHit& hit : hits) {
        Json h;
        h["chain1"] = to_json(hit.chain1);
        h["chain2"] = to_json(hit.chain2);
        h["cert"] = hit_body(hit.cert);
        arr.push_back(std::move(h));
    }
    j["hits"] = std::move(arr);
    j["summary"] = "no sum subsystems within depth avoid A: " +
                   std::to_string(hits.size()) + "/" + std::to_string(trials) +
                   " certified";
    return j;
}

Json family_certificate_json(const ZigzagCertificate& cert, bool complete,
                             int failed_step, const std::string& note) {
    Json j;
    j["kind"] = "zigzag-family";
    j["family"] = to_json(cert.family);
    j["family_description"] = cert.family_description;
    j["depth"] = cert.depth;
    Json sources = Json::array();
    for (const Sequence& s : cert.sources) sources.push_back(to_json(s));
    j["sources"] = std::move(sources);
    Json chains = Json::array();
    for (const BlockChain& c : cert.chains) chains.push_back(to_json(c));
    j["chains"] = std::move(chains);
    Json subsystems = Json::array();
    for (const Sequence& s : cert.subsystems) subsystems.push_back(to_json(s));
    j["subsystems"] = std::move(subsystems);
    Json elements = Json::array();
    for (const VerifiedElement& el : cert.verified_elements)
        elements.push_back(to_json(el));
    j["verified_elements"] = std::move(elements);
    j["complete"] = complete;
    j["failed_step"] = failed_step;
    j["note"] = note;
    return j;
}

ZigzagCertificate family_certificate_from_json(const Json& j) {
    ZigzagCertificate cert;
    cert.family = family_spec_from_json(field(j, "family"));
    cert.family_description = string_field(j, "family_description");
    cert.depth = int_field(j, "depth");
    const Json& sources = field(j, "sources");
    if (!sources.is_array()) throw InputError("field \"sources\" is not an array");
    for (const Json& v : sources) {
        Sequence s = sequence_from_json(v);
        validate(s);
        cert.sources.push_back(std::move(s));
    }
    const Json& chains = field(j, "chains");
    if (!chains.is_array()) throw InputError("field \"chains\" is not an array");
    for (const Json& v : chains) cert.chains.push_back(chain_from_json(v));
    const Json& subsystems = field(j, "subsystems");
    if (!subsystems.is_array()) throw InputError("field \"subsystems\" is not an array");
    for (const Json& v : subsystems) cert.subsystems.push_back(sequence_from_json(v));
    const Json& elements = field(j, "verified_elements");
    if (!elements.is_array())
        throw InputError("field \"verified_elements\" is not an array");
    for (const Json& v : elements) cert.verified_elements.push_back(element_from_json(v));
    return cert;
}

CheckResult check_certificate_json(const Json& j) {
    const std::string kind = string_field(j, "kind");

    if (kind == "ipr-witness") {
        const Json& in = field(j, "inputs");
        const int r = int_field(in, "r");
        const WitnessFormula f = witness_formula_from_string(string_field(in, "formula"));
        Sequence entries;
        try {
            entries = ipr_witness(r, f);
        } catch (const VerificationError& e) {
            return {false, e.what()};
        }
        if (witness_certificate_json(r, f, entries) != j)
            return {false, "certificate does not recompute from its inputs"};
        return {true, ""};
    }

    if (kind == "refutation") {
        Sequence seq = sequence_from_json(field(field(j, "inputs"), "entries"));
        validate(seq);
        for (const mpz_class& e : seq.entries)
            if (!member_a(e)) return {false, "input entry " + e.get_str() + " is not in A"};
        const auto rc = refute_ip(seq);
        if (!rc) return {false, "every subset sum within the cap stays in A"};
        if (refutation_certificate_json(seq, *rc) != j)
            return {false, "certificate does not recompute from its inputs"};
        return {true, ""};
    }

    if (kind == "zigzag-hit") {
        const Json& in = field(j, "inputs");
        const BlockChain chain1 = chain_from_json(field(in, "chain1"));
        const BlockChain chain2 = chain_from_json(field(in, "chain2"));
        ZigzagHitCertificate cert;
        try {
            cert = goswami_certificate(chain1, chain2);
        } catch (const InputError& e) {
            return {false, e.what()};
        }
        if (hit_certificate_json(chain1, chain2, cert) != j)
            return {false, "certificate does not recompute from its inputs"};
        return {true, ""};
    }

    if (kind == "counterexample-report") {
        const int depth = int_field(j, "depth");
        const int trials = int_field(j, "trials");
        const std::uint64_t seed = seed_field(j, "seed");
        const auto hits = certify_random_subsystems(depth, trials, seed);
        if (counterexample_report_json(depth, trials, seed, hits) != j)
            return {false, "report does not recompute from depth, trials and seed"};
        return {true, ""};
    }

    if (kind == "zigzag-family") {
        const ZigzagCertificate cert = family_certificate_from_json(j);
        const Json& comp = field(j, "complete");
        if (!comp.is_boolean()) throw InputError("field \"complete\" is not a bool");
        const bool complete = comp.get<bool>();
        const int failed_step = int_field(j, "failed_step");
        if (complete != (failed_step == 0))
            return {false, "complete flag contradicts failed_step"};
        const FamilyOracle o = make_family(cert.family);
        std::string why;
        if (!verify_certificate(cert, o, &why)) return {false, why};
        return {true, ""};
    }

    throw InputError("unknown certificate kind \"" + kind + "\"");
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace zigzag
