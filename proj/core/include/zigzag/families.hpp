#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "zigzag/dynamics.hpp"
#include "zigzag/finite_sums.hpp"
#include "zigzag/sequences.hpp"

namespace zigzag {

class OracleImpl;

// Immutable membership oracle for one set of a family, together with the
// derived-set operations the zigzag construction consumes. Composition
// never materializes sets; closed forms (periodic arithmetic, product
// systems) are used where the operands allow and lazy predicates otherwise.
class FamilyOracle {
public:
    FamilyOracle() = default;
    explicit FamilyOracle(std::shared_ptr<const OracleImpl> impl);

    bool member(const mpz_class& n) const;
    // {y : b + y in this set}
    FamilyOracle shift(const mpz_class& b) const;
    // {y : m * y in this set}
    FamilyOracle dilate(const mpz_class& m) const;
    FamilyOracle intersect(const FamilyOracle& other) const;
    // The contained family member the inductive construction starts from.
    FamilyOracle refine() const;
    std::string description() const;

private:
    std::shared_ptr<const OracleImpl> impl_;
};

// {n : d divides n}.
FamilyOracle modular_family(long d);

// The return set {n : mu(A intersect T^{-n}A) > 0} of a finite system,
// with refine regenerating from A intersect T^{-n}A, dilation through the
// power system, and intersection through the product system.
FamilyOracle dynamical_family(const FiniteMPS& s, const MeasurableSet& a);

// Arbitrary predicate with no closed forms; derived oracles are lazy.
FamilyOracle predicate_family(std::function<bool(const mpz_class&)> member,
                              std::string description);

// Reconstructible description of a family, embedded in certificates so a
// standalone verifier can rebuild the oracle.
struct FamilySpec {
    enum class Kind { modular, dynamical };

    Kind kind = Kind::modular;
    long d = 1;              // modular
    FiniteMPS system;        // dynamical
    std::vector<int> points; // dynamical: the set A
};

FamilyOracle make_family(const FamilySpec& spec);

struct PropertyResult {
    bool pass = true;
    std::string detail;
};

// Bounded evidence for the four family properties: (a) the set meets the
// finite sums of every probe sequence, (b) refine is contained in the set
// and admits shifts, (c) intersections are pointwise conjunctions, (d)
// dilation preimages are pointwise divisibility transports. (a) can only
// ever be evidence at this bound; the report says so.
struct ZfspReport {
    PropertyResult ipstar_evidence;
    PropertyResult refine_contained;
    PropertyResult intersect_ok;
    PropertyResult dilate_ok;

    bool all_pass() const {
        return ipstar_evidence.pass && refine_contained.pass && intersect_ok.pass &&
               dilate_ok.pass;
    }
};

ZfspReport check_zfsp_properties(const FamilyOracle& o, long bound, int samples,
                                 std::uint64_t seed = 1);

struct VerifiedElement {
    std::string structure;     // "sum" | "product"
    Block h;                   // zigzag index set
    std::vector<int> choices;  // per index of h: which subsystem, 1-based
    mpz_class value;

    bool operator==(const VerifiedElement&) const = default;
};

struct ZigzagCertificate {
    FamilySpec family;
    std::string family_description;
    std::vector<Sequence> sources;      // input sequences, full length
    std::vector<BlockChain> chains;     // one per source, all of length depth
    std::vector<Sequence> subsystems;   // block sums along the chains
    std::vector<VerifiedElement> verified_elements;
    int depth = 0;
};

struct ConstructResult {
    ZigzagCertificate cert;  // partial (depth = completed steps) on failure
    bool complete = false;
    int failed_step = 0;     // 0 when complete
    std::string note;
};

// The inductive construction: step m+1 intersects C with the shifts by the
// current zigzag sums and the dilation preimages by the current zigzag
// products, then finds one block per sequence whose block sum the
// intersection accepts. Candidate blocks per step are limited by budget;
// candidates are consecutive runs first, then general index sets in
// (min, lex) order.
ConstructResult zigzag_construct(const FamilyOracle& o, const MultiSeq& mseq,
                                 int steps, long budget);

// Recomputes everything in the certificate from its chains and sources and
// tests every zigzag sum and product with o.member. Structural breakage
// (bad chain order, index out of range, mismatched subsystems) yields false
// with an explanation in *why, never an exception.
bool verify_certificate(const ZigzagCertificate& cert, const FamilyOracle& o,
                        std::string* why = nullptr);

// Consecutive run at or after `start` whose entry sum is divisible by d,
// minimal end first, then minimal start; exists by the pigeonhole on prefix
// sums whenever the tail holds at least d entries.
Block zero_sum_block(const Sequence& seq, long d, int start);

}  // namespace zigzag
