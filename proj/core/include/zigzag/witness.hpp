#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "zigzag/finite_sums.hpp"
#include "zigzag/sequences.hpp"

namespace zigzag {

// The target set is
//   A = { sum_{t in H1} 2^{2t} + sum_{t in H2} 2^{2t+1} : H1 < H2 nonempty },
// so a member's binary support has an even-exponent part below its
// odd-exponent part. decompose() inverts that encoding.
struct EvenOddDecomp {
    Block h1;  // even exponents e, index t = e/2
    Block h2;  // odd exponents e, index t = (e-1)/2

    bool operator==(const EvenOddDecomp&) const = default;
};

std::optional<EvenOddDecomp> decompose(const mpz_class& n);

// Reassembles the value a decomposition denotes.
mpz_class recompose(const EvenOddDecomp& d);

bool member_a(const mpz_class& n);
bool member_b(const mpz_class& n);

inline const mpz_class kEnumerateLimitCap = mpz_class(1) << 30;

// Independent oracle: enumerates block pairs H1 < H2 directly and keeps the
// values <= limit. Deliberately shares no code with decompose().
ValueSet enumerate_a(const mpz_class& limit);

inline constexpr int kWitnessRCap = 20;

enum class WitnessFormula {
    repaired,  // x_i = 2^{2i} + 2^{2(r+i)+1}
    printed,   // x_i = 2^{2i} + 2^{2(r+1)+i}, kept for side-by-side comparison
};

// Length-r sequence whose full FS lies in A, verified exhaustively before
// returning; a verification failure throws rather than handing back a bad
// witness. The printed variant fails for r >= 2 (wrong exponent parity at
// even i) and the error message shows the escaping sum.
Sequence ipr_witness(int r, WitnessFormula formula = WitnessFormula::repaired);

struct RefutationCertificate {
    Block subset;     // indices into the input sequence
    mpz_class value;  // the escaping finite sum
    std::string reason;  // "case-I" | "case-II" | "general"

    bool operator==(const RefutationCertificate&) const = default;
};

// Searches nonempty subsets, smallest first then lexicographic, for a subset
// sum outside A. Every input entry must itself be in A.
std::optional<RefutationCertificate> refute_ip(const Sequence& seq,
                                               std::size_t length_cap = kFsLengthCap);

struct ZigzagHitCertificate {
    int k = 0;       // zigzag index set is {1, k}
    Block block_a;   // first block of chain1, feeds the even exponents
    Block block_b;   // k-th block of chain2, feeds the odd exponents
    mpz_class value; // y^(1)_1 + y^(2)_k
    EvenOddDecomp decomp;

    bool operator==(const ZigzagHitCertificate&) const = default;
};

// For sum subsystems of <2^{2t}> along chain1 and <2^{2t+1}> along chain2,
// exhibits a zigzag sum that lands in A: least k >= 2 with
// min(chain2.blocks[k]) > max(chain1.blocks[1]), value y^(1)_1 + y^(2)_k.
ZigzagHitCertificate goswami_certificate(const BlockChain& chain1,
                                         const BlockChain& chain2);

struct SampledHit {
    BlockChain chain1;
    BlockChain chain2;
    ZigzagHitCertificate cert;
};

// Seeded sampler over random chain pairs within [1, depth]; every sampled
// pair is constructed deep enough that goswami_certificate succeeds.
std::vector<SampledHit> certify_random_subsystems(int depth, int trials,
                                                  std::uint64_t seed);

}  // namespace zigzag
