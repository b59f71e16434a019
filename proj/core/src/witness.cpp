#include "zigzag/witness.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "zigzag/errors.hpp"
#include "zigzag/rng.hpp"

namespace zigzag {

namespace {

void require_positive(const mpz_class& n, const char* what) {
    if (n < 1) throw InputError(std::string(what) + " must be positive");
}

// Next subset of {1..n} of the same size in lexicographic order; false when
// the current one is the last.
bool next_combination(std::vector<int>& idx, int n) {
    const int k = static_cast<int>(idx.size());
    for (int i = k - 1; i >= 0; --i) {
        if (idx[i] < n - (k - 1 - i)) {
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

bool pure_odd_support(const mpz_class& n) {
    mp_bitcnt_t bit = mpz_scan1(n.get_mpz_t(), 0);
    while (bit != static_cast<mp_bitcnt_t>(-1)) {
        if (bit % 2 == 0) return false;
        bit = mpz_scan1(n.get_mpz_t(), bit + 1);
    }
    return true;
}

}  // namespace

std::optional<EvenOddDecomp> decompose(const mpz_class& n) {
    require_positive(n, "n");
    Block h1, h2;
    mp_bitcnt_t bit = mpz_scan1(n.get_mpz_t(), 0);
    while (bit != static_cast<mp_bitcnt_t>(-1)) {
        if (bit < 2) return std::nullopt;  // exponents 0 and 1 never occur
        if (bit % 2 == 0)
            h1.indices.push_back(static_cast<int>(bit / 2));
        else
            h2.indices.push_back(static_cast<int>((bit - 1) / 2));
        bit = mpz_scan1(n.get_mpz_t(), bit + 1);
    }
    if (h1.empty() || h2.empty()) return std::nullopt;
    if (h1.max() >= h2.min()) return std::nullopt;
    return EvenOddDecomp{std::move(h1), std::move(h2)};
}

mpz_class recompose(const EvenOddDecomp& d) {
    mpz_class n = 0;
    for (int t : d.h1.indices) mpz_setbit(n.get_mpz_t(), 2 * static_cast<unsigned long>(t));
    for (int t : d.h2.indices) mpz_setbit(n.get_mpz_t(), 2 * static_cast<unsigned long>(t) + 1);
    return n;
}

bool member_a(const mpz_class& n) { return decompose(n).has_value(); }

bool member_b(const mpz_class& n) { return !member_a(n); }

ValueSet enumerate_a(const mpz_class& limit) {
    require_positive(limit, "limit");
    if (limit > kEnumerateLimitCap)
        throw CapExceeded("limit exceeds " + kEnumerateLimitCap.get_str());

    // Largest usable index: the top element q of H2 contributes 2^{2q+1}.
    const int top_exp = static_cast<int>(mpz_sizeinbase(limit.get_mpz_t(), 2)) - 1;
    const int odd_exp = (top_exp % 2 == 1) ? top_exp : top_exp - 1;
    const int tmax = (odd_exp - 1) / 2;

    ValueSet out;
    // p = max H1; H1 = {p} plus any subset of [1, p-1]; H2 nonempty in [p+1, tmax].
    for (int p = 1; p < tmax; ++p) {
        for (unsigned long s1 = 0; s1 < (1UL << (p - 1)); ++s1) {
            mpz_class even_part = 0;
            mpz_setbit(even_part.get_mpz_t(), 2UL * static_cast<unsigned long>(p));
            for (int b = 0; b < p - 1; ++b)
                if (s1 & (1UL << b))
                    mpz_setbit(even_part.get_mpz_t(), 2UL * static_cast<unsigned long>(b + 1));
            const int span = tmax - p;
            for (unsigned long s2 = 1; s2 < (1UL << span); ++s2) {
                mpz_class v = even_part;
                for (int b = 0; b < span; ++b)
                    if (s2 & (1UL << b))
                        mpz_setbit(v.get_mpz_t(),
                                   2UL * static_cast<unsigned long>(p + 1 + b) + 1);
                if (v <= limit) out.push_back(v);
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Sequence ipr_witness(int r, WitnessFormula formula) {
    if (r < 1) throw InputError("r must be positive");
    if (r > kWitnessRCap)
        throw CapExceeded("r " + std::to_string(r) + " exceeds cap " +
                          std::to_string(kWitnessRCap));

    std::vector<mpz_class> entries;
    entries.reserve(static_cast<std::size_t>(r));
    for (int i = 1; i <= r; ++i) {
        mpz_class x = 0;
        mpz_setbit(x.get_mpz_t(), 2UL * static_cast<unsigned long>(i));
        const unsigned long high =
            formula == WitnessFormula::repaired
                ? 2UL * static_cast<unsigned long>(r + i) + 1
                : 2UL * static_cast<unsigned long>(r + 1) + static_cast<unsigned long>(i);
        mpz_setbit(x.get_mpz_t(), high);
        entries.push_back(std::move(x));
    }
    Sequence seq(std::move(entries));

    const ValueSet sums = fs_enumerate(seq);
    for (const mpz_class& v : sums)
        if (!member_a(v))
            throw VerificationError("witness r=" + std::to_string(r) + " (" +
                                    (formula == WitnessFormula::repaired ? "repaired"
                                                                         : "printed") +
                                    " formula): finite sum " + v.get_str() +
                                    " escapes the target set");
    const std::size_t expected = (std::size_t{1} << r) - 1;
    if (sums.size() != expected)
        throw VerificationError("witness r=" + std::to_string(r) + ": expected " +
                                std::to_string(expected) + " distinct sums, got " +
                                std::to_string(sums.size()));
    return seq;
}

std::optional<RefutationCertificate> refute_ip(const Sequence& seq,
                                               std::size_t length_cap) {
    validate(seq);
    if (seq.size() > length_cap)
        throw CapExceeded("sequence length " + std::to_string(seq.size()) +
                          " exceeds cap " + std::to_string(length_cap));
    for (std::size_t i = 1; i <= seq.size(); ++i)
        if (!member_a(seq.at(i)))
            throw InputError("entry " + std::to_string(i) + " = " +
                             seq.at(i).get_str() + " is not in the target set");

    const int n = static_cast<int>(seq.size());
    for (int size = 1; size <= n; ++size) {
        std::vector<int> idx(static_cast<std::size_t>(size));
        std::iota(idx.begin(), idx.end(), 1);
        do {
            mpz_class sum = 0;
            for (int i : idx) sum += seq.at(static_cast<std::size_t>(i));
            if (member_a(sum)) continue;

            // Classify: disjoint summand supports mean the sum's support is
            // their union, so the miss is a block-order violation; a pure
            // odd-exponent support means the even part vanished in carries.
            mpz_class seen = 0;
            bool overlap = false;
            for (int i : idx) {
                mpz_class both;
                mpz_and(both.get_mpz_t(), seen.get_mpz_t(),
                        seq.at(static_cast<std::size_t>(i)).get_mpz_t());
                if (both != 0) {
                    overlap = true;
                    break;
                }
                mpz_ior(seen.get_mpz_t(), seen.get_mpz_t(),
                        seq.at(static_cast<std::size_t>(i)).get_mpz_t());
            }
            std::string reason;
            if (!overlap)
                reason = "case-I";
            else if (pure_odd_support(sum))
                reason = "case-II";
            else
                reason = "general";
            return RefutationCertificate{Block(idx), std::move(sum), std::move(reason)};
        } while (next_combination(idx, n));
    }
    return std::nullopt;
}

ZigzagHitCertificate goswami_certificate(const BlockChain& chain1,
                                         const BlockChain& chain2) {
    validate(chain1);
    validate(chain2);
    if (chain1.blocks.empty()) throw InputError("first chain is empty");
    if (chain2.size() < 2)
        throw InputError("second chain needs at least two blocks");

    const Block& block_a = chain1.blocks.front();
    // k >= 2 keeps the index set {1, k} a genuine two-element zigzag support.
    int k = 0;
    for (std::size_t j = 2; j <= chain2.size(); ++j) {
        if (chain2.blocks[j - 1].min() > block_a.max()) {
            k = static_cast<int>(j);
            break;
        }
    }
    if (k == 0)
        throw InputError("no block of the second chain starts past index " +
                         std::to_string(block_a.max()));

    const Block& block_b = chain2.blocks[static_cast<std::size_t>(k - 1)];
    EvenOddDecomp d{block_a, block_b};
    mpz_class value = recompose(d);
    const auto check = decompose(value);
    if (!check || !(*check == d))
        throw VerificationError("zigzag hit " + value.get_str() +
                                " fails to decompose back to its blocks");
    return ZigzagHitCertificate{k, block_a, block_b, std::move(value), std::move(d)};
}

std::vector<SampledHit> certify_random_subsystems(int depth, int trials,
                                                  std::uint64_t seed) {
    if (depth < 4) throw InputError("depth must be at least 4");
    if (trials < 0) throw InputError("trials must be nonnegative");

    Rng rng(seed);
    std::vector<SampledHit> hits;
    hits.reserve(static_cast<std::size_t>(trials));
    for (int trial = 0; trial < trials; ++trial) {
        // A short first block low in the range leaves room for the second
        // chain to climb past it.
        const int s = static_cast<int>(rng.range(1, std::max(1, depth / 4)));
        const int sz = static_cast<int>(rng.range(1, 2));
        const int e = std::min(s + sz - 1, depth - 2);
        Block block_a;
        for (int i = s; i <= e; ++i) block_a.indices.push_back(i);

        BlockChain chain1;
        chain1.blocks.push_back(block_a);
        const int f2 = e + 1 + static_cast<int>(rng.range(0, 1));
        Block tail;
        for (int i = e + 1; i <= std::min(f2, depth); ++i) tail.indices.push_back(i);
        chain1.blocks.push_back(tail);

        const int k = (e >= 2 && rng.coin()) ? 3 : 2;
        BlockChain chain2;
        for (int j = 1; j < k; ++j) chain2.blocks.push_back(Block{j});
        const int u = static_cast<int>(rng.range(e + 1, depth - 1));
        const int usz = static_cast<int>(rng.range(1, 2));
        Block final_block;
        for (int i = u; i <= std::min(u + usz - 1, depth); ++i)
            final_block.indices.push_back(i);
        chain2.blocks.push_back(final_block);

        hits.push_back(SampledHit{chain1, chain2, goswami_certificate(chain1, chain2)});
    }
    return hits;
}

}  // namespace zigzag
