#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "zigzag/sequences.hpp"

namespace zigzag {

inline constexpr int kPointCap = 1000000;
inline constexpr long kPeriodCap = 1000000;

// Finite measure-preserving system: points 0..size-1, a permutation, and an
// exact invariant probability mass per point. No floating point anywhere;
// positivity of a measure is always an exact rational comparison.
struct FiniteMPS {
    int size = 0;
    std::vector<int> perm;       // images: T(x) = perm[x]
    std::vector<mpq_class> mass;
};

void validate(const FiniteMPS& s);

struct MeasurableSet {
    std::vector<char> in;  // one flag per point

    static MeasurableSet from_points(int size, const std::vector<int>& points);
    static MeasurableSet full(int size);

    bool contains(int x) const { return in[static_cast<std::size_t>(x)] != 0; }
    int size() const { return static_cast<int>(in.size()); }

    bool operator==(const MeasurableSet&) const = default;
};

mpq_class measure(const FiniteMPS& s, const MeasurableSet& a);
MeasurableSet intersect(const MeasurableSet& a, const MeasurableSet& b);
// T^{-n}A = {x : T^n(x) in A}, n >= 0.
MeasurableSet preimage(const FiniteMPS& s, const MeasurableSet& a, long n);

// {n >= 1 : n mod period in residues}. Residue 0 stands for the period
// itself. Exact because T^n on a finite system depends only on n mod the
// order of the permutation.
struct ReturnSet {
    long period = 1;
    std::vector<char> residues;  // size == period

    bool contains(long n) const;
    bool contains(const mpz_class& n) const;
    bool empty_set() const;

    // Same set with the smallest representing period (a divisor).
    ReturnSet canonical() const;

    // Semantic equality of the represented sets.
    bool operator==(const ReturnSet& other) const;
};

std::string to_string(const ReturnSet& rs);

// Order of the permutation (lcm of cycle lengths); throws CapExceeded
// beyond cap.
long perm_order(const std::vector<int>& perm, long cap = kPeriodCap);

// Rotation on Z_d with uniform mass.
FiniteMPS mps_rotation(int d);
// Product system: componentwise permutation, product masses, point (x, y)
// encoded as x * s2.size + y.
FiniteMPS mps_product(const FiniteMPS& s1, const FiniteMPS& s2,
                      int point_cap = kPointCap);
// Same points and masses, permutation composed m times.
FiniteMPS mps_power(const FiniteMPS& s, long m);

// {n >= 1 : mu(A intersect T^{-n}B) > 0}, exact.
ReturnSet return_set(const FiniteMPS& s, const MeasurableSet& a,
                     const MeasurableSet& b);
// {n >= 1 : mu(intersection of T^{-in}A_i, i = 0..k) > 0}, exact.
ReturnSet multi_return_set(const FiniteMPS& s, const std::vector<MeasurableSet>& sets);

// Least r with r * mu > 1, computed exactly.
long pigeonhole_r(const mpq_class& mu);

// {n >= 1 : m * n in rs}, exact and canonicalized.
ReturnSet dilation_preimage(const ReturnSet& rs, long m);

struct IprTrial {
    Sequence seq;
    bool hit = false;
    mpz_class witness_sum;  // smallest finite sum landing in the set, if hit
};

struct IprReport {
    std::vector<IprTrial> trials;
    bool all_hit = true;
};

// For each length-r trial sequence, exhaustively tests whether some finite
// sum lands in rs and records the smallest one that does.
IprReport check_ipr_star(const ReturnSet& rs, int r,
                         const std::vector<Sequence>& trials);

// Text format: line 1 the point count, line 2 the permutation images,
// line 3 the masses as exact fractions "p/q" (or plain integers).
FiniteMPS load_system(std::istream& in);
void save_system(std::ostream& out, const FiniteMPS& s);

}  // namespace zigzag
