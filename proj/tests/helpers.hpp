#pragma once

#include <algorithm>
#include <initializer_list>
#include <utility>
#include <vector>

#include "zigzag/dynamics.hpp"
#include "zigzag/finite_sums.hpp"
#include "zigzag/rng.hpp"
#include "zigzag/sequences.hpp"

// Brute-force oracles, deliberately sharing no code with the library paths
// they check.
namespace zigzag::testing {

inline Sequence seq(std::initializer_list<long> xs) {
    Sequence s;
    for (long x : xs) s.entries.emplace_back(x);
    return s;
}

inline ValueSet values(std::initializer_list<long> xs) {
    ValueSet v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

inline Sequence random_seq(Rng& rng, int len, long lo, long hi) {
    Sequence s;
    for (int i = 0; i < len; ++i)
        s.entries.emplace_back(static_cast<long>(rng.range(lo, hi)));
    return s;
}

inline void sort_unique(ValueSet& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

inline ValueSet subset_oracle(const Sequence& s, bool product) {
    ValueSet out;
    const std::size_t n = s.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        mpz_class acc = product ? 1 : 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!(mask & (std::size_t{1} << i))) continue;
            if (product)
                acc *= s.entries[i];
            else
                acc += s.entries[i];
        }
        out.push_back(std::move(acc));
    }
    sort_unique(out);
    return out;
}

inline ValueSet zigzag_oracle(const MultiSeq& m, bool product) {
    ValueSet out;
    const std::size_t n = m.depth();
    const std::size_t l = m.width();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i)) idx.push_back(i);
        std::vector<std::size_t> choice(idx.size(), 0);
        bool done = false;
        while (!done) {
            mpz_class acc = product ? 1 : 0;
            for (std::size_t p = 0; p < idx.size(); ++p) {
                const mpz_class& e = m.seqs[choice[p]].entries[idx[p]];
                if (product)
                    acc *= e;
                else
                    acc += e;
            }
            out.push_back(std::move(acc));
            std::size_t p = 0;
            for (;;) {
                if (p == choice.size()) {
                    done = true;
                    break;
                }
                if (++choice[p] < l) break;
                choice[p++] = 0;
            }
        }
    }
    sort_unique(out);
    return out;
}

inline void ipn_oracle_walk(const std::vector<Sequence>& seqs, int depth,
                            std::size_t level, int lo, const mpz_class& acc,
                            ValueSet& out) {
    if (level == seqs.size()) {
        out.push_back(acc);
        return;
    }
    const int span = depth - lo + 1;
    if (span <= 0) return;
    for (unsigned mask = 1; mask < (1U << span); ++mask) {
        mpz_class sum = 0;
        int top = lo;
        for (int b = 0; b < span; ++b) {
            if (!(mask & (1U << b))) continue;
            sum += seqs[level].at(static_cast<std::size_t>(lo + b));
            top = lo + b;
        }
        ipn_oracle_walk(seqs, depth, level + 1, top + 1, acc + sum, out);
    }
}

inline ValueSet ipn_oracle(const std::vector<Sequence>& seqs, int depth) {
    ValueSet out;
    ipn_oracle_walk(seqs, depth, 0, 1, mpz_class(0), out);
    sort_unique(out);
    return out;
}

// mu(A_0 intersect T^{-n}A_1 intersect ... intersect T^{-kn}A_k) > 0 by
// walking orbits point by point.
inline bool direct_multi_hit(const FiniteMPS& s, const std::vector<MeasurableSet>& sets,
                             long n) {
    mpq_class mu = 0;
    for (int x = 0; x < s.size; ++x) {
        int y = x;
        bool in = sets[0].contains(x);
        for (std::size_t i = 1; in && i < sets.size(); ++i) {
            for (long t = 0; t < n; ++t) y = s.perm[static_cast<std::size_t>(y)];
            in = sets[i].contains(y);
        }
        if (in) mu += s.mass[static_cast<std::size_t>(x)];
    }
    return mu > 0;
}

// Cycles of random length with one exact weight per cycle, normalized to a
// probability; invariance holds because the mass is constant on each cycle.
inline FiniteMPS random_system(Rng& rng, int points) {
    FiniteMPS s;
    s.size = points;
    s.perm.resize(static_cast<std::size_t>(points));
    std::vector<long> weight(static_cast<std::size_t>(points));
    long total = 0;
    int at = 0;
    while (at < points) {
        const int len =
            static_cast<int>(rng.range(1, std::min<long>(6, points - at)));
        const long w = rng.range(1, 8);
        for (int i = 0; i < len; ++i) {
            s.perm[static_cast<std::size_t>(at + i)] = at + (i + 1) % len;
            weight[static_cast<std::size_t>(at + i)] = w;
        }
        total += static_cast<long>(len) * w;
        at += len;
    }
    for (int x = 0; x < points; ++x) {
        mpq_class m(weight[static_cast<std::size_t>(x)], total);
        m.canonicalize();
        s.mass.push_back(std::move(m));
    }
    return s;
}

inline MeasurableSet random_set(Rng& rng, int size) {
    std::vector<int> pts;
    for (int x = 0; x < size; ++x)
        if (rng.coin()) pts.push_back(x);
    return MeasurableSet::from_points(size, pts);
}

// Product-space rectangle A x B under the x * size2 + y point encoding.
inline MeasurableSet rectangle(const MeasurableSet& a, const MeasurableSet& b) {
    std::vector<int> pts;
    for (int x = 0; x < a.size(); ++x)
        for (int y = 0; y < b.size(); ++y)
            if (a.contains(x) && b.contains(y)) pts.push_back(x * b.size() + y);
    return MeasurableSet::from_points(a.size() * b.size(), pts);
}

}  // namespace zigzag::testing
