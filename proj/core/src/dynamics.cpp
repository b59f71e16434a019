#include "zigzag/dynamics.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "zigzag/errors.hpp"
#include "zigzag/finite_sums.hpp"

namespace zigzag {

namespace {

void require_set_size(const FiniteMPS& s, const MeasurableSet& a) {
    if (a.size() != s.size)
        throw InputError("set is over " + std::to_string(a.size()) +
                         " points, system has " + std::to_string(s.size));
}

}  // namespace

void validate(const FiniteMPS& s) {
    if (s.size < 1) throw InputError("system needs at least one point");
    if (s.size > kPointCap)
        throw CapExceeded("system size " + std::to_string(s.size) + " exceeds cap " +
                          std::to_string(kPointCap));
    if (s.perm.size() != static_cast<std::size_t>(s.size))
        throw InputError("permutation has " + std::to_string(s.perm.size()) +
                         " images, expected " + std::to_string(s.size));
    std::vector<char> seen(static_cast<std::size_t>(s.size), 0);
    for (int x = 0; x < s.size; ++x) {
        const int y = s.perm[static_cast<std::size_t>(x)];
        if (y < 0 || y >= s.size)
            throw InputError("permutation image " + std::to_string(y) + " out of range");
        if (seen[static_cast<std::size_t>(y)])
            throw InputError("permutation repeats image " + std::to_string(y));
        seen[static_cast<std::size_t>(y)] = 1;
    }
    if (s.mass.size() != static_cast<std::size_t>(s.size))
        throw InputError("mass list has " + std::to_string(s.mass.size()) +
                         " entries, expected " + std::to_string(s.size));
    mpq_class total = 0;
    for (int x = 0; x < s.size; ++x) {
        if (s.mass[static_cast<std::size_t>(x)] < 0)
            throw InputError("mass of point " + std::to_string(x) + " is negative");
        total += s.mass[static_cast<std::size_t>(x)];
    }
    if (total != 1) throw InputError("masses sum to " + total.get_str() + ", expected 1");
    for (int x = 0; x < s.size; ++x)
        if (s.mass[static_cast<std::size_t>(s.perm[static_cast<std::size_t>(x)])] !=
            s.mass[static_cast<std::size_t>(x)])
            throw InputError("mass is not invariant at point " + std::to_string(x));
}

MeasurableSet MeasurableSet::from_points(int size, const std::vector<int>& points) {
    if (size < 1) throw InputError("set needs a positive point count");
    MeasurableSet a;
    a.in.assign(static_cast<std::size_t>(size), 0);
    for (int p : points) {
        if (p < 0 || p >= size)
            throw InputError("point " + std::to_string(p) + " out of range 0.." +
                             std::to_string(size - 1));
        a.in[static_cast<std::size_t>(p)] = 1;
    }
    return a;
}

MeasurableSet MeasurableSet::full(int size) {
    if (size < 1) throw InputError("set needs a positive point count");
    MeasurableSet a;
    a.in.assign(static_cast<std::size_t>(size), 1);
    return a;
}

mpq_class measure(const FiniteMPS& s, const MeasurableSet& a) {
    require_set_size(s, a);
    mpq_class total = 0;
    for (int x = 0; x < s.size; ++x)
        if (a.contains(x)) total += s.mass[static_cast<std::size_t>(x)];
    return total;
}

MeasurableSet intersect(const MeasurableSet& a, const MeasurableSet& b) {
    if (a.size() != b.size()) throw InputError("set sizes differ");
    MeasurableSet c;
    c.in.resize(a.in.size());
    for (std::size_t i = 0; i < a.in.size(); ++i) c.in[i] = a.in[i] && b.in[i];
    return c;
}

MeasurableSet preimage(const FiniteMPS& s, const MeasurableSet& a, long n) {
    require_set_size(s, a);
    if (n < 0) throw InputError("preimage exponent must be >= 0");
    // T^n as an array, built by n successive compositions.
    std::vector<int> power(static_cast<std::size_t>(s.size));
    std::iota(power.begin(), power.end(), 0);
    for (long step = 0; step < n; ++step)
        for (int x = 0; x < s.size; ++x)
            power[static_cast<std::size_t>(x)] =
                s.perm[static_cast<std::size_t>(power[static_cast<std::size_t>(x)])];
    MeasurableSet out;
    out.in.assign(static_cast<std::size_t>(s.size), 0);
    for (int x = 0; x < s.size; ++x)
        if (a.contains(power[static_cast<std::size_t>(x)]))
            out.in[static_cast<std::size_t>(x)] = 1;
    return out;
}

bool ReturnSet::contains(long n) const {
    if (n < 1) throw InputError("return sets contain positive integers only");
    return residues[static_cast<std::size_t>(n % period)] != 0;
}

bool ReturnSet::contains(const mpz_class& n) const {
    if (n < 1) throw InputError("return sets contain positive integers only");
    const unsigned long r =
        mpz_fdiv_ui(n.get_mpz_t(), static_cast<unsigned long>(period));
    return residues[static_cast<std::size_t>(r)] != 0;
}

bool ReturnSet::empty_set() const {
    return std::none_of(residues.begin(), residues.end(), [](char c) { return c != 0; });
}

ReturnSet ReturnSet::canonical() const {
    for (long d = 1; d < period; ++d) {
        if (period % d != 0) continue;
        bool ok = true;
        for (long r = d; r < period && ok; ++r)
            ok = residues[static_cast<std::size_t>(r)] ==
                 residues[static_cast<std::size_t>(r % d)];
        if (ok)
            return ReturnSet{d, std::vector<char>(residues.begin(), residues.begin() + d)};
    }
    return *this;
}

bool ReturnSet::operator==(const ReturnSet& other) const {
    const ReturnSet a = canonical();
    const ReturnSet b = other.canonical();
    return a.period == b.period && a.residues == b.residues;
}

std::string to_string(const ReturnSet& rs) {
    const ReturnSet c = rs.canonical();
    if (c.empty_set()) return "empty";
    std::ostringstream os;
    os << "period=" << c.period << " residues={";
    bool first = true;
    for (long r = 0; r < c.period; ++r) {
        if (!c.residues[static_cast<std::size_t>(r)]) continue;
        if (!first) os << ',';
        os << r;
        first = false;
    }
    os << '}';
    return os.str();
}

long perm_order(const std::vector<int>& perm, long cap) {
    std::vector<char> seen(perm.size(), 0);
    long order = 1;
    for (std::size_t x = 0; x < perm.size(); ++x) {
        if (seen[x]) continue;
        long len = 0;
        std::size_t y = x;
        while (!seen[y]) {
            seen[y] = 1;
            y = static_cast<std::size_t>(perm[y]);
            ++len;
        }
        const long g = std::gcd(order, len);
        if ((order / g) > cap / len)
            throw CapExceeded("permutation order exceeds cap " + std::to_string(cap));
        order = order / g * len;
    }
    return order;
}

FiniteMPS mps_rotation(int d) {
    if (d < 1) throw InputError("rotation needs d >= 1");
    if (d > kPointCap)
        throw CapExceeded("rotation size exceeds cap " + std::to_string(kPointCap));
    FiniteMPS s;
    s.size = d;
    s.perm.resize(static_cast<std::size_t>(d));
    for (int x = 0; x < d; ++x) s.perm[static_cast<std::size_t>(x)] = (x + 1) % d;
    mpq_class m(1, d);
    m.canonicalize();
    s.mass.assign(static_cast<std::size_t>(d), m);
    return s;
}

FiniteMPS mps_product(const FiniteMPS& s1, const FiniteMPS& s2, int point_cap) {
    validate(s1);
    validate(s2);
    const long long total = static_cast<long long>(s1.size) * s2.size;
    if (total > point_cap)
        throw CapExceeded("product has " + std::to_string(total) +
                          " points, cap is " + std::to_string(point_cap));
    FiniteMPS p;
    p.size = static_cast<int>(total);
    p.perm.resize(static_cast<std::size_t>(total));
    p.mass.resize(static_cast<std::size_t>(total));
    for (int x = 0; x < s1.size; ++x) {
        for (int y = 0; y < s2.size; ++y) {
            const std::size_t i = static_cast<std::size_t>(x) *
                                      static_cast<std::size_t>(s2.size) +
                                  static_cast<std::size_t>(y);
            p.perm[i] = s1.perm[static_cast<std::size_t>(x)] * s2.size +
                        s2.perm[static_cast<std::size_t>(y)];
            p.mass[i] = s1.mass[static_cast<std::size_t>(x)] *
                        s2.mass[static_cast<std::size_t>(y)];
        }
    }
    return p;
}

FiniteMPS mps_power(const FiniteMPS& s, long m) {
    validate(s);
    if (m < 1) throw InputError("power exponent must be >= 1");
    FiniteMPS p;
    p.size = s.size;
    p.mass = s.mass;
    p.perm.resize(static_cast<std::size_t>(s.size));
    std::vector<char> seen(static_cast<std::size_t>(s.size), 0);
    std::vector<int> cycle;
    for (int x = 0; x < s.size; ++x) {
        if (seen[static_cast<std::size_t>(x)]) continue;
        cycle.clear();
        int y = x;
        while (!seen[static_cast<std::size_t>(y)]) {
            seen[static_cast<std::size_t>(y)] = 1;
            cycle.push_back(y);
            y = s.perm[static_cast<std::size_t>(y)];
        }
        const long len = static_cast<long>(cycle.size());
        const long shift = m % len;
        for (long j = 0; j < len; ++j)
            p.perm[static_cast<std::size_t>(cycle[static_cast<std::size_t>(j)])] =
                cycle[static_cast<std::size_t>((j + shift) % len)];
    }
    return p;
}

ReturnSet return_set(const FiniteMPS& s, const MeasurableSet& a,
                     const MeasurableSet& b) {
    return multi_return_set(s, {a, b});
}

ReturnSet multi_return_set(const FiniteMPS& s, const std::vector<MeasurableSet>& sets) {
    validate(s);
    if (sets.empty()) throw InputError("need at least one set");
    for (const MeasurableSet& a : sets) require_set_size(s, a);

    const long period = perm_order(s.perm);
    const long long work =
        period * static_cast<long long>(s.size) * static_cast<long long>(sets.size());
    if (work > 400000000LL)
        throw CapExceeded("return set computation needs " + std::to_string(work) +
                          " steps");

    ReturnSet rs;
    rs.period = period;
    rs.residues.assign(static_cast<std::size_t>(period), 0);

    // sigma holds T^r as an array; membership of residue r only needs
    // iterates of sigma since T^{i r} = (T^r)^i.
    std::vector<int> sigma(static_cast<std::size_t>(s.size));
    std::iota(sigma.begin(), sigma.end(), 0);
    for (long r = 0; r < period; ++r) {
        bool hit = false;
        for (int x = 0; x < s.size && !hit; ++x) {
            if (!sets[0].contains(x)) continue;
            if (!(s.mass[static_cast<std::size_t>(x)] > 0)) continue;
            int y = x;
            bool ok = true;
            for (std::size_t i = 1; i < sets.size(); ++i) {
                y = sigma[static_cast<std::size_t>(y)];
                if (!sets[i].contains(y)) {
                    ok = false;
                    break;
                }
            }
            hit = ok;
        }
        rs.residues[static_cast<std::size_t>(r)] = hit ? 1 : 0;
        for (int x = 0; x < s.size; ++x)
            sigma[static_cast<std::size_t>(x)] =
                s.perm[static_cast<std::size_t>(sigma[static_cast<std::size_t>(x)])];
    }
    return rs;
}

long pigeonhole_r(const mpq_class& mu) {
    if (!(mu > 0) || mu > 1) throw InputError("measure must lie in (0, 1]");
    const mpz_class q = mu.get_den() / mu.get_num();
    if (!q.fits_slong_p()) throw CapExceeded("pigeonhole bound does not fit a long");
    return q.get_si() + 1;
}

ReturnSet dilation_preimage(const ReturnSet& rs, long m) {
    if (m < 1) throw InputError("dilation factor must be >= 1");
    ReturnSet out;
    out.period = rs.period;
    out.residues.assign(static_cast<std::size_t>(rs.period), 0);
    const long mm = m % rs.period;
    for (long r = 0; r < rs.period; ++r)
        out.residues[static_cast<std::size_t>(r)] =
            rs.residues[static_cast<std::size_t>((mm * r) % rs.period)];
    return out.canonical();
}

IprReport check_ipr_star(const ReturnSet& rs, int r,
                         const std::vector<Sequence>& trials) {
    if (r < 1) throw InputError("r must be positive");
    IprReport report;
    report.trials.reserve(trials.size());
    for (const Sequence& seq : trials) {
        if (seq.size() != static_cast<std::size_t>(r))
            throw InputError("trial has " + std::to_string(seq.size()) +
                             " entries, expected " + std::to_string(r));
        IprTrial trial;
        trial.seq = seq;
        const ValueSet sums = fs_enumerate(seq);
        for (const mpz_class& v : sums) {
            if (rs.contains(v)) {
                trial.hit = true;
                trial.witness_sum = v;
                break;
            }
        }
        if (!trial.hit) report.all_hit = false;
        report.trials.push_back(std::move(trial));
    }
    return report;
}

FiniteMPS load_system(std::istream& in) {
    FiniteMPS s;
    if (!(in >> s.size)) throw InputError("system file: missing point count");
    if (s.size < 1 || s.size > kPointCap)
        throw InputError("system file: bad point count " + std::to_string(s.size));
    s.perm.resize(static_cast<std::size_t>(s.size));
    for (int x = 0; x < s.size; ++x)
        if (!(in >> s.perm[static_cast<std::size_t>(x)]))
            throw InputError("system file: missing permutation image " +
                             std::to_string(x));
    s.mass.resize(static_cast<std::size_t>(s.size));
    for (int x = 0; x < s.size; ++x) {
        std::string tok;
        if (!(in >> tok)) throw InputError("system file: missing mass " + std::to_string(x));
        mpq_class m;
        if (mpq_set_str(m.get_mpq_t(), tok.c_str(), 10) != 0)
            throw InputError("system file: bad mass '" + tok + "'");
        if (m.get_den() == 0) throw InputError("system file: zero denominator in '" + tok + "'");
        m.canonicalize();
        s.mass[static_cast<std::size_t>(x)] = m;
    }
    validate(s);
    return s;
}

void save_system(std::ostream& out, const FiniteMPS& s) {
    out << s.size << '\n';
    for (int x = 0; x < s.size; ++x) {
        if (x) out << ' ';
        out << s.perm[static_cast<std::size_t>(x)];
    }
    out << '\n';
    for (int x = 0; x < s.size; ++x) {
        if (x) out << ' ';
        out << s.mass[static_cast<std::size_t>(x)].get_str();
    }
    out << '\n';
}

}  // namespace zigzag
