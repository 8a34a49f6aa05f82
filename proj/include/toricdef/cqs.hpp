#pragma once

#include "toricdef/chains.hpp"
#include "toricdef/errors.hpp"
#include "toricdef/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace toricdef {

/// The cyclic quotient singularity Y(n,q) in the standard lattice N = Z^2 with
/// sigma = cone((1,0), (-q,n)). Dual generators w^1 = [0,1], ..., w^e = [n,q].
struct CqsModel {
    long long n = 0;
    long long q = 0;
    int e = 0;
    Chain a_chain;          // (a_2, ..., a_{e-1})
    std::vector<Vec2> w;    // w^1 .. w^e, integral
    Cone2 sigma{Vec2{1, 0}, Vec2{0, 1}};

    long long a_at(int i) const { return a_chain.at(static_cast<std::size_t>(i - 2)); }
    const Vec2& w_at(int i) const { return w.at(static_cast<std::size_t>(i - 1)); }
    /// Ray of sigma meeting the (1,0) end of every segment Q(w^h).
    Vec2 ray_x() const { return {1, 0}; }
    /// Ray of sigma meeting the other end.
    Vec2 ray_far() const { return {Rat(-q), Rat(n)}; }
    bool interior_index(int h) const { return h > 2 && h < e - 1; }
};

/// A degree of M written in the bigraded form [u1, u2] with u1 + q u2 = 0 mod n.
struct PaperCoords {
    Int u1 = 0;
    Int u2 = 0;
    friend bool operator==(const PaperCoords&, const PaperCoords&) = default;
};

inline CqsModel cqs_new(long long n, long long q) {
    if (n <= 2) throw HypersurfaceInput("n = " + std::to_string(n) + " gives a hypersurface (need n >= 3)");
    if (q <= 0 || q >= n) throw InvalidInput("q must satisfy 0 < q < n");
    if (std::gcd(n, q) != 1) throw InvalidInput("n and q must be coprime");
    if (q == n - 1) throw HypersurfaceInput("q = n - 1 gives a hypersurface (A_{n-1} point)");

    CqsModel m;
    m.n = n;
    m.q = q;
    m.a_chain = cf_expand(n, n - q).coeffs;
    m.e = static_cast<int>(m.a_chain.size()) + 2;
    m.sigma = Cone2(Vec2{1, 0}, Vec2{Rat(-q), Rat(n)});
    auto basis = hilbert_basis_2d(m.sigma.dual());
    // Counterclockwise order runs from [n,q] to [0,1]; the model indexes from [0,1].
    std::reverse(basis.begin(), basis.end());
    m.w = std::move(basis);

    ensure(static_cast<int>(m.w.size()) == m.e, "Hilbert basis size differs from embedding dimension");
    ensure(m.w.front() == Vec2{0, 1} && m.w.back() == Vec2{Rat(n), Rat(q)}, "unexpected extremal generators");
    for (int i = 2; i <= m.e - 1; ++i)
        ensure(m.w_at(i - 1) + m.w_at(i + 1) == Rat(m.a_at(i)) * m.w_at(i), "three-term relation fails");
    return m;
}

/// [x, y] in M = Z^2 to the bigraded form [x, n y - q x].
inline PaperCoords to_paper_coords(const Vec2& w, const CqsModel& m) {
    if (!w.is_integral()) throw InvalidInput("to_paper_coords: not a lattice point of M");
    Int x = w.x.num(), y = w.y.num();
    return {x, Int(m.n) * y - Int(m.q) * x};
}

inline Vec2 from_paper_coords(const PaperCoords& u, const CqsModel& m) {
    Int t = Int(m.q) * u.u1 + u.u2;
    if (t % m.n != 0) throw InvalidInput("from_paper_coords: congruence condition fails");
    return {Rat(u.u1), Rat(Int(t / m.n))};
}

/// N-side conversion: v in Z^2 to the lattice Z^2 + Z (1/n)(1,q) with sigma the first quadrant.
inline Vec2 to_paper_n(const Vec2& v, const CqsModel& m) {
    Rat v2 = v.y / Rat(m.n);
    return {v.x + Rat(m.q) * v2, v2};
}

inline std::vector<ZeroChain> enumerate_K(const CqsModel& m) { return enumerate_K(m.a_chain); }

inline ZeroChain special_k(const CqsModel& m, int h) { return special_k(m.a_chain, h); }

/// T-singularity: the chain equals some k in K except for a single entry raised by m >= 0.
inline bool is_t_singularity(const CqsModel& m) {
    for (const auto& k : enumerate_K(m)) {
        int diff = 0;
        for (std::size_t j = 0; j < k.k.size(); ++j)
            if (k.k[j] != m.a_chain[j]) ++diff;
        if (diff <= 1) return true;
    }
    return false;
}

inline bool is_rdp(const CqsModel& m) { return is_rdp(m.a_chain); }

}  // namespace toricdef
