#pragma once

#include "toricdef/lattice.hpp"

#include <algorithm>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace toricdef {

using Chain = std::vector<long long>;

/// A chain k = (k_2, ..., k_{e-1}) representing zero together with its alpha sequence
/// (alpha_1, ..., alpha_e). Chain index i lives at k[i - 2], alpha_i at alpha[i - 1].
struct ZeroChain {
    Chain k;
    std::vector<long long> alpha;

    long long k_at(int i) const { return k.at(static_cast<std::size_t>(i - 2)); }
    long long alpha_at(int i) const { return alpha.at(static_cast<std::size_t>(i - 1)); }
    int e() const { return static_cast<int>(k.size()) + 2; }

    friend bool operator==(const ZeroChain&, const ZeroChain&) = default;
};

namespace detail {
inline long long checked_mul_sub(long long a, long long b, long long c) {
    long long prod = 0, out = 0;
    if (__builtin_mul_overflow(a, b, &prod) || __builtin_sub_overflow(prod, c, &out))
        throw std::overflow_error("alpha sequence overflow");
    return out;
}
}  // namespace detail

/// alpha_1 = 0, alpha_2 = 1, alpha_{i-1} + alpha_{i+1} = k_i alpha_i.
inline std::vector<long long> alpha_seq(std::span<const long long> k) {
    std::vector<long long> alpha{0, 1};
    for (std::size_t j = 0; j < k.size(); ++j) {
        std::size_t i = alpha.size() - 1;
        alpha.push_back(detail::checked_mul_sub(k[j], alpha[i], alpha[i - 1]));
    }
    return alpha;
}

/// Membership in K_{e-2}: the continued fraction is defined and zero and all alphas are >= 0.
/// Evaluated straight from the definition; enumerate_K uses a faster equivalent.
inline bool is_zero_chain(std::span<const long long> k) {
    auto value = cf_eval(k);
    if (!value || *value != 0) return false;
    auto alpha = alpha_seq(k);
    return std::all_of(alpha.begin(), alpha.end(), [](long long a) { return a >= 0; });
}

inline ZeroChain make_zero_chain(Chain k) {
    if (!is_zero_chain(k)) throw std::invalid_argument("chain does not represent zero");
    auto alpha = alpha_seq(k);
    return {std::move(k), std::move(alpha)};
}

/// All zero chains k with 1 <= k_i <= a_i, in lexicographic order.
inline std::vector<ZeroChain> enumerate_K(std::span<const long long> a) {
    std::vector<ZeroChain> out;
    const std::size_t len = a.size();
    if (len == 0) return out;
    Chain k(len);
    // Depth-first over k_i carrying (alpha_{i-1}, alpha_i); interior alphas must stay >= 1
    // and the last one must vanish.
    std::function<void(std::size_t, long long, long long)> rec = [&](std::size_t j, long long prev, long long cur) {
        for (long long v = 1; v <= a[j]; ++v) {
            long long next = v * cur - prev;
            bool last = (j + 1 == len);
            if (last) {
                if (next != 0) continue;
                k[j] = v;
                out.push_back({k, alpha_seq(k)});
            } else {
                if (next < 1) continue;
                k[j] = v;
                rec(j + 1, cur, next);
            }
        }
    };
    rec(0, 0, 1);
    return out;
}

/// (1,2,...,2,1) for e >= 5, (1,1) for e = 4, (0) for e = 3.
inline Chain rdp_chain(int e) {
    if (e < 3) throw std::invalid_argument("rdp_chain: e must be >= 3");
    if (e == 3) return {0};
    Chain c(static_cast<std::size_t>(e - 2), 2);
    c.front() = 1;
    c.back() = 1;
    return c;
}

enum class NormalKind { Smooth, Singular, Invalid };

struct NormalForm {
    NormalKind kind = NormalKind::Smooth;
    Chain chain;  // entries all >= 2 when Singular, empty otherwise

    static NormalForm smooth() { return {NormalKind::Smooth, {}}; }
    static NormalForm invalid() { return {NormalKind::Invalid, {}}; }
    static NormalForm singular(Chain c) { return {NormalKind::Singular, std::move(c)}; }

    friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

/// One elementary blow-down: the entry 1 at `pos` of a chain of length `length` was removed.
struct BlowDownStep {
    std::size_t pos = 0;
    std::size_t length = 0;
};

namespace detail {

inline bool is_terminal_smooth(const Chain& c) {
    return c.empty() || c == Chain{1} || c == Chain{1, 1};
}

inline void apply_blow_down(Chain& c, std::size_t j) {
    const std::size_t len = c.size();
    if (j == 0) {
        c[1] -= 1;
    } else if (j + 1 == len) {
        c[len - 2] -= 1;
    } else {
        c[j - 1] -= 1;
        c[j + 1] -= 1;
    }
    c.erase(c.begin() + static_cast<std::ptrdiff_t>(j));
}

inline void apply_blow_up(Chain& c, const BlowDownStep& s) {
    if (s.pos == 0) {
        c.front() += 1;
        c.insert(c.begin(), 1);
    } else if (s.pos + 1 == s.length) {
        c.back() += 1;
        c.push_back(1);
    } else {
        c[s.pos - 1] += 1;
        c[s.pos] += 1;
        c.insert(c.begin() + static_cast<std::ptrdiff_t>(s.pos), 1);
    }
}

}  // namespace detail

/// Chooses which entry equal to 1 to eliminate next, given the current chain.
using BlowDownOrder = std::function<std::size_t(const Chain&, const std::vector<std::size_t>& ones)>;

inline std::size_t leftmost_one(const Chain&, const std::vector<std::size_t>& ones) { return ones.front(); }

/// Blows a chain down to its normal form, recording the elementary steps in `steps` if given.
inline NormalForm blow_down(Chain c, const BlowDownOrder& order = leftmost_one,
                            std::vector<BlowDownStep>* steps = nullptr) {
    while (true) {
        if (std::any_of(c.begin(), c.end(), [](long long v) { return v < 1; })) return NormalForm::invalid();
        if (detail::is_terminal_smooth(c)) return NormalForm::smooth();
        std::vector<std::size_t> ones;
        for (std::size_t j = 0; j < c.size(); ++j)
            if (c[j] == 1) ones.push_back(j);
        if (ones.empty()) return NormalForm::singular(std::move(c));
        std::size_t j = order(c, ones);
        if (steps) steps->push_back({j, c.size()});
        detail::apply_blow_down(c, j);
    }
}

/// (n, q) with [chain] = n / (n - q) for a chain with all entries >= 2.
inline std::pair<Int, Int> chain_to_nq(std::span<const long long> chain) {
    if (chain.empty() || std::any_of(chain.begin(), chain.end(), [](long long v) { return v < 2; }))
        throw std::invalid_argument("chain_to_nq: entries must be >= 2");
    Rat v = *cf_eval(chain);
    return {v.num(), v.num() - v.den()};
}

/// At most a rational double point: smooth, or an A_{n-1} point (q = n - 1), which in this
/// chain convention is a normal form of length one.
inline bool is_rdp(const Chain& chain) {
    NormalForm nf = blow_down(chain);
    switch (nf.kind) {
        case NormalKind::Smooth: return true;
        case NormalKind::Invalid: return false;
        case NormalKind::Singular: {
            auto [n, q] = chain_to_nq(nf.chain);
            return q == n - 1;
        }
    }
    return false;
}

/// The zero chain with k_h = 1 obtained by blowing (a_2, ..., 1, ..., a_{e-1}) down, taking the
/// RDP chain of the result and blowing both back up. Throws when no k in K(a) has k_h = 1.
inline ZeroChain special_k(std::span<const long long> a, int h) {
    const int e = static_cast<int>(a.size()) + 2;
    if (h < 2 || h > e - 1) throw std::invalid_argument("special_k: index out of range");
    auto all = enumerate_K(a);
    if (std::none_of(all.begin(), all.end(), [&](const ZeroChain& z) { return z.k_at(h) == 1; }))
        throw std::invalid_argument("special_k: no chain in K has k_" + std::to_string(h) + " = 1");

    Chain c(a.begin(), a.end());
    c[static_cast<std::size_t>(h - 2)] = 1;
    std::vector<BlowDownStep> steps;
    Chain reduced = c;
    // Replay the same elimination directly so that the terminal chain is available.
    {
        NormalForm nf = blow_down(c, leftmost_one, &steps);
        if (nf.kind == NormalKind::Invalid) throw std::invalid_argument("special_k: blow-down leaves the valid range");
        for (const auto& s : steps) detail::apply_blow_down(reduced, s.pos);
    }
    Chain k = rdp_chain(static_cast<int>(reduced.size()) + 2);
    Chain back = reduced;
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        detail::apply_blow_up(k, *it);
        detail::apply_blow_up(back, *it);
    }
    if (back != c) throw std::logic_error("special_k: blow-up replay does not restore the chain");
    return make_zero_chain(std::move(k));
}

}  // namespace toricdef
