#pragma once

#include "toricdef/chains.hpp"
#include "toricdef/errors.hpp"
#include "toricdef/totalspace.hpp"

#include <string>
#include <vector>

namespace toricdef {

enum class Location { Origin, OffOrigin };

struct FiberPoint {
    Chain raw;            // chain as read off the deformation, before blowing down
    NormalForm form;
    long long multiplicity = 1;
    Location location = Location::Origin;
};

/// Singularities of the general fiber. `entries` holds the singular points only; `raw` keeps
/// every point the formula produces, smooth ones included.
struct SingularityList {
    std::vector<FiberPoint> entries;
    std::vector<FiberPoint> raw;

    bool smooth() const { return entries.empty(); }
};

/// "A_m" for a length-one normal form (m), the chain otherwise.
inline std::string describe(const NormalForm& nf) {
    switch (nf.kind) {
        case NormalKind::Smooth: return "smooth";
        case NormalKind::Invalid: return "invalid";
        case NormalKind::Singular: break;
    }
    if (nf.chain.size() == 1) return "A_" + std::to_string(nf.chain[0] - 1);
    std::string s = "(";
    for (std::size_t i = 0; i < nf.chain.size(); ++i) s += (i ? "," : "") + std::to_string(nf.chain[i]);
    return s + ")";
}

namespace detail {
inline void add_point(SingularityList& out, Chain raw, long long mult, Location loc) {
    FiberPoint pt{raw, blow_down(raw), mult, loc};
    ensure(pt.form.kind != NormalKind::Invalid, "fiber chain does not blow down");
    out.raw.push_back(pt);
    if (pt.form.kind == NormalKind::Singular) out.entries.push_back(std::move(pt));
}
}  // namespace detail

inline SingularityList general_fiber(const Deformation& def) {
    const Chain& a = def.model.a_chain;
    const auto hi = static_cast<std::size_t>(def.h() - 2);
    SingularityList out;
    if (!def.bar()) {
        Chain origin = a;
        origin[hi] -= def.d() * def.p();
        detail::add_point(out, origin, 1, Location::Origin);
        detail::add_point(out, Chain{def.d()}, def.p(), Location::OffOrigin);
    } else {
        Chain origin(a.begin() + static_cast<std::ptrdiff_t>(hi), a.end());
        origin[0] -= def.d();
        Chain other(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(hi));
        other.push_back(def.d());
        detail::add_point(out, origin, 1, Location::Origin);
        detail::add_point(out, other, 1, Location::OffOrigin);
    }
    return out;
}

/// The general fiber is smooth. Checks the necessary parameter conditions whenever it is.
inline bool is_smoothing(const Deformation& def) {
    bool smooth = general_fiber(def).smooth();
    if (smooth) {
        if (!def.bar())
            ensure(def.d() == 1 && def.p() == def.model.a_at(def.h()) - 1, "smoothing with d != 1 or p != a_h - 1");
        else
            ensure(def.model.a_at(def.h()) == 2 && def.d() == 1, "Dbar smoothing with a_h != 2 or d != 1");
    }
    return smooth;
}

}  // namespace toricdef
