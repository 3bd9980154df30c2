#ifndef CRALG_SIGN_TABLE_HPP
#define CRALG_SIGN_TABLE_HPP

#include <algorithm>
#include <vector>

#include "cralg/virtual_roots.hpp"

namespace cralg {

struct SignTableRow {
    bool is_point = false;
    AlgReal left, right;  // equal for point rows
    int sign = 0;
};

struct ClosedInterval {
    AlgReal lo, hi;
};

/// Sorts and merges overlapping or touching closed intervals.
inline std::vector<ClosedInterval> merge_intervals(std::vector<ClosedInterval> v) {
    std::sort(v.begin(), v.end(), [](const ClosedInterval& a, const ClosedInterval& b) { return a.lo < b.lo; });
    std::vector<ClosedInterval> out;
    for (auto& iv : v) {
        if (!out.empty() && iv.lo <= out.back().hi) {
            if (iv.hi > out.back().hi) out.back().hi = iv.hi;
        } else {
            out.push_back(iv);
        }
    }
    return out;
}

/// Every interval of `inner` lies inside one interval of the merged `outer`.
inline bool intervals_contain(const std::vector<ClosedInterval>& outer, const std::vector<ClosedInterval>& inner) {
    auto merged = merge_intervals(outer);
    for (const auto& iv : inner) {
        bool found = false;
        for (const auto& o : merged)
            if (o.lo <= iv.lo && iv.hi <= o.hi) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

inline bool same_union(const std::vector<ClosedInterval>& a, const std::vector<ClosedInterval>& b) {
    auto ma = merge_intervals(a), mb = merge_intervals(b);
    if (ma.size() != mb.size()) return false;
    for (std::size_t i = 0; i < ma.size(); ++i)
        if (ma[i].lo != mb[i].lo || ma[i].hi != mb[i].hi) return false;
    return true;
}

struct SignTable {
    Rational window;  // rows cover [-window, window]
    std::vector<SignTableRow> rows;
    /// {f >= 0} within the window, as disjoint closed intervals
    std::vector<ClosedInterval> nonneg;
    /// virtual-root-only description of the closure of {f >= 0} ∪ Vr_f, within the window
    std::vector<ClosedInterval> vr_approx;
    std::vector<AlgReal> virtual_roots;
    bool approx_contains_nonneg = false;
};

inline SignTable sign_table(const Poly& f) {
    if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "sign table of zero");
    SignTable st;
    int sgn_lc = sgn(f.lc());
    if (f.degree() == 0) {
        st.window = 1;
    } else {
        Poly g = f.monic();
        st.window = root_bound(g) + 1;
    }
    AlgReal lo = AlgReal::rational(-st.window), hi = AlgReal::rational(st.window);

    std::vector<AlgReal> pts = {lo};
    if (f.degree() >= 1)
        for (const auto& r : isolate_real_roots(f)) pts.push_back(r);
    pts.push_back(hi);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        st.rows.push_back({true, pts[i], pts[i], sign_at(f, pts[i])});
        if (i + 1 < pts.size())
            st.rows.push_back({false, pts[i], pts[i + 1], f.sign_at(rational_between(pts[i], pts[i + 1]))});
    }

    // {f >= 0}: maximal runs of rows with sign >= 0
    for (std::size_t i = 0; i < st.rows.size();) {
        if (st.rows[i].sign < 0) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < st.rows.size() && st.rows[j + 1].sign >= 0) ++j;
        st.nonneg.push_back({st.rows[i].left, st.rows[j].right});
        i = j + 1;
    }

    if (f.degree() >= 1) {
        VirtualRootTable t = virtual_roots(f.monic());
        int d = t.degree;
        st.virtual_roots = t.rows.back();
        auto bracket = [&](int k) {
            if (k <= 0) return lo;
            if (k > d) return hi;
            return t.rho(d, k);
        };
        for (int k = 0; k <= d; ++k) {
            // sign of g on (ρ_k, ρ_{k+1}) is (-1)^{d-k}
            int s = ((d - k) % 2 == 0 ? 1 : -1) * sgn_lc;
            if (s > 0) st.vr_approx.push_back({bracket(k), bracket(k + 1)});
        }
        for (const auto& r : st.virtual_roots) st.vr_approx.push_back({r, r});
        st.vr_approx = merge_intervals(st.vr_approx);
    } else if (sgn_lc > 0) {
        st.vr_approx.push_back({lo, hi});
    }
    st.approx_contains_nonneg = intervals_contain(st.vr_approx, st.nonneg);
    return st;
}

} // namespace cralg

#endif // CRALG_SIGN_TABLE_HPP
