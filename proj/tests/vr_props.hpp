#ifndef CRALG_TESTS_VR_PROPS_HPP
#define CRALG_TESTS_VR_PROPS_HPP

// Property checks over virtual-root tables, shared by the unit and acceptance suites.
// Each returns an empty string on success, otherwise a description of the first failure.

#include <string>
#include <vector>

#include "cralg/sturm.hpp"
#include "cralg/virtual_roots.hpp"

namespace props {

using namespace cralg;

inline std::string interlacing(const VirtualRootTable& t) {
    for (int d = 2; d <= t.degree; ++d)
        for (int j = 1; j < d; ++j) {
            if (t.rho(d, j) > t.rho(d - 1, j)) return "rho(" + std::to_string(d) + "," + std::to_string(j) + ") above next row";
            if (t.rho(d - 1, j) > t.rho(d, j + 1)) return "rho(" + std::to_string(d - 1) + "," + std::to_string(j) + ") above";
        }
    return {};
}

inline Poly fstar(const VirtualRootTable& t) {
    Poly p = Poly::constant(1);
    for (int delta = 1; delta <= t.degree; ++delta) p = p * t.g[static_cast<std::size_t>(delta)];
    return p;
}

inline std::string membership(const VirtualRootTable& t) {
    Poly fs = fstar(t);
    std::vector<AlgReal> all;
    for (const auto& row : t.rows)
        for (const auto& r : row) {
            if (sign_at(fs, r) != 0) return "virtual root is not a zero of f*";
            all.push_back(r);
        }
    for (const auto& z : isolate_real_roots(fs)) {
        bool hit = false;
        for (const auto& r : all)
            if (r == z) {
                hit = true;
                break;
            }
        if (!hit) return "zero of f* is not a virtual root";
    }
    return {};
}

inline std::string sign_pattern(const VirtualRootTable& t, const std::vector<Rational>& probes) {
    int d = t.degree;
    for (const auto& xi : probes) {
        AlgReal x = AlgReal::rational(xi);
        int below = 0;
        bool on_root = false;
        for (int j = 1; j <= d; ++j) {
            Order o = algreal_compare(t.rho(d, j), x);
            if (o == Order::EQ) on_root = true;
            if (o == Order::LT) ++below;
        }
        if (on_root) continue;
        int expect = ((d - below) % 2 == 0) ? 1 : -1;
        if (t.f.sign_at(xi) != expect) return "sign of f between virtual roots at " + xi.get_str();
    }
    return {};
}

inline std::string bound(const VirtualRootTable& t) {
    AlgReal B = AlgReal::rational(root_bound(t.f));
    for (int j = 1; j <= t.degree; ++j) {
        const AlgReal& r = t.rho(t.degree, j);
        if (r > B || r < B.negated()) return "virtual root outside the bound";
    }
    return {};
}

/// Budan-Fourier locate vs the table, and the Budan-Fourier count vs a Sturm count of
/// the real roots above the probe (excess must be even and nonnegative).
inline std::string budan_fourier(const VirtualRootTable& t, const std::vector<Rational>& probes) {
    int d = t.degree;
    for (const auto& a : probes) {
        int j;
        try {
            j = budan_fourier_locate(t.f, a);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::DerivativeVanishes) continue;
            throw;
        }
        int below = 0;
        for (int k = 1; k <= d; ++k)
            if (t.rho(d, k) < AlgReal::rational(a)) ++below;
        if (below != j) return "Budan-Fourier index disagrees with the table at " + a.get_str();
        int r = d - j;
        // roots above a, counted with multiplicity
        int above = 0;
        for (const auto& z : isolate_real_roots(t.f))
            if (z > AlgReal::rational(a)) above += multiplicity(t.f, z);
        if (r < above || (r - above) % 2 != 0)
            return "sign-change count is not an even excess over the root count at " + a.get_str();
    }
    return {};
}

inline std::string change_of_variable(const Poly& f, const std::vector<Rational>& cs) {
    for (const auto& c : cs)
        if (!check_scale_relation(f, c)) return "scaling relation fails for c = " + c.get_str();
    return {};
}

} // namespace props

#endif
