#ifndef CRALG_LATTICE_SORT_HPP
#define CRALG_LATTICE_SORT_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "cralg/fterm.hpp"

namespace cralg {

/// All k-element subsets of {0..n-1}, in lexicographic order.
inline std::vector<std::vector<int>> subsets_of_size(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

namespace detail {
inline void check_sort_k(std::size_t n, int k) {
    if (n == 0 || k < 1 || k > static_cast<int>(n))
        fail(ErrorCode::KOutOfRange, "sort index " + std::to_string(k) + " outside 1.." + std::to_string(n));
}
} // namespace detail

/// k-th smallest, computed as the inf over k-subsets of the sup of their members.
/// T needs a total order via operator<.
template <class T>
T sort_k(const std::vector<T>& xs, int k) {
    detail::check_sort_k(xs.size(), k);
    const int n = static_cast<int>(xs.size());
    std::optional<T> best;
    for (const auto& s : subsets_of_size(n, k)) {
        T m = xs[s[0]];
        for (int i : s)
            if (m < xs[i]) m = xs[i];
        if (!best || m < *best) best = m;
    }
    return *best;
}

template <class T>
std::vector<T> sort_all(const std::vector<T>& xs) {
    std::vector<T> out;
    for (int k = 1; k <= static_cast<int>(xs.size()); ++k) out.push_back(sort_k(xs, k));
    return out;
}

/// Symbolic inf-of-sups over the k-subsets.
inline FTerm sort_k_term(const std::vector<FTerm>& xs, int k) {
    detail::check_sort_k(xs.size(), k);
    std::vector<FTerm> outer;
    for (const auto& s : subsets_of_size(static_cast<int>(xs.size()), k)) {
        std::vector<FTerm> inner;
        for (int i : s) inner.push_back(xs[i]);
        outer.push_back(FTerm::op(FKind::Sup, inner));
    }
    return FTerm::op(FKind::Inf, outer);
}

/// The dual form: sup over (n-k+1)-subsets of their inf.
inline FTerm sort_k_term_dual(const std::vector<FTerm>& xs, int k) {
    detail::check_sort_k(xs.size(), k);
    const int n = static_cast<int>(xs.size());
    std::vector<FTerm> outer;
    for (const auto& s : subsets_of_size(n, n - k + 1)) {
        std::vector<FTerm> inner;
        for (int i : s) inner.push_back(xs[i]);
        outer.push_back(FTerm::op(FKind::Inf, inner));
    }
    return FTerm::op(FKind::Sup, outer);
}

} // namespace cralg

#endif // CRALG_LATTICE_SORT_HPP
