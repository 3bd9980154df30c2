#ifndef CRALG_STURM_HPP
#define CRALG_STURM_HPP

#include <vector>

#include "cralg/poly.hpp"

namespace cralg {

/// Sturm chain p, p', -rem(...), ... for counting distinct real roots.
class SturmChain {
public:
    explicit SturmChain(const Poly& p) {
        if (p.is_zero()) fail(ErrorCode::ZeroPolynomial, "Sturm chain of zero");
        chain_.push_back(p);
        Poly d = p.derivative();
        if (d.is_zero()) return;
        chain_.push_back(d);
        for (;;) {
            Poly r = -(chain_[chain_.size() - 2] % chain_.back());
            if (r.is_zero()) break;
            chain_.push_back(r);
        }
    }

    int variations(const Rational& x) const {
        int count = 0, last = 0;
        for (const auto& s : chain_) {
            int v = s.sign_at(x);
            if (v == 0) continue;
            if (last != 0 && v != last) ++count;
            last = v;
        }
        return count;
    }

    /// Number of distinct real roots in (a, b], a < b.
    int count(const Rational& a, const Rational& b) const { return variations(a) - variations(b); }

    const Poly& base() const { return chain_.front(); }

private:
    std::vector<Poly> chain_;
};

} // namespace cralg

#endif // CRALG_STURM_HPP
