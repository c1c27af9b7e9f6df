#include "sigma/novikov_series.hpp"

namespace sigma {

NovikovSeries::NovikovSeries(Character xi, Rat window, GroupRingElem terms, bool truncated)
    : xi_(std::move(xi)), window_(std::move(window)), terms_(std::move(terms)), truncated_(truncated) {
    if (window_ <= 0) throw SigmaError("window must be positive");
    enforce_window();
}

void NovikovSeries::enforce_window() {
    if (terms_.is_zero()) return;
    Rat v0 = xi_valuation(terms_, xi_).finite();
    GroupRingElem kept = truncate_above(terms_, xi_, v0 + window_);
    if (!(kept == terms_)) {
        terms_ = kept;
        truncated_ = true;
    }
}

NovikovSeries NovikovSeries::embed(const GroupRingElem& x, const Character& xi, const Rat& window) {
    return NovikovSeries(xi, window, x, false);
}

NovikovSeries operator+(const NovikovSeries& a, const NovikovSeries& b) {
    if (!a.xi_.same_direction(b.xi_)) throw SigmaError("series direction mismatch");
    Rat w = a.window_ < b.window_ ? a.window_ : b.window_;
    // A truncated summand only guarantees terms up to its own valuation+window.
    GroupRingElem sum = a.terms_ + b.terms_;
    bool trunc = a.truncated_ || b.truncated_;
    Rat cap;
    bool have_cap = false;
    if (a.truncated_ && !a.terms_.is_zero()) {
        cap = xi_valuation(a.terms_, a.xi_).finite() + a.window_;
        have_cap = true;
    }
    if (b.truncated_ && !b.terms_.is_zero()) {
        Rat c2 = xi_valuation(b.terms_, b.xi_).finite() + b.window_;
        cap = have_cap ? (c2 < cap ? c2 : cap) : c2;
        have_cap = true;
    }
    if (have_cap) sum = truncate_above(sum, a.xi_, cap);
    return NovikovSeries(a.xi_, w, sum, trunc);
}

NovikovSeries operator-(const NovikovSeries& a, const NovikovSeries& b) {
    return a + NovikovSeries(b.xi_, b.window_, -b.terms_, b.truncated_);
}

NovikovSeries operator*(const NovikovSeries& a, const NovikovSeries& b) {
    if (!a.xi_.same_direction(b.xi_)) throw SigmaError("series direction mismatch");
    Rat w = a.window_ < b.window_ ? a.window_ : b.window_;
    GroupRingElem prod = a.terms_ * b.terms_;
    bool trunc = a.truncated_ || b.truncated_;
    if (trunc && !prod.is_zero()) {
        // Correct terms of the true product reach valuation(a)+valuation(b)+w.
        Rat v0 = xi_valuation(prod, a.xi_).finite();
        prod = truncate_above(prod, a.xi_, v0 + w);
    }
    return NovikovSeries(a.xi_, w, prod, trunc);
}

NovikovSeries novikov_invert(const GroupRingElem& x, const Character& xi, const Rat& window) {
    if (x.is_zero()) throw NotAUnit("zero element");
    GroupRingElem low = lowest_part(x, xi);
    if (low.support_size() != 1)
        throw NotAUnit("xi-lowest part is a tie of " + std::to_string(low.support_size()) +
                       " lattice points");
    const auto& [g, u] = *low.terms().begin();
    if (!sc_is_unit(x.ring(), u))
        throw NotAUnit("xi-lowest coefficient " + u.str() + " over " + x.ring().str());

    // x = u*g*(1 - y) with v_xi(y) > 0; x^{-1} = (sum y^k) * g^{-1} * u^{-1}.
    Rat uinv = sc_inv(x.ring(), u);
    GroupRingElem y = (low - x).shifted(lattice_neg(g)).scaled(uinv);
    GroupRingElem geo = GroupRingElem::one(x.ring(), x.rank());
    GroupRingElem pow = GroupRingElem::one(x.ring(), x.rank());
    bool exact = y.is_zero();
    while (!pow.is_zero()) {
        pow = truncate_above(pow * y, xi, window);
        geo += pow;
    }
    GroupRingElem inv = truncate_above(geo.shifted(lattice_neg(g)).scaled(uinv), xi,
                                       -xi.eval(g) + window);
    return NovikovSeries(xi, window, inv, !exact);
}

}  // namespace sigma
