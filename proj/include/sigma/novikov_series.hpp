#ifndef SIGMA_NOVIKOV_SERIES_HPP
#define SIGMA_NOVIKOV_SERIES_HPP

#include "sigma/group_ring.hpp"

namespace sigma {

// Windowed element of the Novikov-Sikorav completion in the direction xi,
// realized as "supports bounded below in xi-value".  All terms with xi-value
// in [v0, v0 + window] are stored exactly; truncated marks whether terms
// beyond the window were discarded.
class NovikovSeries {
public:
    NovikovSeries(Character xi, Rat window, GroupRingElem terms, bool truncated);

    const Character& direction() const { return xi_; }
    const Rat& window() const { return window_; }
    const GroupRingElem& terms() const { return terms_; }
    bool truncated() const { return truncated_; }
    bool is_zero() const { return terms_.is_zero() && !truncated_; }
    ValOrInf valuation() const { return xi_valuation(terms_, xi_); }

    // Exact group-ring element viewed inside the completion.
    static NovikovSeries embed(const GroupRingElem& x, const Character& xi, const Rat& window);

    friend NovikovSeries operator+(const NovikovSeries& a, const NovikovSeries& b);
    friend NovikovSeries operator-(const NovikovSeries& a, const NovikovSeries& b);
    friend NovikovSeries operator*(const NovikovSeries& a, const NovikovSeries& b);

private:
    Character xi_;
    Rat window_;
    GroupRingElem terms_;
    bool truncated_;

    void enforce_window();
};

// Inverse of x in the completion, to xi-value window W past the valuation.
// Requires the xi-lowest part of x to be a single term with unit coefficient;
// throws NotAUnit otherwise.  Computed by factoring x = u*g*(1 - y) with
// v_xi(y) > 0 and summing the geometric series.
NovikovSeries novikov_invert(const GroupRingElem& x, const Character& xi, const Rat& window);

}  // namespace sigma

#endif
