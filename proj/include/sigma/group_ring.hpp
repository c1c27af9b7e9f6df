#ifndef SIGMA_GROUP_RING_HPP
#define SIGMA_GROUP_RING_HPP

#include "sigma/lattice.hpp"
#include "sigma/ring.hpp"

#include <map>
#include <string>
#include <vector>

namespace sigma {

// Exact sparse element of R[Z^r]: finite term map LatticePoint -> nonzero
// coefficient.  No zero coefficients are ever stored.
class GroupRingElem {
public:
    GroupRingElem() : ring_(RingSpec::Z()), rank_(1) {}
    GroupRingElem(RingSpec ring, int rank) : ring_(ring), rank_(rank) {}

    static GroupRingElem zero(RingSpec ring, int rank) { return GroupRingElem(ring, rank); }
    static GroupRingElem one(RingSpec ring, int rank);
    static GroupRingElem monomial(RingSpec ring, const LatticePoint& g, const Rat& c);
    // Convenience for rank 1: c * t^e.
    static GroupRingElem term1(RingSpec ring, long long e, const Rat& c);

    const RingSpec& ring() const { return ring_; }
    int rank() const { return rank_; }
    bool is_zero() const { return terms_.empty(); }
    size_t support_size() const { return terms_.size(); }
    const std::map<LatticePoint, Rat>& terms() const { return terms_; }

    void set(const LatticePoint& g, const Rat& c);     // canonicalizes, erases zeros
    void add_term(const LatticePoint& g, const Rat& c);
    Rat coeff(const LatticePoint& g) const;

    GroupRingElem& operator+=(const GroupRingElem& o);
    GroupRingElem& operator-=(const GroupRingElem& o);
    friend GroupRingElem operator+(GroupRingElem a, const GroupRingElem& b) { return a += b; }
    friend GroupRingElem operator-(GroupRingElem a, const GroupRingElem& b) { return a -= b; }
    friend GroupRingElem operator*(const GroupRingElem& a, const GroupRingElem& b);
    GroupRingElem operator-() const;
    friend bool operator==(const GroupRingElem& a, const GroupRingElem& b) {
        return a.rank_ == b.rank_ && a.terms_ == b.terms_;
    }

    GroupRingElem scaled(const Rat& c) const;
    GroupRingElem shifted(const LatticePoint& g) const;  // multiplication by g
    // Entrywise coefficient change Z -> Q or Z -> F_p (or identity).
    GroupRingElem with_ring(const RingSpec& to) const;

    // mirror(): t_i -> t_i^{-1} on every variable.
    GroupRingElem mirrored() const;

    std::string str() const;  // human-readable, deterministic

private:
    RingSpec ring_;
    int rank_;
    std::map<LatticePoint, Rat> terms_;
};

// min of xi over the support; +infinity for the zero element.
ValOrInf xi_valuation(const GroupRingElem& x, const Character& xi);
// Terms of minimal xi-value.  Error on zero input.
GroupRingElem lowest_part(const GroupRingElem& x, const Character& xi);
// max xi over the support; -infinity represented as nullopt... zero -> nullopt.
std::optional<Rat> xi_top(const GroupRingElem& x, const Character& xi);
// xi-value spread of the support (0 for zero or single-term elements).
Rat xi_spread(const GroupRingElem& x, const Character& xi);

// ||x||^2 = max ||g||^2 over supp x, with ||0||^2 = 0 (squared exact values).
Rat lattice_norm_sq(const GroupRingElem& x, const Character& xi);
Rat lattice_norm_sq(const GroupRingElem& x);  // identity form
// diam(a,b)^2 = max ||g - h||^2 over support pairs; 0 if either is zero.
Rat diam_sq(const GroupRingElem& a, const GroupRingElem& b, const Character& xi);
Rat diam_sq(const GroupRingElem& a, const GroupRingElem& b);

// Drop all terms with xi-value strictly greater than bound.
GroupRingElem truncate_above(const GroupRingElem& x, const Character& xi, const Rat& bound);

// gcd of coefficients over Z (0 for the zero element).  Field rings: 1 if nonzero.
Int content(const GroupRingElem& x);

}  // namespace sigma

#endif
