#ifndef SIGMA_LATTICE_HPP
#define SIGMA_LATTICE_HPP

#include "sigma/errors.hpp"
#include "sigma/numeric.hpp"

#include <string>
#include <vector>

namespace sigma {

// A point of the deck lattice Z^r, stored as its exponent vector.
using LatticePoint = std::vector<long long>;

LatticePoint lattice_add(const LatticePoint& a, const LatticePoint& b);
LatticePoint lattice_sub(const LatticePoint& a, const LatticePoint& b);
LatticePoint lattice_neg(const LatticePoint& a);
LatticePoint lattice_zero(int rank);

// A rational direction xi on the deck lattice, i.e. a point of
// S(G) = (Hom(G,R) - {0}) / R_+.  Stored in the canonical primitive-integer
// form obtained by the unique positive rescaling (signs are preserved:
// antipodal directions stay distinct).  Carries the inner-product form used
// for lattice norms (empty = identity).
class Character {
public:
    Character() = default;
    static Character from_rationals(const std::vector<Rat>& coeffs);
    static Character from_ints(const std::vector<long long>& coeffs);

    int rank() const { return static_cast<int>(coeffs_.size()); }
    const std::vector<Int>& coeffs() const { return coeffs_; }

    // xi(g): dot product of the normalized integer vector with the exponents.
    Rat eval(const LatticePoint& g) const;

    Character negated() const;
    // Equality as directions: normalized forms coincide (same form ignored).
    bool same_direction(const Character& o) const { return coeffs_ == o.coeffs_; }

    void set_form(const std::vector<std::vector<Rat>>& form);
    bool has_form() const { return !form_.empty(); }
    // ||g||^2 with respect to the stored form (identity if none).
    Rat norm_sq(const LatticePoint& g) const;
    Rat dist_sq(const LatticePoint& g, const LatticePoint& h) const;

    std::string str() const;

private:
    std::vector<Int> coeffs_;                 // primitive, not all zero
    std::vector<std::vector<Rat>> form_;      // symmetric positive definite
};

}  // namespace sigma

#endif
