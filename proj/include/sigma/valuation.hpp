#ifndef SIGMA_VALUATION_HPP
#define SIGMA_VALUATION_HPP

#include "sigma/complex.hpp"

namespace sigma {

// A valuation on a based free complex extending xi: determined by the basis
// values, extended to all chains by the min rule
//   v(sum a_j x_j) = min_j (v_xi(a_j) + v(x_j)).
class Valuation {
public:
    Valuation(Character xi, std::vector<std::vector<Rat>> basis_values)
        : xi_(std::move(xi)), basis_values_(std::move(basis_values)) {}

    const Character& direction() const { return xi_; }
    const Rat& basis_value(int degree, int index) const {
        return basis_values_.at(static_cast<size_t>(degree)).at(static_cast<size_t>(index));
    }
    int top_degree() const { return static_cast<int>(basis_values_.size()) - 1; }

    ValOrInf of_chain(int degree, const std::vector<GroupRingElem>& coords) const;

private:
    Character xi_;
    std::vector<std::vector<Rat>> basis_values_;
};

// The standard construction: v(x) = 0 on degree-0 basis, then degree by
// degree v(x) = 0 if dx = 0, else v(x) = v(dx).
Valuation standard_valuation(const BasedFreeComplex& c, const Character& xi);

// Checks the valuation axioms that are finitely checkable on the basis,
// in particular v(da) >= v(a); returns an explanation on failure.
std::optional<std::string> check_valuation_axioms(const BasedFreeComplex& c, const Valuation& v);

}  // namespace sigma

#endif
