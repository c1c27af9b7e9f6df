#include "sigma/lattice.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>

namespace sigma {

LatticePoint lattice_add(const LatticePoint& a, const LatticePoint& b) {
    if (a.size() != b.size()) throw DimensionMismatch("lattice_add");
    LatticePoint r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

LatticePoint lattice_sub(const LatticePoint& a, const LatticePoint& b) {
    if (a.size() != b.size()) throw DimensionMismatch("lattice_sub");
    LatticePoint r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

LatticePoint lattice_neg(const LatticePoint& a) {
    LatticePoint r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

LatticePoint lattice_zero(int rank) { return LatticePoint(static_cast<size_t>(rank), 0); }

Character Character::from_rationals(const std::vector<Rat>& coeffs) {
    if (coeffs.empty()) throw SigmaError("character of rank 0");
    bool nonzero = false;
    for (const auto& c : coeffs) nonzero = nonzero || c != 0;
    if (!nonzero) throw SigmaError("character must be nonzero");

    // Positive rescaling to a primitive integer vector.
    Int l = 1;
    for (const auto& c : coeffs) l = boost::multiprecision::lcm(l, rat_den(c));
    std::vector<Int> ints(coeffs.size());
    Int g = 0;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        ints[i] = rat_num(coeffs[i]) * (l / rat_den(coeffs[i]));
        g = boost::multiprecision::gcd(g, ints[i]);
    }
    Character chi;
    chi.coeffs_.resize(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) chi.coeffs_[i] = ints[i] / g;
    return chi;
}

Character Character::from_ints(const std::vector<long long>& coeffs) {
    std::vector<Rat> q(coeffs.begin(), coeffs.end());
    return from_rationals(q);
}

Rat Character::eval(const LatticePoint& g) const {
    if (g.size() != coeffs_.size()) throw DimensionMismatch("xi_eval");
    Int acc = 0;
    for (size_t i = 0; i < g.size(); ++i) acc += coeffs_[i] * g[i];
    return Rat(acc);
}

Character Character::negated() const {
    Character chi = *this;
    for (auto& c : chi.coeffs_) c = -c;
    return chi;
}

void Character::set_form(const std::vector<std::vector<Rat>>& form) {
    if (form.size() != coeffs_.size()) throw DimensionMismatch("inner product form");
    for (const auto& row : form)
        if (row.size() != coeffs_.size()) throw DimensionMismatch("inner product form");
    form_ = form;
}

Rat Character::norm_sq(const LatticePoint& g) const {
    if (g.size() != coeffs_.size()) throw DimensionMismatch("norm_sq");
    if (form_.empty()) {
        Int acc = 0;
        for (auto e : g) acc += Int(e) * e;
        return Rat(acc);
    }
    Rat acc = 0;
    for (size_t i = 0; i < g.size(); ++i)
        for (size_t j = 0; j < g.size(); ++j) acc += form_[i][j] * g[i] * g[j];
    return acc;
}

Rat Character::dist_sq(const LatticePoint& g, const LatticePoint& h) const {
    return norm_sq(lattice_sub(g, h));
}

std::string Character::str() const {
    std::ostringstream os;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) os << ",";
        os << coeffs_[i];
    }
    return os.str();
}

}  // namespace sigma
