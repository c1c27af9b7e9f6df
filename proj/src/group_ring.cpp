#include "sigma/group_ring.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>

namespace sigma {

GroupRingElem GroupRingElem::one(RingSpec ring, int rank) {
    return monomial(ring, lattice_zero(rank), Rat(1));
}

GroupRingElem GroupRingElem::monomial(RingSpec ring, const LatticePoint& g, const Rat& c) {
    GroupRingElem x(ring, static_cast<int>(g.size()));
    x.set(g, c);
    return x;
}

GroupRingElem GroupRingElem::term1(RingSpec ring, long long e, const Rat& c) {
    return monomial(ring, LatticePoint{e}, c);
}

void GroupRingElem::set(const LatticePoint& g, const Rat& c) {
    if (static_cast<int>(g.size()) != rank_) throw DimensionMismatch("term exponent length");
    Rat cc = sc_canon(ring_, c);
    if (cc == 0)
        terms_.erase(g);
    else
        terms_[g] = cc;
}

void GroupRingElem::add_term(const LatticePoint& g, const Rat& c) {
    if (static_cast<int>(g.size()) != rank_) throw DimensionMismatch("term exponent length");
    auto it = terms_.find(g);
    Rat cc = it == terms_.end() ? sc_canon(ring_, c) : sc_add(ring_, it->second, c);
    if (cc == 0) {
        if (it != terms_.end()) terms_.erase(it);
    } else {
        terms_[g] = cc;
    }
}

Rat GroupRingElem::coeff(const LatticePoint& g) const {
    auto it = terms_.find(g);
    return it == terms_.end() ? Rat(0) : it->second;
}

GroupRingElem& GroupRingElem::operator+=(const GroupRingElem& o) {
    if (ring_ != o.ring_) throw RingMismatch("add");
    if (rank_ != o.rank_) throw DimensionMismatch("add");
    for (const auto& [g, c] : o.terms_) add_term(g, c);
    return *this;
}

GroupRingElem& GroupRingElem::operator-=(const GroupRingElem& o) {
    if (ring_ != o.ring_) throw RingMismatch("sub");
    if (rank_ != o.rank_) throw DimensionMismatch("sub");
    for (const auto& [g, c] : o.terms_) add_term(g, sc_neg(ring_, c));
    return *this;
}

GroupRingElem operator*(const GroupRingElem& a, const GroupRingElem& b) {
    if (a.ring_ != b.ring_) throw RingMismatch("mul");
    if (a.rank_ != b.rank_) throw DimensionMismatch("mul");
    GroupRingElem r(a.ring_, a.rank_);
    for (const auto& [g, c] : a.terms_)
        for (const auto& [h, d] : b.terms_) r.add_term(lattice_add(g, h), sc_mul(a.ring_, c, d));
    return r;
}

GroupRingElem GroupRingElem::operator-() const {
    GroupRingElem r(ring_, rank_);
    for (const auto& [g, c] : terms_) r.terms_[g] = sc_neg(ring_, c);
    return r;
}

GroupRingElem GroupRingElem::scaled(const Rat& c) const {
    GroupRingElem r(ring_, rank_);
    if (sc_canon(ring_, c) == 0) return r;
    for (const auto& [g, d] : terms_) r.add_term(g, sc_mul(ring_, d, c));
    return r;
}

GroupRingElem GroupRingElem::shifted(const LatticePoint& s) const {
    GroupRingElem r(ring_, rank_);
    for (const auto& [g, c] : terms_) r.terms_[lattice_add(g, s)] = c;
    return r;
}

GroupRingElem GroupRingElem::with_ring(const RingSpec& to) const {
    GroupRingElem r(to, rank_);
    for (const auto& [g, c] : terms_) r.add_term(g, c);
    return r;
}

GroupRingElem GroupRingElem::mirrored() const {
    GroupRingElem r(ring_, rank_);
    for (const auto& [g, c] : terms_) r.terms_[lattice_neg(g)] = c;
    return r;
}

std::string GroupRingElem::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [g, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.str() << "*t^(";
        for (size_t i = 0; i < g.size(); ++i) {
            if (i) os << ",";
            os << g[i];
        }
        os << ")";
    }
    return os.str();
}

ValOrInf xi_valuation(const GroupRingElem& x, const Character& xi) {
    if (x.is_zero()) return ValOrInf::infinity();
    bool first = true;
    Rat best;
    for (const auto& [g, c] : x.terms()) {
        Rat v = xi.eval(g);
        if (first || v < best) best = v;
        first = false;
    }
    return ValOrInf(best);
}

GroupRingElem lowest_part(const GroupRingElem& x, const Character& xi) {
    if (x.is_zero()) throw ZeroInput("lowest_part");
    Rat v0 = xi_valuation(x, xi).finite();
    GroupRingElem r(x.ring(), x.rank());
    for (const auto& [g, c] : x.terms())
        if (xi.eval(g) == v0) r.set(g, c);
    return r;
}

std::optional<Rat> xi_top(const GroupRingElem& x, const Character& xi) {
    if (x.is_zero()) return std::nullopt;
    bool first = true;
    Rat best;
    for (const auto& [g, c] : x.terms()) {
        Rat v = xi.eval(g);
        if (first || v > best) best = v;
        first = false;
    }
    return best;
}

Rat xi_spread(const GroupRingElem& x, const Character& xi) {
    if (x.is_zero()) return Rat(0);
    return *xi_top(x, xi) - xi_valuation(x, xi).finite();
}

Rat lattice_norm_sq(const GroupRingElem& x, const Character& xi) {
    Rat best = 0;
    for (const auto& [g, c] : x.terms()) {
        Rat n = xi.norm_sq(g);
        if (n > best) best = n;
    }
    return best;
}

Rat lattice_norm_sq(const GroupRingElem& x) {
    if (x.is_zero()) return Rat(0);
    Character id = Character::from_ints(std::vector<long long>(static_cast<size_t>(x.rank()), 1));
    // from_ints normalizes; only the (identity) form matters here.
    return lattice_norm_sq(x, id);
}

Rat diam_sq(const GroupRingElem& a, const GroupRingElem& b, const Character& xi) {
    if (a.is_zero() || b.is_zero()) return Rat(0);
    Rat best = 0;
    for (const auto& [g, c] : a.terms())
        for (const auto& [h, d] : b.terms()) {
            Rat n = xi.dist_sq(g, h);
            if (n > best) best = n;
        }
    return best;
}

Rat diam_sq(const GroupRingElem& a, const GroupRingElem& b) {
    if (a.is_zero() || b.is_zero()) return Rat(0);
    Character id = Character::from_ints(std::vector<long long>(static_cast<size_t>(a.rank()), 1));
    return diam_sq(a, b, id);
}

GroupRingElem truncate_above(const GroupRingElem& x, const Character& xi, const Rat& bound) {
    GroupRingElem r(x.ring(), x.rank());
    for (const auto& [g, c] : x.terms())
        if (xi.eval(g) <= bound) r.set(g, c);
    return r;
}

Int content(const GroupRingElem& x) {
    if (x.is_zero()) return 0;
    if (x.ring().kind != CoeffKind::Z) return 1;
    Int g = 0;
    for (const auto& [p, c] : x.terms()) g = boost::multiprecision::gcd(g, rat_num(c));
    if (g < 0) g = -g;
    return g;
}

}  // namespace sigma
