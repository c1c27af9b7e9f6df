#ifndef SIGMA_NUMERIC_HPP
#define SIGMA_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace sigma {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

// Rational extended by +infinity; the value lattice of xi-valuations
// (v^{-1}({inf}) = {0}).
struct ValOrInf {
    std::optional<Rat> v;  // nullopt = +infinity

    ValOrInf() : v(std::nullopt) {}
    explicit ValOrInf(Rat x) : v(std::move(x)) {}

    static ValOrInf infinity() { return ValOrInf(); }
    bool is_infinite() const { return !v.has_value(); }
    const Rat& finite() const { return *v; }

    friend bool operator==(const ValOrInf& a, const ValOrInf& b) {
        if (a.is_infinite() || b.is_infinite()) return a.is_infinite() == b.is_infinite();
        return *a.v == *b.v;
    }
    friend bool operator<(const ValOrInf& a, const ValOrInf& b) {
        if (a.is_infinite()) return false;
        if (b.is_infinite()) return true;
        return *a.v < *b.v;
    }
    friend bool operator<=(const ValOrInf& a, const ValOrInf& b) { return a < b || a == b; }
    friend bool operator>=(const ValOrInf& a, const ValOrInf& b) { return b <= a; }
    friend bool operator>(const ValOrInf& a, const ValOrInf& b) { return b < a; }
    friend ValOrInf operator+(const ValOrInf& a, const Rat& c) {
        if (a.is_infinite()) return a;
        return ValOrInf(*a.v + c);
    }
    friend ValOrInf min(const ValOrInf& a, const ValOrInf& b) { return a < b ? a : b; }

    std::string str() const;
};

inline std::string ValOrInf::str() const {
    if (is_infinite()) return "inf";
    return v->str();
}

}  // namespace sigma

#endif
