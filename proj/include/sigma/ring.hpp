#ifndef SIGMA_RING_HPP
#define SIGMA_RING_HPP

#include "sigma/errors.hpp"
#include "sigma/numeric.hpp"

#include <string>

namespace sigma {

// Coefficient ring of a group-ring element or chain complex: Z, Q or F_p.
enum class CoeffKind { Z, Q, Fp };

struct RingSpec {
    CoeffKind kind = CoeffKind::Z;
    long long p = 0;  // prime, used iff kind == Fp

    bool is_field() const { return kind != CoeffKind::Z; }

    friend bool operator==(const RingSpec& a, const RingSpec& b) {
        return a.kind == b.kind && (a.kind != CoeffKind::Fp || a.p == b.p);
    }
    friend bool operator!=(const RingSpec& a, const RingSpec& b) { return !(a == b); }

    std::string str() const {
        switch (kind) {
            case CoeffKind::Z: return "Z";
            case CoeffKind::Q: return "Q";
            default: return "F" + std::to_string(p);
        }
    }

    static RingSpec Z() { return RingSpec{CoeffKind::Z, 0}; }
    static RingSpec Q() { return RingSpec{CoeffKind::Q, 0}; }
    static RingSpec Fp(long long p) { return RingSpec{CoeffKind::Fp, p}; }
};

// Scalars are stored as exact rationals; over F_p they are canonical
// representatives in [0, p) with denominator 1, over Z denominator 1.
Rat sc_canon(const RingSpec& ring, const Rat& x);
inline Rat sc_add(const RingSpec& ring, const Rat& a, const Rat& b) { return sc_canon(ring, a + b); }
inline Rat sc_sub(const RingSpec& ring, const Rat& a, const Rat& b) { return sc_canon(ring, a - b); }
inline Rat sc_mul(const RingSpec& ring, const Rat& a, const Rat& b) { return sc_canon(ring, a * b); }
inline Rat sc_neg(const RingSpec& ring, const Rat& a) { return sc_canon(ring, -a); }
bool sc_is_unit(const RingSpec& ring, const Rat& a);
Rat sc_inv(const RingSpec& ring, const Rat& a);
// Exact division; returns nullopt when b does not divide a in the ring.
std::optional<Rat> sc_div(const RingSpec& ring, const Rat& a, const Rat& b);

bool is_prime(long long p);
// Fp with a composite modulus is rejected here.
RingSpec checked_fp(long long p);

}  // namespace sigma

#endif
