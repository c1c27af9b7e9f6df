#include "sigma/ring.hpp"

namespace sigma {

namespace {

Int mod_reduce(const Int& a, long long p) {
    Int r = a % p;
    if (r < 0) r += p;
    return r;
}

// Modular inverse via extended Euclid; p prime, a nonzero mod p.
Int mod_inverse(const Int& a0, long long p) {
    Int a = mod_reduce(a0, p), b = p;
    Int x0 = 1, x1 = 0;
    while (b != 0) {
        Int q = a / b;
        Int t = a - q * b; a = b; b = t;
        t = x0 - q * x1; x0 = x1; x1 = t;
    }
    if (a != 1) throw NotAUnit("not invertible mod p");
    return mod_reduce(x0, p);
}

}  // namespace

Rat sc_canon(const RingSpec& ring, const Rat& x) {
    switch (ring.kind) {
        case CoeffKind::Q:
            return x;
        case CoeffKind::Z:
            if (rat_den(x) != 1) throw RingMismatch("non-integer coefficient over Z");
            return x;
        case CoeffKind::Fp: {
            Int num = mod_reduce(rat_num(x), ring.p);
            Int den = mod_reduce(rat_den(x), ring.p);
            if (den == 0) throw RingMismatch("denominator divisible by p");
            if (den != 1) num = mod_reduce(num * mod_inverse(den, ring.p), ring.p);
            return Rat(num);
        }
    }
    return x;
}

bool sc_is_unit(const RingSpec& ring, const Rat& a) {
    if (a == 0) return false;
    if (ring.kind == CoeffKind::Z) return a == 1 || a == -1;
    return true;
}

Rat sc_inv(const RingSpec& ring, const Rat& a) {
    if (!sc_is_unit(ring, a)) throw NotAUnit("coefficient " + a.str() + " over " + ring.str());
    if (ring.kind == CoeffKind::Fp) return Rat(mod_inverse(rat_num(a), ring.p));
    return Rat(1) / a;
}

bool is_prime(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

RingSpec checked_fp(long long p) {
    if (!is_prime(p)) throw SchemaError("p = " + std::to_string(p) + " is not prime");
    return RingSpec::Fp(p);
}

std::optional<Rat> sc_div(const RingSpec& ring, const Rat& a, const Rat& b) {
    if (b == 0) return std::nullopt;
    if (ring.kind == CoeffKind::Z) {
        Int n = rat_num(a), d = rat_num(b);
        if (n % d != 0) return std::nullopt;
        return Rat(n / d);
    }
    if (ring.kind == CoeffKind::Fp) return sc_mul(ring, a, sc_inv(ring, b));
    return a / b;
}

}  // namespace sigma
