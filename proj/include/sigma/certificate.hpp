#ifndef SIGMA_CERTIFICATE_HPP
#define SIGMA_CERTIFICATE_HPP

#include "sigma/complex.hpp"

namespace sigma {

// Polynomial-supported witness of Sigma^k membership: a chain map A chain
// homotopic to the identity via delta with
//   d delta + delta d = id - A   in degrees <= k,
//   v(A x) >= v(x) + eps         for basis elements x in degrees <= k,
// where v is the support valuation extending xi (basis values 0).  Exactly
// verifiable irrespective of how it was produced.
struct SigmaCertificate {
    ComplexPtr complex;
    Character xi;
    int k = 0;
    Rat eps;              // > 0, exact rational
    ChainMap a_map;       // A
    ChainHomotopy delta;  // homotopy id ~ A

    SigmaCertificate(ComplexPtr c, Character xi_, int k_, Rat eps_, ChainMap a, ChainHomotopy d);
};

struct VerifyResult {
    bool accepted = false;
    std::string reason;  // on rejection: failing identity and degree/index
    int degree = -1;
    int index = -1;
};

// Exact verification of the homotopy identity and the valuation shift.
VerifyResult verify_certificate(const SigmaCertificate& cert);

// Same check against a caller-supplied direction (used for the openness
// re-verification: the certificate data is reused verbatim, only the shift
// is recomputed).
VerifyResult verify_certificate(const SigmaCertificate& cert, const Character& xi);

// Minimal shift of A over degrees <= k with respect to the support
// valuation of xi; infinity when A vanishes there.
ValOrInf certificate_shift(const ChainMap& a, const Character& xi, int k);

// A -> A^m with the telescoped homotopy sum_{j<m} A^j delta; shift >= m*eps.
SigmaCertificate iterate_certificate(const SigmaCertificate& cert, int m);

}  // namespace sigma

#endif
