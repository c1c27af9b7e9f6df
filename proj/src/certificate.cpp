#include "sigma/certificate.hpp"

namespace sigma {

SigmaCertificate::SigmaCertificate(ComplexPtr c, Character xi_, int k_, Rat eps_, ChainMap a,
                                   ChainHomotopy d)
    : complex(std::move(c)), xi(std::move(xi_)), k(k_), eps(std::move(eps_)), a_map(std::move(a)),
      delta(std::move(d)) {
    if (eps <= 0) throw SigmaError("certificate shift eps must be positive");
    if (k < 0) throw SigmaError("certificate degree bound must be >= 0");
}

ValOrInf certificate_shift(const ChainMap& a, const Character& xi, int k) {
    ValOrInf shift = ValOrInf::infinity();
    for (int i = 0; i <= k && i <= a.top_degree(); ++i) {
        const GrMatrix& m = a.at(i);
        for (int j = 0; j < m.cols(); ++j) {
            ValOrInf v = ValOrInf::infinity();
            for (const auto& [r, x] : m.col(j)) v = min(v, xi_valuation(x, xi));
            shift = min(shift, v);
        }
    }
    return shift;
}

VerifyResult verify_certificate(const SigmaCertificate& cert) {
    return verify_certificate(cert, cert.xi);
}

VerifyResult verify_certificate(const SigmaCertificate& cert, const Character& xi) {
    VerifyResult res;
    const auto& c = cert.complex;
    if (cert.k > c->dim()) {
        res.reason = "degree bound exceeds dim";
        return res;
    }

    if (!cert.a_map.commutes_with_boundaries()) {
        res.reason = "A is not a chain map";
        return res;
    }

    // d delta + delta d = id - A in degrees <= k.
    for (int i = 0; i <= cert.k; ++i) {
        GrMatrix lhs = c->boundary_or_zero(i + 1) * cert.delta.at(i);
        if (i >= 1) lhs = lhs + cert.delta.at(i - 1) * c->boundary_or_zero(i);
        GrMatrix rhs = GrMatrix::identity(c->ring(), c->deck_rank(), c->rank_at(i)) - cert.a_map.at(i);
        if (!(lhs == rhs)) {
            res.reason = "homotopy identity fails";
            res.degree = i;
            return res;
        }
    }

    // Valuation shift on basis columns.
    for (int i = 0; i <= cert.k; ++i) {
        const GrMatrix& m = cert.a_map.at(i);
        for (int j = 0; j < m.cols(); ++j) {
            for (const auto& [r, x] : m.col(j)) {
                ValOrInf v = xi_valuation(x, xi);
                if (v < ValOrInf(cert.eps)) {
                    res.reason = "valuation shift " + v.str() + " below eps = " + cert.eps.str();
                    res.degree = i;
                    res.index = j;
                    return res;
                }
            }
        }
    }

    res.accepted = true;
    return res;
}

SigmaCertificate iterate_certificate(const SigmaCertificate& cert, int m) {
    if (m < 1) throw SigmaError("iterate_certificate needs m >= 1");
    if (m == 1) return cert;
    ChainMap am = iterate(cert.a_map, m);
    // Telescoped homotopy sum_{j<m} A^j delta witnesses id ~ A^m.
    ChainHomotopy h = ChainHomotopy::zero(cert.complex, cert.complex);
    ChainMap pow = ChainMap::identity(cert.complex);
    int dim = cert.complex->dim();
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i + 1 <= dim; ++i) h.at(i) = h.at(i) + pow.at(i + 1) * cert.delta.at(i);
        if (j + 1 < m) pow = compose(cert.a_map, pow);
    }
    return SigmaCertificate(cert.complex, cert.xi, cert.k, cert.eps * m, std::move(am), std::move(h));
}

}  // namespace sigma
