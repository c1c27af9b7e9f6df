#include "sigma/builders.hpp"
#include "sigma/certificate.hpp"
#include "sigma/valuation.hpp"

#include "support/random_complex.hpp"

#include <doctest.h>

using namespace sigma;

namespace {

ComplexPtr make(const BasedFreeComplex& c) { return std::make_shared<BasedFreeComplex>(c); }

GroupRingElem t_pow(long long e, long long c = 1) {
    return GroupRingElem::term1(RingSpec::Z(), e, Rat(c));
}

// the minimal certificate of the circle in direction +1: A = t id, with the
// straight-line homotopy p -> -e
SigmaCertificate circle_cert(ComplexPtr c) {
    std::vector<GrMatrix> amats;
    for (int i = 0; i <= 1; ++i) {
        GrMatrix a(RingSpec::Z(), 1, c->rank_at(i), c->rank_at(i));
        a.set(0, 0, t_pow(1));
        amats.push_back(a);
    }
    ChainMap A(c, c, amats);
    ChainHomotopy h = ChainHomotopy::zero(c, c);
    h.at(0).set(0, 0, -GroupRingElem::one(RingSpec::Z(), 1));
    return SigmaCertificate(c, Character::from_ints({1}), 1, Rat(1), A, h);
}

}  // namespace

TEST_CASE("validate: circle, bs12 and a tampered complex") {
    CHECK(validate(builtin_complex("circle")).ok);
    CHECK(validate(builtin_complex("bs12")).ok);
    CHECK(validate(builtin_complex("trefoil")).ok);

    // tampered d1 = (1, t-1) against d2 = (t-2, 0)^T
    BasedFreeComplex bad(RingSpec::Z(), 1, {1, 2, 1});
    GrMatrix d1(RingSpec::Z(), 1, 1, 2);
    d1.set(0, 0, GroupRingElem::one(RingSpec::Z(), 1));
    d1.set(0, 1, t_pow(1) - t_pow(0));
    GrMatrix d2(RingSpec::Z(), 1, 2, 1);
    d2.set(0, 0, t_pow(1) - t_pow(0, 2));
    bad.set_boundary(1, d1);
    bad.set_boundary(2, d2);
    auto rep = validate(bad);
    CHECK(!rep.ok);
    CHECK(rep.first_issue->degree == 1);
    CHECK(rep.first_issue->row == 0);
    CHECK(rep.first_issue->col == 0);
}

TEST_CASE("standard_valuation") {
    Character xi = Character::from_ints({1});
    auto circle = builtin_complex("circle");
    Valuation v = standard_valuation(circle, xi);
    CHECK(v.basis_value(0, 0) == Rat(0));
    CHECK(v.basis_value(1, 0) == Rat(0));  // v(t p - p) = min{1, 0}

    // d e = 0 in degree 1 gives v(e) = 0
    BasedFreeComplex c(RingSpec::Z(), 1, {1, 1});
    Valuation v2 = standard_valuation(c, xi);
    CHECK(v2.basis_value(1, 0) == Rat(0));

    auto bs = builtin_complex("bs12");
    Valuation v3 = standard_valuation(bs, xi);
    CHECK(v3.basis_value(2, 0) == Rat(0));  // v((t-2) e_a) = 0

    CHECK(!check_valuation_axioms(circle, v).has_value());
    CHECK(!check_valuation_axioms(bs, v3).has_value());
}

TEST_CASE("verify_certificate on the circle") {
    auto c = make(builtin_complex("circle"));
    SigmaCertificate cert = circle_cert(c);
    CHECK(verify_certificate(cert).accepted);

    // same data with a claimed shift of 2 must be rejected
    SigmaCertificate fake(c, cert.xi, cert.k, Rat(2), cert.a_map, cert.delta);
    auto res = verify_certificate(fake);
    CHECK(!res.accepted);
    CHECK(res.reason.find("shift") != std::string::npos);

    // zero complex: the empty certificate verifies vacuously
    auto zero = make(BasedFreeComplex(RingSpec::Z(), 1, {0}));
    SigmaCertificate empty(zero, Character::from_ints({1}), 0, Rat(1), ChainMap::identity(zero),
                           ChainHomotopy::zero(zero, zero));
    CHECK(verify_certificate(empty).accepted);

    CHECK_THROWS(SigmaCertificate(c, cert.xi, 1, Rat(0), cert.a_map, cert.delta));
}

TEST_CASE("compose and iterate") {
    auto c = make(builtin_complex("circle"));
    SigmaCertificate cert = circle_cert(c);
    ChainMap id = ChainMap::identity(c);
    CHECK(compose(cert.a_map, id) == cert.a_map);
    ChainMap cubed = iterate(cert.a_map, 3);
    CHECK(cubed.at(0).entry(0, 0) == t_pow(3));
    CHECK(certificate_shift(cubed, cert.xi, 1) == ValOrInf(Rat(3)));
}

TEST_CASE("iterate_certificate: telescoped homotopy and proportional shift") {
    auto c = make(builtin_complex("circle"));
    SigmaCertificate cert = circle_cert(c);
    for (int m : {2, 3, 5}) {
        SigmaCertificate it = iterate_certificate(cert, m);
        CHECK(verify_certificate(it).accepted);
        CHECK(it.eps == Rat(m));
        // id - A^m is null-homotopic via the telescoped homotopy
        CHECK(check_homotopy(it.delta, ChainMap::identity(c), it.a_map));
    }
}

TEST_CASE("check_homotopy") {
    auto c = make(builtin_complex("circle"));
    SigmaCertificate cert = circle_cert(c);
    CHECK(check_homotopy(cert.delta, ChainMap::identity(c), cert.a_map));
    CHECK(!check_homotopy(cert.delta, cert.a_map, cert.a_map));
}

TEST_CASE("tensor_coefficients") {
    auto bs = builtin_complex("bs12");
    auto bq = tensor_coefficients(bs, RingSpec::Q());
    CHECK(bq.ring().kind == CoeffKind::Q);
    CHECK(validate(bq).ok);
    CHECK(bq.boundary(2).entry(0, 0).coeff({0}) == Rat(-2));

    auto b2 = tensor_coefficients(bs, RingSpec::Fp(2));
    CHECK(validate(b2).ok);
    // t - 2 reduces to t
    CHECK(b2.boundary(2).entry(0, 0) == GroupRingElem::term1(RingSpec::Fp(2), 1, Rat(1)));

    BasedFreeComplex z(RingSpec::Z(), 1, {1, 1});
    auto z2 = tensor_coefficients(z, RingSpec::Fp(3));
    CHECK(z2.boundary(1).is_zero());
}

TEST_CASE("random complexes satisfy dd = 0 by construction") {
    testing::Rng rng(3);
    for (int it = 0; it < 40; ++it) {
        int rank = rng.uniform(1, 2);
        auto c = testing::random_complex(rng, RingSpec::Z(), rank, 3, 4);
        CHECK(validate(c).ok);
    }
}
