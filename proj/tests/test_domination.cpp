#include "sigma/builders.hpp"
#include "sigma/decide.hpp"
#include "sigma/domination.hpp"

#include "support/random_complex.hpp"

#include <doctest.h>

using namespace sigma;

namespace {

ComplexPtr make(const std::string& name) {
    return std::make_shared<BasedFreeComplex>(builtin_complex(name));
}

}  // namespace

TEST_CASE("total complex assembly: identities hold on random instances") {
    testing::Rng rng(101);
    for (int it = 0; it < 25; ++it) {
        TotalComplexInput in = testing::random_total_input(rng);
        TotalComplexResult res = total_complex_assemble(in);
        CHECK(validate(res.tp).ok);
        CHECK(validate(res.te).ok);
        CHECK(res.f_total.commutes_with_boundaries());
        CHECK(res.checked.size() >= 4);
    }
}

TEST_CASE("total complex assembly rejects a tampered resolution") {
    testing::Rng rng(7);
    TotalComplexInput in = testing::random_total_input(rng);
    GrMatrix de(RingSpec::Z(), 1, 1, 1);
    GroupRingElem bad(RingSpec::Z(), 1);
    bad.add_term({1}, Rat(1));
    bad.add_term({0}, Rat(-2));  // t - 2 is not a resolution of the trivial module
    de.set(0, 0, bad);
    in.e.set_boundary(1, de);
    CHECK_THROWS_AS(total_complex_assemble(in), SchemaError);

    // breaking the homotopy data must be caught; use the circle so that the
    // tampering is visible through the boundary
    TotalComplexInput in2;
    in2.c = make("circle");
    in2.e = BasedFreeComplex(RingSpec::Z(), 1, {1, 1});
    {
        GrMatrix good(RingSpec::Z(), 1, 1, 1);
        GroupRingElem tm1(RingSpec::Z(), 1);
        tm1.add_term({1}, Rat(1));
        tm1.add_term({0}, Rat(-1));
        good.set(0, 0, tm1);
        in2.e.set_boundary(1, good);
    }
    for (int p = 0; p < 2; ++p) {
        in2.f.push_back(ChainMap::identity(in2.c));
        in2.g.push_back(ChainMap::identity(in2.c));
        in2.l.push_back(ChainHomotopy::zero(in2.c, in2.c));
    }
    CHECK_NOTHROW(total_complex_assemble(in2));
    in2.l[0].at(0).add_to(0, 0, GroupRingElem::one(RingSpec::Z(), 1));
    CHECK_THROWS(total_complex_assemble(in2));
}

TEST_CASE("atlas assembly for the circle") {
    auto c = make("circle");
    std::vector<SigmaCertificate> certs;
    for (long long s : {1LL, -1LL}) {
        SigmaVerdict v = sigma_membership(c, Character::from_ints({s}), 1, RingSpec::Z(), Rat(6));
        REQUIRE(v.status == Status::Yes);
        certs.push_back(*v.certificate);
    }
    Atlas atlas = assemble_atlas(c, 1, certs);
    CHECK(atlas.entries.size() == 2);
    CHECK(atlas.r > 3 * atlas.M * 1);
    CHECK(atlas.M >= 1);
    CHECK(atlas.L >= 1);

    // missing direction is reported
    std::vector<SigmaCertificate> onlyplus = {certs[0]};
    CHECK_THROWS_AS(assemble_atlas(c, 1, onlyplus), MissingDirection);
}

TEST_CASE("push maps on the circle: identities, cutoff zone, norm drop") {
    auto c = make("circle");
    std::vector<SigmaCertificate> certs;
    for (long long s : {1LL, -1LL})
        certs.push_back(*sigma_membership(c, Character::from_ints({s}), 1, RingSpec::Z(), Rat(6))
                             .certificate);
    Atlas atlas = assemble_atlas(c, 1, certs);
    PushMachine machine(atlas);
    const Rat& A = machine.cutoff();
    Rat reach_r = A + 4 * machine.atlas().r;
    long long reach = static_cast<long long>(Int(rat_num(reach_r) / rat_den(reach_r))) + 2;
    for (int deg = 0; deg <= 1; ++deg) {
        for (long long a = -reach; a <= reach; ++a) {
            CellCoset e{0, a};
            CHECK(machine.homotopy_identity_ok(deg, e));
            Rat nu = machine.nu(deg, e);
            const ZChain& ps = machine.psi(deg, e);
            if (nu <= machine.zone()) {
                CHECK(ps == machine.basis(e));
            } else {
                Rat drop = nu - machine.r_push();
                Rat bound = drop > A ? drop : A;  // drop or land in the collar
                if (!ps.empty()) CHECK(machine.nu(deg, ps) <= bound);
                const ZChain& kk = machine.K(deg, e);
                if (!kk.empty()) CHECK(machine.nu(deg + 1, kk) <= nu + machine.m_push());
            }
        }
    }

    // Lemma pusher single instances: phi drops the norm by r/2 on far cells
    const Rat threshold =
        (Rat(3) / 4) * atlas.r + atlas.L * atlas.L / atlas.r + atlas.L * atlas.L / atlas.M;
    Rat far_r = threshold + machine.cutoff();
    long long far = static_cast<long long>(Int(rat_num(far_r) / rat_den(far_r))) + 3;
    for (long long a : {far, -far}) {
        CellCoset e{0, a};
        int i = machine.chart(0, e);
        const AtlasEntry& entry = atlas.entries[static_cast<size_t>(i)];
        ZChain img;
        for (const auto& [y, x] : entry.phi.at(0).col(0))
            for (const auto& [g, coeff] : x.terms()) img[CellCoset{y, a + g[0]}] = coeff;
        CHECK(machine.nu(0, img) <= machine.nu(0, e) - atlas.r / 2);
    }
}

TEST_CASE("finite_type_reduce: circle gives a finite model of the line") {
    auto c = make("circle");
    DominationResult res = finite_type_reduce(c, 1, Rat(6));
    REQUIRE(res.homology.size() == 2);
    CHECK(res.homology[0].free_rank == 1);
    CHECK(res.homology[0].torsion.empty());
    CHECK(res.homology[1].free_rank == 0);
    CHECK(res.homology[1].torsion.empty());

    // interval-exact rank bookkeeping, and the coset-ball upper bound
    const SupportProfile prof = SupportProfile::compute(*c);
    Rat rho = res.constants.ball_radius;
    for (int s = 0; s <= 1; ++s) {
        long long ball = 2 * static_cast<long long>(Int(rat_num(rho) / rat_den(rho))) + 1;
        CHECK(res.d->rank_at(s) <= c->rank_at(s) * ball);
        int expect = 0;
        for (int x = 0; x < c->rank_at(s); ++x) {
            const auto& [lo, hi] = prof.iv[static_cast<size_t>(s)][static_cast<size_t>(x)];
            long long width = hi - lo;
            expect += static_cast<int>(ball - width);
        }
        CHECK(res.d->rank_at(s) == expect);
    }
}

TEST_CASE("finite_type_reduce fails on bs12 at the atlas stage") {
    auto c = make("bs12");
    CHECK_THROWS_AS(finite_type_reduce(c, 2, Rat(12)), MissingDirection);
}

TEST_CASE("build_contraction") {
    auto tre = make("trefoil");
    SigmaCertificate cert = build_contraction(tre, Character::from_ints({1}), 2, Rat(16));
    CHECK(cert.eps >= 1);
    CHECK(verify_certificate(cert).accepted);

    auto bs = make("bs12");
    CHECK_THROWS_AS(build_contraction(bs, Character::from_ints({1}), 1, Rat(12)), NotInSigma);
}

TEST_CASE("atlas from the trefoil certificates (monic at both ends)") {
    auto tre = make("trefoil");
    std::vector<SigmaCertificate> certs;
    for (long long s : {1LL, -1LL})
        certs.push_back(build_contraction(tre, Character::from_ints({s}), 2, Rat(16)));
    Atlas atlas = assemble_atlas(tre, 2, certs);
    CHECK(atlas.entries.size() == 2);
    CHECK(atlas.r > 3 * atlas.M * 2);
}

TEST_CASE("mapping torus of the identity circle map has both directions in Sigma^2") {
    BasedFreeComplex s1(RingSpec::Z(), 1, {1, 1});
    auto mt = std::make_shared<BasedFreeComplex>(
        mapping_torus(s1, ChainMap::identity(std::make_shared<BasedFreeComplex>(s1))));
    for (long long s : {1LL, -1LL}) {
        SigmaVerdict v =
            sigma_membership_retrying(mt, Character::from_ints({s}), 2, RingSpec::Z(), Rat(0), 2);
        CHECK(v.status == Status::Yes);
    }
}
