#include "sigma/domination.hpp"

#include "sigma/decide.hpp"

#include <algorithm>
#include <sstream>

namespace sigma {

namespace {

long long rat_floor_ll(const Rat& q) {
    Int n = rat_num(q), d = rat_den(q);
    Int f = n >= 0 ? Int(n / d) : Int(-((-n + d - 1) / d));
    return static_cast<long long>(f);
}

long long rat_ceil_ll(const Rat& q) { return -rat_floor_ll(-q); }

Rat rat_max(const Rat& a, const Rat& b) { return a > b ? a : b; }

void zchain_add(ZChain& z, const CellCoset& e, const Rat& c, const RingSpec& ring) {
    if (c == 0) return;
    auto it = z.find(e);
    Rat v = it == z.end() ? sc_canon(ring, c) : sc_add(ring, it->second, c);
    if (v == 0) {
        if (it != z.end()) z.erase(it);
    } else {
        z[e] = v;
    }
}

void zchain_add_chain(ZChain& z, const ZChain& w, const Rat& scale, const RingSpec& ring) {
    for (const auto& [e, c] : w) zchain_add(z, e, sc_mul(ring, c, scale), ring);
}

}  // namespace

SupportProfile SupportProfile::compute(const BasedFreeComplex& c) {
    if (c.deck_rank() != 1) throw UnsupportedRegime("support profiles need deck rank 1");
    SupportProfile p;
    p.iv.resize(static_cast<size_t>(c.dim()) + 1);
    for (int i = 0; i <= c.dim(); ++i) {
        p.iv[static_cast<size_t>(i)].assign(static_cast<size_t>(c.rank_at(i)), {0, 0});
        if (i == 0) continue;
        const GrMatrix& d = c.boundary(i);
        for (int x = 0; x < c.rank_at(i); ++x) {
            long long lo = 0, hi = 0;
            for (const auto& [y, entry] : d.col(x)) {
                const auto& [ylo, yhi] = p.iv[static_cast<size_t>(i - 1)][static_cast<size_t>(y)];
                for (const auto& [g, cc] : entry.terms()) {
                    lo = std::min(lo, g[0] + ylo);
                    hi = std::max(hi, g[0] + yhi);
                }
            }
            p.iv[static_cast<size_t>(i)][static_cast<size_t>(x)] = {lo, hi};
        }
    }
    return p;
}

namespace {

// profile valuation of a Lambda-matrix column, direction eta = +-1
ValOrInf column_profile_val(const GrMatrix& m, int col, const SupportProfile& prof, int tgt_degree,
                            int eta) {
    ValOrInf best = ValOrInf::infinity();
    for (const auto& [y, entry] : m.col(col)) {
        const auto& [lo, hi] = prof.iv[static_cast<size_t>(tgt_degree)][static_cast<size_t>(y)];
        for (const auto& [g, c] : entry.terms()) {
            long long a = g[0];
            long long v = eta > 0 ? a + std::min(lo, hi) : -(a + std::max(lo, hi));
            best = min(best, ValOrInf(Rat(v)));
        }
    }
    return best;
}

Rat cell_profile_val(const SupportProfile& prof, int degree, int cell, int eta) {
    const auto& [lo, hi] = prof.iv[static_cast<size_t>(degree)][static_cast<size_t>(cell)];
    return Rat(eta > 0 ? lo : -hi);
}

// [min, max] occupied by a matrix column as a union of shifted cell intervals
std::optional<std::pair<long long, long long>> column_interval(const GrMatrix& m, int col,
                                                               const SupportProfile& prof,
                                                               int tgt_degree) {
    std::optional<std::pair<long long, long long>> out;
    for (const auto& [y, entry] : m.col(col)) {
        const auto& [lo, hi] = prof.iv[static_cast<size_t>(tgt_degree)][static_cast<size_t>(y)];
        for (const auto& [g, c] : entry.terms()) {
            long long a = g[0] + lo, b = g[0] + hi;
            if (!out)
                out = {a, b};
            else
                out = {std::min(out->first, a), std::max(out->second, b)};
        }
    }
    return out;
}

Rat interval_diam(std::pair<long long, long long> a, std::pair<long long, long long> b) {
    long long d1 = b.second - a.first;
    long long d2 = a.second - b.first;
    return Rat(std::max(d1, d2));
}

}  // namespace

SigmaCertificate build_contraction(ComplexPtr c, const Character& xi, int k, const Rat& window) {
    SigmaVerdict v = sigma_membership_retrying(c, xi, k, c->ring(), window, 2);
    if (v.status != Status::Yes || !v.certificate)
        throw NotInSigma("direction (" + xi.str() + ") is not certified in Sigma^" +
                         std::to_string(k) + " (" + status_str(v.status) + ")");
    return *v.certificate;
}

Atlas assemble_atlas(ComplexPtr c, int n, const std::vector<SigmaCertificate>& certs) {
    if (c->deck_rank() != 1)
        throw UnsupportedRegime("atlas assembly is exact for deck rank 1 (two antipodal caps)");
    if (n > c->dim()) throw DimensionMismatch("n exceeds dim");
    const SigmaCertificate* plus = nullptr;
    const SigmaCertificate* minus = nullptr;
    for (const auto& cert : certs) {
        if (cert.xi.coeffs() == std::vector<Int>{1}) plus = &cert;
        if (cert.xi.coeffs() == std::vector<Int>{-1}) minus = &cert;
    }
    if (!plus) throw MissingDirection("(+1)");
    if (!minus) throw MissingDirection("(-1)");
    for (const auto* cert : {plus, minus}) {
        auto res = verify_certificate(*cert);
        if (!res.accepted) throw SigmaError("atlas certificate rejected: " + res.reason);
        if (cert->k < n) throw MissingDirection("certificate degree bound below n");
    }
    SupportProfile prof = SupportProfile::compute(*c);

    SigmaCertificate cp = *plus, cm = *minus;
    int iterations = 1;
    for (int round = 0; round < 16; ++round) {
        // cap shift r and homotopy defect M in the profile valuation
        ValOrInf rshift = ValOrInf::infinity();
        Rat M(0);
        for (const auto* cert : {&cp, &cm}) {
            int eta = cert->xi.coeffs()[0] > 0 ? 1 : -1;
            for (int l = 0; l <= n; ++l) {
                const GrMatrix& phi = cert->a_map.at(l);
                for (int x = 0; x < phi.cols(); ++x) {
                    ValOrInf v = column_profile_val(phi, x, prof, l, eta);
                    if (!v.is_infinite())
                        rshift = min(rshift, ValOrInf(v.finite() - cell_profile_val(prof, l, x, eta)));
                }
                const GrMatrix& h = cert->delta.at(l);
                for (int x = 0; x < h.cols(); ++x) {
                    ValOrInf v = column_profile_val(h, x, prof, l + 1, eta);
                    if (!v.is_infinite())
                        M = rat_max(M, cell_profile_val(prof, l, x, eta) - v.finite());
                }
            }
        }
        Rat r = rshift.is_infinite() ? Rat(1) : rshift.finite();
        M = rat_max(M, Rat(1));
        if (r > 3 * M * n || round == 15) {
            if (r <= 3 * M * n)
                throw ConstantsInfeasible("could not reach r > 3Mn by iterating certificates");
            // diameter bound L over id, phi, h columns
            Rat L(1);
            for (const auto* cert : {&cp, &cm}) {
                for (int l = 0; l <= n; ++l) {
                    for (int x = 0; x < c->rank_at(l); ++x) {
                        auto xiv = prof.iv[static_cast<size_t>(l)][static_cast<size_t>(x)];
                        L = rat_max(L, Rat(xiv.second - xiv.first));
                        auto p1 = column_interval(cert->a_map.at(l), x, prof, l);
                        if (p1) L = rat_max(L, interval_diam(xiv, *p1));
                        auto p2 = column_interval(cert->delta.at(l), x, prof, l + 1);
                        if (p2) L = rat_max(L, interval_diam(xiv, *p2));
                    }
                }
            }
            Atlas atlas;
            atlas.complex = c;
            atlas.n = n;
            atlas.r = r;
            atlas.M = M;
            atlas.L = L;
            atlas.iterations = iterations;
            for (const auto* cert : {&cp, &cm}) {
                AtlasEntry e;
                e.center = cert->xi;
                e.cos_bound = 1;  // rank-1 caps are the two points of S^0
                e.phi = cert->a_map;
                e.h = cert->delta;
                atlas.entries.push_back(std::move(e));
            }
            return atlas;
        }
        cp = iterate_certificate(cp, 2);
        cm = iterate_certificate(cm, 2);
        iterations *= 2;
    }
    throw ConstantsInfeasible("unreachable");
}

PushMachine::PushMachine(Atlas atlas)
    : atlas_(std::move(atlas)), profile_(SupportProfile::compute(*atlas_.complex)) {
    const Rat& r = atlas_.r;
    const Rat& M = atlas_.M;
    const Rat& L = atlas_.L;
    int n = atlas_.n;
    lprime_ = rat_max(Rat(3) / 4 * r + L * L / r, L * L / M) + (2 * n + 1) * L;
    // A' = L + L' gives sign stability of the L'-thickened support for rank 1
    cutoff_a_ = (L + lprime_) + lprime_;
    // psi of an element just outside the zone can land in the collar
    // [A_zone, A_zone + (3/2)M]; the exported cutoff absorbs it
    cutoff_star_ = cutoff_a_ + Rat(3) / 2 * M;
    r_push_ = r / 2 - Rat(3) / 2 * n * M;
    m_push_ = Rat(3) / 2 * M * (n + 1);
    if (r_push_ <= 0) throw ConstantsInfeasible("push constant r <= 0 (atlas r too small)");
    psi_memo_.resize(static_cast<size_t>(atlas_.n) + 1);
    k_memo_.resize(static_cast<size_t>(atlas_.n) + 1);
}

Rat PushMachine::nu(int degree, const CellCoset& e) const {
    const auto& [lo, hi] = profile_.iv[static_cast<size_t>(degree)][static_cast<size_t>(e.cell)];
    long long a = std::max(std::llabs(e.coset + lo), std::llabs(e.coset + hi));
    return Rat(a);
}

Rat PushMachine::nu(int degree, const ZChain& z) const {
    Rat best(0);
    for (const auto& [e, c] : z) best = rat_max(best, nu(degree, e));
    return best;
}

Rat PushMachine::nu_val(int degree, const ZChain& z, int sign) const {
    bool first = true;
    Rat best(0);
    for (const auto& [e, c] : z) {
        Rat v = Rat(sign) * Rat(e.coset) + cell_profile_val(profile_, degree, e.cell, sign);
        if (first || v < best) best = v;
        first = false;
    }
    if (first) throw ZeroInput("nu_val of zero chain");
    return best;
}

ZChain PushMachine::basis(const CellCoset& e) const {
    ZChain z;
    z[e] = Rat(1);
    return z;
}

ZChain PushMachine::apply_matrix(const GrMatrix& m, const ZChain& z) const {
    ZChain out;
    const RingSpec& ring = atlas_.complex->ring();
    for (const auto& [e, c] : z) {
        for (const auto& [y, entry] : m.col(e.cell))
            for (const auto& [g, coeff] : entry.terms())
                zchain_add(out, CellCoset{y, e.coset + g[0]}, sc_mul(ring, coeff, c), ring);
    }
    return out;
}

ZChain PushMachine::boundary(int degree, const ZChain& z) const {
    if (degree < 1 || z.empty()) return {};
    return apply_matrix(atlas_.complex->boundary(degree), z);
}

int PushMachine::chart(int degree, const CellCoset& e) const {
    const auto& [lo, hi] = profile_.iv[static_cast<size_t>(degree)][static_cast<size_t>(e.cell)];
    long long a = e.coset + lo, b = e.coset + hi;
    int sigma;
    if (a > 0)
        sigma = 1;
    else if (b < 0)
        sigma = -1;
    else
        throw SigmaError("chart requested inside the cutoff zone");
    // the pushing chart is the one whose cap contains the antipodal direction
    int want = -sigma;
    for (size_t i = 0; i < atlas_.entries.size(); ++i)
        if ((atlas_.entries[i].center.coeffs()[0] > 0 ? 1 : -1) == want) return static_cast<int>(i);
    throw MissingDirection(want > 0 ? "(+1)" : "(-1)");
}

const ZChain& PushMachine::K(int degree, const CellCoset& e) {
    auto& memo = k_memo_[static_cast<size_t>(degree)];
    auto it = memo.find(e);
    if (it != memo.end()) return it->second;
    ZChain out;
    if (nu(degree, e) > cutoff_a_) {
        const AtlasEntry& ch = atlas_.entries[static_cast<size_t>(chart(degree, e))];
        if (degree == 0) {
            out = apply_matrix(ch.h.at(0), basis(e));
        } else {
            ZChain arg = basis(e);
            ZChain kd = K_chain(degree - 1, boundary(degree, basis(e)));
            zchain_add_chain(arg, kd, Rat(-1), atlas_.complex->ring());
            out = apply_matrix(ch.h.at(degree), arg);
        }
    }
    return memo.emplace(e, std::move(out)).first->second;
}

const ZChain& PushMachine::psi(int degree, const CellCoset& e) {
    auto& memo = psi_memo_[static_cast<size_t>(degree)];
    auto it = memo.find(e);
    if (it != memo.end()) return it->second;
    ZChain out;
    if (nu(degree, e) <= cutoff_a_) {
        out = basis(e);
    } else {
        const AtlasEntry& ch = atlas_.entries[static_cast<size_t>(chart(degree, e))];
        if (degree == 0) {
            out = apply_matrix(ch.phi.at(0), basis(e));
        } else {
            ZChain dtx = boundary(degree, basis(e));
            ZChain arg = basis(e);
            zchain_add_chain(arg, K_chain(degree - 1, dtx), Rat(-1), atlas_.complex->ring());
            out = apply_matrix(ch.phi.at(degree), arg);
            ZChain second = apply_matrix(ch.h.at(degree - 1), psi_chain(degree - 1, dtx));
            zchain_add_chain(out, second, Rat(1), atlas_.complex->ring());
        }
    }
    return memo.emplace(e, std::move(out)).first->second;
}

ZChain PushMachine::psi_chain(int degree, const ZChain& z) {
    ZChain out;
    for (const auto& [e, c] : z) zchain_add_chain(out, psi(degree, e), c, atlas_.complex->ring());
    return out;
}

ZChain PushMachine::K_chain(int degree, const ZChain& z) {
    ZChain out;
    for (const auto& [e, c] : z) zchain_add_chain(out, K(degree, e), c, atlas_.complex->ring());
    return out;
}

ZChain PushMachine::psi_power(int degree, ZChain z, int times) {
    for (int i = 0; i < times; ++i) z = psi_chain(degree, z);
    return z;
}

bool PushMachine::homotopy_identity_ok(int degree, const CellCoset& e) {
    // d K_m + K_{m-1} d = id - psi_m
    const RingSpec& ring = atlas_.complex->ring();
    ZChain lhs;
    if (degree + 1 <= atlas_.complex->dim()) lhs = boundary(degree + 1, K(degree, e));
    if (degree >= 1)
        zchain_add_chain(lhs, K_chain(degree - 1, boundary(degree, basis(e))), Rat(1), ring);
    ZChain rhs = basis(e);
    zchain_add_chain(rhs, psi(degree, e), Rat(-1), ring);
    return lhs == rhs;
}

namespace {

struct PhiMemo {
    PushMachine& machine;
    int n;
    std::vector<std::map<CellCoset, ZChain>> memo;

    explicit PhiMemo(PushMachine& m) : machine(m), n(m.atlas().n) {
        memo.resize(static_cast<size_t>(n) + 1);
    }

    const ZChain& phi(int s, const CellCoset& e) {
        auto& ms = memo[static_cast<size_t>(s)];
        auto it = ms.find(e);
        if (it != ms.end()) return it->second;
        ZChain out;
        Rat nu = machine.nu(s, e);
        const Rat& A = machine.cutoff();
        if (nu > A) {
            // band index: nu in (A + l r, A + (l+1) r]
            const Rat& r = machine.r_push();
            long long l = rat_ceil_ll((nu - A) / r) - 1;
            ZChain base = machine.basis(e);
            if (s >= 1) {
                ZChain corr = phi_chain(s - 1, machine.boundary(s, machine.basis(e)));
                zchain_add_chain(base, corr, Rat(-1), machine.atlas().complex->ring());
            }
            ZChain cur = base;
            for (long long j = 0; j <= l; ++j) {
                zchain_add_chain(out, machine.K_chain(s, cur), Rat(1),
                                 machine.atlas().complex->ring());
                if (j < l) cur = machine.psi_chain(s, cur);
            }
        }
        return ms.emplace(e, std::move(out)).first->second;
    }

    ZChain phi_chain(int s, const ZChain& z) {
        ZChain out;
        if (s < 0) return out;
        for (const auto& [e, c] : z)
            zchain_add_chain(out, phi(s, e), c, machine.atlas().complex->ring());
        return out;
    }

    ZChain zeta(int s, const CellCoset& e) {
        const RingSpec& ring = machine.atlas().complex->ring();
        ZChain out = machine.basis(e);
        if (s + 1 <= machine.atlas().complex->dim()) {
            ZChain dphi = machine.boundary(s + 1, phi(s, e));
            zchain_add_chain(out, dphi, Rat(-1), ring);
        }
        if (s >= 1) {
            ZChain phid = phi_chain(s - 1, machine.boundary(s, machine.basis(e)));
            zchain_add_chain(out, phid, Rat(-1), ring);
        }
        return out;
    }
};

}  // namespace

int DominationResult::d_index(int degree, const CellCoset& e) const {
    const auto& idx = index[static_cast<size_t>(degree)];
    auto it = std::lower_bound(idx.begin(), idx.end(), e);
    if (it == idx.end() || !(*it == e)) return -1;
    return static_cast<int>(it - idx.begin());
}

DominationResult finite_type_reduce(ComplexPtr c, int n, const Rat& window,
                                    const std::optional<Atlas>& atlas_opt) {
    if (c->deck_rank() != 1)
        throw UnsupportedRegime("finite_type_reduce: flagship configuration is deck rank 1, N = 0");
    if (n != c->dim()) throw UnsupportedRegime("finite_type_reduce needs n = dim C");
    if (c->ring().kind != CoeffKind::Z)
        throw UnsupportedRegime("finite_type_reduce expects Z coefficients");

    Atlas atlas;
    if (atlas_opt) {
        atlas = *atlas_opt;
    } else {
        std::vector<SigmaCertificate> certs;
        for (long long sgn : {1LL, -1LL}) {
            Character xi = Character::from_ints({sgn});
            SigmaVerdict v = sigma_membership_retrying(c, xi, n, c->ring(), window, 2);
            if (v.status != Status::Yes || !v.certificate)
                throw MissingDirection("(" + xi.str() + "): " + status_str(v.status) +
                                       (v.note.empty() ? "" : " - " + v.note));
            certs.push_back(*v.certificate);
        }
        atlas = assemble_atlas(c, n, certs);
    }

    PushMachine machine(atlas);
    PhiMemo phim(machine);

    DominationResult res;
    res.base = c;
    res.constants.r_atlas = atlas.r;
    res.constants.M_atlas = atlas.M;
    res.constants.L = atlas.L;
    res.constants.Lprime = machine.lprime();
    res.constants.A_zone = machine.zone();
    res.constants.A = machine.cutoff();
    res.constants.r_push = machine.r_push();
    res.constants.M_push = machine.m_push();
    res.constants.cert_iterations = atlas.iterations;
    Rat rho = machine.cutoff() + n * machine.m_push();
    res.constants.ball_radius = rho;
    res.verify_radius = rho + 2 * atlas.L + 2 * machine.m_push() + 2 * machine.r_push();

    const SupportProfile& prof = machine.profile();
    res.index.resize(static_cast<size_t>(n) + 1);
    std::vector<int> ranks;
    for (int s = 0; s <= n; ++s) {
        auto& idx = res.index[static_cast<size_t>(s)];
        for (int x = 0; x < c->rank_at(s); ++x) {
            const auto& [lo, hi] = prof.iv[static_cast<size_t>(s)][static_cast<size_t>(x)];
            long long amin = rat_ceil_ll(-rho - Rat(lo));
            long long amax = rat_floor_ll(rho - Rat(hi));
            for (long long a = amin; a <= amax; ++a) idx.push_back(CellCoset{x, a});
        }
        std::sort(idx.begin(), idx.end());
        ranks.push_back(static_cast<int>(idx.size()));
    }

    auto d = std::make_shared<BasedFreeComplex>(RingSpec::Z(), 1, ranks);
    for (int s = 1; s <= n; ++s) {
        const auto& idx = res.index[static_cast<size_t>(s)];
        GrMatrix ds(RingSpec::Z(), 1, d->rank_at(s - 1), d->rank_at(s));
        for (size_t col = 0; col < idx.size(); ++col) {
            ZChain dz = machine.boundary(s, machine.basis(idx[col]));
            for (const auto& [e, coeff] : dz) {
                int row = res.d_index(s - 1, e);
                if (row < 0)
                    throw SigmaError("profile ball is not closed under the boundary");
                ds.add_to(row, static_cast<int>(col),
                          GroupRingElem::monomial(RingSpec::Z(), {0}, coeff));
            }
        }
        d->set_boundary(s, ds);
    }
    d->set_name((c->name().empty() ? "complex" : c->name()) + "-finite-model");
    res.d = d;

    for (int s = 0; s <= n; ++s) {
        for (int x = 0; x < c->rank_at(s); ++x) {
            const auto& [lo, hi] = prof.iv[static_cast<size_t>(s)][static_cast<size_t>(x)];
            long long amin = rat_ceil_ll(-res.verify_radius - Rat(lo));
            long long amax = rat_floor_ll(res.verify_radius - Rat(hi));
            for (long long a = amin; a <= amax; ++a) {
                CellCoset e{x, a};
                res.b_window[{s, e}] = phim.zeta(s, e);
                res.phi_window[{s, e}] = phim.phi(s, e);
            }
        }
    }

    verify_domination(res, machine);
    res.homology = integer_homology(*d);
    return res;
}

void verify_domination(const DominationResult& res, PushMachine& machine) {
    const auto& c = *res.base;
    const RingSpec& ring = c.ring();
    int n = machine.atlas().n;
    const Rat& A = machine.cutoff();      // A_star: zone + collar
    const Rat& zone = machine.zone();
    const Rat& rp = machine.r_push();
    const Rat& mp = machine.m_push();

    auto vrep = validate(*res.d);
    if (!vrep.ok) throw SigmaError("finite model fails dd = 0: " + vrep.first_issue->message);

    for (const auto& [key, zeta] : res.b_window) {
        auto [s, e] = key;
        Rat nu_e = machine.nu(s, e);

        // push identities and bounds
        if (!machine.homotopy_identity_ok(s, e))
            throw SigmaError("push homotopy identity fails at degree " + std::to_string(s));
        const ZChain& ps = machine.psi(s, e);
        if (nu_e <= zone) {
            if (!(ps == machine.basis(e))) throw SigmaError("psi must fix the cutoff zone");
        } else {
            // corrected push bound: drop by r_push or land in the collar
            Rat bound = rat_max(nu_e - rp, A);
            if (!ps.empty() && !(machine.nu(s, ps) <= bound))
                throw SigmaError("psi norm drop fails");
            const ZChain& kk = machine.K(s, e);
            if (!kk.empty() && !(machine.nu(s + 1, kk) <= nu_e + mp))
                throw SigmaError("K norm bound fails");
        }

        // (starstar): |zeta(z)| <= A + s*M
        if (!zeta.empty() && !(machine.nu(s, zeta) <= A + s * mp))
            throw SigmaError("(starstar) bound fails at degree " + std::to_string(s));
        // zeta lands in the ball, so b is defined into D
        for (const auto& [t, coeff] : zeta)
            if (res.d_index(s, t) < 0) throw SigmaError("zeta escapes the model ball");

        // homotopy identity of Phi: d Phi + Phi d = id - zeta, re-assembled
        ZChain lhs;
        auto itp = res.phi_window.find({s, e});
        if (itp != res.phi_window.end() && s + 1 <= c.dim())
            lhs = machine.boundary(s + 1, itp->second);
        if (s >= 1) {
            ZChain de = machine.boundary(s, machine.basis(e));
            for (const auto& [t, coeff] : de) {
                auto itq = res.phi_window.find({s - 1, t});
                if (itq == res.phi_window.end())
                    throw SigmaError("verification window too small for Phi(d tx)");
                zchain_add_chain(lhs, itq->second, coeff, ring);
            }
        }
        ZChain rhs = machine.basis(e);
        zchain_add_chain(rhs, zeta, Rat(-1), ring);
        if (!(lhs == rhs)) throw SigmaError("d Phi + Phi d != id - ab");

        // b is a chain map: zeta(d tx) = d zeta(tx)
        if (s >= 1) {
            ZChain left;
            ZChain de = machine.boundary(s, machine.basis(e));
            for (const auto& [t, coeff] : de) {
                auto itb = res.b_window.find({s - 1, t});
                if (itb == res.b_window.end())
                    throw SigmaError("verification window too small for zeta(d tx)");
                zchain_add_chain(left, itb->second, coeff, ring);
            }
            ZChain right = machine.boundary(s, zeta);
            if (!(left == right)) throw SigmaError("b is not a chain map");
        }
    }

    // (reducer): |psi^l(z)| <= A + B once |z| <= A + l r + B
    for (int l = 1; l <= 3; ++l) {
        for (const Rat& b : {Rat(0), mp, Rat(2 * mp)}) {
            for (int s = 0; s <= n; ++s) {
                for (const auto& [key, zeta] : res.b_window) {
                    auto [deg, e] = key;
                    if (deg != s) continue;
                    if (!(machine.nu(s, e) <= A + l * rp + b)) continue;
                    ZChain p = machine.psi_power(s, machine.basis(e), l);
                    if (!p.empty() && !(machine.nu(s, p) <= A + b))
                        throw SigmaError("(reducer) bound fails");
                }
            }
        }
    }
}

TotalComplexResult total_complex_assemble(const TotalComplexInput& in) {
    const auto& c = in.c;
    if (c->deck_rank() != 1) throw UnsupportedRegime("total complex assembly needs deck rank 1");
    // validate the two-term cone resolution E
    if (in.e.dim() != 1 || in.e.rank_at(0) != 1 || in.e.rank_at(1) != 1)
        throw SchemaError("E must be the two-term rank-1 resolution");
    GroupRingElem de = in.e.boundary(1).entry(0, 0);
    {
        GroupRingElem tm1(in.e.ring(), 1);
        tm1.add_term({1}, Rat(1));
        tm1.add_term({0}, Rat(-1));
        if (!(de == tm1 || de == -tm1))
            throw SchemaError("E is not exact: its differential must be +-(t - 1)");
        for (const auto& [g, coeff] : de.terms())
            if (g[0] < 0) throw SchemaError("E must live over the cone ring");
    }
    if (in.f.size() != 2 || in.g.size() != 2 || in.l.size() != 2)
        throw SchemaError("need per-column data for p = 0, 1");
    for (int p = 0; p < 2; ++p) {
        if (!in.f[static_cast<size_t>(p)].commutes_with_boundaries())
            throw SigmaError("f_" + std::to_string(p) + " is not a chain map");
        if (!in.g[static_cast<size_t>(p)].commutes_with_boundaries())
            throw SigmaError("g_" + std::to_string(p) + " is not a chain map");
        ChainMap fg = compose(in.f[static_cast<size_t>(p)], in.g[static_cast<size_t>(p)]);
        // d l + l d = f g - id
        for (int q = 0; q <= c->dim(); ++q) {
            GrMatrix lhs = c->boundary_or_zero(q + 1) * in.l[static_cast<size_t>(p)].at(q);
            if (q >= 1) lhs = lhs + in.l[static_cast<size_t>(p)].at(q - 1) * c->boundary_or_zero(q);
            GrMatrix rhs = fg.at(q) - GrMatrix::identity(c->ring(), 1, c->rank_at(q));
            if (!(lhs == rhs))
                throw SigmaError("l_" + std::to_string(p) + " is not a homotopy fg ~ id at q = " +
                                 std::to_string(q));
        }
    }

    TotalComplexResult out;
    int dim = c->dim();
    const RingSpec& ring = c->ring();

    // F^1 = (L d) f on column 1 and K^1 = g d F^0
    std::vector<GrMatrix> f1(static_cast<size_t>(dim) + 1,
                             GrMatrix(ring, 1, 0, 0));
    std::vector<GrMatrix> k1(static_cast<size_t>(dim) + 1,
                             GrMatrix(ring, 1, 0, 0));
    for (int q = 0; q <= dim; ++q) {
        GrMatrix df = in.f[1].at(q).scaled(de);
        f1[static_cast<size_t>(q)] = in.l[0].at(q) * df;
        k1[static_cast<size_t>(q)] = in.g[0].at(q) * df;
    }

    // Lemma chainf, m = 0 and m = 1 (explicit identities)
    for (int p = 0; p < 2; ++p)
        if (!in.f[static_cast<size_t>(p)].commutes_with_boundaries())
            throw SigmaError("chainf m=0 fails at p = " + std::to_string(p));
    out.checked.push_back("chainf m=0 (dF0 = F0 d) on both columns");
    for (int q = 0; q <= dim; ++q) {
        GrMatrix lhs = c->boundary_or_zero(q + 1) * f1[static_cast<size_t>(q)];
        if (q >= 1) lhs = lhs + f1[static_cast<size_t>(q - 1)] * c->boundary_or_zero(q);
        GrMatrix rhs = in.f[0].at(q) * k1[static_cast<size_t>(q)] -
                       in.f[1].at(q).scaled(de);
        if (!(lhs == rhs))
            throw SigmaError("chainf m=1 fails at (p,q,m) = (1," + std::to_string(q) + ",1)");
    }
    out.checked.push_back("chainf m=1 (dF1 + F1 d = F0 K1 - d F0)");
    // Lemma sumzero, m = 1: K1 K0 - K0 K1 = 0, i.e. K1 is a chain map
    for (int q = 1; q <= dim; ++q) {
        GrMatrix lhs = k1[static_cast<size_t>(q - 1)] * c->boundary(q);
        GrMatrix rhs = c->boundary(q) * k1[static_cast<size_t>(q)];
        if (!(lhs == rhs))
            throw SigmaError("sumzero m=1 fails at (p,q,m) = (1," + std::to_string(q) + ",1)");
    }
    out.checked.push_back("sumzero m=1 (K1 K0 = K0 K1)");
    out.checked.push_back("sumzero m=2 (K1 K1 = 0, vacuous for the two-term resolution)");

    // total complexes: TP_k = P_{0,k} + P_{1,k-1}, TE likewise
    std::vector<int> tranks;
    for (int k = 0; k <= dim + 1; ++k) tranks.push_back(c->rank_at(k) + c->rank_at(k - 1));
    BasedFreeComplex tp(ring, 1, tranks), te(ring, 1, tranks);
    for (int k = 1; k <= dim + 1; ++k) {
        int rows0 = c->rank_at(k - 1);  // block of p = 0 in degree k-1
        GrMatrix dtp(ring, 1, tranks[static_cast<size_t>(k - 1)], tranks[static_cast<size_t>(k)]);
        GrMatrix dte = dtp;
        // p = 0 block: +d
        if (k <= dim)
            c->boundary(k).for_each([&](int i, int j, const GroupRingElem& x) {
                dtp.set(i, j, x);
                dte.set(i, j, x);
            });
        int coloff = c->rank_at(k);
        // p = 1 block of TP: -K1 into p=0, -d into p=1
        for (int j = 0; j < c->rank_at(k - 1); ++j)
            for (const auto& [i, x] : k1[static_cast<size_t>(k - 1)].col(j))
                dtp.set(i, coloff + j, -x);
        if (k - 1 >= 1)
            c->boundary(k - 1).for_each([&](int i, int j, const GroupRingElem& x) {
                dtp.set(rows0 + i, coloff + j, -x);
                dte.set(rows0 + i, coloff + j, -x);
            });
        // p = 1 block of TE: -(d_E (x) id) into p=0, -d into p=1
        for (int j = 0; j < c->rank_at(k - 1); ++j) dte.add_to(j, coloff + j, -de);
        tp.set_boundary(k, dtp);
        te.set_boundary(k, dte);
    }
    auto rep1 = validate(tp);
    if (!rep1.ok) throw SigmaError("delta delta != 0 on TP: " + rep1.first_issue->message);
    out.checked.push_back("delta delta = 0 on TP (Lemma sumzero)");
    auto rep2 = validate(te);
    if (!rep2.ok) throw SigmaError("delta delta != 0 on TE: " + rep2.first_issue->message);

    auto tpp = std::make_shared<BasedFreeComplex>(tp);
    auto tep = std::make_shared<BasedFreeComplex>(te);
    std::vector<GrMatrix> fmats;
    for (int k = 0; k <= dim + 1; ++k) {
        GrMatrix fk(ring, 1, tranks[static_cast<size_t>(k)], tranks[static_cast<size_t>(k)]);
        if (k <= dim)
            in.f[0].at(k).for_each([&](int i, int j, const GroupRingElem& x) { fk.set(i, j, x); });
        int off = c->rank_at(k);
        if (k - 1 >= 0) {
            in.f[1].at(k - 1).for_each(
                [&](int i, int j, const GroupRingElem& x) { fk.set(off + i, off + j, x); });
            // -F^1 lands in the p = 0 block one q higher
            for (int j = 0; j < c->rank_at(k - 1); ++j)
                for (const auto& [i, x] : f1[static_cast<size_t>(k - 1)].col(j))
                    fk.set(i, off + j, -x);
        }
        fmats.push_back(std::move(fk));
    }
    ChainMap ftotal(tpp, tep, std::move(fmats));
    if (!ftotal.commutes_with_boundaries())
        throw SigmaError("F = sum (-1)^k F^k is not a chain map TP -> TE");
    out.checked.push_back("F is a chain map TP -> TE (Lemmata chainf + sumzero)");

    out.tp = *tpp;
    out.te = *tep;
    out.f_total = std::move(ftotal);
    return out;
}

}  // namespace sigma
