#include "sigma/decide.hpp"

#include "sigma/contraction.hpp"
#include "sigma/reduction.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <future>
#include <set>

namespace sigma {

std::string status_str(Status s) {
    switch (s) {
        case Status::Yes: return "yes";
        case Status::No: return "no";
        default: return "undecided";
    }
}

Rat default_window(const BasedFreeComplex& c, const Character& xi) {
    Rat spread = 1;
    for (int i = 1; i <= c.dim(); ++i)
        c.boundary(i).for_each([&](int, int, const GroupRingElem& x) {
            Rat s = xi_spread(x, xi);
            if (s > spread) spread = s;
        });
    return spread * 64;
}

namespace {

ComplexPtr adapt_ring(ComplexPtr c, const RingSpec& ring) {
    if (c->ring() == ring) return c;
    if (c->ring().kind == CoeffKind::Z)
        return std::make_shared<BasedFreeComplex>(tensor_coefficients(*c, ring));
    throw UnsupportedRegime("cannot change coefficients " + c->ring().str() + " -> " + ring.str());
}

std::vector<GroupRingElem> basis_vector(const RingSpec& ring, int rank, int n, int j) {
    auto v = zero_vector(ring, rank, n);
    v[static_cast<size_t>(j)] = GroupRingElem::one(ring, rank);
    return v;
}

// A cycle in degree i whose class has a free summand over the Laurent PID
// (field coefficients, deck rank 1).
std::optional<std::vector<GroupRingElem>> field_free_witness(const BasedFreeComplex& c, int i) {
    const RingSpec& ring = c.ring();
    std::vector<std::vector<GroupRingElem>> kernel;
    if (i == 0) {
        for (int j = 0; j < c.rank_at(0); ++j) kernel.push_back(basis_vector(ring, 1, c.rank_at(0), j));
    } else {
        LaurentSolver ker_solver(c.boundary(i));
        kernel = ker_solver.kernel_basis();
    }
    if (kernel.empty()) return std::nullopt;
    int s = static_cast<int>(kernel.size());
    if (i + 1 > c.dim() || c.rank_at(i + 1) == 0) {
        return kernel.front();
    }
    GrMatrix km(ring, 1, c.rank_at(i), s);
    for (int j = 0; j < s; ++j)
        for (int r = 0; r < c.rank_at(i); ++r) km.set(r, j, kernel[static_cast<size_t>(j)][static_cast<size_t>(r)]);
    LaurentSolver ksolve(km);
    const GrMatrix& up = c.boundary(i + 1);
    GrMatrix y(ring, 1, s, up.cols());
    for (int j = 0; j < up.cols(); ++j) {
        std::vector<GroupRingElem> col = zero_vector(ring, 1, c.rank_at(i));
        for (const auto& [r, x] : up.col(j)) col[static_cast<size_t>(r)] = x;
        auto sol = ksolve.solve(col);
        if (!sol) throw SigmaError("image not contained in kernel span");
        for (int r = 0; r < s; ++r) y.set(r, j, (*sol)[static_cast<size_t>(r)]);
    }
    int base_rank = laurent_snf(y, false).rank;
    for (int m = 0; m < s; ++m) {
        GrMatrix aug(ring, 1, s, up.cols() + 1);
        y.for_each([&](int r, int j, const GroupRingElem& x) { aug.set(r, j, x); });
        aug.set(m, up.cols(), GroupRingElem::one(ring, 1));
        if (laurent_snf(aug, false).rank > base_rank) return kernel[static_cast<size_t>(m)];
    }
    return std::nullopt;
}

std::vector<GroupRingElem> clear_denominators(const std::vector<GroupRingElem>& v) {
    Int l = 1;
    for (const auto& x : v)
        for (const auto& [g, cq] : x.terms()) l = boost::multiprecision::lcm(l, rat_den(cq));
    std::vector<GroupRingElem> out;
    for (const auto& x : v) {
        GroupRingElem y(RingSpec::Z(), x.rank());
        for (const auto& [g, cq] : x.terms()) y.set(g, Rat(rat_num(cq) * (l / rat_den(cq))));
        out.push_back(std::move(y));
    }
    return out;
}

bool is_cycle(const BasedFreeComplex& c, int q, const std::vector<GroupRingElem>& z) {
    if (q < 1) return true;
    return vector_is_zero(c.boundary(q).apply(z));
}

SigmaVerdict decide_l1(ComplexPtr c, const Character& xi, int k, const Rat& window) {
    SigmaVerdict v;
    v.xi = xi;
    v.k = k;
    v.ring = c->ring();
    v.window_used = window;
    v.layers.push_back("L1-laurent-homology");
    auto hom = homology_lambda(*c);
    int bad = -1;
    for (int i = 0; i <= k; ++i)
        if (hom[static_cast<size_t>(i)].free_rank > 0) {
            bad = i;
            break;
        }
    if (bad >= 0) {
        v.status = Status::No;
        auto w = field_free_witness(*c, bad);
        if (!w) throw SigmaError("free rank reported but no witness found");
        v.witness = NoWitness{bad, *w,
                              "class with a free summand over the Laurent PID in degree " +
                                  std::to_string(bad)};
        return v;
    }
    v.layers.push_back("certificate-construction");
    auto cert = build_certificate(c, xi, k, window);
    if (cert) {
        v.status = Status::Yes;
        v.certificate = std::move(cert);
    } else {
        v.status = Status::Undecided;
        v.note = "membership holds over the Laurent PID but no certificate fit the window";
    }
    return v;
}

SigmaVerdict decide_l2(ComplexPtr c, const Character& xi, int k, const Rat& window) {
    SigmaVerdict v;
    v.xi = xi;
    v.k = k;
    v.ring = c->ring();
    v.window_used = window;

    // Q pre-check: a free class over Q forces nonvanishing over Z.
    v.layers.push_back("L2-Q-precheck");
    auto cq = std::make_shared<BasedFreeComplex>(tensor_coefficients(*c, RingSpec::Q()));
    auto hom = homology_lambda(*cq);
    for (int i = 0; i <= k; ++i)
        if (hom[static_cast<size_t>(i)].free_rank > 0) {
            auto w = field_free_witness(*cq, i);
            if (!w) throw SigmaError("free rank reported but no witness found");
            v.status = Status::No;
            v.witness = NoWitness{i, clear_denominators(*w),
                                  "class with a free summand over the rational Laurent PID in degree " +
                                      std::to_string(i) + " (nonvanishing descends to Z)"};
            return v;
        }

    // Exact elimination over the completion, then certified negatives.
    v.layers.push_back("L2-exact-reduction");
    MorseReduction red(c, xi);
    red.exact_phase();
    if (auto ev = red.certified_nonvanishing(k)) {
        if (!is_cycle(*c, ev->degree, ev->cycle)) throw SigmaError("witness is not a cycle");
        v.status = Status::No;
        v.witness = NoWitness{ev->degree, ev->cycle, ev->evidence};
        return v;
    }

    v.layers.push_back("L2-windowed-elimination");
    bool cleared = red.windowed_phase(k, window);
    if (cleared) {
        v.layers.push_back("certificate-construction");
        auto cert = build_certificate(c, xi, k, window);
        if (cert) {
            v.status = Status::Yes;
            v.certificate = std::move(cert);
            return v;
        }
        v.status = Status::Undecided;
        v.note = "windowed elimination cleared degrees <= k but no certificate fit the window";
        return v;
    }
    v.status = Status::Undecided;
    v.note = "no certified negative and windowed elimination stalled (" + red.diagnostics(k) + ")";
    return v;
}

SigmaVerdict decide_l3(ComplexPtr c, const Character& xi, int k, const Rat& window) {
    SigmaVerdict v;
    v.xi = xi;
    v.k = k;
    v.ring = c->ring();
    v.window_used = window;
    v.layers.push_back("L3-windowed-certificate-search");
    auto cert = build_certificate(c, xi, k, window);
    if (cert) {
        v.status = Status::Yes;
        v.certificate = std::move(cert);
    } else {
        v.status = Status::Undecided;
        v.note = "no certificate found within the window (rank > 1 decisions are semi-decisions)";
    }
    return v;
}

}  // namespace

SigmaVerdict sigma_membership(ComplexPtr c0, const Character& xi, int k, const RingSpec& ring,
                              const Rat& window) {
    if (xi.rank() != c0->deck_rank()) throw DimensionMismatch("direction rank vs deck rank");
    if (k < 0) throw SigmaError("k must be >= 0");
    if (k > c0->dim()) throw SigmaError("k exceeds the dimension of the complex (clamp first)");
    auto val = validate(*c0);
    if (!val.ok) throw SigmaError("malformed complex: " + val.first_issue->message);
    ComplexPtr c = adapt_ring(c0, ring);
    Rat w = window > 0 ? window : default_window(*c, xi);
    if (c->deck_rank() == 1 && ring.is_field()) return decide_l1(c, xi, k, w);
    if (c->deck_rank() == 1 && ring.kind == CoeffKind::Z) return decide_l2(c, xi, k, w);
    return decide_l3(c, xi, k, w);
}

SigmaVerdict sigma_membership_retrying(ComplexPtr c, const Character& xi, int k,
                                       const RingSpec& ring, const Rat& window, int retries) {
    Rat w = window > 0 ? window : default_window(*c, xi);
    SigmaVerdict v = sigma_membership(c, xi, k, ring, w);
    for (int i = 0; i < retries && v.status == Status::Undecided; ++i) {
        w = w * 2;
        v = sigma_membership(c, xi, k, ring, w);
        v.note += " (after " + std::to_string(i + 1) + " window retries)";
    }
    return v;
}

MovabilityResult movable_to_infinity(ComplexPtr c0, int q, const std::vector<GroupRingElem>& z,
                                     const Character& xi, const RingSpec& ring) {
    MovabilityResult res;
    ComplexPtr c = adapt_ring(c0, ring);
    if (q < 0 || q > c->dim()) throw DimensionMismatch("degree out of range");
    if (static_cast<int>(z.size()) != c->rank_at(q)) throw DimensionMismatch("cycle coordinates");
    std::vector<GroupRingElem> zc;
    for (const auto& x : z) zc.push_back(x.with_ring(ring));
    if (!is_cycle(*c, q, zc)) throw SigmaError("input is not a cycle");
    if (vector_is_zero(zc)) {
        res.status = Movability::Movable;
        res.delta = GroupRingElem::one(ring, c->deck_rank());
        res.preimage = zero_vector(ring, c->deck_rank(), c->rank_at(q + 1));
        res.note = "zero class";
        return res;
    }
    if (c->deck_rank() != 1) {
        res.note = "exact movability decisions require deck rank 1";
        return res;
    }

    // annihilator ideal of [z] over the rational (or given field) Laurent PID
    RingSpec fring = ring.is_field() ? ring : RingSpec::Q();
    auto cf = adapt_ring(c, fring);
    std::vector<GroupRingElem> zf;
    for (const auto& x : zc) zf.push_back(x.with_ring(fring));

    int m = cf->rank_at(q + 1);
    GrMatrix aug(fring, 1, cf->rank_at(q), m + 1);
    if (q + 1 <= cf->dim())
        cf->boundary(q + 1).for_each([&](int i, int j, const GroupRingElem& x) { aug.set(i, j, x); });
    for (int i = 0; i < cf->rank_at(q); ++i) aug.set(i, m, -zf[static_cast<size_t>(i)]);
    LaurentSolver augsolve(aug);
    GroupRingElem f0(fring, 1);
    for (const auto& kv : augsolve.kernel_basis()) f0 = r1_gcd(f0, kv[static_cast<size_t>(m)]);

    if (f0.is_zero()) {
        res.status = Movability::NotMovable;
        res.note = "annihilator ideal of the class is zero (free class over the Laurent PID)";
        return res;
    }

    auto normalize_delta = [&](const GroupRingElem& f) {
        GroupRingElem low = lowest_part(f, xi);
        const auto& [g, cc] = *low.terms().begin();
        return f.shifted(lattice_neg(g)).scaled(sc_inv(f.ring(), cc));
    };

    if (ring.is_field()) {
        GroupRingElem delta = normalize_delta(f0);
        std::vector<GroupRingElem> dz;
        for (const auto& x : zf) dz.push_back(delta * x);
        std::optional<std::vector<GroupRingElem>> pre;
        if (q + 1 <= cf->dim() && cf->rank_at(q + 1) > 0) {
            LaurentSolver bs(cf->boundary(q + 1));
            pre = bs.solve(dz);
        } else if (vector_is_zero(dz)) {
            pre = zero_vector(fring, 1, 0);
        }
        if (!pre) throw SigmaError("annihilator found but delta*z is not a boundary");
        res.status = Movability::Movable;
        res.delta = delta;
        res.preimage = pre;
        return res;
    }

    // Z coefficients
    GroupRingElem fhat = r1_primitive_z(f0);
    GroupRingElem low = lowest_part(fhat, xi);
    Rat lc = low.terms().begin()->second;
    using boost::multiprecision::abs;
    if (abs(rat_num(lc)) >= 2) {
        res.status = Movability::NotMovable;
        res.note = "the rational annihilator ideal is (" + fhat.str() +
                   "); by Gauss's lemma every integral annihilator has xi-lowest coefficient "
                   "divisible by " + lc.str();
        return res;
    }
    GroupRingElem delta = fhat.shifted(lattice_neg(low.terms().begin()->first)).scaled(lc);
    // integral preimage for delta * z
    std::vector<GroupRingElem> dz;
    for (const auto& x : zc) dz.push_back((delta.with_ring(RingSpec::Q())) * x.with_ring(RingSpec::Q()));
    std::optional<std::vector<GroupRingElem>> pre;
    if (q + 1 <= cf->dim() && cf->rank_at(q + 1) > 0) {
        LaurentSolver bs(cf->boundary(q + 1));
        pre = bs.solve(dz);
    } else if (vector_is_zero(dz)) {
        pre = zero_vector(RingSpec::Q(), 1, 0);
    }
    if (pre) {
        bool integral = true;
        for (const auto& x : *pre)
            for (const auto& [g, cc] : x.terms()) integral = integral && rat_den(cc) == 1;
        if (integral) {
            res.status = Movability::Movable;
            res.delta = delta;
            std::vector<GroupRingElem> zpre;
            for (const auto& x : *pre) zpre.push_back(x.with_ring(RingSpec::Z()));
            res.preimage = zpre;
            return res;
        }
    }
    // movability over Z implies movability over every F_p
    for (long long p : {2LL, 3LL, 5LL, 7LL, 11LL, 13LL}) {
        MovabilityResult mp = movable_to_infinity(c0, q, z, xi, RingSpec::Fp(p));
        if (mp.status == Movability::NotMovable) {
            res.status = Movability::NotMovable;
            res.note = "not movable modulo " + std::to_string(p);
            return res;
        }
    }
    res.note = "no integral preimage found within the exact search";
    return res;
}

std::vector<Character> automatic_directions(int deck_rank) {
    std::vector<Character> out;
    if (deck_rank == 1) {
        out.push_back(Character::from_ints({1}));
        out.push_back(Character::from_ints({-1}));
        return out;
    }
    std::set<std::vector<Int>> seen;
    std::vector<long long> v(static_cast<size_t>(deck_rank), -2);
    while (true) {
        bool nonzero = false;
        for (long long x : v) nonzero = nonzero || x != 0;
        if (nonzero) {
            Character chi = Character::from_ints(v);
            if (seen.insert(chi.coeffs()).second) out.push_back(chi);
        }
        int i = 0;
        while (i < deck_rank && v[static_cast<size_t>(i)] == 2) {
            v[static_cast<size_t>(i)] = -2;
            ++i;
        }
        if (i == deck_rank) break;
        v[static_cast<size_t>(i)] += 1;
    }
    if (out.size() > 48) out.resize(48);
    return out;
}

SigmaReport sphere_scan(ComplexPtr c, int k, const RingSpec& ring, const ScanOptions& opts) {
    SigmaReport rep;
    rep.complex_id = c->name().empty() ? "complex" : c->name();
    rep.dim = c->dim();
    rep.k_requested = k;
    rep.k = std::min(k, c->dim());
    rep.ring = ring;

    std::vector<Character> dirs = opts.directions;
    if (dirs.empty()) dirs = automatic_directions(c->deck_rank());
    if (dirs.empty()) throw SigmaError("empty direction list");
    rep.sample_only = c->deck_rank() > 1;

    Rat w = opts.window;
    if (w <= 0) {
        w = 0;
        for (const auto& d : dirs) {
            Rat wd = default_window(*c, d);
            if (wd > w) w = wd;
        }
    }
    rep.window = w;

    auto run = [&](const Character& d) {
        return sigma_membership_retrying(c, d, rep.k, ring, w, opts.retries);
    };
    if (opts.jobs > 1) {
        std::vector<std::future<SigmaVerdict>> futs;
        for (const auto& d : dirs)
            futs.push_back(std::async(std::launch::async, [&run, d] { return run(d); }));
        for (auto& f : futs) rep.verdicts.push_back(f.get());
    } else {
        for (const auto& d : dirs) rep.verdicts.push_back(run(d));
    }

    if (rep.k_requested > rep.k) {
        Conclusion cl;
        cl.kind = "clamp";
        cl.k = rep.k;
        cl.statement = "Sigma^n = Sigma^dim for n >= dim: verdicts for k = " +
                       std::to_string(rep.k_requested) + " reuse k = " + std::to_string(rep.k);
        cl.provenance = {"openness"};
        rep.conclusions.push_back(std::move(cl));
    }

    bool all_yes = true, any_no = false, any_und = false;
    for (const auto& v : rep.verdicts) {
        all_yes = all_yes && v.status == Status::Yes;
        any_no = any_no || v.status == Status::No;
        any_und = any_und || v.status == Status::Undecided;
    }
    if (all_yes) {
        Conclusion cl;
        cl.kind = "domination";
        cl.k = rep.k;
        cl.conditional = rep.sample_only;
        cl.statement = "the cover is homotopy equivalent to a CW-complex with finite " +
                       std::to_string(rep.k) + "-skeleton" +
                       (rep.sample_only ? " (sampled directions only; rank > 1 coverage is partial)"
                                        : "");
        cl.provenance = {"dominationX"};
        rep.conclusions.push_back(std::move(cl));
        if (rep.k == rep.dim && !rep.sample_only) {
            Conclusion fd;
            fd.kind = "domination";
            fd.k = rep.k;
            fd.statement = "the cover is finitely dominated";
            fd.provenance = {"dominationX"};
            rep.conclusions.push_back(std::move(fd));
        }
    } else if (any_no && c->deck_rank() == 1) {
        Conclusion cl;
        cl.kind = "domination";
        cl.k = rep.k;
        cl.statement = "the cover is NOT homotopy equivalent to a CW-complex with finite " +
                       std::to_string(rep.k) + "-skeleton (some direction fails)";
        cl.provenance = {"dominationX"};
        rep.conclusions.push_back(std::move(cl));
    } else if (any_und) {
        Conclusion cl;
        cl.kind = "domination";
        cl.k = rep.k;
        cl.conditional = true;
        cl.statement = "no domination conclusion (undecided directions remain)";
        cl.provenance = {"dominationX"};
        rep.conclusions.push_back(std::move(cl));
    }
    return rep;
}

SigmaReport promote(SigmaReport report, const PromoteFlags& flags) {
    for (const auto& v : report.verdicts) {
        if (v.status != Status::Yes) continue;
        if (v.k >= 1) {
            Conclusion cl;
            cl.kind = "sigma1X";
            cl.direction = v.xi;
            cl.k = 1;
            cl.statement = "direction (" + v.xi.str() + ") lies in Sigma^1(X)";
            cl.provenance = {"sigmanov", "homvshom"};
            report.conclusions.push_back(std::move(cl));
        }
        if (v.k >= 2 && flags.sigma2_pi1_asserted) {
            Conclusion cl;
            cl.kind = "sigmakX";
            cl.direction = v.xi;
            cl.k = v.k;
            cl.statement = "direction (" + v.xi.str() + ") lies in Sigma^" + std::to_string(v.k) + "(X)";
            cl.provenance = {"sigmanov", "hurewicz",
                             "user assertion: xi in Sigma^2(pi_1(X))"};
            if (flags.connectivity > 0)
                cl.provenance.push_back("user assertion: universal cover is " +
                                        std::to_string(flags.connectivity) + "-connected");
            report.conclusions.push_back(std::move(cl));
        }
    }
    return report;
}

CatBound cat_upper_bound(const SigmaReport& report, const Character& xi) {
    Character neg = xi.negated();
    bool have_neg = false;
    int k_hom = -1;
    for (const auto& v : report.verdicts)
        if (v.xi.same_direction(neg)) {
            have_neg = true;
            if (v.status == Status::Yes) k_hom = std::max(k_hom, v.k);
        }
    if (!have_neg) throw SigmaError("report has no verdicts for -xi");

    int k_promoted = 0;
    std::vector<std::string> prov_best;
    for (const auto& cl : report.conclusions) {
        if (!cl.direction || !cl.direction->same_direction(neg)) continue;
        if (cl.kind == "sigma1X" || cl.kind == "sigmakX") {
            if (cl.k > k_promoted) {
                k_promoted = cl.k;
                prov_best = cl.provenance;
            }
        }
    }
    // homvshom is unconditional: a homological Yes at k >= 1 yields Sigma^1(X)
    if (k_promoted < 1 && k_hom >= 1) {
        k_promoted = 1;
        prov_best = {"sigmanov", "homvshom"};
    }

    CatBound out;
    if (k_promoted >= 1) {
        out.bound = report.dim - k_promoted;
        out.provenance = prov_best;
        out.provenance.push_back("cattheo");
        if (k_hom > k_promoted)
            out.note = "conditional improvement to " + std::to_string(report.dim - k_hom) +
                       " if -xi in Sigma^2(pi_1(X)) (hurewicz)";
        return out;
    }
    if (k_hom >= 2) {
        out.bound = report.dim - k_hom;
        out.conditional = true;
        out.provenance = {"sigmanov", "hurewicz (requires -xi in Sigma^2(pi_1(X)))", "cattheo"};
        return out;
    }
    out.bound = report.dim;
    out.provenance = {"cattheo (vacuous)"};
    out.note = "-xi is not known to lie in Sigma^1; only the trivial bound dim X applies";
    return out;
}

}  // namespace sigma
