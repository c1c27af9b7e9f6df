#ifndef SIGMA_DOMINATION_HPP
#define SIGMA_DOMINATION_HPP

#include "sigma/certificate.hpp"
#include "sigma/snf.hpp"

#include <map>
#include <optional>
#include <vector>

namespace sigma {

// ---------------------------------------------------------------------------
// support profiles and ZN-linear chains (flagship sublattice N = {0}, rank 1)
// ---------------------------------------------------------------------------

// Iterated boundary-support interval of each basis cell: the transitive
// closure of "supp dc is part of supp c".  The cell t^a x occupies the
// integer interval [a+lo, a+hi]; its profile norm is max(|a+lo|, |a+hi|).
// The profile norm satisfies |d z| <= |z|, which the push recursions need.
struct SupportProfile {
    std::vector<std::vector<std::pair<long long, long long>>> iv;  // [degree][cell] = (lo, hi)
    static SupportProfile compute(const BasedFreeComplex& c);
};

struct CellCoset {
    int cell = 0;
    long long coset = 0;
    friend bool operator<(const CellCoset& a, const CellCoset& b) {
        if (a.cell != b.cell) return a.cell < b.cell;
        return a.coset < b.coset;
    }
    friend bool operator==(const CellCoset& a, const CellCoset& b) {
        return a.cell == b.cell && a.coset == b.coset;
    }
};

// A chain of the cover complex in ZN-coordinates (N = {0}: one generator per
// cell and deck coset).
using ZChain = std::map<CellCoset, Rat>;

// ---------------------------------------------------------------------------
// atlas
// ---------------------------------------------------------------------------

struct AtlasEntry {
    Character center;   // cap center on S(G,N)
    Rat cos_bound;      // spherical cap as cos-angle bound (1 = a point, rank 1)
    ChainMap phi;       // valuation-raising chain map on the cap
    ChainHomotopy h;    // homotopy id ~ phi
};

struct Atlas {
    ComplexPtr complex;
    int n = 0;
    std::vector<AtlasEntry> entries;
    Rat r;  // uniform cap shift, > 3*M*n after iteration
    Rat M;  // homotopy valuation defect bound, >= 1
    Rat L;  // profile diameter bound of id, phi, h on basis cells
    int iterations = 1;  // certificate power used to reach r > 3Mn
};

// Builds the two-cap atlas for deck rank 1 from verified certificates for
// the directions +xi and -xi, iterating them until r > 3Mn.
Atlas assemble_atlas(ComplexPtr c, int n, const std::vector<SigmaCertificate>& certs);

// Runs sigma_membership and returns its verified certificate; throws
// NotInSigma when the verdict is not Yes.
SigmaCertificate build_contraction(ComplexPtr c, const Character& xi, int k, const Rat& window);

// ---------------------------------------------------------------------------
// push maps (psi, K) and the finite model
// ---------------------------------------------------------------------------

class PushMachine {
public:
    PushMachine(Atlas atlas);

    const Atlas& atlas() const { return atlas_; }
    const SupportProfile& profile() const { return profile_; }
    // A_zone: psi and K act as id/0 inside;  A_star = A_zone + (3/2)M_atlas
    // absorbs the collar that psi of barely-outside elements can land in.
    // (reducer) and (starstar) hold verbatim with A_star as "A".
    const Rat& zone() const { return cutoff_a_; }
    const Rat& cutoff() const { return cutoff_star_; }
    const Rat& lprime() const { return lprime_; }       // L'
    const Rat& r_push() const { return r_push_; }       // final r of the push lemma
    const Rat& m_push() const { return m_push_; }       // final M of the push lemma

    Rat nu(int degree, const CellCoset& e) const;       // profile norm of t^a x
    Rat nu(int degree, const ZChain& z) const;
    Rat nu_val(int degree, const ZChain& z, int sign) const;  // profile valuation, eta = +-1

    ZChain basis(const CellCoset& e) const;
    ZChain boundary(int degree, const ZChain& z) const;

    const ZChain& psi(int degree, const CellCoset& e);
    const ZChain& K(int degree, const CellCoset& e);
    ZChain psi_chain(int degree, const ZChain& z);
    ZChain K_chain(int degree, const ZChain& z);
    ZChain psi_power(int degree, ZChain z, int times);

    // 0-based index of the chart used for t^a x (antipode of its position).
    int chart(int degree, const CellCoset& e) const;

    // exact identity d K_m + K_{m-1} d = id - psi_m on one basis element
    bool homotopy_identity_ok(int degree, const CellCoset& e);

private:
    Atlas atlas_;
    SupportProfile profile_;
    Rat lprime_, cutoff_a_, cutoff_star_, r_push_, m_push_;
    std::vector<std::map<CellCoset, ZChain>> psi_memo_, k_memo_;

    ZChain apply_matrix(const GrMatrix& m, const ZChain& z) const;
};

struct DominationConstants {
    Rat r_atlas, M_atlas, L;      // atlas stage
    Rat Lprime, A_zone, A;        // cutoff data: A = A_zone + (3/2)M_atlas
    Rat r_push, M_push;           // push stage
    Rat ball_radius;              // A + n*M_push
    int cert_iterations = 1;
};

struct DominationResult {
    ComplexPtr base;
    std::shared_ptr<BasedFreeComplex> d;  // finite free complex, constant entries
    std::vector<std::vector<CellCoset>> index;  // per degree: flat index -> cell/coset
    DominationConstants constants;
    std::vector<IntHomology> homology;          // of D (Z coefficients)
    Rat verify_radius;                          // identities checked up to this profile norm

    // window restrictions of b = zeta and of the homotopy Phi (ab ~ id)
    std::map<std::pair<int, CellCoset>, ZChain> b_window;    // degree, tx -> zeta(tx)
    std::map<std::pair<int, CellCoset>, ZChain> phi_window;  // degree, tx -> Phi(tx)

    int d_index(int degree, const CellCoset& e) const;  // -1 when outside the ball
};

// Executable converse of the domination theorem for deck rank 1, N = {0}:
// produces the finite free model D with a: D -> C the inclusion, b = zeta,
// and the homotopy Phi with d Phi + Phi d = id - ab, all verified exactly on
// the working window.
DominationResult finite_type_reduce(ComplexPtr c, int n, const Rat& window,
                                    const std::optional<Atlas>& atlas = std::nullopt);

// Exact re-verification of a DominationResult (boundary restriction, chain
// maps, homotopy identity, the (starstar) bound); throws on failure.
void verify_domination(const DominationResult& res, PushMachine& machine);

// ---------------------------------------------------------------------------
// total complex assembly (forward direction, quotient rank 1)
// ---------------------------------------------------------------------------

struct TotalComplexInput {
    ComplexPtr c;                  // deck rank 1 complex
    BasedFreeComplex e;            // two-term cone resolution [R[t] -(t-1)-> R[t]]
    std::vector<ChainMap> f;       // per column p = 0,1: chain map P_{p,*} -> E_p (x) C_*
    std::vector<ChainMap> g;       // homotopy inverses
    std::vector<ChainHomotopy> l;  // l_p : f_p g_p ~ id, d l + l d = f g - id
};

struct TotalComplexResult {
    BasedFreeComplex tp, te;
    ChainMap f_total;
    std::vector<std::string> checked;
};

TotalComplexResult total_complex_assemble(const TotalComplexInput& in);

}  // namespace sigma

#endif
