#ifndef SIGMA_SNF_HPP
#define SIGMA_SNF_HPP

#include "sigma/complex.hpp"

#include <optional>
#include <vector>

namespace sigma {

// ---- rank-1 Laurent polynomial helpers (entries of deck-rank-1 elements) ----

long long r1_min_exp(const GroupRingElem& x);  // error on zero
long long r1_max_exp(const GroupRingElem& x);
long long r1_spread(const GroupRingElem& x);   // 0 for zero
Rat r1_coeff(const GroupRingElem& x, long long e);

// Division with remainder over a field: a = q*b + r with spread(r) < spread(b).
void r1_divmod(const GroupRingElem& a, const GroupRingElem& b, GroupRingElem& q, GroupRingElem& r);
GroupRingElem r1_gcd(GroupRingElem a, GroupRingElem b);  // field coefficients
// Monic polynomial with nonzero constant term representing the unit class.
GroupRingElem r1_canonical(const GroupRingElem& x);
// Clear denominators / content: primitive Z-coefficient representative of a
// Q-coefficient element (positive leading-exponent coefficient).
GroupRingElem r1_primitive_z(const GroupRingElem& x);

// ---- Smith normal form over the one-variable Laurent ring, field coefficients ----

struct LaurentSNF {
    int rank = 0;
    std::vector<GroupRingElem> diag;  // canonical nonzero diagonal, divisibility chain
    // U * A * V = S, recorded when requested.
    std::optional<GrMatrix> U, Uinv, V, Vinv;
};

LaurentSNF laurent_snf(const GrMatrix& a, bool with_transforms);

// Exact linear solving over the Laurent PID via a factored matrix.
class LaurentSolver {
public:
    explicit LaurentSolver(const GrMatrix& a);
    int rank() const { return snf_.rank; }
    // One solution of A x = w, or nullopt if none exists over the ring.
    std::optional<std::vector<GroupRingElem>> solve(const std::vector<GroupRingElem>& w) const;
    // Basis of ker A as columns.
    std::vector<std::vector<GroupRingElem>> kernel_basis() const;

private:
    GrMatrix a_;
    LaurentSNF snf_;
};

// ---- homology over the Laurent PID (deck rank 1, field coefficients) ----

struct LaurentHomology {
    int degree = 0;
    int free_rank = 0;
    std::vector<GroupRingElem> factors;  // canonical non-unit invariant factors
};

// Invariant factors of each homology module of a deck-rank-1 complex over a
// field, canonicalized (monic, nonzero constant term, divisibility order).
std::vector<LaurentHomology> homology_lambda(const BasedFreeComplex& c);

// ---- integer Smith normal form (sparse), for finite Z-complexes ----

struct IntSparseMat {
    int rows = 0;
    std::vector<std::map<int, Int>> cols;

    IntSparseMat() = default;
    IntSparseMat(int r, int c) : rows(r), cols(static_cast<size_t>(c)) {}
    int ncols() const { return static_cast<int>(cols.size()); }
    void add(int i, int j, const Int& v);
};

struct IntSmith {
    int rank = 0;
    std::vector<Int> nonunit_factors;  // invariant factors != 1, divisibility order
};

IntSmith int_smith(IntSparseMat m);

struct IntHomology {
    int degree = 0;
    int free_rank = 0;
    std::vector<Int> torsion;  // orders of the cyclic torsion summands
};

// Homology of a finite complex of free Z-modules given by integer matrices
// (entries of deck-rank-1 complexes with constant coefficients).
std::vector<IntHomology> integer_homology(const BasedFreeComplex& c);

IntSparseMat to_int_matrix(const GrMatrix& m);  // requires constant Z entries

}  // namespace sigma

#endif
