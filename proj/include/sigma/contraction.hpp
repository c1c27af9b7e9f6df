#ifndef SIGMA_CONTRACTION_HPP
#define SIGMA_CONTRACTION_HPP

#include "sigma/certificate.hpp"

#include <optional>

namespace sigma {

// Windowed linear solving over the completion: columns of a boundary matrix
// are echelonized by xi-valuation; right-hand sides are reduced greedily and
// residual terms beyond the window cap are discarded (the "cutting off" of
// the certificate construction).
class SeriesSolver {
public:
    // cap: columns are kept exact up to this xi-value; discard: residual
    // terms above this value are cut off instead of failing the solve (the
    // final certificate verification decides whether the cut was harmless).
    SeriesSolver(const GrMatrix& m, Character xi, Rat cap, Rat discard);

    // One windowed preimage of w, or nullopt when w does not reduce.
    std::optional<std::vector<GroupRingElem>> solve(const std::vector<GroupRingElem>& w) const;

private:
    struct Item {
        std::vector<GroupRingElem> col, pre;
        int prow = 0;
        LatticePoint ppoint;
        Rat pval;
        Rat pcoeff;
    };
    struct Pos {
        Rat val;
        int row;
        LatticePoint point;
        Rat coeff;
    };

    RingSpec ring_;
    int rank_;
    int rows_, cols_;
    Character xi_;
    Rat cap_, discard_;
    std::map<int, Item> items_;  // pivot row -> item

    std::optional<Pos> min_position(const std::vector<GroupRingElem>& v) const;
    void truncate_vec(std::vector<GroupRingElem>& v) const;
    void insert(std::vector<GroupRingElem> col, std::vector<GroupRingElem> pre);
};

// Builds a polynomial certificate for Sigma^k membership in direction xi by
// the windowed contraction: delta is assembled degree by degree, cut off at
// the window, and A := id - d delta - delta d is computed exactly.  Returns
// nullopt when the window is insufficient (or membership fails).
std::optional<SigmaCertificate> build_certificate(ComplexPtr c, const Character& xi, int k,
                                                  const Rat& window);

}  // namespace sigma

#endif
