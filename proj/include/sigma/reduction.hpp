#ifndef SIGMA_REDUCTION_HPP
#define SIGMA_REDUCTION_HPP

#include "sigma/complex.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sigma {

// Exact division w / u in the group ring: rank 1 over any coefficient ring
// (top-down long division), higher rank only for monomial divisors.
std::optional<GroupRingElem> gr_exact_div(const GroupRingElem& w, const GroupRingElem& u);

// True when the xi-lowest part of u is a single lattice point with a unit
// coefficient, i.e. u is a unit of the completion in direction xi.
bool is_completion_unit(const GroupRingElem& u, const Character& xi, const RingSpec& ring);

struct NoEvidence {
    int degree = 0;
    std::vector<GroupRingElem> cycle;  // coordinates in the original complex
    std::string evidence;
};

// Gaussian elimination of based complexes over the completion in direction
// xi.  The exact phase only cancels pivots whose eliminations stay inside
// the group ring, so the surviving complex is chain homotopy equivalent to
// the input over the completion via exact polynomial maps (tracked by iota).
// The windowed phase continues with truncated series inverses and is used
// for decision hints only.
class MorseReduction {
public:
    MorseReduction(ComplexPtr c, Character xi);

    void exact_phase();
    // Returns true when all basis elements in degrees <= k were cancelled.
    bool windowed_phase(int k, const Rat& window);

    // Looks for a surviving basis cycle in degrees <= k whose incoming row
    // ideal provably contains no element of unit xi-lowest coefficient.
    std::optional<NoEvidence> certified_nonvanishing(int k) const;

    bool degrees_cleared(int k) const;
    int alive_count(int degree) const;
    std::string diagnostics(int k) const;

private:
    ComplexPtr orig_;
    Character xi_;
    std::vector<std::vector<char>> alive_;
    std::vector<GrMatrix> bnd_;  // bnd_[i] = working d_i for 1 <= i <= dim
    // iota_[i][j]: the chain of the original complex represented by the
    // surviving basis element j of degree i.
    std::vector<std::vector<std::vector<GroupRingElem>>> iota_;

    struct Pivot {
        int degree;  // of the column
        int row, col;
    };
    std::optional<Pivot> find_pivot(bool exact_gate, int max_col_degree, const Rat* cap) const;
    bool exact_gate_ok(int degree, int row, int col) const;
    void cancel_exact(const Pivot& p);
    void cancel_windowed(const Pivot& p, const std::vector<Rat>& caps);

    const GrMatrix& mat(int degree) const { return bnd_[static_cast<size_t>(degree)]; }
    GrMatrix& mat(int degree) { return bnd_[static_cast<size_t>(degree)]; }
};

}  // namespace sigma

#endif
