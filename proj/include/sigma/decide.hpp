#ifndef SIGMA_DECIDE_HPP
#define SIGMA_DECIDE_HPP

#include "sigma/certificate.hpp"
#include "sigma/snf.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sigma {

enum class Status { Yes, No, Undecided };
std::string status_str(Status s);

struct NoWitness {
    int degree = 0;
    std::vector<GroupRingElem> cycle;
    std::string evidence;
};

struct SigmaVerdict {
    Character xi;
    int k = 0;
    RingSpec ring;
    Status status = Status::Undecided;
    std::optional<SigmaCertificate> certificate;
    std::optional<NoWitness> witness;
    Rat window_used;
    std::vector<std::string> layers;  // decision layers taken, e.g. "L2-exact-reduction"
    std::string note;
};

struct Conclusion {
    std::string kind;  // "sigma1X" | "sigmakX" | "domination" | "clamp" | "cat"
    std::optional<Character> direction;
    int k = 0;
    bool conditional = false;
    std::string statement;
    std::vector<std::string> provenance;  // theorem names and user-supplied hypotheses
};

struct SigmaReport {
    std::string complex_id;
    int dim = 0;
    int k_requested = 0;
    int k = 0;  // clamped at dim
    RingSpec ring;
    Rat window;
    bool sample_only = false;
    std::vector<SigmaVerdict> verdicts;
    std::vector<Conclusion> conclusions;
};

// Default window: 64 * (max xi-value spread of any boundary entry), at least 64.
Rat default_window(const BasedFreeComplex& c, const Character& xi);

// Layered decision of "xi in Sigma^k(C; ring)".
//   L1: exact, deck rank 1, field coefficients (homology over the Laurent PID).
//   L2: deck rank 1, Z: exact elimination over the completion, certified
//       negatives, windowed certificate construction.
//   L3: any rank/ring: windowed certificate search; never an unproven No.
SigmaVerdict sigma_membership(ComplexPtr c, const Character& xi, int k, const RingSpec& ring,
                              const Rat& window);

// Retry wrapper: doubles the window on Undecided, up to `retries` times.
SigmaVerdict sigma_membership_retrying(ComplexPtr c, const Character& xi, int k,
                                       const RingSpec& ring, const Rat& window, int retries);

enum class Movability { Movable, NotMovable, Undecided };

struct MovabilityResult {
    Movability status = Movability::Undecided;
    std::optional<GroupRingElem> delta;                 // xi-lowest coefficient 1
    std::optional<std::vector<GroupRingElem>> preimage; // delta * z = d(preimage)
    std::string note;
};

// Movability to infinity of the class of the cycle z in degree q.
MovabilityResult movable_to_infinity(ComplexPtr c, int q, const std::vector<GroupRingElem>& z,
                                     const Character& xi, const RingSpec& ring);

struct ScanOptions {
    std::vector<Character> directions;  // empty = automatic sample
    Rat window;                         // 0 = default
    int retries = 4;
    int jobs = 1;
};

SigmaReport sphere_scan(ComplexPtr c, int k, const RingSpec& ring, const ScanOptions& opts);

struct PromoteFlags {
    bool sigma2_pi1_asserted = false;
    int connectivity = 0;  // recorded in provenance only
};

// Report promotion: homological verdicts to homotopical conclusions.
SigmaReport promote(SigmaReport report, const PromoteFlags& flags);

struct CatBound {
    int bound = 0;
    bool conditional = false;
    std::vector<std::string> provenance;
    std::string note;
};

// Upper bound for Cat(X, xi) from the -xi conclusions of a (promoted) report.
CatBound cat_upper_bound(const SigmaReport& report, const Character& xi);

// Automatic direction sample: exactly {+xi, -xi} for rank 1; a deterministic
// primitive-vector sample for higher rank.
std::vector<Character> automatic_directions(int deck_rank);

}  // namespace sigma

#endif
