#ifndef SIGMA_BUILDERS_HPP
#define SIGMA_BUILDERS_HPP

#include "sigma/complex.hpp"

#include <map>
#include <string>
#include <vector>

namespace sigma {

// A finite presentation together with the abelianization assignment onto the
// deck lattice.  Relators are free-group words over the generator names,
// e.g. "t a t^-1 a^-2" or "xyxy^-1x^-1y^-1" for single-letter generators.
struct PresentationInput {
    std::vector<std::string> generators;
    std::vector<std::string> relators;
    std::map<std::string, LatticePoint> abelianization;
    int deck_rank = 1;
};

// Letters of a freely reduced word: (generator index, +-1).
std::vector<std::pair<int, int>> parse_word(const std::string& word,
                                            const std::vector<std::string>& generators);

// Abelianized Fox derivative d(word)/d(generator j) in the deck group ring.
GroupRingElem fox_derivative(const std::vector<std::pair<int, int>>& word, int j,
                             const std::vector<LatticePoint>& assignment, const RingSpec& ring,
                             int deck_rank);

// The based chain complex of the universal abelian cover of the presentation
// 2-complex: rank 1 in degree 0, one edge per generator, one 2-cell per
// relator; boundaries by abelianized Fox calculus.
BasedFreeComplex presentation_complex(const PresentationInput& p, const RingSpec& ring = RingSpec::Z());

// Algebraic mapping torus of a chain self-map f of a complex with constant
// entries (trivial deck action): the cone of (t*id - f) on the induced-up
// complex, a deck-rank-1 complex.  For f = id this is the product with a
// circle; the engine confirms the (-xi)-membership law on every instance.
BasedFreeComplex mapping_torus(const BasedFreeComplex& cx, const ChainMap& f);

// Named example complexes: circle, torus, wedge-s1-s2, trefoil, bs12.
BasedFreeComplex builtin_complex(const std::string& name);
std::vector<std::string> builtin_names();

}  // namespace sigma

#endif
