#ifndef SIGMA_TESTS_RANDOM_COMPLEX_HPP
#define SIGMA_TESTS_RANDOM_COMPLEX_HPP

#include "sigma/complex.hpp"
#include "sigma/domination.hpp"

#include <random>

namespace sigma::testing {

struct Rng {
    std::mt19937_64 g;
    explicit Rng(unsigned long long seed) : g(seed) {}
    int uniform(int lo, int hi) {  // inclusive
        return static_cast<int>(std::uniform_int_distribution<long long>(lo, hi)(g));
    }
};

inline GroupRingElem random_elem(Rng& rng, const RingSpec& ring, int rank, int max_terms,
                                 int max_exp, int min_exp = -2) {
    GroupRingElem x(ring, rank);
    int terms = rng.uniform(0, max_terms);
    for (int t = 0; t < terms; ++t) {
        LatticePoint g;
        for (int i = 0; i < rank; ++i) g.push_back(rng.uniform(min_exp, max_exp));
        int c = rng.uniform(-2, 2);
        if (c == 0) c = 1;
        x.add_term(g, Rat(c));
    }
    return x;
}

// Direct sum of two-term blocks at staggered degrees, then random elementary
// changes of basis.  Each degree-d module is partitioned into disjoint index
// ranges for "columns of a block with top d" and "rows of a block with top
// d+1", so dd = 0 holds by construction.
inline BasedFreeComplex random_complex(Rng& rng, const RingSpec& ring, int deck_rank, int max_deg,
                                       int max_rank) {
    int dim = rng.uniform(1, max_deg);
    struct Block {
        int top_degree;
        int rows, cols;
        int row0 = 0, col0 = 0;  // index offsets, assigned below
    };
    std::vector<Block> blocks;
    int nblocks = rng.uniform(1, 3);
    for (int b = 0; b < nblocks; ++b) {
        Block bl;
        bl.top_degree = rng.uniform(1, dim);
        bl.rows = rng.uniform(1, std::max(1, max_rank / 2));
        bl.cols = rng.uniform(1, std::max(1, max_rank / 2));
        blocks.push_back(bl);
    }
    std::vector<int> ranks(static_cast<size_t>(dim) + 1, 0);
    for (auto& bl : blocks) {
        bl.col0 = ranks[static_cast<size_t>(bl.top_degree)];
        ranks[static_cast<size_t>(bl.top_degree)] += bl.cols;
        bl.row0 = ranks[static_cast<size_t>(bl.top_degree - 1)];
        ranks[static_cast<size_t>(bl.top_degree - 1)] += bl.rows;
    }
    for (auto& r : ranks) {
        if (rng.uniform(0, 3) == 0) r += 1;  // occasional free summand
        r = std::min(r, max_rank);
    }

    BasedFreeComplex c(ring, deck_rank, ranks);
    for (const auto& bl : blocks) {
        int d = bl.top_degree;
        GrMatrix m = c.boundary(d);
        for (int i = 0; i < bl.rows && bl.row0 + i < c.rank_at(d - 1); ++i)
            for (int j = 0; j < bl.cols && bl.col0 + j < c.rank_at(d); ++j)
                if (rng.uniform(0, 1) == 0)
                    m.set(bl.row0 + i, bl.col0 + j, random_elem(rng, ring, deck_rank, 2, 2));
        c.set_boundary(d, m);
    }

    // elementary transvections: C_i basis change conjugates d_i and d_{i+1}
    int ops = rng.uniform(0, 6);
    for (int t = 0; t < ops; ++t) {
        int i = rng.uniform(0, dim);
        int n = c.rank_at(i);
        if (n < 2) continue;
        int a = rng.uniform(0, n - 1), b = rng.uniform(0, n - 1);
        if (a == b) continue;
        GroupRingElem lam = random_elem(rng, ring, deck_rank, 1, 1);
        if (lam.is_zero()) continue;
        // x_a += lam * x_b on the degree-i basis
        if (i >= 1) {
            GrMatrix m = c.boundary(i);  // column b gains lam * column a? no:
            // new basis e_a' = e_a + lam e_b: coordinates transform by
            // col_a stays, and d(e_a') = d(e_a) + lam d(e_b)
            for (const auto& [r, x] : c.boundary(i).col(b)) m.add_to(r, a, lam * x);
            // recompute: we must express d on the new basis: d(e_a') as above
            c.set_boundary(i, m);
        }
        if (i + 1 <= dim) {
            // coordinates of degree-(i+1) boundaries in the new basis:
            // y = sum c_a e_a: with e_a = e_a' - lam e_b: c_b' = c_b - lam c_a
            GrMatrix m = c.boundary(i + 1);
            for (int j = 0; j < c.rank_at(i + 1); ++j) {
                GroupRingElem ca = m.entry(a, j);
                if (!ca.is_zero()) m.add_to(b, j, -(lam * ca));
            }
            c.set_boundary(i + 1, m);
        }
    }
    return c;
}

// random total-complex input: P = E (x) C, f = 1 + ds + sd, g = 1, L = s;
// all hypotheses hold exactly by construction.
inline TotalComplexInput random_total_input(Rng& rng) {
    TotalComplexInput in;
    auto c = std::make_shared<BasedFreeComplex>(random_complex(rng, RingSpec::Z(), 1, 3, 3));
    in.c = c;
    in.e = BasedFreeComplex(RingSpec::Z(), 1, {1, 1});
    GrMatrix de(RingSpec::Z(), 1, 1, 1);
    GroupRingElem tm1(RingSpec::Z(), 1);
    tm1.add_term({1}, Rat(1));
    tm1.add_term({0}, Rat(-1));
    de.set(0, 0, tm1);
    in.e.set_boundary(1, de);
    for (int p = 0; p < 2; ++p) {
        ChainHomotopy s = ChainHomotopy::zero(c, c);
        for (int q = 0; q < c->dim(); ++q) {
            GrMatrix m(RingSpec::Z(), 1, c->rank_at(q + 1), c->rank_at(q));
            for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                if (rng.uniform(0, 2) == 0) m.set(i, j, random_elem(rng, RingSpec::Z(), 1, 2, 2, 0));
            s.at(q) = m;
        }
        std::vector<GrMatrix> fmats;
        for (int q = 0; q <= c->dim(); ++q) {
            GrMatrix f = GrMatrix::identity(RingSpec::Z(), 1, c->rank_at(q));
            f = f + c->boundary_or_zero(q + 1) * s.at(q);
            if (q >= 1) f = f + s.at(q - 1) * c->boundary(q);
            fmats.push_back(std::move(f));
        }
        in.f.push_back(ChainMap(c, c, std::move(fmats)));
        in.g.push_back(ChainMap::identity(c));
        in.l.push_back(std::move(s));
    }
    return in;
}

}  // namespace sigma::testing

#endif
