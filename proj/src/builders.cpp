#include "sigma/builders.hpp"

#include <algorithm>
#include <cctype>

namespace sigma {

namespace {

struct Letter {
    int gen;
    int sign;
};

void push_reduced(std::vector<std::pair<int, int>>& w, int gen, int sign) {
    if (!w.empty() && w.back().first == gen && w.back().second == -sign)
        w.pop_back();
    else
        w.emplace_back(gen, sign);
}

}  // namespace

std::vector<std::pair<int, int>> parse_word(const std::string& word,
                                            const std::vector<std::string>& generators) {
    std::vector<std::pair<int, int>> out;
    size_t i = 0;
    while (i < word.size()) {
        char ch = word[i];
        if (std::isspace(static_cast<unsigned char>(ch)) || ch == '*' || ch == '.') {
            ++i;
            continue;
        }
        // longest generator-name match at this position
        int gen = -1;
        size_t len = 0;
        for (size_t g = 0; g < generators.size(); ++g) {
            const std::string& name = generators[g];
            if (name.size() > len && word.compare(i, name.size(), name) == 0) {
                gen = static_cast<int>(g);
                len = name.size();
            }
        }
        if (gen < 0) throw SchemaError("unknown generator at '" + word.substr(i) + "'");
        i += len;
        long long exp = 1;
        if (i < word.size() && word[i] == '^') {
            ++i;
            bool negative = false;
            if (i < word.size() && (word[i] == '-' || word[i] == '+')) {
                negative = word[i] == '-';
                ++i;
            }
            if (i >= word.size() || !std::isdigit(static_cast<unsigned char>(word[i])))
                throw SchemaError("malformed exponent in word");
            long long e = 0;
            while (i < word.size() && std::isdigit(static_cast<unsigned char>(word[i]))) {
                e = e * 10 + (word[i] - '0');
                ++i;
            }
            exp = negative ? -e : e;
        }
        int sign = exp >= 0 ? 1 : -1;
        for (long long r = 0; r < (exp >= 0 ? exp : -exp); ++r) push_reduced(out, gen, sign);
    }
    return out;
}

GroupRingElem fox_derivative(const std::vector<std::pair<int, int>>& word, int j,
                             const std::vector<LatticePoint>& assignment, const RingSpec& ring,
                             int deck_rank) {
    GroupRingElem d(ring, deck_rank);
    LatticePoint prefix = lattice_zero(deck_rank);
    for (const auto& [gen, sign] : word) {
        if (sign > 0) {
            if (gen == j) d.add_term(prefix, Rat(1));
            prefix = lattice_add(prefix, assignment[static_cast<size_t>(gen)]);
        } else {
            prefix = lattice_sub(prefix, assignment[static_cast<size_t>(gen)]);
            if (gen == j) d.add_term(prefix, Rat(-1));
        }
    }
    return d;
}

BasedFreeComplex presentation_complex(const PresentationInput& p, const RingSpec& ring) {
    int r = p.deck_rank;
    if (r < 1) throw SchemaError("deck rank must be >= 1");
    std::vector<LatticePoint> assign;
    for (const auto& g : p.generators) {
        auto it = p.abelianization.find(g);
        if (it == p.abelianization.end()) throw SchemaError("no abelianization for generator " + g);
        if (static_cast<int>(it->second.size()) != r) throw SchemaError("assignment rank mismatch");
        assign.push_back(it->second);
    }
    // the assignment must hit a finite-index sublattice: integer rank r
    {
        std::vector<std::vector<Rat>> m(static_cast<size_t>(r),
                                        std::vector<Rat>(p.generators.size(), Rat(0)));
        for (size_t g = 0; g < p.generators.size(); ++g)
            for (int i = 0; i < r; ++i) m[static_cast<size_t>(i)][g] = Rat(assign[g][static_cast<size_t>(i)]);
        // Gaussian rank over Q
        int rank = 0;
        size_t col = 0;
        for (int row = 0; row < r && col < p.generators.size(); ++col) {
            int piv = -1;
            for (int i = row; i < r; ++i)
                if (m[static_cast<size_t>(i)][col] != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) continue;
            std::swap(m[static_cast<size_t>(row)], m[static_cast<size_t>(piv)]);
            for (int i = 0; i < r; ++i) {
                if (i == row || m[static_cast<size_t>(i)][col] == 0) continue;
                Rat f = m[static_cast<size_t>(i)][col] / m[static_cast<size_t>(row)][col];
                for (size_t cc = col; cc < p.generators.size(); ++cc)
                    m[static_cast<size_t>(i)][cc] -= f * m[static_cast<size_t>(row)][cc];
            }
            ++row;
            ++rank;
        }
        if (rank != r)
            throw SchemaError("abelianization image does not generate a finite-index sublattice");
    }

    std::vector<std::vector<std::pair<int, int>>> words;
    for (const auto& rel : p.relators) {
        auto w = parse_word(rel, p.generators);
        LatticePoint total = lattice_zero(r);
        for (const auto& [gen, sign] : w) {
            total = sign > 0 ? lattice_add(total, assign[static_cast<size_t>(gen)])
                             : lattice_sub(total, assign[static_cast<size_t>(gen)]);
        }
        for (long long e : total)
            if (e != 0) throw SchemaError("relator '" + rel + "' does not die in the abelian quotient");
        words.push_back(std::move(w));
    }

    std::vector<int> ranks = {1, static_cast<int>(p.generators.size())};
    if (!p.relators.empty()) ranks.push_back(static_cast<int>(p.relators.size()));
    BasedFreeComplex c(ring, r, ranks);
    GrMatrix d1(ring, r, 1, static_cast<int>(p.generators.size()));
    for (size_t g = 0; g < p.generators.size(); ++g) {
        GroupRingElem e(ring, r);
        e.add_term(assign[g], Rat(1));
        e.add_term(lattice_zero(r), Rat(-1));
        d1.set(0, static_cast<int>(g), e);
    }
    c.set_boundary(1, d1);
    if (!p.relators.empty()) {
        GrMatrix d2(ring, r, static_cast<int>(p.generators.size()), static_cast<int>(p.relators.size()));
        for (size_t rel = 0; rel < words.size(); ++rel)
            for (size_t g = 0; g < p.generators.size(); ++g)
                d2.set(static_cast<int>(g), static_cast<int>(rel),
                       fox_derivative(words[rel], static_cast<int>(g), assign, ring, r));
        c.set_boundary(2, d2);
    }
    c.set_label(0, 0, "v");
    for (size_t g = 0; g < p.generators.size(); ++g)
        c.set_label(1, static_cast<int>(g), p.generators[g]);
    for (size_t rel = 0; rel < p.relators.size(); ++rel)
        c.set_label(2, static_cast<int>(rel), "r" + std::to_string(rel));
    auto rep = validate(c);
    if (!rep.ok) throw SigmaError("Fox boundaries violate dd = 0: " + rep.first_issue->message);
    return c;
}

BasedFreeComplex mapping_torus(const BasedFreeComplex& cx, const ChainMap& f) {
    auto constant_only = [](const GrMatrix& m) {
        bool ok = true;
        m.for_each([&](int, int, const GroupRingElem& x) {
            for (const auto& [g, c] : x.terms())
                for (long long e : g) ok = ok && e == 0;
        });
        return ok;
    };
    for (int i = 1; i <= cx.dim(); ++i)
        if (!constant_only(cx.boundary(i)))
            throw SchemaError("mapping_torus needs a complex with trivial deck action");
    if (!(*f.src() == cx) || !(*f.dst() == cx)) throw DimensionMismatch("f is not a self map of the base");
    if (!f.commutes_with_boundaries()) throw SigmaError("f is not a chain map");
    for (int i = 0; i <= cx.dim(); ++i)
        if (!constant_only(f.at(i))) throw SchemaError("mapping_torus needs a constant chain map");

    const RingSpec ring = cx.ring();
    int n = cx.dim();
    std::vector<int> ranks;
    for (int k = 0; k <= n + 1; ++k) ranks.push_back(cx.rank_at(k) + cx.rank_at(k - 1));
    BasedFreeComplex d(ring, 1, ranks);

    auto reinterp = [&](const GroupRingElem& x) {
        // constant entry of the base, re-read over the rank-1 deck ring
        GroupRingElem y(ring, 1);
        for (const auto& [g, c] : x.terms()) y.add_term(lattice_zero(1), c);
        return y;
    };
    GroupRingElem tvar = GroupRingElem::term1(ring, 1, Rat(1));

    for (int k = 1; k <= n + 1; ++k) {
        GrMatrix dk(ring, 1, ranks[static_cast<size_t>(k - 1)], ranks[static_cast<size_t>(k)]);
        // block (x-part -> x-part): boundary of the base
        if (k <= n)
            cx.boundary(k).for_each(
                [&](int i, int j, const GroupRingElem& x) { dk.set(i, j, reinterp(x)); });
        // block (y-part -> x-part): (-1)^{k-1} (t*id - f) in degree k-1
        int off_col = cx.rank_at(k);
        Rat sgn = (k - 1) % 2 == 0 ? Rat(1) : Rat(-1);
        for (int j = 0; j < cx.rank_at(k - 1); ++j) {
            GroupRingElem block = tvar.scaled(sgn);
            dk.add_to(j, off_col + j, block);
        }
        f.at(k - 1).for_each([&](int i, int j, const GroupRingElem& x) {
            dk.add_to(i, off_col + j, reinterp(x).scaled(-sgn));
        });
        // block (y-part -> y-part): boundary of the base in degree k-1
        int off_row = cx.rank_at(k - 1);
        if (k - 1 >= 1)
            cx.boundary(k - 1).for_each([&](int i, int j, const GroupRingElem& x) {
                dk.set(off_row + i, off_col + j, reinterp(x));
            });
        d.set_boundary(k, dk);
    }
    auto rep = validate(d);
    if (!rep.ok) throw SigmaError("mapping torus violates dd = 0: " + rep.first_issue->message);
    d.set_name(cx.name().empty() ? "mapping-torus" : "mapping-torus-of-" + cx.name());
    return d;
}

BasedFreeComplex builtin_complex(const std::string& name) {
    if (name == "circle") {
        PresentationInput p;
        p.generators = {"x"};
        p.abelianization["x"] = {1};
        p.deck_rank = 1;
        auto c = presentation_complex(p);
        c.set_name("circle");
        return c;
    }
    if (name == "torus") {
        PresentationInput p;
        p.generators = {"x", "y"};
        p.relators = {"xyx^-1y^-1"};
        p.abelianization["x"] = {1, 0};
        p.abelianization["y"] = {0, 1};
        p.deck_rank = 2;
        auto c = presentation_complex(p);
        c.set_name("torus");
        return c;
    }
    if (name == "wedge-s1-s2") {
        BasedFreeComplex c(RingSpec::Z(), 1, {1, 1, 1});
        GrMatrix d1(RingSpec::Z(), 1, 1, 1);
        GroupRingElem e(RingSpec::Z(), 1);
        e.add_term({1}, Rat(1));
        e.add_term({0}, Rat(-1));
        d1.set(0, 0, e);
        c.set_boundary(1, d1);
        // d2 = 0: the 2-sphere summand is a free cell
        c.set_label(0, 0, "v");
        c.set_label(1, 0, "x");
        c.set_label(2, 0, "s");
        c.set_name("wedge-s1-s2");
        return c;
    }
    if (name == "trefoil") {
        PresentationInput p;
        p.generators = {"x", "y"};
        p.relators = {"xyxy^-1x^-1y^-1"};
        p.abelianization["x"] = {1};
        p.abelianization["y"] = {1};
        p.deck_rank = 1;
        auto c = presentation_complex(p);
        c.set_name("trefoil");
        return c;
    }
    if (name == "bs12") {
        PresentationInput p;
        p.generators = {"a", "t"};
        p.relators = {"tat^-1a^-2"};
        p.abelianization["a"] = {0};
        p.abelianization["t"] = {1};
        p.deck_rank = 1;
        auto c = presentation_complex(p);
        c.set_name("bs12");
        return c;
    }
    throw SchemaError("unknown builtin '" + name + "' (have: circle, torus, wedge-s1-s2, trefoil, bs12)");
}

std::vector<std::string> builtin_names() {
    return {"circle", "torus", "wedge-s1-s2", "trefoil", "bs12"};
}

}  // namespace sigma
