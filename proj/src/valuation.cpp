#include "sigma/valuation.hpp"

namespace sigma {

ValOrInf Valuation::of_chain(int degree, const std::vector<GroupRingElem>& coords) const {
    ValOrInf best = ValOrInf::infinity();
    for (size_t j = 0; j < coords.size(); ++j) {
        ValOrInf v = xi_valuation(coords[j], xi_);
        if (v.is_infinite()) continue;
        best = min(best, v + basis_value(degree, static_cast<int>(j)));
    }
    return best;
}

Valuation standard_valuation(const BasedFreeComplex& c, const Character& xi) {
    std::vector<std::vector<Rat>> vals(static_cast<size_t>(c.dim()) + 1);
    vals[0].assign(static_cast<size_t>(c.rank_at(0)), Rat(0));
    for (int i = 1; i <= c.dim(); ++i) {
        vals[static_cast<size_t>(i)].assign(static_cast<size_t>(c.rank_at(i)), Rat(0));
        const GrMatrix& d = c.boundary(i);
        for (int j = 0; j < c.rank_at(i); ++j) {
            ValOrInf v = ValOrInf::infinity();
            for (const auto& [r, x] : d.col(j)) {
                ValOrInf vx = xi_valuation(x, xi);
                if (vx.is_infinite()) continue;
                v = min(v, vx + vals[static_cast<size_t>(i - 1)][static_cast<size_t>(r)]);
            }
            // v(x) = 0 if dx = 0, else v(x) = v(dx)
            vals[static_cast<size_t>(i)][static_cast<size_t>(j)] = v.is_infinite() ? Rat(0) : v.finite();
        }
    }
    return Valuation(xi, std::move(vals));
}

std::optional<std::string> check_valuation_axioms(const BasedFreeComplex& c, const Valuation& v) {
    for (int i = 1; i <= c.dim(); ++i) {
        const GrMatrix& d = c.boundary(i);
        for (int j = 0; j < c.rank_at(i); ++j) {
            std::vector<GroupRingElem> col = zero_vector(c.ring(), c.deck_rank(), c.rank_at(i - 1));
            for (const auto& [r, x] : d.col(j)) col[static_cast<size_t>(r)] = x;
            ValOrInf vd = v.of_chain(i - 1, col);
            ValOrInf vx = ValOrInf(v.basis_value(i, j));
            if (vd < vx)
                return "v(d x) < v(x) at degree " + std::to_string(i) + ", basis " +
                       std::to_string(j);
        }
    }
    return std::nullopt;
}

}  // namespace sigma
