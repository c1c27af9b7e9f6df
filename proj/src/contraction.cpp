#include "sigma/contraction.hpp"

namespace sigma {

namespace {

constexpr int kMaxSolveSteps = 400000;

bool pos_less(const Rat& va, int ra, const LatticePoint& pa, const Rat& vb, int rb,
              const LatticePoint& pb) {
    if (va != vb) return va < vb;
    if (ra != rb) return ra < rb;
    return pa < pb;
}

}  // namespace

namespace {

// a column whose minimal xi-value is achieved by a single term makes a
// robust pivot (its lowest part is a monomial of the completion)
bool monomial_lowest(const std::vector<GroupRingElem>& col, const Character& xi) {
    std::optional<Rat> v0;
    int count = 0;
    for (const auto& x : col)
        for (const auto& [g, c] : x.terms()) {
            Rat v = xi.eval(g);
            if (!v0 || v < *v0) {
                v0 = v;
                count = 1;
            } else if (v == *v0) {
                ++count;
            }
        }
    return count == 1;
}

}  // namespace

SeriesSolver::SeriesSolver(const GrMatrix& m, Character xi, Rat cap, Rat discard)
    : ring_(m.ring()), rank_(m.rank()), rows_(m.rows()), cols_(m.cols()), xi_(std::move(xi)),
      cap_(std::move(cap)), discard_(std::move(discard)) {
    std::vector<std::pair<std::vector<GroupRingElem>, std::vector<GroupRingElem>>> pending;
    for (int j = 0; j < cols_; ++j) {
        std::vector<GroupRingElem> col = zero_vector(ring_, rank_, rows_);
        for (const auto& [i, x] : m.col(j)) col[static_cast<size_t>(i)] = x;
        std::vector<GroupRingElem> pre = zero_vector(ring_, rank_, cols_);
        pre[static_cast<size_t>(j)] = GroupRingElem::one(ring_, rank_);
        pending.emplace_back(std::move(col), std::move(pre));
    }
    // monomial-lowest columns first
    std::vector<char> done(pending.size(), 0);
    for (size_t j = 0; j < pending.size(); ++j)
        if (monomial_lowest(pending[j].first, xi_)) {
            insert(std::move(pending[j].first), std::move(pending[j].second));
            done[j] = 1;
        }
    for (size_t j = 0; j < pending.size(); ++j)
        if (!done[j]) insert(std::move(pending[j].first), std::move(pending[j].second));
}

std::optional<SeriesSolver::Pos> SeriesSolver::min_position(
    const std::vector<GroupRingElem>& v) const {
    std::optional<Pos> best;
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
        for (const auto& [g, c] : v[static_cast<size_t>(i)].terms()) {
            Rat val = xi_.eval(g);
            if (!best || pos_less(val, i, g, best->val, best->row, best->point))
                best = Pos{val, i, g, c};
        }
    }
    return best;
}

void SeriesSolver::truncate_vec(std::vector<GroupRingElem>& v) const {
    for (auto& x : v) x = truncate_above(x, xi_, cap_);
}

void SeriesSolver::insert(std::vector<GroupRingElem> col, std::vector<GroupRingElem> pre) {
    int guard = 0;
    // reductions that fail to raise the xi-value stall only when the level
    // subring is nontrivial (xi not injective); park such columns
    const int stall_limit = 16 * (rows_ + 4);
    int stall = 0;
    std::optional<Rat> last_val;
    while (true) {
        if (++guard > kMaxSolveSteps) return;  // give up on this column
        truncate_vec(col);
        auto pos = min_position(col);
        if (!pos) return;  // dependent within the window
        if (last_val && !(*last_val < pos->val)) {
            if (++stall > stall_limit) return;  // parked: never a wrong answer, only Undecided
        } else {
            stall = 0;
        }
        last_val = pos->val;
        auto it = items_.find(pos->row);
        if (it == items_.end()) {
            Item item;
            item.col = std::move(col);
            item.pre = std::move(pre);
            item.prow = pos->row;
            item.ppoint = pos->point;
            item.pval = pos->val;
            item.pcoeff = pos->coeff;
            items_.emplace(pos->row, std::move(item));
            return;
        }
        Item& have = it->second;
        if (pos->val < have.pval) {
            // the new column has the lower pivot; swap and keep reducing the old
            std::swap(col, have.col);
            std::swap(pre, have.pre);
            have.ppoint = pos->point;
            have.pval = pos->val;
            have.pcoeff = pos->coeff;
            continue;
        }
        LatticePoint s = lattice_sub(pos->point, have.ppoint);
        auto lam = sc_div(ring_, pos->coeff, have.pcoeff);
        if (lam) {
            GroupRingElem mono = GroupRingElem::monomial(ring_, s, *lam);
            for (int i = 0; i < rows_; ++i) col[static_cast<size_t>(i)] -= mono * have.col[static_cast<size_t>(i)];
            for (int i = 0; i < cols_; ++i) pre[static_cast<size_t>(i)] -= mono * have.pre[static_cast<size_t>(i)];
            continue;
        }
        // integer Euclid on the pivot coefficients at the same position
        Int q = rat_num(pos->coeff) / rat_num(have.pcoeff);
        GroupRingElem mono = GroupRingElem::monomial(ring_, s, Rat(q));
        for (int i = 0; i < rows_; ++i) col[static_cast<size_t>(i)] -= mono * have.col[static_cast<size_t>(i)];
        for (int i = 0; i < cols_; ++i) pre[static_cast<size_t>(i)] -= mono * have.pre[static_cast<size_t>(i)];
        // the reduced column now has the smaller coefficient at that position
        std::swap(col, have.col);
        std::swap(pre, have.pre);
        auto newpos = min_position(have.col);
        have.ppoint = newpos->point;
        have.pval = newpos->val;
        have.pcoeff = newpos->coeff;
    }
}

std::optional<std::vector<GroupRingElem>> SeriesSolver::solve(
    const std::vector<GroupRingElem>& w) const {
    std::vector<GroupRingElem> r = w;
    std::vector<GroupRingElem> u = zero_vector(ring_, rank_, cols_);
    int steps = 0;
    const int stall_limit = 16 * (rows_ + 4);
    int stall = 0;
    std::optional<Rat> last_val;
    while (true) {
        // residual terms beyond the discard level are cut off
        for (auto& x : r) x = truncate_above(x, xi_, discard_);
        auto pos = min_position(r);
        if (!pos) return u;
        if (++steps > kMaxSolveSteps) return std::nullopt;
        if (last_val && !(*last_val < pos->val)) {
            if (++stall > stall_limit) return std::nullopt;
        } else {
            stall = 0;
        }
        last_val = pos->val;
        auto it = items_.find(pos->row);
        if (it == items_.end()) return std::nullopt;
        const Item& item = it->second;
        auto lam = sc_div(ring_, pos->coeff, item.pcoeff);
        if (!lam) return std::nullopt;
        GroupRingElem mono = GroupRingElem::monomial(ring_, lattice_sub(pos->point, item.ppoint), *lam);
        for (int i = 0; i < rows_; ++i) {
            r[static_cast<size_t>(i)] -= mono * item.col[static_cast<size_t>(i)];
            r[static_cast<size_t>(i)] = truncate_above(r[static_cast<size_t>(i)], xi_, cap_);
        }
        for (int i = 0; i < cols_; ++i) u[static_cast<size_t>(i)] += mono * item.pre[static_cast<size_t>(i)];
    }
}

std::optional<SigmaCertificate> build_certificate(ComplexPtr c, const Character& xi, int k,
                                                  const Rat& window) {
    if (k > c->dim()) throw SigmaError("degree bound exceeds dim");
    const RingSpec& ring = c->ring();
    int rk = c->deck_rank();

    ChainHomotopy delta = ChainHomotopy::zero(c, c);
    for (int i = 0; i <= k; ++i) {
        bool have_above = c->rank_at(i + 1) > 0;
        std::optional<SeriesSolver> solver;
        if (have_above) solver.emplace(c->boundary(i + 1), xi, window, window / 2);
        GrMatrix dcol(ring, rk, c->rank_at(i + 1), c->rank_at(i));
        for (int j = 0; j < c->rank_at(i); ++j) {
            std::vector<GroupRingElem> w = zero_vector(ring, rk, c->rank_at(i));
            w[static_cast<size_t>(j)] = GroupRingElem::one(ring, rk);
            if (i >= 1) {
                std::vector<GroupRingElem> ej = zero_vector(ring, rk, c->rank_at(i));
                ej[static_cast<size_t>(j)] = GroupRingElem::one(ring, rk);
                auto dx = c->boundary(i).apply(ej);
                auto dd = delta.at(i - 1).apply(dx);
                w = vector_sub(w, dd);
            }
            if (!have_above) continue;  // top-degree residue is cut off
            auto u = solver->solve(w);
            if (!u) return std::nullopt;
            for (int r = 0; r < c->rank_at(i + 1); ++r)
                dcol.set(r, j, truncate_above((*u)[static_cast<size_t>(r)], xi, window));
        }
        delta.at(i) = dcol;
    }

    // A := id - d delta - delta d, exactly, on all degrees.
    std::vector<GrMatrix> amats;
    for (int i = 0; i <= c->dim(); ++i) {
        GrMatrix a = GrMatrix::identity(ring, rk, c->rank_at(i));
        a = a - c->boundary_or_zero(i + 1) * delta.at(i);
        if (i >= 1) a = a - delta.at(i - 1) * c->boundary_or_zero(i);
        amats.push_back(std::move(a));
    }
    ChainMap a_map(c, c, std::move(amats));

    ValOrInf shift = certificate_shift(a_map, xi, k);
    Rat eps = shift.is_infinite() ? window + 1 : shift.finite();
    if (eps <= 0) return std::nullopt;
    SigmaCertificate cert(c, xi, k, eps, std::move(a_map), std::move(delta));
    if (!verify_certificate(cert).accepted) return std::nullopt;
    return cert;
}

}  // namespace sigma
