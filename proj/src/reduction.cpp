#include "sigma/reduction.hpp"

#include "sigma/novikov_series.hpp"
#include "sigma/snf.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>

namespace sigma {

std::optional<GroupRingElem> gr_exact_div(const GroupRingElem& w, const GroupRingElem& u) {
    if (u.is_zero()) return std::nullopt;
    GroupRingElem q(w.ring(), w.rank());
    if (w.is_zero()) return q;
    if (u.support_size() == 1) {
        const auto& [ug, uc] = *u.terms().begin();
        for (const auto& [g, c] : w.terms()) {
            auto d = sc_div(w.ring(), c, uc);
            if (!d) return std::nullopt;
            q.set(lattice_sub(g, ug), *d);
        }
        return q;
    }
    if (w.rank() != 1) return std::nullopt;

    long long lu = r1_min_exp(u), tu = r1_max_exp(u);
    long long lw = r1_min_exp(w);
    Rat cu = r1_coeff(u, tu);
    GroupRingElem rem = w;
    while (!rem.is_zero()) {
        long long tr = r1_max_exp(rem);
        long long e = tr - tu;
        if (e < lw - lu) return std::nullopt;
        auto c = sc_div(w.ring(), r1_coeff(rem, tr), cu);
        if (!c) return std::nullopt;
        GroupRingElem mono = GroupRingElem::term1(w.ring(), e, *c);
        q += mono;
        rem -= mono * u;
    }
    return q;
}

bool is_completion_unit(const GroupRingElem& u, const Character& xi, const RingSpec& ring) {
    if (u.is_zero()) return false;
    GroupRingElem low = lowest_part(u, xi);
    if (low.support_size() != 1) return false;
    return sc_is_unit(ring, low.terms().begin()->second);
}

MorseReduction::MorseReduction(ComplexPtr c, Character xi) : orig_(std::move(c)), xi_(std::move(xi)) {
    int dim = orig_->dim();
    alive_.resize(static_cast<size_t>(dim) + 1);
    iota_.resize(static_cast<size_t>(dim) + 1);
    bnd_.resize(static_cast<size_t>(dim) + 1);
    for (int i = 0; i <= dim; ++i) {
        alive_[static_cast<size_t>(i)].assign(static_cast<size_t>(orig_->rank_at(i)), 1);
        auto& io = iota_[static_cast<size_t>(i)];
        io.resize(static_cast<size_t>(orig_->rank_at(i)));
        for (int j = 0; j < orig_->rank_at(i); ++j) {
            io[static_cast<size_t>(j)] = zero_vector(orig_->ring(), orig_->deck_rank(), orig_->rank_at(i));
            io[static_cast<size_t>(j)][static_cast<size_t>(j)] =
                GroupRingElem::one(orig_->ring(), orig_->deck_rank());
        }
        if (i >= 1) bnd_[static_cast<size_t>(i)] = orig_->boundary(i);
    }
}

bool MorseReduction::exact_gate_ok(int degree, int row, int col) const {
    const GrMatrix& m = mat(degree);
    GroupRingElem u = m.entry(row, col);
    // all other entries of the pivot row must be exactly divisible by u
    for (int x2 = 0; x2 < m.cols(); ++x2) {
        if (x2 == col || !alive_[static_cast<size_t>(degree)][static_cast<size_t>(x2)]) continue;
        GroupRingElem w = m.entry(row, x2);
        if (w.is_zero()) continue;
        if (!gr_exact_div(w, u)) return false;
    }
    return true;
}

std::optional<MorseReduction::Pivot> MorseReduction::find_pivot(bool exact_gate, int max_col_degree,
                                                                const Rat*) const {
    std::optional<Pivot> best;
    ValOrInf best_val = ValOrInf::infinity();
    size_t best_supp = 0;
    for (int i = 1; i <= std::min(max_col_degree, orig_->dim()); ++i) {
        const GrMatrix& m = mat(i);
        for (int j = 0; j < m.cols(); ++j) {
            if (!alive_[static_cast<size_t>(i)][static_cast<size_t>(j)]) continue;
            for (const auto& [r, x] : m.col(j)) {
                if (!alive_[static_cast<size_t>(i - 1)][static_cast<size_t>(r)]) continue;
                if (!is_completion_unit(x, xi_, orig_->ring())) continue;
                ValOrInf v = xi_valuation(x, xi_);
                size_t supp = x.support_size();
                bool better = false;
                if (!best) {
                    better = true;
                } else if (v < best_val) {
                    better = true;
                } else if (v == best_val && supp < best_supp) {
                    better = true;
                }
                // remaining ties resolved by scan order (degree, col, row)
                if (!better) continue;
                if (exact_gate && !exact_gate_ok(i, r, j)) continue;
                best = Pivot{i, r, j};
                best_val = v;
                best_supp = supp;
            }
        }
    }
    return best;
}

void MorseReduction::cancel_exact(const Pivot& p) {
    GrMatrix& m = mat(p.degree);
    GroupRingElem u = m.entry(p.row, p.col);
    std::vector<std::pair<int, GroupRingElem>> quotients;  // (col x', q = row-entry / u)
    for (int x2 = 0; x2 < m.cols(); ++x2) {
        if (x2 == p.col || !alive_[static_cast<size_t>(p.degree)][static_cast<size_t>(x2)]) continue;
        GroupRingElem w = m.entry(p.row, x2);
        if (w.is_zero()) continue;
        auto q = gr_exact_div(w, u);
        if (!q) throw SigmaError("exact cancellation gate violated");
        quotients.emplace_back(x2, *q);
    }
    // Schur complement on the other rows
    std::vector<std::pair<int, GroupRingElem>> colx;
    for (const auto& [r, x] : m.col(p.col))
        if (r != p.row && alive_[static_cast<size_t>(p.degree - 1)][static_cast<size_t>(r)])
            colx.emplace_back(r, x);
    for (const auto& [y2, byx] : colx)
        for (const auto& [x2, q] : quotients) m.add_to(y2, x2, -(byx * q));
    // iota: the surviving x' represents x' - q * x in the previous model
    for (const auto& [x2, q] : quotients) {
        auto& dst = iota_[static_cast<size_t>(p.degree)][static_cast<size_t>(x2)];
        const auto& src = iota_[static_cast<size_t>(p.degree)][static_cast<size_t>(p.col)];
        for (size_t c = 0; c < dst.size(); ++c) dst[c] -= q * src[c];
    }
    // drop the pair
    for (int r = 0; r < m.rows(); ++r) m.set(r, p.col, GroupRingElem::zero(m.ring(), m.rank()));
    for (int x2 = 0; x2 < m.cols(); ++x2) m.set(p.row, x2, GroupRingElem::zero(m.ring(), m.rank()));
    if (p.degree + 1 <= orig_->dim()) {
        GrMatrix& up = mat(p.degree + 1);
        for (int x2 = 0; x2 < up.cols(); ++x2)
            up.set(p.col, x2, GroupRingElem::zero(up.ring(), up.rank()));
    }
    if (p.degree - 1 >= 1) {
        GrMatrix& down = mat(p.degree - 1);
        for (int r = 0; r < down.rows(); ++r)
            down.set(r, p.row, GroupRingElem::zero(down.ring(), down.rank()));
    }
    alive_[static_cast<size_t>(p.degree)][static_cast<size_t>(p.col)] = 0;
    alive_[static_cast<size_t>(p.degree - 1)][static_cast<size_t>(p.row)] = 0;
}

void MorseReduction::cancel_windowed(const Pivot& p, const std::vector<Rat>& caps) {
    GrMatrix& m = mat(p.degree);
    GroupRingElem u = m.entry(p.row, p.col);
    Rat cap = caps[static_cast<size_t>(p.degree)];
    Rat iw = cap - xi_valuation(u, xi_).finite() + 1;
    if (iw < 1) iw = 1;
    NovikovSeries uinv = novikov_invert(u, xi_, iw);
    std::vector<std::pair<int, GroupRingElem>> quotients;
    for (int x2 = 0; x2 < m.cols(); ++x2) {
        if (x2 == p.col || !alive_[static_cast<size_t>(p.degree)][static_cast<size_t>(x2)]) continue;
        GroupRingElem w = m.entry(p.row, x2);
        if (w.is_zero()) continue;
        quotients.emplace_back(x2, truncate_above(uinv.terms() * w, xi_, cap));
    }
    std::vector<std::pair<int, GroupRingElem>> colx;
    for (const auto& [r, x] : m.col(p.col))
        if (r != p.row && alive_[static_cast<size_t>(p.degree - 1)][static_cast<size_t>(r)])
            colx.emplace_back(r, x);
    for (const auto& [y2, byx] : colx)
        for (const auto& [x2, q] : quotients) {
            GroupRingElem corr = truncate_above(byx * q, xi_, cap);
            m.add_to(y2, x2, -corr);
            m.set(y2, x2, truncate_above(m.entry(y2, x2), xi_, cap));
        }
    for (int r = 0; r < m.rows(); ++r) m.set(r, p.col, GroupRingElem::zero(m.ring(), m.rank()));
    for (int x2 = 0; x2 < m.cols(); ++x2) m.set(p.row, x2, GroupRingElem::zero(m.ring(), m.rank()));
    if (p.degree + 1 <= orig_->dim()) {
        GrMatrix& up = mat(p.degree + 1);
        for (int x2 = 0; x2 < up.cols(); ++x2)
            up.set(p.col, x2, GroupRingElem::zero(up.ring(), up.rank()));
    }
    if (p.degree - 1 >= 1) {
        GrMatrix& down = mat(p.degree - 1);
        for (int r = 0; r < down.rows(); ++r)
            down.set(r, p.row, GroupRingElem::zero(down.ring(), down.rank()));
    }
    alive_[static_cast<size_t>(p.degree)][static_cast<size_t>(p.col)] = 0;
    alive_[static_cast<size_t>(p.degree - 1)][static_cast<size_t>(p.row)] = 0;
}

void MorseReduction::exact_phase() {
    while (auto p = find_pivot(true, orig_->dim(), nullptr)) cancel_exact(*p);
}

bool MorseReduction::windowed_phase(int k, const Rat& window) {
    std::vector<Rat> caps(static_cast<size_t>(orig_->dim()) + 1, window);
    for (int i = 1; i <= orig_->dim(); ++i) {
        ValOrInf lo = ValOrInf::infinity();
        mat(i).for_each([&](int, int, const GroupRingElem& x) { lo = min(lo, xi_valuation(x, xi_)); });
        caps[static_cast<size_t>(i)] = (lo.is_infinite() ? Rat(0) : lo.finite()) + window;
    }
    while (!degrees_cleared(k)) {
        auto p = find_pivot(false, std::min(k + 1, orig_->dim()), nullptr);
        if (!p) return false;
        cancel_windowed(*p, caps);
    }
    return true;
}

bool MorseReduction::degrees_cleared(int k) const {
    for (int i = 0; i <= std::min(k, orig_->dim()); ++i)
        if (alive_count(i) > 0) return false;
    return true;
}

int MorseReduction::alive_count(int degree) const {
    int n = 0;
    for (char a : alive_[static_cast<size_t>(degree)]) n += a ? 1 : 0;
    return n;
}

std::optional<NoEvidence> MorseReduction::certified_nonvanishing(int k) const {
    for (int i = 0; i <= std::min(k, orig_->dim()); ++i) {
        for (int y = 0; y < orig_->rank_at(i); ++y) {
            if (!alive_[static_cast<size_t>(i)][static_cast<size_t>(y)]) continue;
            if (i >= 1) {
                bool cycle = true;
                for (const auto& [r, x] : mat(i).col(y))
                    if (alive_[static_cast<size_t>(i - 1)][static_cast<size_t>(r)] && !x.is_zero()) {
                        cycle = false;
                        break;
                    }
                if (!cycle) continue;
            }
            std::vector<GroupRingElem> row_ideal;
            if (i + 1 <= orig_->dim()) {
                const GrMatrix& up = mat(i + 1);
                for (int j = 0; j < up.cols(); ++j) {
                    if (!alive_[static_cast<size_t>(i + 1)][static_cast<size_t>(j)]) continue;
                    GroupRingElem x = up.entry(y, j);
                    if (!x.is_zero()) row_ideal.push_back(x);
                }
            }
            std::string why;
            if (row_ideal.empty()) {
                why = "surviving class with zero incoming row (free over the completion)";
            } else if (orig_->deck_rank() == 1 && orig_->ring().kind == CoeffKind::Z) {
                // primitive gcd over Q; Gauss: the row ideal sits in (ghat)
                GroupRingElem g(RingSpec::Q(), 1);
                for (const auto& x : row_ideal) g = r1_gcd(g, x.with_ring(RingSpec::Q()));
                GroupRingElem ghat = r1_primitive_z(g);
                GroupRingElem low = lowest_part(ghat, xi_);
                Rat c = low.terms().begin()->second;
                Int cont = 0;
                for (const auto& x : row_ideal) cont = boost::multiprecision::gcd(cont, content(x));
                using boost::multiprecision::abs;
                if (abs(rat_num(c)) >= 2) {
                    why = "incoming row ideal lies in (" + ghat.str() +
                          "), whose xi-lowest coefficient " + c.str() + " is not a unit";
                } else if (cont >= 2) {
                    why = "incoming row ideal has content " + cont.str();
                } else {
                    continue;
                }
            } else {
                continue;
            }
            NoEvidence ev;
            ev.degree = i;
            ev.cycle = iota_[static_cast<size_t>(i)][static_cast<size_t>(y)];
            ev.evidence = why;
            return ev;
        }
    }
    return std::nullopt;
}

std::string MorseReduction::diagnostics(int k) const {
    std::ostringstream os;
    os << "surviving ranks:";
    for (int i = 0; i <= orig_->dim(); ++i) os << " " << alive_count(i);
    os << "; degree bound " << k;
    return os.str();
}

}  // namespace sigma
