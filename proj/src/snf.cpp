#include "sigma/snf.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <set>

namespace sigma {

namespace {

void require_rank1(const GroupRingElem& x, const char* who) {
    if (x.rank() != 1) throw UnsupportedRegime(std::string(who) + " needs deck rank 1");
}

}  // namespace

long long r1_min_exp(const GroupRingElem& x) {
    require_rank1(x, "r1_min_exp");
    if (x.is_zero()) throw ZeroInput("r1_min_exp");
    return x.terms().begin()->first[0];
}

long long r1_max_exp(const GroupRingElem& x) {
    require_rank1(x, "r1_max_exp");
    if (x.is_zero()) throw ZeroInput("r1_max_exp");
    return x.terms().rbegin()->first[0];
}

long long r1_spread(const GroupRingElem& x) {
    if (x.is_zero()) return 0;
    return r1_max_exp(x) - r1_min_exp(x);
}

Rat r1_coeff(const GroupRingElem& x, long long e) { return x.coeff(LatticePoint{e}); }

void r1_divmod(const GroupRingElem& a, const GroupRingElem& b, GroupRingElem& q, GroupRingElem& r) {
    if (b.is_zero()) throw ZeroInput("r1_divmod divisor");
    if (!b.ring().is_field()) throw UnsupportedRegime("r1_divmod needs field coefficients");
    q = GroupRingElem::zero(a.ring(), 1);
    r = a;
    if (a.is_zero()) return;
    long long lb = r1_min_exp(b);
    long long db = r1_spread(b);
    Rat lead_b = r1_coeff(b, lb + db);
    while (!r.is_zero() && r1_spread(r) >= db) {
        long long top = r1_max_exp(r);
        Rat c = sc_mul(a.ring(), r1_coeff(r, top), sc_inv(a.ring(), lead_b));
        GroupRingElem mono = GroupRingElem::term1(a.ring(), top - (lb + db), c);
        q += mono;
        r -= mono * b;
    }
}

GroupRingElem r1_gcd(GroupRingElem a, GroupRingElem b) {
    while (!b.is_zero()) {
        GroupRingElem q, r;
        r1_divmod(a, b, q, r);
        a = b;
        b = r;
    }
    if (a.is_zero()) return a;
    return r1_canonical(a);
}

GroupRingElem r1_canonical(const GroupRingElem& x) {
    if (x.is_zero()) return x;
    GroupRingElem y = x.shifted(LatticePoint{-r1_min_exp(x)});
    Rat top = r1_coeff(y, r1_max_exp(y));
    if (x.ring().is_field()) return y.scaled(sc_inv(x.ring(), top));
    if (top < 0) return y.scaled(Rat(-1));
    return y;
}

GroupRingElem r1_primitive_z(const GroupRingElem& x) {
    if (x.is_zero()) return x.with_ring(RingSpec::Z());
    Int l = 1;
    for (const auto& [g, c] : x.terms()) l = boost::multiprecision::lcm(l, rat_den(c));
    Int g = 0;
    for (const auto& [p, c] : x.terms()) g = boost::multiprecision::gcd(g, rat_num(c) * (l / rat_den(c)));
    if (g < 0) g = -g;
    GroupRingElem r(RingSpec::Z(), 1);
    for (const auto& [p, c] : x.terms()) r.set(p, Rat(rat_num(c) * (l / rat_den(c)) / g));
    if (r1_coeff(r, r1_max_exp(r)) < 0) r = r.scaled(Rat(-1));
    return r;
}

namespace {

// Elementary operations tracked on U (rows) and V (cols): U*A*V stays equal
// to the working matrix.
struct SnfWork {
    GrMatrix w;
    bool track;
    GrMatrix u, v;

    SnfWork(const GrMatrix& a, bool with_transforms)
        : w(a), track(with_transforms),
          u(GrMatrix::identity(a.ring(), a.rank(), a.rows())),
          v(GrMatrix::identity(a.ring(), a.rank(), a.cols())) {}

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < w.cols(); ++c) {
            GroupRingElem a = w.entry(i, c), b = w.entry(j, c);
            w.set(i, c, b);
            w.set(j, c, a);
        }
        if (track)
            for (int c = 0; c < u.cols(); ++c) {
                GroupRingElem a = u.entry(i, c), b = u.entry(j, c);
                u.set(i, c, b);
                u.set(j, c, a);
            }
    }
    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < w.rows(); ++r) {
            GroupRingElem a = w.entry(r, i), b = w.entry(r, j);
            w.set(r, i, b);
            w.set(r, j, a);
        }
        if (track)
            for (int r = 0; r < v.rows(); ++r) {
                GroupRingElem a = v.entry(r, i), b = v.entry(r, j);
                v.set(r, i, b);
                v.set(r, j, a);
            }
    }
    // row_i += c * row_j
    void add_row(int i, int j, const GroupRingElem& c) {
        for (int col = 0; col < w.cols(); ++col) {
            GroupRingElem x = w.entry(j, col);
            if (!x.is_zero()) w.add_to(i, col, c * x);
        }
        if (track)
            for (int col = 0; col < u.cols(); ++col) {
                GroupRingElem x = u.entry(j, col);
                if (!x.is_zero()) u.add_to(i, col, c * x);
            }
    }
    // col_i += c * col_j
    void add_col(int i, int j, const GroupRingElem& c) {
        for (int r = 0; r < w.rows(); ++r) {
            GroupRingElem x = w.entry(r, j);
            if (!x.is_zero()) w.add_to(r, i, c * x);
        }
        if (track)
            for (int r = 0; r < v.rows(); ++r) {
                GroupRingElem x = v.entry(r, j);
                if (!x.is_zero()) v.add_to(r, i, c * x);
            }
    }
    void scale_row(int i, const GroupRingElem& unit) {
        for (int col = 0; col < w.cols(); ++col) {
            GroupRingElem x = w.entry(i, col);
            if (!x.is_zero()) w.set(i, col, unit * x);
        }
        if (track)
            for (int col = 0; col < u.cols(); ++col) {
                GroupRingElem x = u.entry(i, col);
                if (!x.is_zero()) u.set(i, col, unit * x);
            }
    }
};

}  // namespace

LaurentSNF laurent_snf(const GrMatrix& a, bool with_transforms) {
    if (a.rank() != 1) throw UnsupportedRegime("laurent_snf needs deck rank 1");
    if (!a.ring().is_field()) throw UnsupportedRegime("laurent_snf needs field coefficients");
    SnfWork work(a, with_transforms);
    GrMatrix& w = work.w;
    int n = std::min(a.rows(), a.cols());
    int s = 0;
    while (s < n) {
        // deterministic pivot: minimal spread, then (col, row)
        int pi = -1, pj = -1;
        long long best = 0;
        for (int j = s; j < w.cols(); ++j)
            for (const auto& [i, x] : w.col(j)) {
                if (i < s) continue;
                long long sp = r1_spread(x);
                if (pi < 0 || sp < best) {
                    best = sp;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        work.swap_rows(s, pi);
        work.swap_cols(s, pj);

        bool stable = false;
        while (!stable) {
            stable = true;
            // clear column s
            for (int i = s + 1; i < w.rows(); ++i) {
                GroupRingElem x = w.entry(i, s);
                if (x.is_zero()) continue;
                GroupRingElem q, r;
                r1_divmod(x, w.entry(s, s), q, r);
                work.add_row(i, s, -q);
                if (!r.is_zero()) {
                    work.swap_rows(s, i);
                    stable = false;
                }
            }
            // clear row s
            for (int j = s + 1; j < w.cols(); ++j) {
                GroupRingElem x = w.entry(s, j);
                if (x.is_zero()) continue;
                GroupRingElem q, r;
                r1_divmod(x, w.entry(s, s), q, r);
                work.add_col(j, s, -q);
                if (!r.is_zero()) {
                    work.swap_cols(s, j);
                    stable = false;
                }
            }
            if (!stable) continue;
            // divisibility sweep: pivot must divide all remaining entries
            for (int j = s + 1; j < w.cols() && stable; ++j)
                for (const auto& [i, x] : w.col(j)) {
                    if (i <= s) continue;
                    GroupRingElem q, r;
                    r1_divmod(x, w.entry(s, s), q, r);
                    if (!r.is_zero()) {
                        work.add_row(s, i, GroupRingElem::one(a.ring(), 1));
                        stable = false;
                        break;
                    }
                }
        }
        // normalize pivot to its canonical form (a unit multiple)
        GroupRingElem p = w.entry(s, s);
        GroupRingElem canon = r1_canonical(p);
        GroupRingElem q, r;
        r1_divmod(canon, p, q, r);
        // canon = q * p with q a unit monomial
        work.scale_row(s, q);
        ++s;
    }
    LaurentSNF out;
    out.rank = s;
    for (int i = 0; i < s; ++i) out.diag.push_back(w.entry(i, i));
    if (with_transforms) {
        out.U = work.u;
        out.V = work.v;
    }
    return out;
}

LaurentSolver::LaurentSolver(const GrMatrix& a) : a_(a), snf_(laurent_snf(a, true)) {}

std::optional<std::vector<GroupRingElem>> LaurentSolver::solve(
    const std::vector<GroupRingElem>& w) const {
    const GrMatrix& u = *snf_.U;
    const GrMatrix& v = *snf_.V;
    std::vector<GroupRingElem> uw = u.apply(w);
    std::vector<GroupRingElem> z = zero_vector(a_.ring(), a_.rank(), a_.cols());
    for (int i = 0; i < a_.rows(); ++i) {
        const GroupRingElem& rhs = uw[static_cast<size_t>(i)];
        if (i < snf_.rank) {
            if (rhs.is_zero()) continue;
            GroupRingElem q, r;
            r1_divmod(rhs, snf_.diag[static_cast<size_t>(i)], q, r);
            if (!r.is_zero()) return std::nullopt;
            z[static_cast<size_t>(i)] = q;
        } else if (!rhs.is_zero()) {
            return std::nullopt;
        }
    }
    return v.apply(z);
}

std::vector<std::vector<GroupRingElem>> LaurentSolver::kernel_basis() const {
    std::vector<std::vector<GroupRingElem>> out;
    const GrMatrix& v = *snf_.V;
    for (int j = snf_.rank; j < a_.cols(); ++j) {
        std::vector<GroupRingElem> col = zero_vector(a_.ring(), a_.rank(), a_.cols());
        for (int i = 0; i < v.rows(); ++i) col[static_cast<size_t>(i)] = v.entry(i, j);
        out.push_back(std::move(col));
    }
    return out;
}

std::vector<LaurentHomology> homology_lambda(const BasedFreeComplex& c) {
    if (c.deck_rank() != 1) throw UnsupportedRegime("homology_lambda needs deck rank 1");
    if (!c.ring().is_field())
        throw UnsupportedRegime("homology_lambda needs field coefficients (use the membership layers over Z)");
    std::vector<LaurentSNF> snfs(static_cast<size_t>(c.dim()) + 2);
    for (int i = 1; i <= c.dim(); ++i) snfs[static_cast<size_t>(i)] = laurent_snf(c.boundary(i), false);
    std::vector<LaurentHomology> out;
    for (int i = 0; i <= c.dim(); ++i) {
        LaurentHomology h;
        h.degree = i;
        int ri = i >= 1 ? snfs[static_cast<size_t>(i)].rank : 0;
        int ri1 = i + 1 <= c.dim() ? snfs[static_cast<size_t>(i + 1)].rank : 0;
        h.free_rank = c.rank_at(i) - ri - ri1;
        if (i + 1 <= c.dim())
            for (const auto& d : snfs[static_cast<size_t>(i + 1)].diag)
                if (r1_spread(d) > 0) h.factors.push_back(r1_canonical(d));
        out.push_back(std::move(h));
    }
    return out;
}

void IntSparseMat::add(int i, int j, const Int& v) {
    if (v == 0) return;
    auto& c = cols[static_cast<size_t>(j)];
    auto it = c.find(i);
    if (it == c.end()) {
        c[i] = v;
    } else {
        it->second += v;
        if (it->second == 0) c.erase(it);
    }
}

namespace {

std::vector<Int> dense_int_snf(std::vector<std::vector<Int>> m) {
    std::vector<Int> diag;
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    size_t s = 0;
    using boost::multiprecision::abs;
    while (s < rows && s < cols) {
        // find min |nonzero|
        size_t pi = 0, pj = 0;
        bool found = false;
        for (size_t i = s; i < rows; ++i)
            for (size_t j = s; j < cols; ++j)
                if (m[i][j] != 0 && (!found || abs(m[i][j]) < abs(m[pi][pj]))) {
                    pi = i;
                    pj = j;
                    found = true;
                }
        if (!found) break;
        std::swap(m[s], m[pi]);
        for (size_t i = s; i < rows; ++i) std::swap(m[i][s], m[i][pj]);
        bool stable = false;
        while (!stable) {
            stable = true;
            for (size_t i = s + 1; i < rows; ++i) {
                if (m[i][s] == 0) continue;
                Int q = m[i][s] / m[s][s];
                for (size_t j = s; j < cols; ++j) m[i][j] -= q * m[s][j];
                if (m[i][s] != 0) {
                    std::swap(m[s], m[i]);
                    stable = false;
                }
            }
            for (size_t j = s + 1; j < cols; ++j) {
                if (m[s][j] == 0) continue;
                Int q = m[s][j] / m[s][s];
                for (size_t i = s; i < rows; ++i) m[i][j] -= q * m[i][s];
                if (m[s][j] != 0) {
                    for (size_t i = s; i < rows; ++i) std::swap(m[i][s], m[i][j]);
                    stable = false;
                }
            }
            if (!stable) continue;
            for (size_t i = s + 1; i < rows && stable; ++i)
                for (size_t j = s + 1; j < cols; ++j)
                    if (m[i][j] % m[s][s] != 0) {
                        for (size_t jj = s; jj < cols; ++jj) m[s][jj] += m[i][jj];
                        stable = false;
                        break;
                    }
        }
        diag.push_back(abs(m[s][s]));
        ++s;
    }
    // enforce divisibility chain
    for (size_t i = 0; i + 1 < diag.size(); ++i)
        for (size_t j = i + 1; j < diag.size(); ++j)
            if (diag[j] % diag[i] != 0) {
                Int g = boost::multiprecision::gcd(diag[i], diag[j]);
                Int l = diag[i] / g * diag[j];
                diag[i] = g;
                diag[j] = l;
            }
    std::sort(diag.begin(), diag.end());
    return diag;
}

}  // namespace

IntSmith int_smith(IntSparseMat m) {
    IntSmith out;
    // dual row index
    std::map<int, std::set<int>> rows;
    for (int j = 0; j < m.ncols(); ++j)
        for (const auto& [i, v] : m.cols[static_cast<size_t>(j)]) rows[i].insert(j);

    std::set<int> live_cols;
    for (int j = 0; j < m.ncols(); ++j)
        if (!m.cols[static_cast<size_t>(j)].empty()) live_cols.insert(j);

    // Phase 1: eliminate with unit pivots, smallest fill first.
    while (true) {
        int bi = -1, bj = -1;
        long long best_fill = -1;
        for (int j : live_cols) {
            for (const auto& [i, v] : m.cols[static_cast<size_t>(j)]) {
                if (v != 1 && v != -1) continue;
                long long fill = static_cast<long long>(rows[i].size() - 1) *
                                 static_cast<long long>(m.cols[static_cast<size_t>(j)].size() - 1);
                if (best_fill < 0 || fill < best_fill) {
                    best_fill = fill;
                    bi = i;
                    bj = j;
                    if (fill == 0) break;
                }
            }
            if (best_fill == 0) break;
        }
        if (bi < 0) break;

        Int piv = m.cols[static_cast<size_t>(bj)][bi];
        // column ops: clear row bi from all other columns
        std::vector<int> affected(rows[bi].begin(), rows[bi].end());
        for (int j : affected) {
            if (j == bj) continue;
            Int a = m.cols[static_cast<size_t>(j)][bi];
            Int mult = a * piv;  // a / piv for piv = +-1
            // col_j -= mult * col_bj
            for (const auto& [i, v] : m.cols[static_cast<size_t>(bj)]) {
                auto& cj = m.cols[static_cast<size_t>(j)];
                auto it = cj.find(i);
                Int nv = (it == cj.end() ? Int(0) : it->second) - mult * v;
                if (nv == 0) {
                    if (it != cj.end()) {
                        cj.erase(it);
                        rows[i].erase(j);
                        if (rows[i].empty()) rows.erase(i);
                    }
                } else {
                    if (it == cj.end()) rows[i].insert(j);
                    cj[i] = nv;
                }
            }
            if (m.cols[static_cast<size_t>(j)].empty()) live_cols.erase(j);
        }
        // remove pivot row/col (column bj is the only one with row bi now)
        for (const auto& [i, v] : m.cols[static_cast<size_t>(bj)]) {
            rows[i].erase(bj);
            if (rows[i].empty()) rows.erase(i);
        }
        m.cols[static_cast<size_t>(bj)].clear();
        live_cols.erase(bj);
        out.rank += 1;
    }

    // Phase 2: dense SNF of the remainder.
    std::map<int, int> rix;
    std::vector<int> cix;
    for (int j : live_cols) cix.push_back(j);
    for (const auto& [i, js] : rows)
        if (!js.empty()) rix.emplace(i, static_cast<int>(rix.size()));
    if (!cix.empty() && !rix.empty()) {
        std::vector<std::vector<Int>> dense(rix.size(), std::vector<Int>(cix.size(), Int(0)));
        for (size_t jj = 0; jj < cix.size(); ++jj)
            for (const auto& [i, v] : m.cols[static_cast<size_t>(cix[jj])])
                dense[static_cast<size_t>(rix[i])][jj] = v;
        std::vector<Int> diag = dense_int_snf(std::move(dense));
        for (const auto& d : diag) {
            out.rank += 1;
            if (d != 1) out.nonunit_factors.push_back(d);
        }
    }
    std::sort(out.nonunit_factors.begin(), out.nonunit_factors.end());
    return out;
}

IntSparseMat to_int_matrix(const GrMatrix& m) {
    IntSparseMat out(m.rows(), m.cols());
    m.for_each([&](int i, int j, const GroupRingElem& x) {
        for (const auto& [g, c] : x.terms()) {
            for (long long e : g)
                if (e != 0) throw UnsupportedRegime("to_int_matrix: non-constant entry");
            if (rat_den(c) != 1) throw UnsupportedRegime("to_int_matrix: non-integer entry");
            out.add(i, j, rat_num(c));
        }
    });
    return out;
}

std::vector<IntHomology> integer_homology(const BasedFreeComplex& c) {
    if (c.ring().kind != CoeffKind::Z) throw UnsupportedRegime("integer_homology needs Z coefficients");
    std::vector<IntSmith> snfs(static_cast<size_t>(c.dim()) + 2);
    for (int i = 1; i <= c.dim(); ++i)
        snfs[static_cast<size_t>(i)] = int_smith(to_int_matrix(c.boundary(i)));
    std::vector<IntHomology> out;
    for (int i = 0; i <= c.dim(); ++i) {
        IntHomology h;
        h.degree = i;
        int ri = i >= 1 ? snfs[static_cast<size_t>(i)].rank : 0;
        int ri1 = i + 1 <= c.dim() ? snfs[static_cast<size_t>(i + 1)].rank : 0;
        h.free_rank = c.rank_at(i) - ri - ri1;
        if (i + 1 <= c.dim()) h.torsion = snfs[static_cast<size_t>(i + 1)].nonunit_factors;
        out.push_back(std::move(h));
    }
    return out;
}

}  // namespace sigma
