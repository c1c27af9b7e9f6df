#include "sigma/matrix.hpp"

namespace sigma {

GrMatrix GrMatrix::identity(RingSpec ring, int rank, int n) {
    GrMatrix m(ring, rank, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, GroupRingElem::one(ring, rank));
    return m;
}

bool GrMatrix::is_zero() const {
    for (const auto& c : cols_)
        if (!c.empty()) return false;
    return true;
}

GroupRingElem GrMatrix::entry(int i, int j) const {
    const auto& c = cols_[static_cast<size_t>(j)];
    auto it = c.find(i);
    return it == c.end() ? GroupRingElem::zero(ring_, rank_) : it->second;
}

void GrMatrix::set(int i, int j, const GroupRingElem& x) {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols()) throw DimensionMismatch("matrix set");
    auto& c = cols_[static_cast<size_t>(j)];
    if (x.is_zero())
        c.erase(i);
    else
        c[i] = x;
}

void GrMatrix::add_to(int i, int j, const GroupRingElem& x) {
    if (x.is_zero()) return;
    auto& c = cols_[static_cast<size_t>(j)];
    auto it = c.find(i);
    if (it == c.end()) {
        c[i] = x;
    } else {
        it->second += x;
        if (it->second.is_zero()) c.erase(it);
    }
}

GrMatrix GrMatrix::operator*(const GrMatrix& o) const {
    if (cols() != o.rows_) throw DimensionMismatch("matrix mul");
    GrMatrix r(ring_, rank_, rows_, o.cols());
    for (int j = 0; j < o.cols(); ++j)
        for (const auto& [k, x] : o.cols_[static_cast<size_t>(j)])
            for (const auto& [i, y] : cols_[static_cast<size_t>(k)]) r.add_to(i, j, y * x);
    return r;
}

GrMatrix GrMatrix::operator+(const GrMatrix& o) const {
    if (rows_ != o.rows_ || cols() != o.cols()) throw DimensionMismatch("matrix add");
    GrMatrix r = *this;
    for (int j = 0; j < o.cols(); ++j)
        for (const auto& [i, x] : o.cols_[static_cast<size_t>(j)]) r.add_to(i, j, x);
    return r;
}

GrMatrix GrMatrix::operator-(const GrMatrix& o) const { return *this + (-o); }

GrMatrix GrMatrix::operator-() const {
    GrMatrix r(ring_, rank_, rows_, cols());
    for (int j = 0; j < cols(); ++j)
        for (const auto& [i, x] : cols_[static_cast<size_t>(j)]) r.set(i, j, -x);
    return r;
}

bool GrMatrix::operator==(const GrMatrix& o) const {
    if (rows_ != o.rows_ || cols() != o.cols()) return false;
    for (int j = 0; j < cols(); ++j)
        if (cols_[static_cast<size_t>(j)] != o.cols_[static_cast<size_t>(j)]) return false;
    return true;
}

GrMatrix GrMatrix::scaled(const GroupRingElem& c) const {
    GrMatrix r(ring_, rank_, rows_, cols());
    for (int j = 0; j < cols(); ++j)
        for (const auto& [i, x] : cols_[static_cast<size_t>(j)]) r.set(i, j, c * x);
    return r;
}

GrMatrix GrMatrix::with_ring(const RingSpec& to) const {
    GrMatrix r(to, rank_, rows_, cols());
    for (int j = 0; j < cols(); ++j)
        for (const auto& [i, x] : cols_[static_cast<size_t>(j)]) r.set(i, j, x.with_ring(to));
    return r;
}

std::vector<GroupRingElem> GrMatrix::apply(const std::vector<GroupRingElem>& v) const {
    if (static_cast<int>(v.size()) != cols()) throw DimensionMismatch("matrix apply");
    auto r = zero_vector(ring_, rank_, rows_);
    for (int j = 0; j < cols(); ++j) {
        if (v[static_cast<size_t>(j)].is_zero()) continue;
        for (const auto& [i, x] : cols_[static_cast<size_t>(j)])
            r[static_cast<size_t>(i)] += x * v[static_cast<size_t>(j)];
    }
    return r;
}

void GrMatrix::for_each(const std::function<void(int, int, const GroupRingElem&)>& f) const {
    for (int j = 0; j < cols(); ++j)
        for (const auto& [i, x] : cols_[static_cast<size_t>(j)]) f(i, j, x);
}

std::vector<GroupRingElem> zero_vector(RingSpec ring, int rank, int n) {
    return std::vector<GroupRingElem>(static_cast<size_t>(n), GroupRingElem::zero(ring, rank));
}

bool vector_is_zero(const std::vector<GroupRingElem>& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

std::vector<GroupRingElem> vector_sub(std::vector<GroupRingElem> a,
                                      const std::vector<GroupRingElem>& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector_sub");
    for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

}  // namespace sigma
