#include "sigma/complex.hpp"

namespace sigma {

BasedFreeComplex::BasedFreeComplex(RingSpec ring, int deck_rank, std::vector<int> ranks)
    : ring_(ring), deck_rank_(deck_rank), ranks_(std::move(ranks)) {
    if (deck_rank_ < 1) throw SigmaError("deck rank must be >= 1");
    if (ranks_.empty()) ranks_ = {0};
    for (int r : ranks_)
        if (r < 0) throw SigmaError("negative rank");
    bnd_.reserve(ranks_.size());
    for (size_t i = 1; i < ranks_.size(); ++i)
        bnd_.emplace_back(ring_, deck_rank_, ranks_[i - 1], ranks_[i]);
    labels_.resize(ranks_.size());
}

const GrMatrix& BasedFreeComplex::boundary(int i) const {
    if (i < 1 || i > dim()) throw DimensionMismatch("boundary degree " + std::to_string(i));
    return bnd_[static_cast<size_t>(i - 1)];
}

GrMatrix BasedFreeComplex::boundary_or_zero(int i) const {
    if (i >= 1 && i <= dim()) return bnd_[static_cast<size_t>(i - 1)];
    return GrMatrix(ring_, deck_rank_, rank_at(i - 1), rank_at(i));
}

void BasedFreeComplex::set_boundary(int i, GrMatrix m) {
    if (i < 1 || i > dim()) throw DimensionMismatch("boundary degree " + std::to_string(i));
    if (m.rows() != rank_at(i - 1) || m.cols() != rank_at(i))
        throw DimensionMismatch("boundary " + std::to_string(i) + " shape");
    if (m.ring() != ring_ || m.rank() != deck_rank_) throw RingMismatch("boundary entries");
    bnd_[static_cast<size_t>(i - 1)] = std::move(m);
}

void BasedFreeComplex::set_label(int degree, int index, std::string label) {
    auto& l = labels_.at(static_cast<size_t>(degree));
    if (l.empty()) l.resize(static_cast<size_t>(rank_at(degree)));
    l.at(static_cast<size_t>(index)) = std::move(label);
}

std::string BasedFreeComplex::label(int degree, int index) const {
    if (degree < 0 || degree >= static_cast<int>(labels_.size())) return {};
    const auto& l = labels_[static_cast<size_t>(degree)];
    if (l.empty()) return {};
    return l.at(static_cast<size_t>(index));
}

bool operator==(const BasedFreeComplex& a, const BasedFreeComplex& b) {
    if (a.ring_ != b.ring_ || a.deck_rank_ != b.deck_rank_ || a.ranks_ != b.ranks_) return false;
    for (size_t i = 0; i < a.bnd_.size(); ++i)
        if (!(a.bnd_[i] == b.bnd_[i])) return false;
    return true;
}

ValidationReport validate(const BasedFreeComplex& c) {
    ValidationReport rep;
    for (int i = 1; i + 1 <= c.dim(); ++i) {
        GrMatrix comp = c.boundary(i) * c.boundary(i + 1);
        if (comp.is_zero()) continue;
        for (int j = 0; j < comp.cols() && rep.ok; ++j)
            for (const auto& [r, x] : comp.col(j)) {
                rep.ok = false;
                rep.first_issue = ValidationIssue{i, r, j,
                    "d" + std::to_string(i) + " * d" + std::to_string(i + 1) +
                        " nonzero at (" + std::to_string(r) + "," + std::to_string(j) +
                        "): " + x.str()};
                break;
            }
        if (!rep.ok) return rep;
    }
    return rep;
}

ChainMap::ChainMap(ComplexPtr src, ComplexPtr dst, std::vector<GrMatrix> mats)
    : src_(std::move(src)), dst_(std::move(dst)), mats_(std::move(mats)) {
    int top = std::max(src_->dim(), dst_->dim());
    if (static_cast<int>(mats_.size()) != top + 1) throw DimensionMismatch("chain map degrees");
    for (int i = 0; i <= top; ++i) {
        const auto& m = mats_[static_cast<size_t>(i)];
        if (m.rows() != dst_->rank_at(i) || m.cols() != src_->rank_at(i))
            throw DimensionMismatch("chain map degree " + std::to_string(i));
    }
}

ChainMap ChainMap::identity(ComplexPtr c) {
    std::vector<GrMatrix> mats;
    for (int i = 0; i <= c->dim(); ++i)
        mats.push_back(GrMatrix::identity(c->ring(), c->deck_rank(), c->rank_at(i)));
    return ChainMap(c, c, std::move(mats));
}

ChainMap ChainMap::zero(ComplexPtr src, ComplexPtr dst) {
    std::vector<GrMatrix> mats;
    int top = std::max(src->dim(), dst->dim());
    for (int i = 0; i <= top; ++i)
        mats.emplace_back(src->ring(), src->deck_rank(), dst->rank_at(i), src->rank_at(i));
    return ChainMap(src, dst, std::move(mats));
}

const GrMatrix& ChainMap::at(int degree) const {
    return mats_.at(static_cast<size_t>(degree));
}
GrMatrix& ChainMap::at(int degree) { return mats_.at(static_cast<size_t>(degree)); }

bool ChainMap::commutes_with_boundaries() const {
    int top = top_degree();
    for (int i = 1; i <= top; ++i) {
        GrMatrix lhs = dst_->boundary_or_zero(i) * mats_[static_cast<size_t>(i)];
        GrMatrix rhs = mats_[static_cast<size_t>(i - 1)] * src_->boundary_or_zero(i);
        if (!(lhs == rhs)) return false;
    }
    return true;
}

bool operator==(const ChainMap& a, const ChainMap& b) {
    if (a.mats_.size() != b.mats_.size()) return false;
    for (size_t i = 0; i < a.mats_.size(); ++i)
        if (!(a.mats_[i] == b.mats_[i])) return false;
    return true;
}

ChainHomotopy::ChainHomotopy(ComplexPtr src, ComplexPtr dst, std::vector<GrMatrix> mats)
    : src_(std::move(src)), dst_(std::move(dst)), mats_(std::move(mats)) {
    int top = std::max(src_->dim(), dst_->dim());
    if (static_cast<int>(mats_.size()) != top + 1) throw DimensionMismatch("homotopy degrees");
    for (int i = 0; i <= top; ++i) {
        const auto& m = mats_[static_cast<size_t>(i)];
        if (m.rows() != dst_->rank_at(i + 1) || m.cols() != src_->rank_at(i))
            throw DimensionMismatch("homotopy degree " + std::to_string(i));
    }
}

ChainHomotopy ChainHomotopy::zero(ComplexPtr src, ComplexPtr dst) {
    std::vector<GrMatrix> mats;
    int top = std::max(src->dim(), dst->dim());
    for (int i = 0; i <= top; ++i)
        mats.emplace_back(src->ring(), src->deck_rank(), dst->rank_at(i + 1), src->rank_at(i));
    return ChainHomotopy(src, dst, std::move(mats));
}

const GrMatrix& ChainHomotopy::at(int degree) const {
    return mats_.at(static_cast<size_t>(degree));
}
GrMatrix& ChainHomotopy::at(int degree) { return mats_.at(static_cast<size_t>(degree)); }

ChainMap compose(const ChainMap& f, const ChainMap& g) {
    if (f.src().get() != g.dst().get() && !(*f.src() == *g.dst()))
        throw DimensionMismatch("compose: inner complexes differ");
    std::vector<GrMatrix> mats;
    int top = std::max(g.src()->dim(), f.dst()->dim());
    for (int i = 0; i <= top; ++i) mats.push_back(f.at(i) * g.at(i));
    return ChainMap(g.src(), f.dst(), std::move(mats));
}

ChainMap iterate(const ChainMap& f, int m) {
    if (m < 1) throw SigmaError("iterate needs m >= 1");
    if (f.src().get() != f.dst().get() && !(*f.src() == *f.dst()))
        throw DimensionMismatch("iterate: not a self map");
    ChainMap r = f;
    for (int i = 1; i < m; ++i) r = compose(f, r);
    return r;
}

bool check_homotopy(const ChainHomotopy& h, const ChainMap& f, const ChainMap& g) {
    const auto& src = h.src();
    const auto& dst = h.dst();
    int top = std::max(src->dim(), dst->dim());
    for (int i = 0; i <= top; ++i) {
        GrMatrix lhs = dst->boundary_or_zero(i + 1) * h.at(i);
        if (i >= 1) lhs = lhs + h.at(i - 1) * src->boundary_or_zero(i);
        GrMatrix rhs = f.at(i) - g.at(i);
        if (!(lhs == rhs)) return false;
    }
    return true;
}

BasedFreeComplex tensor_coefficients(const BasedFreeComplex& c, const RingSpec& to) {
    BasedFreeComplex r(to, c.deck_rank(), c.ranks());
    for (int i = 1; i <= c.dim(); ++i) r.set_boundary(i, c.boundary(i).with_ring(to));
    r.set_name(c.name());
    return r;
}

}  // namespace sigma
