#ifndef SIGMA_COMPLEX_HPP
#define SIGMA_COMPLEX_HPP

#include "sigma/matrix.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sigma {

// Finite free based chain complex over the deck group ring.  boundary(i)
// is the rank_{i-1} x rank_i matrix of d_i : C_i -> C_{i-1}.
class BasedFreeComplex {
public:
    BasedFreeComplex() = default;
    BasedFreeComplex(RingSpec ring, int deck_rank, std::vector<int> ranks);

    const RingSpec& ring() const { return ring_; }
    int deck_rank() const { return deck_rank_; }
    int dim() const { return static_cast<int>(ranks_.size()) - 1; }
    int rank_at(int i) const {
        return (i >= 0 && i < static_cast<int>(ranks_.size())) ? ranks_[static_cast<size_t>(i)] : 0;
    }
    const std::vector<int>& ranks() const { return ranks_; }

    const GrMatrix& boundary(int i) const;          // 1 <= i <= dim
    GrMatrix boundary_or_zero(int i) const;         // zero matrix outside range
    void set_boundary(int i, GrMatrix m);

    void set_label(int degree, int index, std::string label);
    std::string label(int degree, int index) const;

    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

    friend bool operator==(const BasedFreeComplex& a, const BasedFreeComplex& b);

private:
    RingSpec ring_ = RingSpec::Z();
    int deck_rank_ = 1;
    std::vector<int> ranks_;
    std::vector<GrMatrix> bnd_;  // bnd_[i-1] = d_i
    std::vector<std::vector<std::string>> labels_;
    std::string name_;
};

using ComplexPtr = std::shared_ptr<const BasedFreeComplex>;

struct ValidationIssue {
    int degree = 0;
    int row = 0;
    int col = 0;
    std::string message;
};

struct ValidationReport {
    bool ok = true;
    std::optional<ValidationIssue> first_issue;
};

// dd = 0 and dimension consistency; reports the first failing entry.
ValidationReport validate(const BasedFreeComplex& c);

// Degree-preserving map of complexes, one matrix per degree.
class ChainMap {
public:
    ChainMap() = default;
    ChainMap(ComplexPtr src, ComplexPtr dst, std::vector<GrMatrix> mats);
    static ChainMap identity(ComplexPtr c);
    static ChainMap zero(ComplexPtr src, ComplexPtr dst);

    const ComplexPtr& src() const { return src_; }
    const ComplexPtr& dst() const { return dst_; }
    const GrMatrix& at(int degree) const;
    GrMatrix& at(int degree);
    int top_degree() const { return static_cast<int>(mats_.size()) - 1; }

    bool commutes_with_boundaries() const;  // df = fd, exactly
    friend bool operator==(const ChainMap& a, const ChainMap& b);

private:
    ComplexPtr src_, dst_;
    std::vector<GrMatrix> mats_;
};

// Degree +1 map; the homotopy H between chain maps f and g satisfies
// dH + Hd = f - g exactly.
class ChainHomotopy {
public:
    ChainHomotopy() = default;
    ChainHomotopy(ComplexPtr src, ComplexPtr dst, std::vector<GrMatrix> mats);
    static ChainHomotopy zero(ComplexPtr src, ComplexPtr dst);

    const ComplexPtr& src() const { return src_; }
    const ComplexPtr& dst() const { return dst_; }
    const GrMatrix& at(int degree) const;
    GrMatrix& at(int degree);

private:
    ComplexPtr src_, dst_;
    std::vector<GrMatrix> mats_;  // mats_[i] : C_i -> D_{i+1}
};

ChainMap compose(const ChainMap& f, const ChainMap& g);     // f after g
ChainMap iterate(const ChainMap& f, int m);                 // f^m, m >= 1
bool check_homotopy(const ChainHomotopy& h, const ChainMap& f, const ChainMap& g);

// Entrywise coefficient change (Z -> Q or Z -> F_p); dd = 0 is preserved.
BasedFreeComplex tensor_coefficients(const BasedFreeComplex& c, const RingSpec& to);

}  // namespace sigma

#endif
