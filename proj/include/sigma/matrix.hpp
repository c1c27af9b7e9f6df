#ifndef SIGMA_MATRIX_HPP
#define SIGMA_MATRIX_HPP

#include "sigma/group_ring.hpp"

#include <functional>
#include <map>
#include <vector>

namespace sigma {

// Sparse matrix over the group ring, column-major (acts on column vectors
// of coordinates).
class GrMatrix {
public:
    GrMatrix() : ring_(RingSpec::Z()), rank_(1), rows_(0) {}
    GrMatrix(RingSpec ring, int rank, int rows, int cols)
        : ring_(ring), rank_(rank), rows_(rows), cols_(static_cast<size_t>(cols)) {}

    static GrMatrix identity(RingSpec ring, int rank, int n);

    const RingSpec& ring() const { return ring_; }
    int rank() const { return rank_; }
    int rows() const { return rows_; }
    int cols() const { return static_cast<int>(cols_.size()); }
    bool is_zero() const;

    const std::map<int, GroupRingElem>& col(int j) const { return cols_[static_cast<size_t>(j)]; }
    GroupRingElem entry(int i, int j) const;
    void set(int i, int j, const GroupRingElem& x);
    void add_to(int i, int j, const GroupRingElem& x);

    GrMatrix operator*(const GrMatrix& o) const;
    GrMatrix operator+(const GrMatrix& o) const;
    GrMatrix operator-(const GrMatrix& o) const;
    GrMatrix operator-() const;
    bool operator==(const GrMatrix& o) const;

    GrMatrix scaled(const GroupRingElem& c) const;  // left multiplication by c
    GrMatrix with_ring(const RingSpec& to) const;

    // Matrix * coordinate vector (length = cols).
    std::vector<GroupRingElem> apply(const std::vector<GroupRingElem>& v) const;

    void for_each(const std::function<void(int, int, const GroupRingElem&)>& f) const;

private:
    RingSpec ring_;
    int rank_;
    int rows_;
    std::vector<std::map<int, GroupRingElem>> cols_;
};

std::vector<GroupRingElem> zero_vector(RingSpec ring, int rank, int n);
bool vector_is_zero(const std::vector<GroupRingElem>& v);
std::vector<GroupRingElem> vector_sub(std::vector<GroupRingElem> a,
                                      const std::vector<GroupRingElem>& b);

}  // namespace sigma

#endif
