#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace khsq {

class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const { return w_[i >> 6] >> (i & 63) & 1; }
    void set(std::size_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }
    void assign(std::size_t i, bool b) { b ? set(i) : reset(i); }

    BitVec& operator^=(const BitVec& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
        return *this;
    }
    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool any() const {
        for (auto w : w_)
            if (w) return true;
        return false;
    }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : w_) c += std::popcount(w);
        return c;
    }
    // Lowest set index at or after `from`, or size() if none.
    std::size_t next(std::size_t from) const {
        if (from >= n_) return n_;
        std::size_t k = from >> 6;
        std::uint64_t w = w_[k] & (~std::uint64_t(0) << (from & 63));
        while (true) {
            if (w) return std::min(n_, (k << 6) + std::countr_zero(w));
            if (++k >= w_.size()) return n_;
            w = w_[k];
        }
    }
    std::size_t lowest() const { return next(0); }
    std::vector<std::size_t> support() const {
        std::vector<std::size_t> s;
        for (std::size_t i = next(0); i < n_; i = next(i + 1)) s.push_back(i);
        return s;
    }
    std::string str() const {
        std::string s(n_, '0');
        for (std::size_t i = 0; i < n_; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }
    const std::vector<std::uint64_t>& words() const { return w_; }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

enum class Ring { F2, Z };

// Sparse matrix stored by columns; over F2 every stored coefficient is odd.
struct GradedMatrix {
    Ring ring = Ring::Z;
    int i = 0, j = 0; // bidegree of the source
    std::size_t rows = 0, cols = 0;
    std::vector<std::vector<std::pair<std::uint32_t, int>>> columns;

    GradedMatrix() = default;
    GradedMatrix(Ring r, std::size_t nrows, std::size_t ncols) : ring(r), rows(nrows), cols(ncols), columns(ncols) {}

    BitVec column_bits(std::size_t c) const;
    BitVec apply(const BitVec& v) const;      // over F2
    GradedMatrix reduce_mod2() const;
    GradedMatrix multiply(const GradedMatrix& rhs) const; // this * rhs
    bool is_zero() const;
    std::size_t nnz() const;
};

// Incremental elimination over F2. Rows are keyed by their lowest set bit; each row carries a tag
// that records how it was assembled.
class F2Reducer {
public:
    F2Reducer() = default;
    F2Reducer(std::size_t dim, std::size_t tag_dim) : dim_(dim), tag_dim_(tag_dim), pivot_(dim, -1) {}

    std::size_t dim() const { return dim_; }
    std::size_t tag_dim() const { return tag_dim_; }
    std::size_t rank() const { return rows_.size(); }

    // Reduces v against the stored rows; tag accumulates the tags used. Returns true if v became 0.
    bool reduce(BitVec& v, BitVec* tag = nullptr) const;
    // Inserts v with the given tag; returns false if v was dependent.
    bool insert(BitVec v, BitVec tag);
    bool insert(BitVec v) { return insert(std::move(v), BitVec(tag_dim_)); }
    bool contains(BitVec v) const { return reduce(v); }

    const std::vector<BitVec>& rows() const { return rows_; }
    const std::vector<BitVec>& tags() const { return tags_; }

private:
    std::size_t dim_ = 0, tag_dim_ = 0;
    std::vector<long> pivot_;
    std::vector<BitVec> rows_, tags_;
};

std::size_t f2_rank(const GradedMatrix& m);
std::vector<BitVec> f2_kernel_basis(const GradedMatrix& m);
std::vector<BitVec> f2_image_basis(const GradedMatrix& m);
// Some x with m x = b; throws NoSolution.
BitVec f2_solve(const GradedMatrix& m, const BitVec& b);

// Rank of a list of vectors, and dimension of the intersection of two spans.
std::size_t f2_span_rank(const std::vector<BitVec>& vs);
std::size_t f2_intersection_dim(const std::vector<BitVec>& a, const std::vector<BitVec>& b);

} // namespace khsq
