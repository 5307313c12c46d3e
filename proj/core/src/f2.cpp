#include "khsq/f2.hpp"

#include "khsq/error.hpp"

#include <algorithm>
#include <map>

namespace khsq {

BitVec GradedMatrix::column_bits(std::size_t c) const {
    BitVec v(rows);
    for (auto [r, x] : columns[c])
        if (x & 1) v.flip(r);
    return v;
}

BitVec GradedMatrix::apply(const BitVec& v) const {
    if (v.size() != cols) throw Error(ErrorKind::DimensionMismatch, "algebra", "vector length differs from column count");
    BitVec out(rows);
    for (std::size_t c = v.next(0); c < cols; c = v.next(c + 1))
        for (auto [r, x] : columns[c])
            if (x & 1) out.flip(r);
    return out;
}

GradedMatrix GradedMatrix::reduce_mod2() const {
    GradedMatrix m(Ring::F2, rows, cols);
    m.i = i;
    m.j = j;
    for (std::size_t c = 0; c < cols; ++c)
        for (auto [r, x] : columns[c])
            if (x & 1) m.columns[c].push_back({r, 1});
    return m;
}

GradedMatrix GradedMatrix::multiply(const GradedMatrix& rhs) const {
    if (cols != rhs.rows) throw Error(ErrorKind::DimensionMismatch, "algebra", "inner dimensions differ");
    GradedMatrix out(ring, rows, rhs.cols);
    out.i = rhs.i;
    out.j = rhs.j;
    for (std::size_t c = 0; c < rhs.cols; ++c) {
        std::map<std::uint32_t, long> acc;
        for (auto [k, a] : rhs.columns[c])
            for (auto [r, b] : columns[k]) acc[r] += long(a) * b;
        for (auto [r, x] : acc) {
            long v = ring == Ring::F2 ? (x & 1) : x;
            if (v != 0) out.columns[c].push_back({r, static_cast<int>(v)});
        }
    }
    return out;
}

bool GradedMatrix::is_zero() const {
    for (const auto& col : columns)
        for (auto [r, x] : col)
            if (ring == Ring::F2 ? (x & 1) : x != 0) return false;
    return true;
}

std::size_t GradedMatrix::nnz() const {
    std::size_t n = 0;
    for (const auto& col : columns) n += col.size();
    return n;
}

bool F2Reducer::reduce(BitVec& v, BitVec* tag) const {
    if (v.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "algebra", "vector length differs from reducer dimension");
    for (std::size_t b = v.next(0); b < dim_; b = v.next(b + 1)) {
        long r = pivot_[b];
        if (r < 0) continue;
        v ^= rows_[r];
        if (tag) *tag ^= tags_[r];
    }
    return !v.any();
}

bool F2Reducer::insert(BitVec v, BitVec tag) {
    if (tag.size() != tag_dim_) throw Error(ErrorKind::DimensionMismatch, "algebra", "tag length differs");
    if (reduce(v, &tag)) return false;
    pivot_[v.lowest()] = static_cast<long>(rows_.size());
    rows_.push_back(std::move(v));
    tags_.push_back(std::move(tag));
    return true;
}

std::size_t f2_rank(const GradedMatrix& m) {
    F2Reducer red(m.rows, 0);
    for (std::size_t c = 0; c < m.cols; ++c) red.insert(m.column_bits(c));
    return red.rank();
}

std::vector<BitVec> f2_kernel_basis(const GradedMatrix& m) {
    F2Reducer red(m.rows, m.cols);
    std::vector<BitVec> ker;
    for (std::size_t c = 0; c < m.cols; ++c) {
        BitVec v = m.column_bits(c);
        BitVec tag(m.cols);
        tag.set(c);
        if (red.reduce(v, &tag)) ker.push_back(std::move(tag));
        else red.insert(std::move(v), std::move(tag));
    }
    return ker;
}

std::vector<BitVec> f2_image_basis(const GradedMatrix& m) {
    F2Reducer red(m.rows, 0);
    std::vector<BitVec> img;
    for (std::size_t c = 0; c < m.cols; ++c) {
        BitVec v = m.column_bits(c);
        if (red.insert(v)) img.push_back(std::move(v));
    }
    return img;
}

BitVec f2_solve(const GradedMatrix& m, const BitVec& b) {
    if (b.size() != m.rows) throw Error(ErrorKind::DimensionMismatch, "algebra", "right-hand side length differs");
    F2Reducer red(m.rows, m.cols);
    for (std::size_t c = 0; c < m.cols; ++c) {
        BitVec tag(m.cols);
        tag.set(c);
        red.insert(m.column_bits(c), std::move(tag));
    }
    BitVec v = b;
    BitVec x(m.cols);
    if (!red.reduce(v, &x)) throw Error(ErrorKind::NoSolution, "algebra", "vector is not in the column span");
    return x;
}

std::size_t f2_span_rank(const std::vector<BitVec>& vs) {
    if (vs.empty()) return 0;
    F2Reducer red(vs[0].size(), 0);
    for (const auto& v : vs) red.insert(v);
    return red.rank();
}

std::size_t f2_intersection_dim(const std::vector<BitVec>& a, const std::vector<BitVec>& b) {
    std::vector<BitVec> both = a;
    both.insert(both.end(), b.begin(), b.end());
    return f2_span_rank(a) + f2_span_rank(b) - f2_span_rank(both);
}

} // namespace khsq
