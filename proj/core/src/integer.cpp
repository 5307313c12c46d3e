#include "khsq/integer.hpp"

#include "khsq/error.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace khsq {

IntMatrix int_identity(std::size_t n) {
    IntMatrix m(n, std::vector<mpz_class>(n, 0));
    for (std::size_t k = 0; k < n; ++k) m[k][k] = 1;
    return m;
}

IntMatrix int_multiply(const IntMatrix& a, const IntMatrix& b, std::size_t inner) {
    std::size_t rows = a.size();
    std::size_t cols = b.empty() ? 0 : b[0].size();
    IntMatrix out(rows, std::vector<mpz_class>(cols, 0));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[r][k] == 0) continue;
            for (std::size_t c = 0; c < cols; ++c)
                if (b[k][c] != 0) out[r][c] += a[r][k] * b[k][c];
        }
    return out;
}

IntMatrix to_dense(const GradedMatrix& m) {
    IntMatrix d(m.rows, std::vector<mpz_class>(m.cols, 0));
    for (std::size_t c = 0; c < m.cols; ++c)
        for (auto [r, x] : m.columns[c]) d[r][c] += x;
    return d;
}

SmithForm smith_normal_form(const IntMatrix& a, std::size_t rows, std::size_t cols) {
    SmithForm f;
    f.D = a;
    if (f.D.size() != rows) throw Error(ErrorKind::DimensionMismatch, "algebra", "row count differs");
    for (const auto& row : f.D)
        if (row.size() != cols) throw Error(ErrorKind::DimensionMismatch, "algebra", "ragged matrix");
    f.U = int_identity(rows);
    f.V = int_identity(cols);
    auto& D = f.D;

    auto swap_rows = [&](std::size_t x, std::size_t y) {
        if (x == y) return;
        std::swap(D[x], D[y]);
        std::swap(f.U[x], f.U[y]);
    };
    auto swap_cols = [&](std::size_t x, std::size_t y) {
        if (x == y) return;
        for (auto& row : D) std::swap(row[x], row[y]);
        for (auto& row : f.V) std::swap(row[x], row[y]);
    };
    // row y -= q * row x
    auto row_op = [&](std::size_t y, std::size_t x, const mpz_class& q) {
        for (std::size_t c = 0; c < cols; ++c)
            if (D[x][c] != 0) D[y][c] -= q * D[x][c];
        for (std::size_t c = 0; c < rows; ++c)
            if (f.U[x][c] != 0) f.U[y][c] -= q * f.U[x][c];
    };
    auto col_op = [&](std::size_t y, std::size_t x, const mpz_class& q) {
        for (std::size_t r = 0; r < rows; ++r)
            if (D[r][x] != 0) D[r][y] -= q * D[r][x];
        for (std::size_t r = 0; r < cols; ++r)
            if (f.V[r][x] != 0) f.V[r][y] -= q * f.V[r][x];
    };

    auto quot = [](const mpz_class& x, const mpz_class& p) {
        // nearest integer quotient, so |x - q p| <= |p| / 2
        mpz_class h = 2 * x + p, d = 2 * p, q;
        if (d < 0) {
            h = -h;
            d = -d;
        }
        mpz_fdiv_q(q.get_mpz_t(), h.get_mpz_t(), d.get_mpz_t());
        return q;
    };
    std::size_t t = 0;
    while (t < rows && t < cols) {
        while (true) {
            // smallest nonzero entry of the trailing block, ties broken by fill
            std::size_t pr = rows, pc = cols, best_fill = 0;
            std::vector<std::size_t> row_fill(rows, 0), col_fill(cols, 0);
            for (std::size_t r = t; r < rows; ++r)
                for (std::size_t c = t; c < cols; ++c)
                    if (D[r][c] != 0) {
                        ++row_fill[r];
                        ++col_fill[c];
                    }
            for (std::size_t r = t; r < rows; ++r)
                for (std::size_t c = t; c < cols; ++c) {
                    if (D[r][c] == 0) continue;
                    std::size_t fill = (row_fill[r] - 1) * (col_fill[c] - 1);
                    int cmp = pr == rows ? -1 : mpz_cmpabs(D[r][c].get_mpz_t(), D[pr][pc].get_mpz_t());
                    if (cmp < 0 || (cmp == 0 && fill < best_fill)) {
                        pr = r;
                        pc = c;
                        best_fill = fill;
                    }
                }
            if (pr == rows) break;
            swap_rows(t, pr);
            swap_cols(t, pc);
            bool clean = true;
            for (std::size_t r = t + 1; r < rows; ++r) {
                if (D[r][t] == 0) continue;
                row_op(r, t, quot(D[r][t], D[t][t]));
                if (D[r][t] != 0) clean = false;
            }
            for (std::size_t c = t + 1; c < cols; ++c) {
                if (D[t][c] == 0) continue;
                col_op(c, t, quot(D[t][c], D[t][t]));
                if (D[t][c] != 0) clean = false;
            }
            if (!clean) continue;
            // divisibility of the trailing block
            std::size_t bad = rows;
            for (std::size_t r = t + 1; r < rows && bad == rows; ++r)
                for (std::size_t c = t + 1; c < cols; ++c)
                    if (D[r][c] % D[t][t] != 0) {
                        bad = r;
                        break;
                    }
            if (bad == rows) break;
            row_op(t, bad, -1);
        }
        if (D[t][t] == 0) break;
        if (D[t][t] < 0) {
            for (std::size_t c = 0; c < cols; ++c) D[t][c] = -D[t][c];
            for (std::size_t c = 0; c < rows; ++c) f.U[t][c] = -f.U[t][c];
        }
        f.factors.push_back(D[t][t]);
        ++t;
    }
    return f;
}

std::vector<mpz_class> invariant_factors(const IntMatrix& a, std::size_t rows, std::size_t cols) {
    if (a.size() != rows) throw Error(ErrorKind::DimensionMismatch, "algebra", "row count differs");
    // Bareiss: the last pivot is a nonzero r x r minor
    IntMatrix b = a;
    std::size_t r = 0;
    mpz_class prev = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && b[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(b[p], b[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t k = c + 1; k < cols; ++k) {
                b[i][k] = b[r][c] * b[i][k] - b[i][c] * b[r][k];
                mpz_divexact(b[i][k].get_mpz_t(), b[i][k].get_mpz_t(), prev.get_mpz_t());
            }
            b[i][c] = 0;
        }
        prev = b[r][c];
        ++r;
    }
    if (r == 0) return {};
    const mpz_class N = 2 * abs(prev);

    IntMatrix D(rows, std::vector<mpz_class>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < cols; ++k) mpz_fdiv_r(D[i][k].get_mpz_t(), a[i][k].get_mpz_t(), N.get_mpz_t());
    auto reduce = [&](mpz_class& x) { mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), N.get_mpz_t()); };

    std::vector<mpz_class> diag;
    std::size_t t = 0;
    while (t < rows && t < cols) {
        std::size_t pr = rows, pc = cols;
        mpz_class best;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t k = t; k < cols; ++k)
                if (D[i][k] != 0) {
                    mpz_class g = gcd(D[i][k], N);
                    if (pr == rows || g < best) {
                        pr = i;
                        pc = k;
                        best = g;
                    }
                }
        if (pr == rows) break;
        std::swap(D[t], D[pr]);
        for (auto& row : D) std::swap(row[t], row[pc]);
        bool dirty = true;
        while (dirty) {
            dirty = false;
            // rows: [x; y] -> [s x + u y; -(y/g) x + (x/g) y]
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (D[i][t] == 0) continue;
                if (mpz_divisible_p(D[i][t].get_mpz_t(), D[t][t].get_mpz_t())) {
                    mpz_class q = D[i][t] / D[t][t];
                    for (std::size_t k = t; k < cols; ++k) {
                        D[i][k] -= q * D[t][k];
                        reduce(D[i][k]);
                    }
                    continue;
                }
                mpz_class g, s, u;
                mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), u.get_mpz_t(), D[t][t].get_mpz_t(), D[i][t].get_mpz_t());
                mpz_class xg = D[t][t] / g, yg = D[i][t] / g;
                for (std::size_t k = t; k < cols; ++k) {
                    mpz_class x = D[t][k], y = D[i][k];
                    D[t][k] = s * x + u * y;
                    D[i][k] = xg * y - yg * x;
                    reduce(D[t][k]);
                    reduce(D[i][k]);
                }
            }
            for (std::size_t k = t + 1; k < cols; ++k) {
                if (D[t][k] == 0) continue;
                if (mpz_divisible_p(D[t][k].get_mpz_t(), D[t][t].get_mpz_t())) {
                    mpz_class q = D[t][k] / D[t][t];
                    for (std::size_t i = t; i < rows; ++i) {
                        D[i][k] -= q * D[i][t];
                        reduce(D[i][k]);
                    }
                    continue;
                }
                mpz_class g, s, u;
                mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), u.get_mpz_t(), D[t][t].get_mpz_t(), D[t][k].get_mpz_t());
                mpz_class xg = D[t][t] / g, yg = D[t][k] / g;
                for (std::size_t i = t; i < rows; ++i) {
                    mpz_class x = D[i][t], y = D[i][k];
                    D[i][t] = s * x + u * y;
                    D[i][k] = xg * y - yg * x;
                    reduce(D[i][t]);
                    reduce(D[i][k]);
                }
            }
            for (std::size_t i = t + 1; i < rows && !dirty; ++i)
                if (D[i][t] != 0) dirty = true;
            if (D[t][t] == 0) break;
        }
        diag.push_back(gcd(D[t][t], N));
        ++t;
    }
    // entries equal to N stand for zero; the rest are normalised to a divisibility chain
    std::vector<mpz_class> out;
    for (auto& d : diag)
        if (d != N) out.push_back(d);
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t k = i + 1; k < out.size(); ++k) {
            mpz_class g = gcd(out[i], out[k]);
            mpz_class l = out[i] / g * out[k];
            out[i] = g;
            out[k] = l;
        }
    if (out.size() != r) throw Error(ErrorKind::InvariantViolation, "algebra", "modular Smith form lost rank");
    return out;
}

SparseSmith sparse_smith(const GradedMatrix& m) {
    SparseSmith out;
    std::vector<std::map<std::uint32_t, long>> rows(m.rows);
    std::vector<std::set<std::uint32_t>> cols(m.cols);
    for (std::size_t c = 0; c < m.cols; ++c)
        for (auto [r, x] : m.columns[c]) {
            long v = m.ring == Ring::F2 ? (x & 1) : x;
            if (v == 0) continue;
            long& e = rows[r][static_cast<std::uint32_t>(c)];
            e += v;
            if (e == 0) rows[r].erase(static_cast<std::uint32_t>(c));
        }
    for (std::size_t r = 0; r < m.rows; ++r)
        for (auto& [c, x] : rows[r]) cols[c].insert(static_cast<std::uint32_t>(r));
    auto unit = [&](long x) { return m.ring == Ring::F2 ? (x & 1) != 0 : (x == 1 || x == -1); };

    bool progress = true;
    while (progress) {
        progress = false;
        std::vector<std::uint32_t> order;
        for (std::size_t r = 0; r < m.rows; ++r)
            if (!rows[r].empty()) order.push_back(static_cast<std::uint32_t>(r));
        std::stable_sort(order.begin(), order.end(),
                         [&](std::uint32_t a, std::uint32_t b) { return rows[a].size() < rows[b].size(); });
        for (std::uint32_t r : order) {
            if (rows[r].empty()) continue;
            long best = -1;
            std::size_t best_count = 0;
            for (auto& [c, x] : rows[r])
                if (unit(x) && (best < 0 || cols[c].size() < best_count)) {
                    best = c;
                    best_count = cols[c].size();
                }
            if (best < 0) continue;
            std::uint32_t pc = static_cast<std::uint32_t>(best);
            long pv = rows[r][pc];
            std::vector<std::uint32_t> others(cols[pc].begin(), cols[pc].end());
            for (std::uint32_t r2 : others) {
                if (r2 == r) continue;
                long f = rows[r2][pc] * pv; // pv is its own inverse
                for (auto& [c, x] : rows[r]) {
                    long& e = rows[r2][c];
                    long prod;
                    if (__builtin_mul_overflow(f, x, &prod) || __builtin_sub_overflow(e, prod, &e)) {
                        SparseSmith whole;
                        for (const auto& x2 : invariant_factors(to_dense(m), m.rows, m.cols)) {
                            ++whole.rank;
                            if (x2 > 1) whole.torsion.push_back(x2);
                        }
                        return whole;
                    }
                    if (m.ring == Ring::F2) e &= 1;
                    if (e == 0) {
                        rows[r2].erase(c);
                        cols[c].erase(r2);
                    } else {
                        cols[c].insert(r2);
                    }
                }
            }
            for (auto& [c, x] : rows[r]) cols[c].erase(r);
            rows[r].clear();
            ++out.rank;
            progress = true;
        }
    }

    std::vector<std::uint32_t> rr;
    std::set<std::uint32_t> cc;
    for (std::size_t r = 0; r < m.rows; ++r)
        if (!rows[r].empty()) {
            rr.push_back(static_cast<std::uint32_t>(r));
            for (auto& [c, x] : rows[r]) cc.insert(c);
        }
    if (rr.empty()) return out;
    if (m.ring == Ring::F2) {
        // every remaining entry is a unit over F2, so nothing is left
        throw Error(ErrorKind::InvariantViolation, "algebra", "F2 elimination left entries");
    }
    std::vector<std::uint32_t> cv(cc.begin(), cc.end());
    std::map<std::uint32_t, std::size_t> cidx;
    for (std::size_t k = 0; k < cv.size(); ++k) cidx[cv[k]] = k;
    IntMatrix dense(rr.size(), std::vector<mpz_class>(cv.size(), 0));
    for (std::size_t k = 0; k < rr.size(); ++k)
        for (auto& [c, x] : rows[rr[k]]) dense[k][cidx[c]] = x;
    for (const auto& x : invariant_factors(dense, rr.size(), cv.size())) {
        ++out.rank;
        if (x > 1) out.torsion.push_back(x);
    }
    return out;
}

std::vector<unsigned long> prime_power_parts(unsigned long n) {
    std::vector<unsigned long> out;
    for (unsigned long p = 2; p * p <= n; ++p) {
        unsigned long q = 1;
        while (n % p == 0) {
            n /= p;
            q *= p;
        }
        if (q > 1) out.push_back(q);
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::string HomologyGroup::str() const {
    std::ostringstream os;
    bool first = true;
    if (rank > 0) {
        os << "Z";
        if (rank > 1) os << "^" << rank;
        first = false;
    }
    std::map<unsigned long, int> counts;
    for (auto t : torsion) ++counts[t];
    for (auto [t, k] : counts) {
        if (!first) os << " + ";
        first = false;
        os << "Z/" << t;
        if (k > 1) os << "^" << k;
    }
    if (first) os << "0";
    return os.str();
}

std::size_t CochainComplex::dim(int i) const {
    if (i < i_min || i > i_max()) return 0;
    return dims[i - i_min];
}

GradedMatrix CochainComplex::diff(int i) const {
    if (i >= i_min && i < i_max()) return d[i - i_min];
    GradedMatrix z(Ring::Z, dim(i + 1), dim(i));
    z.i = i;
    z.j = j;
    return z;
}

void check_complex(const CochainComplex& c) {
    for (int i = c.i_min; i + 1 < c.i_max(); ++i) {
        GradedMatrix dd = c.diff(i + 1).multiply(c.diff(i));
        if (!dd.is_zero())
            throw Error(ErrorKind::NotAComplex, "algebra",
                        "d^2 != 0 at (" + std::to_string(i) + "," + std::to_string(c.j) + ")");
    }
}

std::vector<HomologyGroup> homology(const CochainComplex& c, Ring ring) {
    check_complex(c);
    std::vector<SparseSmith> snf;
    for (int i = c.i_min - 1; i <= c.i_max(); ++i) {
        GradedMatrix m = c.diff(i);
        if (ring == Ring::F2) m = m.reduce_mod2();
        snf.push_back(sparse_smith(m));
    }
    std::vector<HomologyGroup> out;
    for (int i = c.i_min; i <= c.i_max(); ++i) {
        const SparseSmith& in = snf[i - c.i_min];
        const SparseSmith& outgoing = snf[i - c.i_min + 1];
        HomologyGroup g;
        g.i = i;
        g.j = c.j;
        g.rank = c.dim(i) - outgoing.rank - in.rank;
        for (const auto& t : in.torsion) {
            if (!t.fits_ulong_p()) throw Error(ErrorKind::InvariantViolation, "algebra", "torsion order too large");
            for (unsigned long q : prime_power_parts(t.get_ui())) g.torsion.push_back(q);
        }
        std::sort(g.torsion.begin(), g.torsion.end());
        if (!g.trivial()) out.push_back(g);
    }
    return out;
}

BitVec bockstein_sq1(const CochainComplex& c, int i, const BitVec& cocycle) {
    GradedMatrix d = c.diff(i);
    if (cocycle.size() != d.cols) throw Error(ErrorKind::DimensionMismatch, "algebra", "cochain length differs");
    std::vector<long> w(d.rows, 0);
    for (std::size_t x = cocycle.next(0); x < d.cols; x = cocycle.next(x + 1))
        for (auto [r, v] : d.columns[x]) w[r] += v;
    BitVec out(d.rows);
    for (std::size_t r = 0; r < d.rows; ++r) {
        if (w[r] % 2 != 0) throw Error(ErrorKind::NotACocycle, "algebra", "cochain is not an F2 cocycle");
        if ((w[r] / 2) % 2 != 0) out.set(r);
    }
    return out;
}

} // namespace khsq
