#include "khsq/steenrod.hpp"

#include "khsq/error.hpp"

#include <algorithm>

namespace khsq {

namespace {

// a_b: a if a < b, else a - 1.
long sub(long a, long b) { return a < b ? a : a - 1; }

long median3(long a, long b, long c) { return std::max(std::min(a, b), std::min(std::max(a, b), c)); }

int mod2(long v) { return static_cast<int>(((v % 2) + 2) % 2); }

} // namespace

FacetCycle facet_cycle(const BoundaryGraph& g, const GraphCycle& c) {
    FacetCycle z;
    z.reserve(c.middles.size());
    for (int w : c.middles) {
        FacetEntry e;
        e.a = g.S_Z[w];
        e.omega = g.sigma2[w];
        e.orient = g.direction[w];
        e.sigma_flip = g.sigma_p[w] != g.sigma_p[g.e_match[w]];
        z.push_back(e);
    }
    return z;
}

FacetCycle reversed(const FacetCycle& z) {
    FacetCycle r(z.rbegin(), z.rend());
    for (auto& e : r) e.orient = -e.orient;
    return r;
}

int QTerms::total(bool with_signs) const {
    long t = products + labels + maxima + middles + switchbacks + winding + 1 + turnarounds;
    if (with_signs) t += signed_vertex;
    return mod2(t);
}

QTerms q_terms(const FacetCycle& z) {
    const long r = static_cast<long>(z.size());
    if (r < 2) throw Error(ErrorKind::InvariantViolation, "steenrod", "facet cycle shorter than two");
    auto at = [&](long k) -> const FacetEntry& { return z[((k % r) + r) % r]; };
    QTerms t;
    long not_between = 0;
    for (long k = 0; k < r; ++k) {
        long a = at(k).a, b = at(k + 1).a, prev = at(k - 1).a;
        if (a == b) throw Error(ErrorKind::InvariantViolation, "steenrod", "adjacent facet labels coincide");
        t.products += a * b;
        t.labels += a;
        t.maxima += std::max(a, b);
        t.middles += median3(prev, a, b);
        bool between = std::min(prev, b) < a && a < std::max(prev, b);
        if (!between) ++not_between;
        // prev -> a -> b with prev - 1/2 strictly between a and b
        if (std::min(a, b) < prev && prev <= std::max(a, b)) ++t.winding;
        if (prev == b && at(k).orient < 0) ++t.turnarounds;
        t.signed_vertex += sub(a, b) * at(k + 1).omega + sub(b, a) * at(k).omega + at(k).omega;
    }
    if (not_between % 2 != 0) throw Error(ErrorKind::OddSwitchbackCount, "steenrod", "odd switchback count");
    t.switchbacks = not_between / 2;
    return t;
}

int Q(const FacetCycle& z) { return q_terms(z).total(true); }

int Q_k(const FacetCycle& z, int l) {
    if (l < 0) throw Error(ErrorKind::BadArgument, "steenrod", "negative spectrum index");
    int base = q_terms(z).total(l % 2 == 1);
    long k = l / 2;
    long diff = 0;
    for (const auto& e : z)
        if (e.sigma_flip) diff += e.orient;
    if ((k * diff) % 2 != 0) throw Error(ErrorKind::InvariantViolation, "steenrod", "odd sign-flip edge balance");
    return mod2(base + k * diff / 2);
}

int frame_f(int i, int j) {
    if (i < 1 || j <= i) throw Error(ErrorKind::BadIndices, "steenrod", "frame needs 1 <= i < j");
    return mod2(long(i - 1) * long(j - i - 1));
}

int schutz_F(const BoundaryGraph& g, const GraphCycle& c, int eps) {
    long f = 0;
    for (std::size_t k = 0; k < c.starts.size(); ++k) {
        int v = c.starts[k], w = c.middles[k];
        long a = g.S_Z[v], b = g.S_Z[w];
        int top = a > b ? v : w;
        f += a * b + g.sigma_p[top] + g.sigma2[top] + sub(a, b) * g.sigma2[w] + sub(b, a) * g.sigma2[v];
        if (eps == 0 && g.sigma_p[v] == g.sigma2[v] && g.sigma_p[w] == g.sigma2[w] && g.sigma_p[v] != g.sigma_p[w])
            ++f;
    }
    return mod2(f);
}

int schutz_D(const BoundaryGraph& g, const GraphCycle& c) {
    int d = 0;
    for (int w : c.middles)
        if (g.direction[w] > 0) ++d;
    return d & 1;
}

BitVec sq2(const KhComplex& c, const BitVec& mu, const FacewiseMatching& m, int l) {
    if (mu.size() != c.dim(m.i, m.j)) throw Error(ErrorKind::DimensionMismatch, "steenrod", "cochain length differs");
    BitVec nu(c.dim(m.i + 2, m.j));
    for (const auto& g : build_gammas(c, m, GammaMode::Facewise)) {
        int coeff = 0;
        for (const auto& cyc : cycles(g)) coeff ^= Q_k(facet_cycle(g, cyc), l);
        if (coeff) nu.flip(g.z_index);
    }
    return nu;
}

BitVec sq2_schutz(const KhComplex& c, const BitVec& mu, const FacewiseMatching& m, int eps) {
    if (mu.size() != c.dim(m.i, m.j)) throw Error(ErrorKind::DimensionMismatch, "steenrod", "cochain length differs");
    FacewiseMatching sm = signwise_matching(m);
    BitVec nu(c.dim(m.i + 2, m.j));
    for (const auto& g : build_gammas(c, sm, GammaMode::Schutz)) {
        int coeff = 0;
        for (const auto& cyc : cycles(g)) coeff ^= 1 ^ schutz_F(g, cyc, eps) ^ schutz_D(g, cyc);
        if (coeff) nu.flip(g.z_index);
    }
    return nu;
}

BitVec L_map(const KhComplex& c, int i, int j, const BitVec& mu) {
    BitVec out(c.dim(i + 2, j));
    for (std::size_t x = mu.next(0); x < mu.size(); x = mu.next(x + 1))
        for (const auto& e1 : c.edges(i, j, x))
            for (const auto& e2 : c.edges(e1.y))
                if (e1.crossing < e2.crossing && (e2.s_z & 1)) out.flip(e2.target);
    return out;
}

BitVec H_map(const KhComplex& c, int i, int j, const BitVec& mu) {
    BitVec out(c.dim(i + 1, j));
    for (std::size_t x = mu.next(0); x < mu.size(); x = mu.next(x + 1))
        for (const auto& e : c.edges(i, j, x))
            if ((long(e.s_z) * (e.s_z + 1) / 2) & 1) out.flip(e.target);
    return out;
}

BitVec xi_cochain(const KhComplex& c, const FacewiseMatching& m) {
    BitVec out(c.dim(m.i + 1, m.j));
    for (std::size_t y = 0; y < m.by_y.size(); ++y) {
        const auto& b = m.by_y[y];
        int s = 0;
        for (std::size_t k = 0; k < b.ordered.size(); ++k)
            if (b.ordered[k]) s ^= b.points[2 * k + 1].sigma;
        if (s) out.set(y);
    }
    return out;
}

F2Cohomology::F2Cohomology(const GradedMatrix& d_in, const GradedMatrix& d_out)
    : n_(d_out.cols), d_out_(d_out.reduce_mod2()), boundaries_(d_out.cols, 0) {
    if (d_in.rows != d_out.cols) throw Error(ErrorKind::DimensionMismatch, "algebra", "differentials do not compose");
    for (const auto& b : f2_image_basis(d_in.reduce_mod2())) boundaries_.insert(b);
    auto ker = f2_kernel_basis(d_out_);
    std::size_t h = ker.size() - boundaries_.rank();
    classes_ = F2Reducer(n_, h);
    for (const auto& b : boundaries_.rows()) classes_.insert(b);
    for (auto& v : ker) {
        BitVec w = v;
        if (classes_.reduce(w)) continue;
        BitVec tag(h);
        tag.set(reps_.size());
        classes_.insert(v, std::move(tag));
        reps_.push_back(v);
    }
    if (reps_.size() != h) throw Error(ErrorKind::InvariantViolation, "algebra", "cohomology dimension mismatch");
}

bool F2Cohomology::is_cocycle(const BitVec& v) const { return !d_out_.apply(v).any(); }

bool F2Cohomology::is_coboundary(const BitVec& v) const { return boundaries_.contains(v); }

BitVec F2Cohomology::coords(const BitVec& cocycle) const {
    BitVec v = cocycle;
    BitVec tag(reps_.size());
    if (!classes_.reduce(v, &tag)) throw Error(ErrorKind::NotACocycle, "steenrod", "cochain is not a cocycle");
    return tag;
}

CohomologyOps::CohomologyOps(const KhComplex& c, int j, Parity p)
    : c_(c), j_(j), p_(p), integral_(c.cochain_complex(j, p, Ring::Z)) {}

const F2Cohomology& CohomologyOps::cohomology(int i) {
    auto it = coh_.find(i);
    if (it == coh_.end())
        it = coh_.emplace(i, std::make_unique<F2Cohomology>(integral_.diff(i - 1), integral_.diff(i))).first;
    return *it->second;
}

std::vector<BitVec> CohomologyOps::sq1(int i) {
    const auto& src = cohomology(i);
    const auto& dst = cohomology(i + 1);
    std::vector<BitVec> out;
    for (const auto& r : src.reps()) out.push_back(dst.coords(bockstein_sq1(integral_, i, r)));
    return out;
}

std::vector<BitVec> CohomologyOps::sq2(int i, int l) {
    if (parity_of_l(l) != p_) throw Error(ErrorKind::BadArgument, "steenrod", "spectrum index has the wrong parity");
    const auto& src = cohomology(i);
    const auto& dst = cohomology(i + 2);
    std::vector<BitVec> out;
    for (const auto& r : src.reps()) {
        FacewiseMatching m = facewise_matching(c_, i, j_, r);
        out.push_back(dst.coords(khsq::sq2(c_, r, m, l)));
    }
    return out;
}

std::vector<BitVec> CohomologyOps::sq2_schutz(int i, int eps) {
    const auto& src = cohomology(i);
    const auto& dst = cohomology(i + 2);
    std::vector<BitVec> out;
    for (const auto& r : src.reps()) {
        FacewiseMatching m = facewise_matching(c_, i, j_, r);
        out.push_back(dst.coords(khsq::sq2_schutz(c_, r, m, eps)));
    }
    return out;
}

} // namespace khsq
