#include "khsq_app/proptest.hpp"

#include "khsq/error.hpp"
#include "khsq/steenrod.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace khsq::app {

namespace {

struct Slot {
    int i = 0, j = 0;
    CochainComplex cc; // over F2; both parities reduce to the same complex
    F2Cohomology h, h2;
};

struct Instance {
    const KhComplex* c = nullptr;
    const Slot* slot = nullptr;
    BitVec mu;
    std::uint64_t seed = 0;
};

BitVec random_vec(std::size_t n, std::mt19937_64& rng) {
    BitVec v(n);
    for (std::size_t k = 0; k < n; ++k)
        if (rng() & 1) v.set(k);
    return v;
}

std::string bidegree(const Slot& s) { return "(" + std::to_string(s.i) + ", " + std::to_string(s.j) + ")"; }

// Each check returns an empty string on success.
using Check = std::function<std::string(const Instance&)>;

std::string check_cocycle(const Instance& in) {
    const auto& c = *in.c;
    auto m = facewise_matching(c, in.slot->i, in.slot->j, in.mu);
    for (int l = 0; l < 4; ++l)
        if (!in.slot->h2.is_cocycle(sq2(c, in.mu, m, l))) return "sq2_" + std::to_string(l) + " is not a cocycle";
    for (int eps = 0; eps < 2; ++eps)
        if (!in.slot->h2.is_cocycle(sq2_schutz(c, in.mu, m, eps)))
            return "schutz sq2 with eps=" + std::to_string(eps) + " is not a cocycle";
    return {};
}

std::string check_matching(const Instance& in) {
    const auto& c = *in.c;
    std::mt19937_64 rng(in.seed);
    auto m = facewise_matching(c, in.slot->i, in.slot->j, in.mu);
    auto m2 = random_matching(c, in.slot->i, in.slot->j, in.mu, rng);
    khsq::check_matching(m2);
    for (int l = 0; l < 4; ++l) {
        BitVec d = sq2(c, in.mu, m, l);
        d ^= sq2(c, in.mu, m2, l);
        if (!in.slot->h2.is_coboundary(d)) return "sq2_" + std::to_string(l) + " depends on the matching";
    }
    for (int eps = 0; eps < 2; ++eps) {
        BitVec d = sq2_schutz(c, in.mu, m, eps);
        d ^= sq2_schutz(c, in.mu, m2, eps);
        if (!in.slot->h2.is_coboundary(d)) return "schutz sq2 depends on the matching";
    }
    return {};
}

std::string check_representative(const Instance& in) {
    const auto& c = *in.c;
    const Slot& s = *in.slot;
    std::mt19937_64 rng(in.seed);
    GradedMatrix din = s.cc.diff(s.i - 1);
    BitVec mu2 = in.mu;
    mu2 ^= din.apply(random_vec(din.cols, rng));
    auto m = facewise_matching(c, s.i, s.j, in.mu);
    auto m2 = facewise_matching(c, s.i, s.j, mu2);
    for (int l = 0; l < 4; ++l) {
        BitVec d = sq2(c, in.mu, m, l);
        d ^= sq2(c, mu2, m2, l);
        if (!s.h2.is_coboundary(d)) return "sq2_" + std::to_string(l) + " depends on the representative";
    }
    return {};
}

template <class F>
std::string each_cycle(const Instance& in, F&& f) {
    auto m = facewise_matching(*in.c, in.slot->i, in.slot->j, in.mu);
    for (const auto& g : build_gammas(*in.c, m, GammaMode::Facewise))
        for (const auto& cyc : cycles(g)) {
            std::string err = f(facet_cycle(g, cyc));
            if (!err.empty()) return err + " at z=" + std::to_string(g.z_index);
        }
    return {};
}

std::string check_orientation(const Instance& in) {
    return each_cycle(in, [](const FacetCycle& z) -> std::string {
        FacetCycle r = reversed(z);
        for (int l = 0; l < 4; ++l)
            if (Q_k(z, l) != Q_k(r, l)) return "Q_" + std::to_string(l) + " depends on the traversal direction";
        return {};
    });
}

std::string check_mod4(const Instance& in) {
    std::string err = each_cycle(in, [](const FacetCycle& z) -> std::string {
        for (int l = 0; l < 4; ++l)
            if (Q_k(z, l) != Q_k(z, l + 4)) return "Q_" + std::to_string(l) + " differs from Q_" + std::to_string(l + 4);
        return {};
    });
    if (!err.empty()) return err;
    auto m = facewise_matching(*in.c, in.slot->i, in.slot->j, in.mu);
    for (int l = 0; l < 4; ++l)
        if (!(sq2(*in.c, in.mu, m, l) == sq2(*in.c, in.mu, m, l + 4)))
            return "sq2_" + std::to_string(l) + " differs from sq2_" + std::to_string(l + 4);
    return {};
}

std::string check_sum4(const Instance& in) {
    auto m = facewise_matching(*in.c, in.slot->i, in.slot->j, in.mu);
    BitVec sum(in.c->dim(in.slot->i + 2, in.slot->j));
    for (int l = 0; l < 4; ++l) sum ^= sq2(*in.c, in.mu, m, l);
    if (!in.slot->h2.is_coboundary(sum)) return "sum of sq2_0..sq2_3 is not a coboundary";
    return {};
}

std::string check_oracle(const Instance& in) {
    const auto& c = *in.c;
    const Slot& s = *in.slot;
    auto m = facewise_matching(c, s.i, s.j, in.mu);
    BitVec a1 = sq2(c, in.mu, m, 1), a3 = sq2(c, in.mu, m, 3);
    BitVec b1 = sq2_schutz(c, in.mu, m, 1), b0 = sq2_schutz(c, in.mu, m, 0);
    BitVec d1 = a1;
    d1 ^= b1;
    if (!s.h2.is_coboundary(d1)) return "sq2_1 - schutz(eps=1) is not a coboundary";
    BitVec d3 = a3;
    d3 ^= b0;
    if (!s.h2.is_coboundary(d3)) return "sq2_3 - schutz(eps=0) is not a coboundary";
    BitVec cert = L_map(c, s.i, s.j, in.mu);
    cert ^= s.cc.diff(s.i + 1).apply(xi_cochain(c, m));
    if (!(cert == d1)) return "certificate L(mu) + d(xi) differs from sq2_1 - schutz(eps=1)";
    return {};
}

const std::map<std::string, Check>& cocycle_checks() {
    static const std::map<std::string, Check> checks = {
        {"cocycle", check_cocycle},   {"matching", check_matching}, {"representative", check_representative},
        {"orientation", check_orientation}, {"mod4", check_mod4},   {"sum4", check_sum4},
        {"oracle", check_oracle},
    };
    return checks;
}

std::string guarded(const std::function<std::string()>& f) {
    try {
        return f();
    } catch (const Error& e) {
        return e.what();
    }
}

std::string support_str(const BitVec& v) {
    std::string s = "{";
    bool first = true;
    for (auto k : v.support()) {
        s += (first ? "" : ",") + std::to_string(k);
        first = false;
    }
    return s + "}";
}

// Diagram-level suites; returns the number of checks or sets err.
long run_d2(const KhComplex& c, std::string& err) {
    long n = 0;
    for (int j : c.q_gradings())
        for (Parity p : {Parity::Even, Parity::Odd})
            for (Ring r : {Ring::Z, Ring::F2}) {
                err = guarded([&] {
                    check_complex(c.cochain_complex(j, p, r));
                    return std::string();
                });
                if (!err.empty()) {
                    err += " at j=" + std::to_string(j) + (p == Parity::Odd ? " odd" : " even") +
                           (r == Ring::Z ? " over Z" : " over F2");
                    return n;
                }
                ++n;
            }
    return n;
}

long run_sign(const KhComplex& c, std::string& err) {
    long n = 0;
    for (int j : c.q_gradings())
        for (int i = c.i_min(); i + 2 <= c.i_max(); ++i) {
            if (!c.dim(i, j) || !c.dim(i + 2, j)) continue;
            err = guarded([&] {
                n += static_cast<long>(check_interval_matching(c, i, j).intervals);
                return std::string();
            });
            if (!err.empty()) {
                err += " at (" + std::to_string(i) + ", " + std::to_string(j) + ")";
                return n;
            }
        }
    return n;
}

long run_sq1sq1(const KhComplex& c, std::string& err) {
    long n = 0;
    for (int j : c.q_gradings())
        for (Parity p : {Parity::Even, Parity::Odd}) {
            err = guarded([&] {
                CohomologyOps ops(c, j, p);
                for (int i = c.i_min(); i + 2 <= c.i_max(); ++i) {
                    std::size_t h2 = ops.cohomology(i + 2).dim();
                    auto a = ops.sq1(i);
                    auto b = ops.sq1(i + 1);
                    for (const auto& v : a) {
                        BitVec comp(h2);
                        for (auto k : v.support()) comp ^= b[k];
                        if (comp.any())
                            return "Sq1 Sq1 nonzero at (" + std::to_string(i) + ", " + std::to_string(j) + ")" +
                                   (p == Parity::Odd ? " odd" : " even");
                        ++n;
                    }
                }
                return std::string();
            });
            if (!err.empty()) return n;
        }
    return n;
}

} // namespace

const std::vector<std::string>& diagram_suites() {
    static const std::vector<std::string> s = {"d2", "sign", "sq1sq1"};
    return s;
}

const std::vector<std::string>& cocycle_suites() {
    static const std::vector<std::string> s = {"cocycle", "matching", "representative", "orientation",
                                               "mod4",    "sum4",     "oracle"};
    return s;
}

std::vector<std::string> all_suites() {
    std::vector<std::string> s = diagram_suites();
    s.insert(s.end(), cocycle_suites().begin(), cocycle_suites().end());
    return s;
}

bool PropReport::ok() const {
    return std::none_of(suites.begin(), suites.end(), [](const SuiteResult& r) { return r.failed; });
}

std::string PropReport::str() const {
    std::ostringstream os;
    for (const auto& r : suites) {
        os << r.suite << ": " << r.checks << " checks " << (r.failed ? "FAIL" : "ok") << "\n";
        if (r.failed) os << "  reproducer: " << r.reproducer << "\n";
    }
    os << "cocycles: " << cocycles << " over " << diagrams << " diagrams\n";
    return os.str();
}

PropReport run_suites(const std::vector<CorpusItem>& corpus, const PropOptions& opt) {
    std::vector<std::string> wanted = opt.suites.empty() ? all_suites() : opt.suites;
    auto known = all_suites();
    for (const auto& s : wanted)
        if (std::find(known.begin(), known.end(), s) == known.end())
            throw Error(ErrorKind::BadArgument, "cli", "unknown suite '" + s + "'");
    auto is_wanted = [&](const std::string& s) { return std::find(wanted.begin(), wanted.end(), s) != wanted.end(); };

    PropReport rep;
    std::map<std::string, std::size_t> pos;
    for (const auto& s : known)
        if (is_wanted(s)) {
            pos[s] = rep.suites.size();
            rep.suites.push_back({s, 0, false, {}});
        }
    bool need_cocycles = std::any_of(cocycle_suites().begin(), cocycle_suites().end(), is_wanted);

    std::mt19937_64 rng(opt.seed);
    for (const auto& item : corpus) {
        KhComplex c(item.diagram);
        std::string where = item.name + " " + render_pd(item.diagram);

        using DiagramRun = long (*)(const KhComplex&, std::string&);
        const std::pair<const char*, DiagramRun> diag[] = {{"d2", run_d2}, {"sign", run_sign}, {"sq1sq1", run_sq1sq1}};
        for (auto [name, fn] : diag) {
            if (!is_wanted(name)) continue;
            auto& r = rep.suites[pos[name]];
            std::string err;
            r.checks += fn(c, err);
            if (!err.empty()) {
                r.failed = true;
                r.reproducer = "diagram " + where + "; " + err;
                return rep;
            }
        }
        if (!need_cocycles) continue;

        std::vector<std::pair<int, int>> slots;
        for (int j : c.q_gradings())
            for (int i = c.i_min(); i + 2 <= c.i_max(); ++i)
                if (c.dim(i, j) && c.dim(i + 2, j)) slots.push_back({i, j});
        std::map<std::pair<int, int>, Slot> built;
        auto slot_at = [&](std::pair<int, int> ij) -> const Slot& {
            auto it = built.find(ij);
            if (it != built.end()) return it->second;
            Slot s;
            s.i = ij.first;
            s.j = ij.second;
            s.cc = c.cochain_complex(s.j, Parity::Even, Ring::F2);
            s.h = F2Cohomology(s.cc.diff(s.i - 1), s.cc.diff(s.i));
            s.h2 = F2Cohomology(s.cc.diff(s.i + 1), s.cc.diff(s.i + 2));
            return built.emplace(ij, std::move(s)).first->second;
        };

        int drawn = 0;
        for (int attempt = 0; drawn < opt.cocycles_per_diagram && attempt < 8 * opt.cocycles_per_diagram && !slots.empty();
             ++attempt) {
            const Slot& s = slot_at(slots[rng() % slots.size()]);
            if (s.h.dim() == 0) continue;
            BitVec core(c.dim(s.i, s.j));
            std::vector<BitVec> used;
            for (const auto& r : s.h.reps())
                if (rng() & 1) {
                    core ^= r;
                    used.push_back(r);
                }
            if (used.empty()) {
                core ^= s.h.reps()[rng() % s.h.dim()];
                used.push_back(core);
            }
            GradedMatrix din = s.cc.diff(s.i - 1);
            BitVec mu = core;
            mu ^= din.apply(random_vec(din.cols, rng));
            std::uint64_t seed = rng();
            ++drawn;
            ++rep.cocycles;

            for (const auto& name : cocycle_suites()) {
                if (!is_wanted(name)) continue;
                const Check& check = cocycle_checks().at(name);
                auto& r = rep.suites[pos[name]];
                Instance in{&c, &s, mu, seed};
                std::string err = guarded([&] { return check(in); });
                ++r.checks;
                if (err.empty()) continue;
                // shrink: a single representative or the cocycle without its coboundary part
                std::vector<BitVec> candidates = used;
                candidates.push_back(core);
                for (const auto& cand : candidates) {
                    if (cand.count() >= in.mu.count()) continue;
                    Instance small{&c, &s, cand, seed};
                    std::string e2 = guarded([&] { return check(small); });
                    if (!e2.empty()) {
                        in = small;
                        err = e2;
                    }
                }
                r.failed = true;
                r.reproducer = "diagram " + where + "; bidegree " + bidegree(s) + "; cocycle " + support_str(in.mu) +
                               "; matching seed " + std::to_string(seed) + "; " + err;
                return rep;
            }
        }
        if (drawn > 0) ++rep.diagrams;
    }
    return rep;
}

} // namespace khsq::app
