#include "khsq_app/commands.hpp"

#include "khsq/classify.hpp"
#include "khsq/complex.hpp"
#include "khsq/error.hpp"
#include "khsq_app/cache.hpp"
#include "khsq_app/proptest.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace khsq::app {

namespace {

using json = nlohmann::json;

Error bad(const std::string& what) { return Error(ErrorKind::BadArgument, "cli", what); }

std::vector<Parity> parities(const JobSpec& job) {
    if (job.parity == "even") return {Parity::Even};
    if (job.parity == "odd") return {Parity::Odd};
    return {Parity::Even, Parity::Odd};
}

std::vector<Ring> rings(const JobSpec& job) {
    if (job.ring == "z") return {Ring::Z};
    if (job.ring == "f2") return {Ring::F2};
    return {Ring::Z, Ring::F2};
}

const char* parity_name(Parity p) { return p == Parity::Even ? "even" : "odd"; }
const char* ring_name(Ring r) { return r == Ring::Z ? "Z" : "F2"; }

std::vector<HomologyGroup> nontrivial(std::vector<HomologyGroup> g) {
    g.erase(std::remove_if(g.begin(), g.end(), [](const HomologyGroup& h) { return h.trivial(); }), g.end());
    std::sort(g.begin(), g.end(), [](const HomologyGroup& a, const HomologyGroup& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    return g;
}

std::vector<HomologyGroup> cached_homology(const ResultCache& cache, const KhComplex& c, Parity p, Ring r) {
    std::string key = ResultCache::key("kh", c.cube().diagram(), std::string(parity_name(p)) + "/" + ring_name(r));
    if (auto hit = cache.load_homology(key)) return *hit;
    auto g = nontrivial(khovanov_homology(c, p, r));
    cache.store_homology(key, g);
    return g;
}

std::string torsion_str(const HomologyGroup& g, char sep) {
    std::string s;
    for (std::size_t k = 0; k < g.torsion.size(); ++k) s += (k ? std::string(1, sep) : "") + std::to_string(g.torsion[k]);
    return s;
}

struct StResult {
    std::string label;
    int l = 0;
    std::vector<StEntry> entries;
    HypothesisReport hyp;
};

} // namespace

void validate(const JobSpec& job) {
    for (int l : job.ls)
        if (l < 0) throw bad("l must be non-negative");
    if (job.format != "text" && job.format != "json" && job.format != "csv") throw bad("format must be text, json or csv");
    if (job.parity != "even" && job.parity != "odd" && job.parity != "both") throw bad("parity must be even, odd or both");
    if (job.ring != "z" && job.ring != "f2" && job.ring != "both") throw bad("ring must be z, f2 or both");
    if (job.jobs < 1) throw bad("jobs must be positive");
    if (job.diagrams < 1 || job.cocycles < 1) throw bad("corpus sizes must be positive");
    if (job.max_crossings < 3) throw bad("max crossings must be at least 3");
}

std::vector<Source> sources(const JobSpec& job) {
    std::vector<Source> out;
    for (const auto& pd : job.pds) out.push_back({pd, parse_pd(pd)});
    std::vector<std::string> names = job.names;
    if (job.all) {
        if (job.verify_table.empty()) throw bad("--all needs --verify-table");
        for (const auto& [name, rows] : read_st_reference(job.verify_table)) names.push_back(name);
    }
    for (const auto& n : names) out.push_back({n, load_named(job.table, n)});
    if (out.empty()) throw Error(ErrorKind::EmptyInput, "cli", "give --pd or --name");
    return out;
}

StReference read_st_reference(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IOFailure, "cli", "cannot open " + path);
    StReference ref;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        StEntry e;
        std::string name;
        int l = 0;
        if (!(ls >> name >> l >> e.i >> e.j >> e.x[0] >> e.x[1] >> e.x[2] >> e.x[3]))
            throw Error(ErrorKind::MalformedToken, "cli", path + ":" + std::to_string(lineno) + ": bad St row");
        ref[name][l].push_back(e.str());
    }
    for (auto& [name, by_l] : ref)
        for (auto& [l, rows] : by_l) std::sort(rows.begin(), rows.end());
    return ref;
}

int cmd_homology(const JobSpec& job, std::ostream& out) {
    validate(job);
    ResultCache cache(job.cache_dir);
    struct Task {
        std::size_t src;
        Parity p;
        Ring r;
        std::vector<HomologyGroup> groups;
    };
    auto srcs = sources(job);
    std::vector<KhComplex> cs;
    for (const auto& s : srcs) cs.emplace_back(s.diagram);
    std::vector<Task> tasks;
    for (std::size_t k = 0; k < srcs.size(); ++k)
        for (Parity p : parities(job))
            for (Ring r : rings(job)) tasks.push_back({k, p, r, {}});
    parallel_for(tasks.size(), job.jobs, [&](std::size_t k) {
        auto& t = tasks[k];
        t.groups = cached_homology(cache, cs[t.src], t.p, t.r);
    });

    if (job.format == "json") {
        json arr = json::array();
        for (const auto& t : tasks) {
            json groups = json::array();
            for (const auto& g : t.groups) groups.push_back({{"i", g.i}, {"j", g.j}, {"rank", g.rank}, {"torsion", g.torsion}});
            arr.push_back({{"knot", srcs[t.src].label}, {"parity", parity_name(t.p)}, {"ring", ring_name(t.r)}, {"groups", groups}});
        }
        out << arr.dump(2) << "\n";
    } else if (job.format == "csv") {
        out << "knot,parity,ring,i,j,rank,torsion\n";
        for (const auto& t : tasks)
            for (const auto& g : t.groups)
                out << '"' << srcs[t.src].label << "\"," << parity_name(t.p) << "," << ring_name(t.r) << "," << g.i << ","
                    << g.j << "," << g.rank << "," << torsion_str(g, ';') << "\n";
    } else {
        for (const auto& t : tasks) {
            out << srcs[t.src].label << " parity=" << parity_name(t.p) << " ring=" << ring_name(t.r) << "\n";
            for (const auto& g : t.groups)
                out << "  (" << g.i << ", " << g.j << ") "
                    << (t.r == Ring::Z ? g.str() : "F2" + (g.rank > 1 ? "^" + std::to_string(g.rank) : std::string()))
                    << "\n";
        }
    }
    return 0;
}

int cmd_st(const JobSpec& job, std::ostream& out) {
    validate(job);
    ResultCache cache(job.cache_dir);
    auto srcs = sources(job);
    std::vector<int> ls = job.ls.empty() ? std::vector<int>{0, 1, 2, 3} : job.ls;
    std::vector<StResult> results;

    for (const auto& s : srcs) {
        KhComplex c(s.diagram);
        std::vector<std::vector<StEntry>> per_l(ls.size());
        std::vector<bool> hit(ls.size(), false);
        std::vector<std::string> keys(ls.size());
        for (std::size_t a = 0; a < ls.size(); ++a) {
            keys[a] = ResultCache::key("st", s.diagram, "l=" + std::to_string(ls[a]));
            if (auto e = cache.load_st(keys[a])) {
                per_l[a] = *e;
                hit[a] = true;
            }
        }
        // one task per (l, j) still missing
        std::vector<std::pair<std::size_t, int>> tasks;
        auto qs = c.q_gradings();
        for (std::size_t a = 0; a < ls.size(); ++a)
            if (!hit[a])
                for (int j : qs) tasks.push_back({a, j});
        std::vector<std::vector<StEntry>> parts(tasks.size());
        parallel_for(tasks.size(), job.jobs, [&](std::size_t k) { parts[k] = st_grading(c, ls[tasks[k].first], tasks[k].second); });
        for (std::size_t k = 0; k < tasks.size(); ++k) {
            auto& dst = per_l[tasks[k].first];
            dst.insert(dst.end(), parts[k].begin(), parts[k].end());
        }
        for (std::size_t a = 0; a < ls.size(); ++a) {
            if (!hit[a]) {
                sort_entries(per_l[a]);
                cache.store_st(keys[a], per_l[a]);
            }
            StResult r{s.label, ls[a], per_l[a], {}};
            r.hyp = check_hypotheses(cached_homology(cache, c, parity_of_l(ls[a]), Ring::Z));
            results.push_back(std::move(r));
        }
    }

    if (job.format == "json") {
        json arr = json::array();
        for (const auto& r : results) {
            json entries = json::array();
            for (const auto& e : r.entries) entries.push_back({{"i", e.i}, {"j", e.j}, {"tuple", e.x}});
            arr.push_back({{"knot", r.label},
                           {"l", r.l},
                           {"entries", entries},
                           {"hypotheses", {{"ok", r.hyp.ok()}, {"report", r.hyp.str()}}}});
        }
        out << arr.dump(2) << "\n";
    } else if (job.format == "csv") {
        out << "knot,l,i,j,x1,x2,x3,x4,hypotheses\n";
        for (const auto& r : results)
            for (const auto& e : r.entries)
                out << '"' << r.label << "\"," << r.l << "," << e.i << "," << e.j << "," << e.x[0] << "," << e.x[1] << ","
                    << e.x[2] << "," << e.x[3] << "," << (r.hyp.ok() ? "pass" : "fail") << "\n";
    } else {
        for (const auto& r : results) {
            out << r.label << " St_" << r.l << ":";
            if (r.entries.empty()) out << " empty";
            out << "\n";
            for (const auto& e : r.entries) out << "  " << e.str() << "\n";
            if (!r.hyp.ok()) out << "  hypotheses fail: " << r.hyp.str() << "\n";
        }
    }

    if (job.verify_table.empty()) return 0;
    StReference ref = read_st_reference(job.verify_table);
    int mismatches = 0;
    std::ostringstream log;
    for (const auto& r : results) {
        auto it = ref.find(r.label);
        if (it == ref.end()) {
            log << "verify " << r.label << " St_" << r.l << ": not in table\n";
            continue;
        }
        if (r.l != 1 && r.l != 2 && r.l != 3) {
            log << "verify " << r.label << " St_" << r.l << ": not tabulated\n";
            continue;
        }
        // St_2 is expected to vanish on every tabulated knot
        std::vector<std::string> want;
        if (auto f = it->second.find(r.l); f != it->second.end()) want = f->second;
        std::vector<std::string> got;
        for (const auto& e : r.entries) got.push_back(e.str());
        std::sort(got.begin(), got.end());
        if (got == want) {
            log << "verify " << r.label << " St_" << r.l << ": ok\n";
            continue;
        }
        ++mismatches;
        log << "verify " << r.label << " St_" << r.l << ": MISMATCH\n";
        for (const auto& w : want)
            if (!std::binary_search(got.begin(), got.end(), w)) log << "  - " << w << "\n";
        for (const auto& g : got)
            if (!std::binary_search(want.begin(), want.end(), g)) log << "  + " << g << "\n";
    }
    log << "verify: " << (mismatches ? std::to_string(mismatches) + " mismatches" : std::string("all rows match")) << "\n";
    (job.format == "text" ? out : std::cerr) << log.str();
    return mismatches ? 1 : 0;
}

int cmd_wedge(const JobSpec& job, std::ostream& out) {
    validate(job);
    ResultCache cache(job.cache_dir);
    std::vector<int> ls = job.ls.empty() ? std::vector<int>{0, 1, 2, 3} : job.ls;
    for (const auto& s : sources(job)) {
        KhComplex c(s.diagram);
        for (int l : ls) {
            auto kh = cached_homology(cache, c, parity_of_l(l), Ring::Z);
            StTable t = st(c, l);
            out << s.label << " l=" << l << "\n";
            auto rep = check_hypotheses(kh);
            if (!rep.ok()) {
                out << "  hypotheses fail: " << rep.str() << "; the Chang-complex refinement is not implemented\n";
                continue;
            }
            std::set<int> js;
            for (const auto& g : kh) js.insert(g.j);
            for (int j : js) out << "  " << wedge(kh, t, l, j).str() << "\n";
        }
    }
    return 0;
}

int cmd_proptest(const JobSpec& job, std::ostream& out) {
    validate(job);
    std::vector<CorpusItem> corpus;
    if (job.pds.empty() && job.names.empty()) corpus = random_corpus(job.seed, job.diagrams, job.max_crossings);
    else
        for (auto& s : sources(job)) corpus.push_back({s.label, s.diagram});
    PropOptions opt;
    opt.seed = job.seed;
    opt.suites = job.suites;
    opt.cocycles_per_diagram = job.cocycles;
    PropReport rep = run_suites(corpus, opt);
    if (job.format == "json") {
        json arr = json::array();
        for (const auto& r : rep.suites)
            arr.push_back({{"suite", r.suite}, {"checks", r.checks}, {"ok", !r.failed}, {"reproducer", r.reproducer}});
        out << json{{"seed", job.seed}, {"cocycles", rep.cocycles}, {"diagrams", rep.diagrams}, {"suites", arr}}.dump(2)
            << "\n";
    } else {
        out << "seed " << job.seed << ", " << corpus.size() << " diagrams\n" << rep.str();
    }
    return rep.ok() ? 0 : 1;
}

} // namespace khsq::app
