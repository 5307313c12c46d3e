#include "khsq/link.hpp"

#include "khsq/error.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace khsq {

namespace {

Error link_error(ErrorKind k, const std::string& what) { return Error(k, "link-io", what); }

struct Scanner {
    std::string_view s;
    size_t pos = 0;

    void skip_separators() {
        while (pos < s.size() && (std::isspace(static_cast<unsigned char>(s[pos])) || s[pos] == ','))
            ++pos;
    }
    void skip_space() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_space();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    long read_int() {
        skip_space();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
            throw link_error(ErrorKind::MalformedToken, "expected integer at offset " + std::to_string(start));
        return std::stol(std::string(s.substr(start, pos - start)));
    }
};

} // namespace

LinkDiagram::LinkDiagram(std::vector<std::array<int, 4>> crossings, int free_loops)
    : crossings_(std::move(crossings)), free_loops_(free_loops) {
    derive();
}

void LinkDiagram::derive() {
    if (free_loops_ < 0) throw link_error(ErrorKind::BadArgument, "negative free loop count");
    if (crossings_.empty() && free_loops_ == 0) throw link_error(ErrorKind::EmptyInput, "no crossings and no free loops");

    // slot = 4 * crossing + position
    std::map<int, std::vector<int>> slots;
    for (size_t k = 0; k < crossings_.size(); ++k) {
        for (int p = 0; p < 4; ++p) {
            int l = crossings_[k][p];
            if (l <= 0) throw link_error(ErrorKind::MalformedToken, "strand labels must be positive");
            slots[l].push_back(static_cast<int>(4 * k + p));
        }
    }
    labels_.clear();
    for (auto& [l, v] : slots) {
        if (v.size() != 2)
            throw link_error(ErrorKind::DanglingStrand,
                             "label " + std::to_string(l) + " appears " + std::to_string(v.size()) + " times");
        labels_.push_back(l);
    }

    auto label_at = [&](int slot) { return crossings_[slot / 4][slot % 4]; };
    auto other_slot = [&](int l, int slot) {
        const auto& v = slots[l];
        return v[0] == slot ? v[1] : v[0];
    };

    const int n = n_crossings();
    // over_forward[k]: +1 if the over strand runs d->b, -1 if b->d, 0 unknown
    std::vector<int> over_dir(n, 0);
    std::map<int, bool> seen;
    components_.clear();

    for (int start : labels_) {
        if (seen[start]) continue;
        // Walk the component: leave `start` through its first slot.
        std::vector<int> seq;       // labels in walk order
        std::vector<int> steps;     // for each step, (from slot) -> partner slot
        int l = start;
        int from = slots[l][0];
        while (true) {
            seq.push_back(l);
            seen[l] = true;
            int partner = (from / 4) * 4 + ((from % 4) ^ 2);
            steps.push_back(from);
            int nl = label_at(partner);
            int nfrom = other_slot(nl, partner);
            l = nl;
            from = nfrom;
            if (l == start && from == slots[start][0]) break;
            if (seq.size() > 4 * crossings_.size() + 2)
                throw link_error(ErrorKind::MalformedToken, "strand walk does not close");
        }
        // Determine walk direction: stepping from position 0 to 2 is forward.
        int dir = 0;
        for (int st : steps) {
            int p = st % 4;
            if (p == 0) { dir = dir == -1 ? 2 : 1; }
            else if (p == 2) { dir = dir == 1 ? 2 : -1; }
            if (dir == 2) throw link_error(ErrorKind::MalformedToken, "inconsistent under-strand orientation");
        }
        if (dir == 0) {
            // Over-only component: consecutive labels increase along the orientation.
            int st = steps[0];
            int k = st / 4;
            int b = crossings_[k][1], d = crossings_[k][3];
            bool d_to_b = (b == d + 1) || (d > b + 1);
            bool walking_d_to_b = (st % 4) == 3;
            dir = (d_to_b == walking_d_to_b) ? 1 : -1;
        }
        for (int st : steps) {
            int p = st % 4;
            int k = st / 4;
            if (p == 3 || p == 1) {
                bool walking_d_to_b = (p == 3);
                int d = (walking_d_to_b == (dir == 1)) ? 1 : -1;
                if (over_dir[k] != 0 && over_dir[k] != d)
                    throw link_error(ErrorKind::MalformedToken, "inconsistent over-strand orientation");
                over_dir[k] = d;
            }
        }
        if (dir == -1) std::reverse(seq.begin(), seq.end());
        components_.push_back(seq);
    }
    for (int f = 0; f < free_loops_; ++f) components_.push_back({});

    signs_.assign(n, 0);
    n_plus_ = n_minus_ = 0;
    for (int k = 0; k < n; ++k) {
        signs_[k] = over_dir[k];
        if (over_dir[k] == 1) ++n_plus_;
        else ++n_minus_;
    }
}

LinkDiagram parse_pd(std::string_view text) {
    Scanner sc{text};
    sc.skip_space();
    bool wrapped = false;
    if (sc.s.substr(sc.pos, 3) == "PD[") {
        sc.pos += 3;
        wrapped = true;
    }
    std::vector<std::array<int, 4>> xs;
    int loops = 0;
    while (true) {
        sc.skip_separators();
        if (sc.pos >= sc.s.size()) break;
        char c = sc.s[sc.pos];
        if (wrapped && c == ']') {
            ++sc.pos;
            wrapped = false;
            continue;
        }
        if (c == 'X') {
            ++sc.pos;
            if (!sc.eat('[')) throw Error(ErrorKind::MalformedToken, "link-io", "expected '[' after X");
            std::vector<long> v;
            if (!sc.eat(']')) {
                while (true) {
                    v.push_back(sc.read_int());
                    if (sc.eat(',')) continue;
                    if (sc.eat(']')) break;
                    throw Error(ErrorKind::MalformedToken, "link-io", "unterminated crossing");
                }
            }
            if (v.size() != 4)
                throw Error(ErrorKind::MalformedToken, "link-io",
                            "crossing with " + std::to_string(v.size()) + " entries");
            xs.push_back({static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2]),
                          static_cast<int>(v[3])});
        } else if (c == 'U') {
            ++sc.pos;
            if (!sc.eat('^')) throw Error(ErrorKind::MalformedToken, "link-io", "expected '^' after U");
            long k = sc.read_int();
            if (k < 0) throw Error(ErrorKind::MalformedToken, "link-io", "negative loop count");
            loops += static_cast<int>(k);
        } else {
            throw Error(ErrorKind::MalformedToken, "link-io",
                        std::string("unexpected character '") + c + "' at offset " + std::to_string(sc.pos));
        }
    }
    if (wrapped) throw Error(ErrorKind::MalformedToken, "link-io", "missing closing ']'");
    return LinkDiagram(std::move(xs), loops);
}

std::string render_pd(const LinkDiagram& d) {
    std::ostringstream os;
    bool first = true;
    for (const auto& x : d.crossings()) {
        if (!first) os << ',';
        first = false;
        os << "X[" << x[0] << ',' << x[1] << ',' << x[2] << ',' << x[3] << ']';
    }
    if (d.n_free_loops() > 0) {
        if (!first) os << ',';
        os << "U^" << d.n_free_loops();
    }
    return os.str();
}

LinkDiagram mirror(const LinkDiagram& d) {
    std::vector<std::array<int, 4>> xs;
    xs.reserve(d.crossings().size());
    for (std::size_t k = 0; k < d.crossings().size(); ++k) {
        const auto& x = d.crossings()[k];
        // the old over-strand becomes the under-strand, entered from its tail
        if (d.signs()[k] > 0) xs.push_back({x[3], x[0], x[1], x[2]});
        else xs.push_back({x[1], x[2], x[3], x[0]});
    }
    return LinkDiagram(std::move(xs), d.n_free_loops());
}

LinkDiagram disjoint_union(const LinkDiagram& a, const LinkDiagram& b) {
    std::vector<std::array<int, 4>> xs = a.crossings();
    int shift = a.max_label();
    for (const auto& x : b.crossings()) xs.push_back({x[0] + shift, x[1] + shift, x[2] + shift, x[3] + shift});
    return LinkDiagram(std::move(xs), a.n_free_loops() + b.n_free_loops());
}

std::vector<NamedEntry> read_table(const std::string& table_path) {
    std::ifstream in(table_path);
    if (!in) throw Error(ErrorKind::IOFailure, "link-io", "cannot open " + table_path);
    std::vector<NamedEntry> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) continue;
        out.push_back({line.substr(0, tab), line.substr(tab + 1)});
    }
    return out;
}

namespace {

std::string trim(std::string s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return {};
    return s.substr(b, e - b + 1);
}

LinkDiagram resolve_name(const std::vector<NamedEntry>& table, const std::string& raw) {
    std::string name = trim(raw);
    // split unions bind loosest
    int depth = 0;
    for (size_t i = 0; i < name.size(); ++i) {
        if (name[i] == '(') ++depth;
        else if (name[i] == ')') --depth;
        else if (name[i] == '+' && depth == 0)
            return disjoint_union(resolve_name(table, name.substr(0, i)), resolve_name(table, name.substr(i + 1)));
    }
    if (name.size() > 3 && name.rfind("m(", 0) == 0 && name.back() == ')')
        return mirror(resolve_name(table, name.substr(2, name.size() - 3)));
    for (const auto& e : table)
        if (e.name == name) return parse_pd(e.pd);
    throw Error(ErrorKind::UnknownName, "link-io", "no entry named '" + name + "'");
}

} // namespace

LinkDiagram load_named(const std::string& table_path, const std::string& name) {
    return resolve_name(read_table(table_path), name);
}

std::string diagram_hash(const LinkDiagram& d) {
    std::string s = render_pd(d);
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace khsq
