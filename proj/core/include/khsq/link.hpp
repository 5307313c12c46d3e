#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace khsq {

// A planar diagram. Each crossing lists its four strand labels counterclockwise,
// starting from the incoming under-strand.
class LinkDiagram {
public:
    LinkDiagram() = default;
    LinkDiagram(std::vector<std::array<int, 4>> crossings, int free_loops);

    const std::vector<std::array<int, 4>>& crossings() const { return crossings_; }
    int n_crossings() const { return static_cast<int>(crossings_.size()); }
    int n_free_loops() const { return free_loops_; }

    // +1 or -1 per crossing.
    const std::vector<int>& signs() const { return signs_; }
    int n_plus() const { return n_plus_; }
    int n_minus() const { return n_minus_; }

    // Strand labels per component, in orientation order. Free loops appear as empty lists.
    const std::vector<std::vector<int>>& components() const { return components_; }
    int n_components() const { return static_cast<int>(components_.size()); }

    // Sorted distinct strand labels.
    const std::vector<int>& labels() const { return labels_; }
    int max_label() const { return labels_.empty() ? 0 : labels_.back(); }

    bool operator==(const LinkDiagram& o) const {
        return crossings_ == o.crossings_ && free_loops_ == o.free_loops_;
    }

private:
    void derive();

    std::vector<std::array<int, 4>> crossings_;
    int free_loops_ = 0;
    std::vector<int> signs_;
    int n_plus_ = 0;
    int n_minus_ = 0;
    std::vector<std::vector<int>> components_;
    std::vector<int> labels_;
};

LinkDiagram parse_pd(std::string_view text);
std::string render_pd(const LinkDiagram& d);

// Swaps over and under at every crossing.
LinkDiagram mirror(const LinkDiagram& d);

// Split union; the second diagram's strands are relabeled above the first's.
LinkDiagram disjoint_union(const LinkDiagram& a, const LinkDiagram& b);

struct NamedEntry {
    std::string name;
    std::string pd;
};

std::vector<NamedEntry> read_table(const std::string& table_path);

// Accepts "m(NAME)" for mirrors and "A + B" for split unions.
LinkDiagram load_named(const std::string& table_path, const std::string& name);

// Stable content hash of the rendered diagram.
std::string diagram_hash(const LinkDiagram& d);

} // namespace khsq
