#pragma once

// Weighted rooted trees with non-negative integer vertex weights, bracket
// text parsing/printing, structural classification (terminally weighted,
// stable, semistable, trunk/branch data, simplicity) and AHU-style canonical
// forms.  Everything downstream (operations, enumeration, local equations)
// is built on the types in this header.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "wtree/errors.hpp"

namespace wtree {

// A rooted tree with a non-negative integer weight per vertex.  Vertex ids
// are arbitrary non-negative ints and stay stable under the operations in
// ops.hpp (removed vertices simply disappear from the map); that stability is
// what lets blowup charts match polynomial variables across trees.  Labels
// are display names with no semantic content, but are kept unique per tree
// so that bracket text and variable names are unambiguous.
struct WeightedTree {
    struct Vertex {
        int parent = -1;      // -1 for the root
        long long weight = 0; // >= 0
        std::string label;
    };

    int root = -1;
    std::map<int, Vertex> verts;

    bool contains(int v) const { return verts.count(v) != 0; }
    const Vertex& at(int v) const {
        auto it = verts.find(v);
        if (it == verts.end())
            throw DomainError("unknown vertex id " + std::to_string(v));
        return it->second;
    }
    std::size_t size() const { return verts.size(); }

    long long total_weight() const {
        long long s = 0;
        for (const auto& [id, vx] : verts) s += vx.weight;
        return s;
    }

    // Children lists in ascending id order (deterministic but arbitrary;
    // display order is decided by the canonical encoding, not by this map).
    std::map<int, std::vector<int>> children_map() const {
        std::map<int, std::vector<int>> ch;
        for (const auto& [id, vx] : verts) ch[id]; // ensure every vertex has an entry
        for (const auto& [id, vx] : verts)
            if (id != root) ch[vx.parent].push_back(id);
        return ch;
    }

    // Vertex lookup by label.  Labels are unique per tree (enforced by parse
    // and preserved by every operation), so this is well defined.
    std::optional<int> find_label(std::string_view lbl) const {
        for (const auto& [id, vx] : verts)
            if (vx.label == lbl) return id;
        return std::nullopt;
    }

    // Structural sanity: weights non-negative, unique labels, parents present,
    // every vertex reaches the root (single component, no cycles).
    void validate() const {
        if (verts.empty() || !contains(root))
            throw DomainError("tree has no valid root");
        if (at(root).parent != -1)
            throw DomainError("root must not have a parent");
        std::set<std::string> seen;
        for (const auto& [id, vx] : verts) {
            if (vx.weight < 0)
                throw DomainError("negative weight on vertex " + vx.label);
            if (!seen.insert(vx.label).second)
                throw DomainError("duplicate label '" + vx.label + "'");
            if (id != root && !contains(vx.parent))
                throw DomainError("dangling parent for vertex " + vx.label);
        }
        for (const auto& [id, vx] : verts) {
            int cur = id;
            std::size_t steps = 0;
            while (cur != root) {
                cur = at(cur).parent;
                if (++steps > verts.size())
                    throw DomainError("parent chain does not reach the root");
            }
        }
    }
};

// ---------------------------------------------------------------------------
// Canonical encoding.
//
// enc(v) = (weight(v), sorted encodings of children).  The sibling order is
// heavier-weight first, then childwise-lexicographic, fewer children first.
// Two trees are isomorphic (as weighted rooted trees, labels ignored) iff
// their root encodings compare equal; this is the usual AHU argument, with
// the comparison order chosen so that printed trees read weight-first, e.g.
// o[a(2),b[c(1),d(1)]].
// ---------------------------------------------------------------------------

struct CanonEnc {
    long long weight = 0;
    std::vector<CanonEnc> kids; // sorted by enc_cmp
};

inline int enc_cmp(const CanonEnc& x, const CanonEnc& y) {
    if (x.weight != y.weight) return x.weight > y.weight ? -1 : 1;
    std::size_t m = std::min(x.kids.size(), y.kids.size());
    for (std::size_t i = 0; i < m; ++i)
        if (int c = enc_cmp(x.kids[i], y.kids[i])) return c;
    if (x.kids.size() != y.kids.size())
        return x.kids.size() < y.kids.size() ? -1 : 1;
    return 0;
}

namespace detail {

inline CanonEnc build_enc(const WeightedTree& t,
                          const std::map<int, std::vector<int>>& ch,
                          int v, bool weighted,
                          std::map<int, CanonEnc>* out = nullptr) {
    CanonEnc e;
    e.weight = weighted ? t.at(v).weight : 0;
    for (int c : ch.at(v)) e.kids.push_back(build_enc(t, ch, c, weighted, out));
    std::sort(e.kids.begin(), e.kids.end(),
              [](const CanonEnc& a, const CanonEnc& b) { return enc_cmp(a, b) < 0; });
    if (out) (*out)[v] = e;
    return e;
}

// Fresh display labels for canonical output: a, b, ..., z, aa, ab, ...
// The letter sequence skips "o", which is reserved for the root.
inline std::string fresh_label(std::size_t i) {
    std::string s;
    std::size_t n = i + 1;
    while (n > 0) {
        --n;
        s.insert(s.begin(), static_cast<char>('a' + n % 26));
        n /= 26;
    }
    return s == "o" ? "oo" : s;
}

inline std::size_t skip_o(std::size_t i) {
    // index 14 would be "o"; shift everything past it by one
    return i >= 14 ? i + 1 : i;
}

inline void emit_enc(const CanonEnc& e, bool is_root, bool with_weights,
                     std::size_t& next, std::string& out) {
    out += is_root ? "o" : fresh_label(skip_o(next++));
    if (with_weights && e.weight > 0) {
        out += '(';
        out += std::to_string(e.weight);
        out += ')';
    }
    if (!e.kids.empty()) {
        out += '[';
        for (std::size_t i = 0; i < e.kids.size(); ++i) {
            if (i) out += ',';
            emit_enc(e.kids[i], false, with_weights, next, out);
        }
        out += ']';
    }
}

} // namespace detail

// Canonical bracket text: labels regenerated in canonical traversal order,
// siblings in canonical order.  Equal strings <=> isomorphic weighted trees.
inline std::string canonical_form(const WeightedTree& t) {
    auto ch = t.children_map();
    CanonEnc e = detail::build_enc(t, ch, t.root, /*weighted=*/true);
    std::string out;
    std::size_t next = 0;
    detail::emit_enc(e, true, true, next, out);
    return out;
}

// Same with all weights erased: equal strings <=> the underlying unweighted
// rooted trees are isomorphic.
inline std::string unweighted_canonical_form(const WeightedTree& t) {
    auto ch = t.children_map();
    CanonEnc e = detail::build_enc(t, ch, t.root, /*weighted=*/false);
    std::string out;
    std::size_t next = 0;
    detail::emit_enc(e, true, false, next, out);
    return out;
}

// ---------------------------------------------------------------------------
// Printing.  Keeps the tree's own labels; sibling order is canonical
// (encoding first, label as tiebreak between isomorphic siblings), so the
// output is deterministic and independent of internal vertex numbering.
// ---------------------------------------------------------------------------

namespace detail {

inline void print_rec(const WeightedTree& t,
                      const std::map<int, std::vector<int>>& ch,
                      const std::map<int, CanonEnc>& encs,
                      int v, bool show_zero, std::string& out) {
    const auto& vx = t.at(v);
    out += vx.label;
    if (vx.weight > 0 || show_zero) {
        out += '(';
        out += std::to_string(vx.weight);
        out += ')';
    }
    std::vector<int> kids = ch.at(v);
    std::sort(kids.begin(), kids.end(), [&](int a, int b) {
        if (int c = enc_cmp(encs.at(a), encs.at(b))) return c < 0;
        return t.at(a).label < t.at(b).label;
    });
    if (!kids.empty()) {
        out += '[';
        for (std::size_t i = 0; i < kids.size(); ++i) {
            if (i) out += ',';
            print_rec(t, ch, encs, kids[i], show_zero, out);
        }
        out += ']';
    }
}

} // namespace detail

inline std::string print(const WeightedTree& t, bool show_zero = false) {
    auto ch = t.children_map();
    std::map<int, CanonEnc> encs;
    detail::build_enc(t, ch, t.root, true, &encs);
    std::string out;
    detail::print_rec(t, ch, encs, t.root, show_zero, out);
    return out;
}

// ---------------------------------------------------------------------------
// Parsing.
//
//   vertex   := LABEL weight? children?
//   weight   := "(" DIGITS ")"
//   children := "[" vertex ("," vertex)* "]"
//   LABEL    := [A-Za-z_][A-Za-z0-9_]*
//
// Whitespace between tokens is ignored; an omitted weight is 0.  The first
// label is the root.  Duplicate labels are rejected: every external surface
// (vertex flags, variable names, JSON keys) addresses vertices by label.
// ---------------------------------------------------------------------------

namespace detail {

class BracketParser {
  public:
    explicit BracketParser(std::string_view s) : s_(s) {}

    WeightedTree run() {
        skip_ws();
        if (eof()) throw ParseError("empty input, expected a vertex label", pos());
        t_.root = parse_vertex(-1);
        skip_ws();
        if (!eof()) throw ParseError("trailing characters after tree", pos());
        return std::move(t_);
    }

  private:
    std::string_view s_;
    std::size_t i_ = 0;
    int next_id_ = 0;
    WeightedTree t_;
    std::set<std::string, std::less<>> labels_;

    bool eof() const { return i_ >= s_.size(); }
    char peek() const { return s_[i_]; }
    std::size_t pos() const { return i_ + 1; } // 1-based for messages
    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++i_;
    }

    int parse_vertex(int parent) {
        skip_ws();
        std::size_t at = pos();
        std::string label = parse_label();
        if (labels_.count(label))
            throw ParseError("duplicate label '" + label + "'", at);
        labels_.insert(label);

        int id = next_id_++;
        t_.verts[id] = {parent, 0, std::move(label)};

        skip_ws();
        if (!eof() && peek() == '(') t_.verts[id].weight = parse_weight();
        skip_ws();
        if (!eof() && peek() == '[') parse_children(id);
        return id;
    }

    std::string parse_label() {
        if (eof())
            throw ParseError("expected a vertex label, got end of input", pos());
        char c = peek();
        if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_'))
            throw ParseError(std::string("expected a vertex label, got '") + c + "'", pos());
        std::size_t start = i_;
        while (!eof()) {
            c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ++i_;
            else break;
        }
        return std::string(s_.substr(start, i_ - start));
    }

    long long parse_weight() {
        ++i_; // '('
        skip_ws();
        if (!eof() && peek() == '-')
            throw ParseError("negative weight", pos());
        if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError("expected digits inside weight parenthetical", pos());
        std::size_t digits_at = pos();
        long long w = 0;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
            int d = peek() - '0';
            if (w > (1000000000000LL - d) / 10)
                throw ParseError("weight too large", digits_at);
            w = w * 10 + d;
            ++i_;
        }
        skip_ws();
        if (eof() || peek() != ')')
            throw ParseError("expected ')' to close weight", pos());
        ++i_;
        return w;
    }

    void parse_children(int parent) {
        ++i_; // '['
        skip_ws();
        if (!eof() && peek() == ']')
            throw ParseError("empty bracket: a vertex with children must list at least one", pos());
        while (true) {
            parse_vertex(parent);
            skip_ws();
            if (eof())
                throw ParseError("expected ',' or ']', got end of input", pos());
            if (peek() == ',') { ++i_; continue; }
            if (peek() == ']') { ++i_; return; }
            throw ParseError(std::string("expected ',' or ']', got '") + peek() + "'", pos());
        }
    }
};

} // namespace detail

inline WeightedTree parse(std::string_view text) {
    WeightedTree t = detail::BracketParser(text).run();
    t.validate();
    return t;
}

// ---------------------------------------------------------------------------
// Classification.
// ---------------------------------------------------------------------------

// Structural facts about a weighted tree.  Conventions:
//  * terminal = no children; the root is terminal only in a 1-vertex tree
//    (automatic: a multi-vertex root always has children);
//  * ghost = weight 0;
//  * stable / semistable: every ghost non-root vertex has >= 3 / >= 2 edges;
//  * trunk: maximal chain from the root along unique children; if its last
//    vertex is terminal the tree is a path tree (br = 0), otherwise that
//    vertex is the branch vertex and br is its child count;
//  * simple: every ghost strict descendant of the branch vertex has >= 3
//    edges (equivalently >= 2 children).  Branch stability counts the edge
//    attaching the branch to the trunk, so this is "all branches stable".
struct TreeClassification {
    bool terminally_weighted = false;
    bool stable = false;
    bool semistable = false;
    bool path_tree = false;
    bool simple = false;
    std::vector<int> trunk;                 // vertex ids, root first
    std::optional<int> branch_vertex;       // empty for path trees
    int br = 0;
};

inline TreeClassification classify(const WeightedTree& t) {
    auto ch = t.children_map();
    TreeClassification c;

    c.terminally_weighted = true;
    for (const auto& [id, vx] : t.verts) {
        bool terminal = ch.at(id).empty();
        if (terminal && vx.weight <= 0) c.terminally_weighted = false;
        if (!terminal && vx.weight > 0) c.terminally_weighted = false;
    }

    c.stable = c.semistable = true;
    for (const auto& [id, vx] : t.verts) {
        if (id == t.root || vx.weight > 0) continue;
        std::size_t edges = 1 + ch.at(id).size();
        if (edges < 3) c.stable = false;
        if (edges < 2) c.semistable = false;
    }

    c.trunk.push_back(t.root);
    while (ch.at(c.trunk.back()).size() == 1)
        c.trunk.push_back(ch.at(c.trunk.back()).front());

    int last = c.trunk.back();
    if (ch.at(last).empty()) {
        c.path_tree = true;
        c.br = 0;
    } else {
        c.branch_vertex = last;
        c.br = static_cast<int>(ch.at(last).size());
    }

    c.simple = true;
    if (!c.path_tree) {
        // walk everything strictly below the branch vertex
        std::vector<int> stack = ch.at(last);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (t.at(v).weight == 0 && ch.at(v).size() < 2) c.simple = false;
            for (int k : ch.at(v)) stack.push_back(k);
        }
    }
    return c;
}

} // namespace wtree
