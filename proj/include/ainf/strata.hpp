#pragma once
// Stratification combinatorics of the compactified moduli spaces: planar
// trees for the Stasheff spaces R_d, the half-plane spaces Z_{2d} with their
// two boundary types (adjacent-segment merges and simultaneous bubbling), and
// the formal signed boundary operator for the mapping-moduli symbols.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "ainf/common.hpp"

namespace ainf {

// ---------------------------------------------------------------------------
// Planar rooted trees (leaves ordered, internal arity >= 2).

struct RTree {
    std::vector<RTree> children;  // empty = leaf

    bool is_leaf() const { return children.empty(); }

    int leaves() const {
        if (is_leaf()) return 1;
        int n = 0;
        for (const auto& c : children) n += c.leaves();
        return n;
    }

    int internal_vertices() const {
        if (is_leaf()) return 0;
        int n = 1;
        for (const auto& c : children) n += c.internal_vertices();
        return n;
    }

    std::string encode() const {
        if (is_leaf()) return "*";
        std::string s = "(";
        for (const auto& c : children) s += c.encode();
        return s + ")";
    }

    static RTree corolla(int n) {
        RTree t;
        t.children.resize(n);
        return t;
    }

    friend bool operator==(const RTree& a, const RTree& b) { return a.encode() == b.encode(); }
};

// codim-1 degenerations: group a contiguous child range of one internal
// vertex (2 <= size < arity) into a new internal vertex
inline std::vector<RTree> tree_splits(const RTree& t) {
    std::vector<RTree> out;
    if (t.is_leaf()) return out;
    int m = static_cast<int>(t.children.size());
    for (int len = 2; len < m; ++len)
        for (int i = 0; i + len <= m; ++i) {
            RTree next = t;
            RTree grouped;
            grouped.children.assign(t.children.begin() + i, t.children.begin() + i + len);
            next.children.erase(next.children.begin() + i, next.children.begin() + i + len);
            next.children.insert(next.children.begin() + i, grouped);
            out.push_back(next);
        }
    for (int i = 0; i < m; ++i)
        for (const auto& sub : tree_splits(t.children[i])) {
            RTree next = t;
            next.children[i] = sub;
            out.push_back(next);
        }
    return out;
}

// all planar trees with n leaves and internal arity >= 2
inline std::vector<RTree> all_trees(int n) {
    if (n == 1) return {RTree{}};
    std::vector<RTree> out;
    std::vector<std::vector<int>> comps;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int rest) {
        if (rest == 0) {
            if (cur.size() >= 2) comps.push_back(cur);
            return;
        }
        for (int s = 1; s <= rest; ++s) {
            cur.push_back(s);
            rec(rest - s);
            cur.pop_back();
        }
    };
    rec(n);
    for (const auto& comp : comps) {
        std::vector<std::vector<RTree>> options;
        for (int c : comp) options.push_back(all_trees(c));
        std::vector<std::size_t> pick(comp.size(), 0);
        for (;;) {
            RTree t;
            for (std::size_t i = 0; i < comp.size(); ++i) t.children.push_back(options[i][pick[i]]);
            out.push_back(t);
            std::size_t i = 0;
            while (i < pick.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
            if (i == pick.size()) break;
        }
    }
    return out;
}

// dim Z_{2d} = 2d - (d-1) - 2 = d - 1
inline int dim_Z(int d) {
    if (d < 1) throw FixtureError("dim_Z needs d >= 1");
    return d - 1;
}

inline int dim_R(int d) {
    if (d < 2) throw FixtureError("dim_R needs d >= 2");
    return d - 2;
}

// codim-1 facets of the Stasheff space: (d1, d2, k), d1 + d2 = d + 1,
// 2 <= d2 <= d-1, 0 <= k <= d - d2
struct StasheffFacet {
    int d1, d2, k;
    friend bool operator==(const StasheffFacet&, const StasheffFacet&) = default;
};

inline std::vector<StasheffFacet> codim1_R(int d) {
    if (d < 2) throw FixtureError("codim1_R needs d >= 2");
    std::vector<StasheffFacet> out;
    for (int d2 = 2; d2 <= d - 1; ++d2)
        for (int k = 0; k <= d - d2; ++k) out.push_back({d + 1 - d2, d2, k});
    return out;
}

// ---------------------------------------------------------------------------
// Strata of the compactified half-plane spaces Z_{2d}.
//
// A stratum is a list of level-2 parts, each a list of blocks (consecutive
// intervals of the original segments 1..d; coarser blocks record merges),
// together with a planar tree on the parts when bubbling has happened.
// Nested bubbles flatten into the tree: leaves of the tree are the parts.

struct ZStratum {
    struct Block {
        int lo, hi;  // inclusive interval of original segment indices
        friend bool operator==(const Block&, const Block&) = default;
    };
    using Part = std::vector<Block>;

    std::vector<Part> parts;
    std::optional<RTree> rtree;  // present iff parts.size() >= 2

    static ZStratum open(int d) {
        ZStratum s;
        ZStratum::Part p;
        for (int i = 1; i <= d; ++i) p.push_back({i, i});
        s.parts.push_back(p);
        return s;
    }

    int total_segments() const {
        int n = 0;
        for (const auto& p : parts)
            for (const auto& b : p) n = std::max(n, b.hi);
        return n;
    }

    int total_blocks() const {
        int n = 0;
        for (const auto& p : parts) n += static_cast<int>(p.size());
        return n;
    }

    int codim() const {
        int merges = total_segments() - total_blocks();
        int bubbles = rtree ? rtree->internal_vertices() : 0;
        return merges + bubbles;
    }

    std::string encode() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            os << (i ? " | " : "");
            for (std::size_t j = 0; j < parts[i].size(); ++j) {
                os << (j ? "," : "") << "[" << parts[i][j].lo;
                if (parts[i][j].hi != parts[i][j].lo) os << "-" << parts[i][j].hi;
                os << "]";
            }
        }
        if (rtree) os << " ~ " << rtree->encode();
        return os.str();
    }
};

// all codim-1 degenerations of a stratum
inline std::vector<ZStratum> z_degenerations(const ZStratum& s) {
    std::vector<ZStratum> out;

    auto merged_part = [](const ZStratum::Part& p, int i) {
        ZStratum::Part q;
        for (int j = 0; j < static_cast<int>(p.size()); ++j) {
            if (j == i) {
                q.push_back({p[i].lo, p[i + 1].hi});
                ++j;
            } else {
                q.push_back(p[j]);
            }
        }
        return q;
    };

    auto compositions = [](int n) {
        std::vector<std::vector<int>> comps;
        std::vector<int> cur;
        std::function<void(int)> rec = [&](int rest) {
            if (rest == 0) {
                if (cur.size() >= 2) comps.push_back(cur);
                return;
            }
            for (int s2 = 1; s2 <= rest; ++s2) {
                cur.push_back(s2);
                rec(rest - s2);
                cur.pop_back();
            }
        };
        rec(n);
        return comps;
    };

    // split a part's blocks into consecutive groups, grafting a corolla at
    // the corresponding leaf of the tree
    auto graft_at_leaf = [](const RTree& t, int leaf_index, int arity) {
        std::function<RTree(const RTree&, int&)> rec = [&](const RTree& node, int& counter) -> RTree {
            if (node.is_leaf()) {
                if (counter++ == leaf_index) return RTree::corolla(arity);
                return node;
            }
            RTree next;
            for (const auto& c : node.children) next.children.push_back(rec(c, counter));
            return next;
        };
        int counter = 0;
        return rec(t, counter);
    };

    for (std::size_t pi = 0; pi < s.parts.size(); ++pi) {
        const auto& p = s.parts[pi];
        // merges of adjacent blocks inside this part
        for (int i = 0; i + 1 < static_cast<int>(p.size()); ++i) {
            ZStratum next = s;
            next.parts[pi] = merged_part(p, i);
            out.push_back(next);
        }
        // bubble this part into >= 2 consecutive groups
        if (p.size() >= 2) {
            for (const auto& comp : compositions(static_cast<int>(p.size()))) {
                ZStratum next;
                next.parts.assign(s.parts.begin(), s.parts.begin() + pi);
                int at = 0;
                std::vector<ZStratum::Part> groups;
                for (int c : comp) {
                    groups.push_back(ZStratum::Part(p.begin() + at, p.begin() + at + c));
                    at += c;
                }
                for (const auto& g : groups) next.parts.push_back(g);
                next.parts.insert(next.parts.end(), s.parts.begin() + pi + 1, s.parts.end());
                if (s.rtree) {
                    next.rtree = graft_at_leaf(*s.rtree, static_cast<int>(pi),
                                               static_cast<int>(comp.size()));
                } else {
                    next.rtree = RTree::corolla(static_cast<int>(comp.size()));
                }
                out.push_back(next);
            }
        }
    }
    // splits of the level-1 tree
    if (s.rtree)
        for (const auto& t : tree_splits(*s.rtree)) {
            ZStratum next = s;
            next.rtree = t;
            out.push_back(next);
        }
    return out;
}

// ---------------------------------------------------------------------------
// Floer-datum weights: exact rational bookkeeping 1 = w_0 >= sum w_k on a
// bubbled stratum, with the rescaling rule applied symbolically. No analysis
// happens here; the weights are metadata carried by strata.

struct Rational {
    std::int64_t num = 0, den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (den == 0) throw FixtureError("rational with zero denominator");
        if (den < 0) {
            num = checked_neg(num);
            den = checked_neg(den);
        }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(checked_mul(a.num, b.num), checked_mul(a.den, b.den));
    }
    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(checked_add(checked_mul(a.num, b.den), checked_mul(b.num, a.den)),
                        checked_mul(a.den, b.den));
    }
    friend bool operator<=(const Rational& a, const Rational& b) {
        return checked_mul(a.num, b.den) <= checked_mul(b.num, a.den);
    }
    friend bool operator==(const Rational&, const Rational&) = default;

    std::string str() const { return std::to_string(num) + (den == 1 ? "" : "/" + std::to_string(den)); }
};

// weights per level-2 part of a bubbled stratum: the level-1 output carries
// w_0 = 1, and the parts carry w_k with sum <= 1
struct WeightedStratum {
    ZStratum stratum;
    Rational out_weight{1, 1};
    std::vector<Rational> part_weights;  // one per part when bubbled

    bool valid() const {
        if (!stratum.rtree) return part_weights.empty();
        if (part_weights.size() != stratum.parts.size()) return false;
        Rational sum{0, 1};
        for (const auto& w : part_weights) {
            if (!(Rational{0, 1} <= w) || w == Rational{0, 1}) return false;
            sum = sum + w;
        }
        return sum <= out_weight;
    }

    // the symbolic Floer datum on part k after rescaling: H . psi^{w} / w^2
    std::string datum(std::size_t part) const {
        const Rational& w = part_weights.at(part);
        return "H.psi^{" + w.str() + "}/(" + w.str() + ")^2";
    }
};

// uniform weights w_k = 1/r (so the constraint holds with equality)
inline WeightedStratum assign_uniform_weights(ZStratum s) {
    WeightedStratum w;
    w.stratum = std::move(s);
    if (w.stratum.rtree) {
        auto r = static_cast<std::int64_t>(w.stratum.parts.size());
        for (std::int64_t k = 0; k < r; ++k) w.part_weights.push_back(Rational{1, r});
    }
    return w;
}

// the product rule under nesting: a part of weight w that bubbles again gives
// its own sub-parts weights w * u_k
inline std::vector<Rational> nested_weights(const Rational& parent,
                                            const std::vector<Rational>& children) {
    std::vector<Rational> out;
    for (const auto& c : children) out.push_back(parent * c);
    return out;
}

struct ZBoundaryType {
    int merges = 0;   // type 1, markings collapse
    int bubbles = 0;  // type 2, simultaneous bubbling
};

inline std::vector<ZStratum> codim1_Z(int d) {
    if (d < 1) throw FixtureError("codim1_Z needs d >= 1");
    return z_degenerations(ZStratum::open(d));
}

inline ZBoundaryType codim1_Z_counts(int d) {
    ZBoundaryType t;
    for (const auto& s : codim1_Z(d)) {
        if (s.rtree) ++t.bubbles;
        else ++t.merges;
    }
    return t;
}

struct Mod2Report {
    bool ok = true;
    int codim1 = 0;
    int codim2_distinct = 0;
    std::string witness;  // a codim-2 stratum with incidence != 2
};

// every codim-2 stratum must appear in exactly two codim-1 closures
inline Mod2Report mod2_dd_check(int d) {
    Mod2Report rep;
    auto s1 = codim1_Z(d);
    rep.codim1 = static_cast<int>(s1.size());
    std::map<std::string, int> tally;
    for (const auto& s : s1)
        for (const auto& t : z_degenerations(s)) {
            if (t.codim() != 2)
                throw FixtureError("degeneration did not raise codimension by 1: " + t.encode());
            ++tally[t.encode()];
        }
    rep.codim2_distinct = static_cast<int>(tally.size());
    for (const auto& [key, count] : tally)
        if (count != 2) {
            rep.ok = false;
            rep.witness = key + " appears " + std::to_string(count) + " times";
            return rep;
        }
    return rep;
}

// Hasse diagram of the stratification down to a given codimension, as DOT
inline std::string hasse_dot(int d, int max_codim = 2) {
    std::ostringstream os;
    os << "digraph Z" << 2 * d << " {\n  rankdir=TB;\n";
    std::map<std::string, int> ids;
    auto id_of = [&](const ZStratum& s) {
        auto key = s.encode();
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(ids.size());
        ids[key] = id;
        os << "  n" << id << " [label=\"" << key << "\"];\n";
        return id;
    };
    std::set<std::pair<int, int>> edges;
    std::vector<ZStratum> frontier{ZStratum::open(d)};
    id_of(frontier[0]);
    for (int c = 0; c < max_codim; ++c) {
        std::vector<ZStratum> next;
        std::set<std::string> seen;
        for (const auto& s : frontier) {
            int from = id_of(s);
            for (const auto& t : z_degenerations(s)) {
                int to = id_of(t);
                if (edges.insert({from, to}).second)
                    os << "  n" << from << " -> n" << to << ";\n";
                if (seen.insert(t.encode()).second) next.push_back(t);
            }
        }
        frontier = std::move(next);
    }
    os << "}\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Correspondence with the Stasheff space: odd marked points plus z_2 give the
// d+1 inputs of R_{d+1}; the bijection is interior only for d >= 2.

struct ZStasheffCorrespondence {
    int d = 0;
    int dim_z = 0, dim_r = 0;
    std::vector<std::pair<std::string, std::string>> input_map;
    int z_merge_strata = 0, z_bubble_strata = 0, r_facets = 0;
    bool extends_to_boundary = false;
};

inline ZStasheffCorrespondence z_to_stasheff(int d) {
    if (d < 1) throw FixtureError("z_to_stasheff needs d >= 1");
    ZStasheffCorrespondence c;
    c.d = d;
    c.dim_z = dim_Z(d);
    c.dim_r = (d + 1) - 2;
    for (int i = 1; i <= d; ++i)
        c.input_map.push_back({"z" + std::to_string(2 * i - 1), "input " + std::to_string(i)});
    c.input_map.push_back({"z2", "input " + std::to_string(d + 1)});
    c.input_map.push_back({"infinity", "output"});
    auto counts = codim1_Z_counts(d);
    c.z_merge_strata = counts.merges;
    c.z_bubble_strata = counts.bubbles;
    c.r_facets = (d + 1 >= 3) ? static_cast<int>(codim1_R(d + 1).size()) : 0;
    // the interior identification never matches merge-type boundary strata,
    // which have no counterpart among Stasheff facets
    c.extends_to_boundary = (c.z_merge_strata == 0 && c.z_bubble_strata == c.r_facets);
    return c;
}

// ---------------------------------------------------------------------------
// Formal signed boundary of mapping-moduli symbols.
//
// Symbols: half-planes M(sigma_1..sigma_d; x) (inputs = moving-boundary
// chains, output = a chord), and discs M(x_1..x_r; x) (r = 1 is a strip).
// Segments are concatenations of named cubes with optional fixed coordinates
// (iterated cubical faces in normal form). Chords range over a declared
// finite universe when strips and discs break.

struct SegExpr {
    std::vector<std::string> atoms;
    std::vector<std::pair<int, int>> fixed;  // (global coordinate, eps), kept sorted

    std::string encode() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < atoms.size(); ++i) os << (i ? "&" : "") << atoms[i];
        for (const auto& [k, e] : fixed) os << "@" << k << ":" << e;
        return os.str();
    }
    friend bool operator==(const SegExpr&, const SegExpr&) = default;
};

struct DegreeAssignment {
    std::map<std::string, int> cube_dim;   // mu(sigma) for segment atoms
    std::map<std::string, int> chord_deg;  // mu(x) for chords

    int seg_degree(const SegExpr& s) const {
        int n = 0;
        for (const auto& a : s.atoms) {
            auto it = cube_dim.find(a);
            if (it == cube_dim.end()) throw FixtureError("unassigned segment symbol '" + a + "'");
            n += it->second;
        }
        return n - static_cast<int>(s.fixed.size());
    }
    int chord(const std::string& x) const {
        auto it = chord_deg.find(x);
        if (it == chord_deg.end()) throw FixtureError("unassigned chord symbol '" + x + "'");
        return it->second;
    }
};

struct HalfPlaneSym {
    std::vector<SegExpr> segs;
    std::string out;
    std::string encode() const {
        std::ostringstream os;
        os << "M(";
        for (std::size_t i = 0; i < segs.size(); ++i) os << (i ? ";" : "") << segs[i].encode();
        os << " -> " << out << ")";
        return os.str();
    }
};

struct DiscSym {
    std::vector<std::string> ins;  // x_1 first
    std::string out;
    std::string encode() const {
        std::ostringstream os;
        os << "D(";
        for (std::size_t i = 0; i < ins.size(); ++i) os << (i ? ";" : "") << ins[i];
        os << " -> " << out << ")";
        return os.str();
    }
};

using StratumFactor = std::variant<HalfPlaneSym, DiscSym>;

inline std::string encode_factor(const StratumFactor& f) {
    if (std::holds_alternative<HalfPlaneSym>(f)) return std::get<HalfPlaneSym>(f).encode();
    return std::get<DiscSym>(f).encode();
}

inline int factor_dim(const StratumFactor& f, const DegreeAssignment& deg) {
    if (std::holds_alternative<HalfPlaneSym>(f)) {
        const auto& h = std::get<HalfPlaneSym>(f);
        int n = deg.chord(h.out) + static_cast<int>(h.segs.size()) - 1;
        for (const auto& s : h.segs) n += deg.seg_degree(s);
        return n;
    }
    const auto& d = std::get<DiscSym>(f);
    int n = deg.chord(d.out) + static_cast<int>(d.ins.size()) - 2;
    for (const auto& x : d.ins) n -= deg.chord(x);
    return n;
}

// product of factors, kept canonically sorted (orientation reordering signs
// between product factors are not modeled; the signed dd is a diagnostic)
struct StratumTermKey {
    std::vector<std::string> sorted_factors;
    auto operator<=>(const StratumTermKey&) const = default;
};

struct SignedStratumChain {
    struct Term {
        std::vector<StratumFactor> factors;  // sorted by encode()
        std::int64_t coeff = 0;
    };
    std::map<StratumTermKey, Term> terms;

    void add(std::vector<StratumFactor> factors, std::int64_t coeff) {
        if (coeff == 0) return;
        std::sort(factors.begin(), factors.end(), [](const StratumFactor& a, const StratumFactor& b) {
            return encode_factor(a) < encode_factor(b);
        });
        StratumTermKey key;
        for (const auto& f : factors) key.sorted_factors.push_back(encode_factor(f));
        auto it = terms.find(key);
        if (it == terms.end()) {
            terms[key] = {std::move(factors), coeff};
        } else {
            it->second.coeff = checked_add(it->second.coeff, coeff);
            if (it->second.coeff == 0) terms.erase(it);
        }
    }

    void reduce_mod2() {
        for (auto it = terms.begin(); it != terms.end();) {
            it->second.coeff = ((it->second.coeff % 2) + 2) % 2;
            if (it->second.coeff == 0) it = terms.erase(it);
            else ++it;
        }
    }

    bool empty() const { return terms.empty(); }
    std::size_t size() const { return terms.size(); }
};

inline SignedStratumChain formal_open(const std::vector<std::string>& seg_names, const std::string& out) {
    HalfPlaneSym h;
    for (const auto& s : seg_names) h.segs.push_back(SegExpr{{s}, {}});
    h.out = out;
    SignedStratumChain c;
    c.add({h}, 1);
    return c;
}

namespace detail {

inline std::vector<std::vector<int>> compositions(int n, int min_parts) {
    std::vector<std::vector<int>> comps;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int rest) {
        if (rest == 0) {
            if (static_cast<int>(cur.size()) >= min_parts) comps.push_back(cur);
            return;
        }
        for (int s = 1; s <= rest; ++s) {
            cur.push_back(s);
            rec(rest - s);
            cur.pop_back();
        }
    };
    rec(n);
    return comps;
}

// free coordinates of a segment in increasing global order
inline std::vector<int> free_coords(const SegExpr& s, const DegreeAssignment& deg) {
    int total = 0;
    for (const auto& a : s.atoms) total += deg.cube_dim.at(a);
    std::set<int> fixed;
    for (const auto& [k, e] : s.fixed) {
        (void)e;
        fixed.insert(k);
    }
    std::vector<int> out;
    for (int k = 1; k <= total; ++k)
        if (!fixed.count(k)) out.push_back(k);
    return out;
}

inline SegExpr concat_segs(const SegExpr& a, const SegExpr& b, const DegreeAssignment& deg) {
    SegExpr out = a;
    int offset = 0;
    for (const auto& at : a.atoms) offset += deg.cube_dim.at(at);
    for (const auto& at : b.atoms) out.atoms.push_back(at);
    for (const auto& [k, e] : b.fixed) out.fixed.push_back({k + offset, e});
    std::sort(out.fixed.begin(), out.fixed.end());
    return out;
}

// the paper's sign exponent for a simultaneous breaking into blocks of sizes
// (d_1..d_r) with intermediate chords x_1..x_r
inline long breaking_sign_exponent(const std::vector<int>& block_sizes,
                                   const std::vector<int>& block_deg_prefix,  // sum of seg degrees in blocks 1..k
                                   const std::vector<int>& chord_degs) {
    int r = static_cast<int>(block_sizes.size());
    long e = 0;
    long chord_prefix = 0;
    long size_prefix = 0;
    int total_deg = block_deg_prefix.empty() ? 0 : block_deg_prefix.back();
    for (int k = 1; k <= r; ++k) {
        long before = (k >= 2) ? block_deg_prefix[k - 2] : 0;
        e += static_cast<long>(block_sizes[k - 1]) * (before + chord_prefix);
        chord_prefix += chord_degs[k - 1];
        size_prefix += block_sizes[k - 1];
        e += size_prefix * (size_prefix - block_sizes[k - 1]);
    }
    // sum_{k=1}^{r-1} mu(x_k) * Sigma_k, Sigma_k = degrees in the last k blocks
    for (int k = 1; k <= r - 1; ++k) {
        long last_k = total_deg - ((r - k >= 1) ? block_deg_prefix[r - k - 1] : 0);
        e += static_cast<long>(chord_degs[k - 1]) * last_k;
    }
    return e;
}

}  // namespace detail

// boundary of a single half-plane symbol: merges, breakings (r >= 1, r = 1 is
// the Floer strip breaking), and cubical faces of the segments
inline SignedStratumChain boundary_halfplane(const HalfPlaneSym& h, const DegreeAssignment& deg,
                                             const std::vector<std::string>& chord_universe) {
    SignedStratumChain out;
    int d = static_cast<int>(h.segs.size());

    // merges of adjacent segments, sign (-1)^{2d+1} = -1
    for (int i = 0; i + 1 < d; ++i) {
        HalfPlaneSym next = h;
        next.segs[i] = detail::concat_segs(h.segs[i], h.segs[i + 1], deg);
        next.segs.erase(next.segs.begin() + i + 1);
        out.add({next}, -1);
    }

    // simultaneous breakings (skipped entirely without a chord universe)
    std::vector<int> prefix(d + 1, 0);
    for (int i = 0; i < d; ++i) prefix[i + 1] = prefix[i] + deg.seg_degree(h.segs[i]);
    for (const auto& comp : chord_universe.empty() ? std::vector<std::vector<int>>{}
                                                   : detail::compositions(d, 1)) {
        int r = static_cast<int>(comp.size());
        std::vector<int> block_deg_prefix(r, 0);
        {
            int at = 0, acc = 0;
            for (int k = 0; k < r; ++k) {
                acc += prefix[at + comp[k]] - prefix[at];
                block_deg_prefix[k] = acc;
                at += comp[k];
            }
        }
        std::vector<std::size_t> pick(r, 0);
        for (;;) {
            std::vector<int> chord_degs(r);
            std::vector<std::string> chords(r);
            for (int k = 0; k < r; ++k) {
                chords[k] = chord_universe[pick[k]];
                chord_degs[k] = deg.chord(chords[k]);
            }
            long e = detail::breaking_sign_exponent(comp, block_deg_prefix, chord_degs);
            std::vector<StratumFactor> factors;
            int at = 0;
            std::vector<HalfPlaneSym> blocks(r);
            for (int k = 0; k < r; ++k) {
                blocks[k].segs.assign(h.segs.begin() + at, h.segs.begin() + at + comp[k]);
                blocks[k].out = chords[k];
                at += comp[k];
            }
            for (int k = r - 1; k >= 0; --k) factors.push_back(blocks[k]);
            DiscSym disc;
            disc.ins = chords;
            disc.out = h.out;
            factors.push_back(disc);
            out.add(std::move(factors), (e % 2 == 0) ? 1 : -1);

            std::size_t i = 0;
            while (i < pick.size() && ++pick[i] == chord_universe.size()) pick[i++] = 0;
            if (i == pick.size()) break;
        }
    }

    // cubical faces of each segment
    for (int i = 0; i < d; ++i) {
        auto free = detail::free_coords(h.segs[i], deg);
        for (std::size_t kpos = 0; kpos < free.size(); ++kpos)
            for (int eps = 0; eps <= 1; ++eps) {
                HalfPlaneSym next = h;
                next.segs[i].fixed.push_back({free[kpos], eps});
                std::sort(next.segs[i].fixed.begin(), next.segs[i].fixed.end());
                int sign = ((static_cast<int>(kpos) + 1 + eps) % 2 == 0) ? 1 : -1;
                out.add({next}, sign);
            }
    }
    return out;
}

// boundary of a disc symbol: all splittings (d1 + d2 = r + 1) with the
// maltese sign, intermediate chords summed over the universe; r = 1 is the
// strip, whose boundary is strip x strip
inline SignedStratumChain boundary_disc(const DiscSym& disc, const DegreeAssignment& deg,
                                        const std::vector<std::string>& chord_universe) {
    SignedStratumChain out;
    int r = static_cast<int>(disc.ins.size());
    std::vector<int> rdeg(r);
    for (int j = 0; j < r; ++j) rdeg[j] = deg.chord(disc.ins[j]);
    for (int d2 = 1; d2 <= r; ++d2) {
        for (int k = 0; k + d2 <= r; ++k) {
            // maltese_1^k = k + |x_1| + ... + |x_k|
            int e = k;
            for (int j = 0; j < k; ++j) e += rdeg[j];
            for (const auto& y : chord_universe) {
                DiscSym inner;
                inner.ins.assign(disc.ins.begin() + k, disc.ins.begin() + k + d2);
                inner.out = y;
                DiscSym outer;
                outer.ins.assign(disc.ins.begin(), disc.ins.begin() + k);
                outer.ins.push_back(y);
                outer.ins.insert(outer.ins.end(), disc.ins.begin() + k + d2, disc.ins.end());
                outer.out = disc.out;
                out.add({outer, inner}, (e % 2 == 0) ? 1 : -1);
            }
        }
    }
    return out;
}

// the full boundary: Leibniz over factors with prefix-dimension signs in the
// canonical (sorted) factor order
inline SignedStratumChain boundary_formal(const SignedStratumChain& chain, const DegreeAssignment& deg,
                                          const std::vector<std::string>& chord_universe) {
    SignedStratumChain out;
    for (const auto& [key, term] : chain.terms) {
        (void)key;
        int prefix_dim = 0;
        for (std::size_t fi = 0; fi < term.factors.size(); ++fi) {
            SignedStratumChain local;
            if (std::holds_alternative<HalfPlaneSym>(term.factors[fi]))
                local = boundary_halfplane(std::get<HalfPlaneSym>(term.factors[fi]), deg, chord_universe);
            else
                local = boundary_disc(std::get<DiscSym>(term.factors[fi]), deg, chord_universe);
            std::int64_t leib = (prefix_dim % 2 == 0) ? 1 : -1;
            for (const auto& [lkey, lterm] : local.terms) {
                (void)lkey;
                std::vector<StratumFactor> factors;
                for (std::size_t fj = 0; fj < term.factors.size(); ++fj) {
                    if (fj == fi) {
                        for (const auto& f : lterm.factors) factors.push_back(f);
                    } else {
                        factors.push_back(term.factors[fj]);
                    }
                }
                out.add(std::move(factors),
                        checked_mul(term.coeff, checked_mul(leib, lterm.coeff)));
            }
            prefix_dim += factor_dim(term.factors[fi], deg);
        }
    }
    return out;
}

struct ResidueReport {
    int codim2_terms = 0;
    int cancelled = 0;
    std::vector<std::pair<std::string, std::int64_t>> residues;  // nonzero leftovers
    bool mod2_zero = false;
};

// dd applied to the open mapping stratum; signed residues are reported, the
// mod-2 reduction is the actual gate
inline ResidueReport dd_residues(const std::vector<std::string>& seg_names, const std::string& out_chord,
                                 const DegreeAssignment& deg,
                                 const std::vector<std::string>& chord_universe) {
    SignedStratumChain c = formal_open(seg_names, out_chord);
    SignedStratumChain d1 = boundary_formal(c, deg, chord_universe);
    SignedStratumChain d2 = boundary_formal(d1, deg, chord_universe);

    ResidueReport rep;
    std::map<std::string, std::int64_t> signed_tally;
    std::map<std::string, std::int64_t> abs_tally;
    for (const auto& [key, term] : d2.terms) {
        std::string k;
        for (const auto& f : key.sorted_factors) k += (k.empty() ? "" : " x ") + f;
        signed_tally[k] += term.coeff;
        abs_tally[k] += 1;
    }
    SignedStratumChain m2 = d2;
    m2.reduce_mod2();
    rep.mod2_zero = m2.empty();
    for (const auto& [k, v] : signed_tally) {
        ++rep.codim2_terms;
        if (v == 0) ++rep.cancelled;
        else rep.residues.push_back({k, v});
    }
    return rep;
}

}  // namespace ainf
