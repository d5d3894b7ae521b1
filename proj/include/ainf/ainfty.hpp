#pragma once
// A-infinity category container and the relation / functor checkers.
//
// Conventions (uniform cohomological storage):
//   mu_d output degree  = sum of input degrees + 2 - d
//   F^d  output degree  = sum of input degrees + 1 - d
//   relation sign       maltese_1^k = k + |x_1| + ... + |x_k|
//   higher-product sign dagger      = sum_k k * |x_k|
// Tuples are stored in the order mu is written: args[0] = x_d (leftmost),
// args[d-1] = x_1 (rightmost); x_1 composes first.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ainf/exactalg.hpp"
#include "ainf/pontryagin.hpp"

namespace ainf {

inline int maltese(int k, const std::vector<int>& degrees) {
    // degrees[j-1] = |x_j|, rightmost inputs first
    int s = k;
    for (int j = 1; j <= k; ++j) s += degrees.at(j - 1);
    return s;
}

inline long long dagger(const std::vector<int>& degrees) {
    long long s = 0;
    for (std::size_t k = 1; k <= degrees.size(); ++k) s += static_cast<long long>(k) * degrees[k - 1];
    return s;
}

struct HomGen {
    std::string src, dst;
    std::size_t idx = 0;
    auto operator<=>(const HomGen&) const = default;
};

class AInftyCategory {
  public:
    void add_object(const std::string& name) {
        if (std::find(objects_.begin(), objects_.end(), name) != objects_.end())
            throw FixtureError("duplicate object '" + name + "'");
        objects_.push_back(name);
    }

    void set_hom(const std::string& src, const std::string& dst, ModulePtr m) {
        homs_[{src, dst}] = std::move(m);
    }

    const std::vector<std::string>& objects() const { return objects_; }

    ModulePtr hom(const std::string& src, const std::string& dst) const {
        auto it = homs_.find({src, dst});
        return it == homs_.end() ? nullptr : it->second;
    }

    const std::map<std::pair<std::string, std::string>, ModulePtr>& homs() const { return homs_; }

    int degree(const HomGen& g) const { return hom(g.src, g.dst)->gen(g.idx).degree; }
    const std::string& label(const HomGen& g) const { return hom(g.src, g.dst)->gen(g.idx).label; }

    // tuple in written order: args[0] = x_d, ..., args[d-1] = x_1
    static bool composable(const std::vector<HomGen>& args) {
        for (std::size_t j = 0; j + 1 < args.size(); ++j)
            if (args[j].src != args[j + 1].dst) return false;
        return true;
    }

    void set_mu(const std::vector<HomGen>& args, Chain out) {
        int d = static_cast<int>(args.size());
        if (d < 1) throw FixtureError("mu needs at least one input");
        if (!composable(args)) throw FixtureError("mu entry on a non-composable tuple");
        ModulePtr target = hom(args.back().src, args.front().dst);
        if (!target) throw FixtureError("mu entry without a target hom module");
        if (out.module() && out.module() != target)
            throw FixtureError("mu entry image lives in the wrong hom module");
        auto odeg = out.homogeneous_degree();
        if (odeg) {
            int expect = 2 - d;
            for (const auto& a : args) expect += degree(a);
            if (*odeg != expect)
                throw FixtureError("degree rule violated on mu_" + std::to_string(d) + " entry (got " +
                                   std::to_string(*odeg) + ", want " + std::to_string(expect) + ")");
        }
        if (out.is_zero()) mu_.erase(args);
        else mu_[args] = std::move(out);
    }

    int max_arity() const {
        int m = 0;
        for (const auto& [k, v] : mu_) {
            (void)v;
            m = std::max<int>(m, static_cast<int>(k.size()));
        }
        return m;
    }

    Chain mu_gen(const std::vector<HomGen>& args) const {
        auto it = mu_.find(args);
        if (it != mu_.end()) return it->second;
        ModulePtr target = hom(args.back().src, args.front().dst);
        return target ? Chain(target) : Chain(CubicalChainComplex::empty_module());
    }

    const std::map<std::vector<HomGen>, Chain>& mu_entries() const { return mu_; }

    // multilinear evaluation: one slot may carry a chain instead of a generator
    struct Slot {
        std::optional<HomGen> gen;
        Chain chain;             // used when gen is empty
        std::string src, dst;    // hom pair of the chain slot
    };

    Chain mu_slots(const std::vector<Slot>& slots) const {
        ModulePtr target = hom(slots.back().gen ? slots.back().gen->src : slots.back().src,
                               slots.front().gen ? slots.front().gen->dst : slots.front().dst);
        Chain acc = target ? Chain(target) : Chain(CubicalChainComplex::empty_module());
        // locate the chain slot (at most one by construction)
        int chain_at = -1;
        for (std::size_t i = 0; i < slots.size(); ++i)
            if (!slots[i].gen) chain_at = static_cast<int>(i);
        std::vector<HomGen> args(slots.size());
        for (std::size_t i = 0; i < slots.size(); ++i)
            if (slots[i].gen) args[i] = *slots[i].gen;
        if (chain_at < 0) return mu_gen(args);
        const Slot& cs = slots[chain_at];
        if (cs.chain.is_zero()) return acc;
        ModulePtr cm = cs.chain.module();
        for (const auto& [g, coeff] : cs.chain.terms()) {
            args[chain_at] = HomGen{cs.src, cs.dst, g};
            (void)cm;
            acc = acc + mu_gen(args) * coeff;
        }
        return acc;
    }

    bool is_dg() const {
        for (const auto& [k, v] : mu_) {
            (void)v;
            if (k.size() > 2) return false;
        }
        return true;
    }

  private:
    std::vector<std::string> objects_;
    std::map<std::pair<std::string, std::string>, ModulePtr> homs_;
    std::map<std::vector<HomGen>, Chain> mu_;
};

// ---------------------------------------------------------------------------
// Relation checker.

struct RelationTerm {
    int d1 = 0, d2 = 0, k = 0, sign = 1;
    std::string value;
};

struct AInftyReport {
    bool ok = true;
    long tuples_checked = 0;
    std::string witness_tuple;
    std::vector<RelationTerm> witness_terms;
    std::string witness_total;

    std::string summary() const {
        if (ok) return "ok (" + std::to_string(tuples_checked) + " tuples)";
        std::ostringstream os;
        os << "relation failed at " << witness_tuple << "; total = " << witness_total;
        for (const auto& t : witness_terms)
            os << "\n  (d1=" << t.d1 << ",d2=" << t.d2 << ",k=" << t.k << ") sign " << t.sign << ": "
               << t.value;
        return os.str();
    }
};

namespace detail {

// enumerate composable generator tuples of length d, invoking fn on each
template <typename Fn>
void for_each_tuple(const AInftyCategory& c, int d, Fn&& fn) {
    std::vector<HomGen> tuple(d);
    // build from the right (x_1 at index d-1) so composability prunes early
    std::function<void(int)> rec = [&](int pos) {
        if (pos < 0) {
            fn(tuple);
            return;
        }
        for (const auto& [pair, mod] : c.homs()) {
            if (pos < d - 1 && pair.first != tuple[pos + 1].dst) continue;
            for (std::size_t g = 0; g < mod->rank(); ++g) {
                tuple[pos] = HomGen{pair.first, pair.second, g};
                rec(pos - 1);
            }
        }
    };
    rec(d - 1);
}

}  // namespace detail

// All signed terms of the relation at one tuple, plus their sum:
//   sum_{d1+d2=d+1, 0<=k<d1} (-1)^{maltese_1^k}
//     mu_{d1}(x_d,...,x_{k+d2+1}, mu_{d2}(x_{k+d2},...,x_{k+1}), x_k,...,x_1).
struct RelationValue {
    Chain total;
    std::vector<RelationTerm> terms;
    std::vector<std::pair<int, Chain>> signed_chains;  // (sign, term) in scan order
};

inline RelationValue relation_value(const AInftyCategory& c, const std::vector<HomGen>& tuple) {
    int d = static_cast<int>(tuple.size());
    std::vector<int> rdeg(d);  // rdeg[j-1] = |x_j|, tuple[0] = x_d
    for (int j = 1; j <= d; ++j) rdeg[j - 1] = c.degree(tuple[d - j]);
    RelationValue rv;
    for (int d2 = 1; d2 <= d; ++d2) {
        int d1 = d + 1 - d2;
        for (int k = 0; k + d2 <= d && k < d1; ++k) {
            // inner consumes x_{k+1}..x_{k+d2} = tuple[d-k-d2 .. d-k-1]
            std::vector<HomGen> inner(tuple.begin() + (d - k - d2), tuple.begin() + (d - k));
            Chain innerv = c.mu_gen(inner);
            if (innerv.is_zero()) continue;
            std::vector<AInftyCategory::Slot> outer;
            for (int j = 0; j < d - k - d2; ++j) outer.push_back({tuple[j], Chain(), "", ""});
            outer.push_back({std::nullopt, innerv, inner.back().src, inner.front().dst});
            for (int j = d - k; j < d; ++j) outer.push_back({tuple[j], Chain(), "", ""});
            Chain term = c.mu_slots(outer);
            if (term.is_zero()) continue;
            int sgn = (maltese(k, rdeg) % 2 == 0) ? 1 : -1;
            rv.total = rv.total + term * sgn;
            rv.terms.push_back({d1, d2, k, sgn, term.str()});
            rv.signed_chains.push_back({sgn, term});
        }
    }
    return rv;
}

// Checks relation_value = 0 for every composable tuple of total arity
// <= d_max. Tuples all of whose terms are structurally zero are skipped.
inline AInftyReport check_ainfty(const AInftyCategory& c, int d_max) {
    AInftyReport rep;
    for (int d = 1; d <= d_max && rep.ok; ++d) {
        detail::for_each_tuple(c, d, [&](const std::vector<HomGen>& tuple) {
            if (!rep.ok) return;
            RelationValue rv = relation_value(c, tuple);
            if (rv.terms.empty()) return;
            ++rep.tuples_checked;
            if (!rv.total.is_zero()) {
                rep.ok = false;
                std::ostringstream os;
                os << "(";
                for (std::size_t i = 0; i < tuple.size(); ++i)
                    os << (i ? ", " : "") << c.label(tuple[i]);
                os << ")";
                rep.witness_tuple = os.str();
                rep.witness_terms = rv.terms;
                rep.witness_total = rv.total.str();
            }
        });
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Functor checker.

enum class SignConvention { paper_literal, koszul };

inline std::optional<SignConvention> parse_convention(const std::string& s) {
    if (s == "paper-literal") return SignConvention::paper_literal;
    if (s == "koszul") return SignConvention::koszul;
    return std::nullopt;
}

struct AInftyFunctorData {
    const AInftyCategory* source = nullptr;  // must be DG (mu_{>=3} = 0)
    const AInftyCategory* target = nullptr;
    std::map<std::string, std::string> object_map;
    // F entries keyed by source generator tuples (written order, x_d first);
    // output degree = sum of stored input degrees + 1 - d
    std::map<std::vector<HomGen>, Chain> entries;

    void set_entry(const std::vector<HomGen>& args, Chain out) {
        int d = static_cast<int>(args.size());
        if (!AInftyCategory::composable(args)) throw FixtureError("F entry on a non-composable tuple");
        auto odeg = out.homogeneous_degree();
        if (odeg) {
            int expect = 1 - d;
            for (const auto& a : args) expect += source->degree(a);
            if (*odeg != expect)
                throw FixtureError("degree rule violated on F^" + std::to_string(d) + " entry (got " +
                                   std::to_string(*odeg) + ", want " + std::to_string(expect) + ")");
        }
        if (out.is_zero()) entries.erase(args);
        else entries[args] = std::move(out);
    }

    Chain eval(const std::vector<HomGen>& args) const {
        auto it = entries.find(args);
        if (it != entries.end()) return it->second;
        ModulePtr m = target->hom(object_map.at(args.back().src), object_map.at(args.front().dst));
        return m ? Chain(m) : Chain(CubicalChainComplex::empty_module());
    }

    // F applied with one chain slot (multilinear)
    Chain eval_slots(const std::vector<AInftyCategory::Slot>& slots) const {
        int chain_at = -1;
        std::vector<HomGen> args(slots.size());
        for (std::size_t i = 0; i < slots.size(); ++i) {
            if (slots[i].gen) args[i] = *slots[i].gen;
            else chain_at = static_cast<int>(i);
        }
        if (chain_at < 0) return eval(args);
        Chain acc;
        const auto& cs = slots[chain_at];
        for (const auto& [g, coeff] : cs.chain.terms()) {
            args[chain_at] = HomGen{cs.src, cs.dst, g};
            acc = acc + eval(args) * coeff;
        }
        return acc;
    }
};

struct FunctorReport {
    bool ok = true;
    long tuples_checked = 0;
    std::string witness_tuple, lhs, rhs;

    std::string summary() const {
        if (ok) return "ok (" + std::to_string(tuples_checked) + " tuples)";
        return "functor relation failed at " + witness_tuple + ": lhs = " + lhs + ", rhs = " + rhs;
    }
};

namespace detail {

inline void compositions_of(int d, std::vector<std::vector<int>>& out) {
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int rest) {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int s = 1; s <= rest; ++s) {
            cur.push_back(s);
            rec(rest - s);
            cur.pop_back();
        }
    };
    rec(d);
}

}  // namespace detail

// Verifies, for every composable source tuple up to d_max,
//   sum_r sum_{s_1+...+s_r=d} mu^r(F^{s_r}(...), ..., F^{s_1}(...))
//     = sum_{m,n} (-1)^{maltese_n} F^{d-m+1}(..., mu_m(...), ...).
// koszul mode multiplies each left-hand term by
// (-1)^{sum_{i<j} s_i * deg(block_j)}.
inline FunctorReport check_functor(const AInftyFunctorData& f, int d_max,
                                   SignConvention convention = SignConvention::paper_literal) {
    if (!f.source->is_dg()) throw FixtureError("functor source must be a DG category");
    // degree rule of every F entry was validated at insertion
    FunctorReport rep;
    const AInftyCategory& src = *f.source;
    const AInftyCategory& tgt = *f.target;

    for (int d = 1; d <= d_max && rep.ok; ++d) {
        std::vector<std::vector<int>> comps;
        detail::compositions_of(d, comps);
        detail::for_each_tuple(src, d, [&](const std::vector<HomGen>& tuple) {
            if (!rep.ok) return;
            std::vector<int> rdeg(d);
            for (int j = 1; j <= d; ++j) rdeg[j - 1] = src.degree(tuple[d - j]);

            bool any = false;

            // left side: compositions s_1..s_r, block 1 is the rightmost
            Chain lhs;
            for (const auto& comp : comps) {
                int r = static_cast<int>(comp.size());
                // blocks right to left: block i consumes s_i inputs
                std::vector<Chain> fvals(r);
                std::vector<std::pair<std::string, std::string>> fpairs(r);
                int upto = d;  // tuple index one past the current block (from the left)
                bool zero = false;
                std::vector<int> block_deg(r, 0);
                for (int i = 0; i < r; ++i) {
                    int s = comp[i];
                    std::vector<HomGen> block(tuple.begin() + (upto - s), tuple.begin() + upto);
                    for (const auto& g : block) block_deg[i] += src.degree(g);
                    fvals[i] = f.eval(block);
                    fpairs[i] = {f.object_map.at(block.back().src), f.object_map.at(block.front().dst)};
                    if (fvals[i].is_zero()) zero = true;
                    upto -= s;
                }
                if (zero) continue;
                // mu^r over the r chains, expanded multilinearly; written slot
                // order puts the leftmost slot = F^{s_r} (the x_d-side block)
                Chain term;
                {
                    std::vector<HomGen> args(r);
                    std::function<void(int, std::int64_t)> walk = [&](int i, std::int64_t cf) {
                        if (i == r) {
                            term = term + tgt.mu_gen(args) * cf;
                            return;
                        }
                        const auto& pair = fpairs[r - 1 - i];
                        for (const auto& [g, c2] : fvals[r - 1 - i].terms()) {
                            args[i] = HomGen{pair.first, pair.second, g};
                            walk(i + 1, checked_mul(cf, c2));
                        }
                    };
                    walk(0, 1);
                }
                if (term.is_zero()) continue;
                any = true;
                int sgn = 1;
                if (convention == SignConvention::koszul) {
                    long e = 0;
                    for (int i = 0; i < r; ++i)
                        for (int j = i + 1; j < r; ++j) e += static_cast<long>(comp[i]) * block_deg[j];
                    if (e % 2 != 0) sgn = -1;
                }
                lhs = lhs + term * sgn;
            }

            // right side: insert mu_m of the source at position n
            Chain rhs;
            for (int m = 1; m <= std::min(d, src.max_arity()); ++m) {
                for (int n = 0; n + m <= d; ++n) {
                    // inner consumes x_{n+1}..x_{n+m} = tuple[d-n-m .. d-n-1]
                    std::vector<HomGen> inner(tuple.begin() + (d - n - m), tuple.begin() + (d - n));
                    Chain innerv = src.mu_gen(inner);
                    if (innerv.is_zero()) continue;
                    std::vector<AInftyCategory::Slot> slots;
                    for (int j = 0; j < d - n - m; ++j) slots.push_back({tuple[j], Chain(), "", ""});
                    slots.push_back({std::nullopt, innerv, inner.back().src, inner.front().dst});
                    for (int j = d - n; j < d; ++j) slots.push_back({tuple[j], Chain(), "", ""});
                    Chain term = f.eval_slots(slots);
                    if (term.is_zero()) continue;
                    any = true;
                    int sgn = (maltese(n, rdeg) % 2 == 0) ? 1 : -1;
                    rhs = rhs + term * sgn;
                }
            }

            if (!any) return;
            ++rep.tuples_checked;
            Chain diff = lhs - rhs;
            if (!diff.is_zero()) {
                rep.ok = false;
                std::ostringstream os;
                os << "(";
                for (std::size_t i = 0; i < tuple.size(); ++i)
                    os << (i ? ", " : "") << src.label(tuple[i]);
                os << ")";
                rep.witness_tuple = os.str();
                rep.lhs = lhs.str();
                rep.rhs = rhs.str();
            }
        });
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Induced product on homology.

struct HomologyClasses {
    // per (hom pair, degree): kernel basis columns that span cycles, plus the
    // boundary lattice expressed in the ambient generator coordinates
    ModulePtr module;
    int degree = 0;
    std::vector<std::vector<std::int64_t>> cycle_reps;  // ambient coords, one per class generator
    IntMatrix boundary_lattice;                         // ambient x (#boundary gens)
};

struct HomologyProductReport {
    bool ok = true;               // associativity of the induced product
    long products_checked = 0;
    long triples_checked = 0;
    std::string witness;
    // printable product table rows: "[a]*[b] = ..." strings
    std::vector<std::string> table;
};

// The induced product m([x2],[x1]) = (-1)^{|x1|} [mu_2(x2, x1)]; with the
// maltese relation signs this normalization is associative on homology.
class HomologyProduct {
  public:
    explicit HomologyProduct(AInftyCategory c) : c_(std::move(c)) {
        for (const auto& [pair, mod] : c_.homs()) {
            std::set<int> degrees;
            for (std::size_t g = 0; g < mod->rank(); ++g) degrees.insert(mod->gen(g).degree);
            for (int deg : degrees) build(pair, deg);
        }
    }

    const std::vector<HomologyClasses>& classes() const { return classes_; }

    HomologyProductReport run() const {
        struct Entry {
            const HomologyClasses* cls;
            std::size_t rep_idx;
            std::pair<std::string, std::string> pair;
        };
        std::vector<Entry> basis;
        for (const auto& cl : classes_)
            for (std::size_t i = 0; i < cl.cycle_reps.size(); ++i)
                basis.push_back({&cl, i, pair_of(cl)});

        auto product_chain = [&](const Entry& b2, const Entry& b1) -> std::optional<Chain> {
            if (b1.pair.second != b2.pair.first) return std::nullopt;  // not composable
            Chain z1 = to_chain(*b1.cls, b1.rep_idx);
            Chain z2 = to_chain(*b2.cls, b2.rep_idx);
            Chain prod;
            for (const auto& [g1, c1] : z1.terms())
                for (const auto& [g2, c2] : z2.terms()) {
                    std::vector<HomGen> args{HomGen{b2.pair.first, b2.pair.second, g2},
                                             HomGen{b1.pair.first, b1.pair.second, g1}};
                    prod = prod + c_.mu_gen(args) * checked_mul(c1, c2);
                }
            int sgn = (b1.cls->degree % 2 == 0) ? 1 : -1;
            return prod * sgn;
        };

        HomologyProductReport out;
        for (const auto& b1 : basis)
            for (const auto& b2 : basis) {
                auto p = product_chain(b2, b1);
                if (!p) continue;
                ++out.products_checked;
                out.table.push_back("[" + rep_label(b2) + "]*[" + rep_label(b1) + "] = " +
                                    (p->is_zero() ? "0" : p->str()));
            }

        // associativity on classes: compare chain-level double products up to
        // boundaries; bothland in the same hom pair and degree
        for (const auto& b1 : basis)
            for (const auto& b2 : basis)
                for (const auto& b3 : basis) {
                    if (b1.pair.second != b2.pair.first || b2.pair.second != b3.pair.first) continue;
                    auto p12 = product_chain(b2, b1);
                    auto p23 = product_chain(b3, b2);
                    if (!p12 || !p23) continue;
                    Chain left = chain_product(b3, *p12, b1.pair.first);    // (b3)(b2 b1)
                    Chain right = chain_product_rev(*p23, b1, b3.pair.second);  // (b3 b2)(b1)
                    ++out.triples_checked;
                    if (!classes_equal(left, right, b1.pair.first, b3.pair.second)) {
                        out.ok = false;
                        out.witness = "[" + rep_label(b3) + "][" + rep_label(b2) + "][" + rep_label(b1) + "]";
                        return out;
                    }
                }
        return out;
    }

  private:
    std::pair<std::string, std::string> pair_of(const HomologyClasses& cl) const {
        for (const auto& [pair, mod] : c_.homs())
            if (mod == cl.module) return pair;
        throw FixtureError("module missing from category");
    }

    std::string rep_label(const auto& b) const {
        Chain z = to_chain(*b.cls, b.rep_idx);
        return z.str();
    }

    Chain to_chain(const HomologyClasses& cl, std::size_t i) const {
        Chain z(cl.module);
        for (std::size_t g = 0; g < cl.cycle_reps[i].size(); ++g) z.add_term(g, cl.cycle_reps[i][g]);
        return z;
    }

    Chain chain_product(const auto& b_left, const Chain& right_cycle, const std::string& src_obj) const {
        // m(z_left, right_cycle) with the degree-based sign
        auto rdeg = right_cycle.homogeneous_degree();
        Chain zl = to_chain(*b_left.cls, b_left.rep_idx);
        Chain prod;
        for (const auto& [g1, c1] : right_cycle.terms())
            for (const auto& [g2, c2] : zl.terms()) {
                std::vector<HomGen> args{HomGen{b_left.pair.first, b_left.pair.second, g2},
                                         HomGen{src_obj, b_left.pair.first, g1}};
                prod = prod + c_.mu_gen(args) * checked_mul(c1, c2);
            }
        int sgn = (rdeg && *rdeg % 2 != 0) ? -1 : 1;
        return prod * sgn;
    }

    Chain chain_product_rev(const Chain& left_cycle, const auto& b_right, const std::string& dst_obj) const {
        auto ldeg = left_cycle.homogeneous_degree();
        (void)ldeg;
        Chain zr = to_chain(*b_right.cls, b_right.rep_idx);
        Chain prod;
        for (const auto& [g1, c1] : zr.terms())
            for (const auto& [g2, c2] : left_cycle.terms()) {
                std::vector<HomGen> args{HomGen{b_right.pair.second, dst_obj, g2},
                                         HomGen{b_right.pair.first, b_right.pair.second, g1}};
                prod = prod + c_.mu_gen(args) * checked_mul(c1, c2);
            }
        int sgn = (b_right.cls->degree % 2 == 0) ? 1 : -1;
        return prod * sgn;
    }

    // equality of homology classes: difference lies in the boundary lattice
    bool classes_equal(const Chain& a, const Chain& b, const std::string& src, const std::string& dst) const {
        Chain diff = a - b;
        if (diff.is_zero()) return true;
        auto deg = diff.homogeneous_degree();
        if (!deg) return false;
        for (const auto& cl : classes_) {
            if (cl.module != c_.hom(src, dst) || cl.degree != *deg) continue;
            std::vector<std::int64_t> v(cl.module->rank(), 0);
            for (const auto& [g, c] : diff.terms()) v[g] = c;
            return lattice_contains(cl.boundary_lattice, v);
        }
        // no class bucket in this degree: the chain must be an isolated boundary
        return boundary_only(diff, src, dst);
    }

    bool boundary_only(const Chain& diff, const std::string& src, const std::string& dst) const {
        auto deg = diff.homogeneous_degree();
        ModulePtr mod = c_.hom(src, dst);
        IntMatrix lat = boundary_lattice_for(mod, src, dst, *deg);
        std::vector<std::int64_t> v(mod->rank(), 0);
        for (const auto& [g, c] : diff.terms()) v[g] = c;
        return lattice_contains(lat, v);
    }

    IntMatrix boundary_lattice_for(const ModulePtr& mod, const std::string& src, const std::string& dst,
                                   int deg) const {
        IntMatrix lat(mod->rank());
        std::vector<std::vector<std::int64_t>> cols;
        for (std::size_t g = 0; g < mod->rank(); ++g) {
            if (mod->gen(g).degree != deg - 1) continue;
            Chain img = c_.mu_gen({HomGen{src, dst, g}});
            if (img.is_zero()) continue;
            std::vector<std::int64_t> col(mod->rank(), 0);
            for (const auto& [t, cf] : img.terms()) col[t] = cf;
            cols.push_back(col);
        }
        IntMatrix out(mod->rank(), std::vector<std::int64_t>(cols.size(), 0));
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < mod->rank(); ++i) out[i][j] = cols[j][i];
        return out;
    }

    void build(const std::pair<std::string, std::string>& pair, int deg) {
        ModulePtr mod = c_.hom(pair.first, pair.second);
        auto in_deg = mod->gens_in_degree(deg);
        if (in_deg.empty()) return;
        // mu_1 restricted to degree deg, rows = generators of degree deg+1
        auto out_deg = mod->gens_in_degree(deg + 1);
        IntMatrix a(out_deg.size(), std::vector<std::int64_t>(in_deg.size(), 0));
        for (std::size_t j = 0; j < in_deg.size(); ++j) {
            Chain img = c_.mu_gen({HomGen{pair.first, pair.second, in_deg[j]}});
            for (const auto& [t, cf] : img.terms()) {
                auto row = std::find(out_deg.begin(), out_deg.end(), t);
                if (row == out_deg.end()) throw FixtureError("mu_1 image escapes degree bookkeeping");
                a[static_cast<std::size_t>(row - out_deg.begin())][j] = cf;
            }
        }
        auto kb = kernel_basis(a, in_deg.size());
        HomologyClasses cl;
        cl.module = mod;
        cl.degree = deg;
        for (const auto& kv : kb) {
            std::vector<std::int64_t> ambient(mod->rank(), 0);
            for (std::size_t j = 0; j < in_deg.size(); ++j) ambient[in_deg[j]] = kv[j];
            cl.cycle_reps.push_back(ambient);
        }
        cl.boundary_lattice = boundary_lattice_for(mod, pair.first, pair.second, deg);
        if (!cl.cycle_reps.empty()) classes_.push_back(std::move(cl));
    }

    AInftyCategory c_;
    std::vector<HomologyClasses> classes_;
};

// ---------------------------------------------------------------------------
// Adapter: the Pontryagin category of a loop model as an A-infinity category.
// Cubical degrees are stored negated (C_k -> degree -k); truncation beyond the
// path-length cap is the quotient by the ideal of long paths, so the stored
// structure satisfies the relations exactly.

inline AInftyCategory ainfty_from_pontryagin(const LoopModel& m) {
    AInftyCategory c;
    for (const auto& v : m.digraph().vertices) c.add_object(v);
    for (const auto& [a, b] : m.hom_pairs()) {
        std::vector<Generator> gens;
        for (const auto& cube : m.cubes(a, b)) gens.push_back({cube.label(), -cube.dim()});
        c.set_hom(a, b, make_module(std::move(gens), a + ">" + b));
    }
    for (const auto& [a, b] : m.hom_pairs()) {
        ModulePtr hm = c.hom(a, b);
        for (const auto& cube : m.cubes(a, b)) {
            if (cube.dim() == 0) continue;
            Chain bd = m.mu1(a, b, m.gen_chain(a, b, cube));
            Chain out(hm);
            for (const auto& [g, cf] : bd.terms())
                out.add_term(*hm->index_of(bd.module()->gen(g).label), cf);
            c.set_mu({HomGen{a, b, *hm->index_of(cube.label())}}, std::move(out));
        }
    }
    for (const auto& [a, b] : m.hom_pairs())
        for (const auto& [b2, cv] : m.hom_pairs()) {
            if (b2 != b) continue;
            ModulePtr h1 = c.hom(a, b);
            ModulePtr h2 = c.hom(b, cv);
            ModulePtr ht = c.hom(a, cv);
            for (const auto& c1 : m.cubes(a, b))
                for (const auto& c2 : m.cubes(b, cv)) {
                    if (c1.path_length() + c2.path_length() > m.cap()) continue;
                    auto cat = m.concat(c1, c2);
                    if (!cat || !ht) continue;
                    auto gi = ht->index_of(cat->label());
                    if (!gi) continue;
                    std::int64_t sign = (c1.dim() % 2 == 0) ? 1 : -1;
                    std::vector<HomGen> args{HomGen{b, cv, *h2->index_of(c2.label())},
                                             HomGen{a, b, *h1->index_of(c1.label())}};
                    c.set_mu(args, Chain::unit(ht, *gi, sign));
                }
        }
    return c;
}

// flip the sign of one stored structure constant; used by perturbation tests
struct FlipSite {
    std::vector<HomGen> args;
    std::size_t target_gen = 0;
};

inline std::vector<FlipSite> flip_sites(const AInftyCategory& c) {
    std::vector<FlipSite> out;
    for (const auto& [args, chain] : c.mu_entries())
        for (const auto& [g, cf] : chain.terms()) {
            (void)cf;
            out.push_back({args, g});
        }
    return out;
}

inline AInftyCategory with_flip(const AInftyCategory& c, const FlipSite& site) {
    AInftyCategory out = c;
    Chain img = c.mu_gen(site.args);
    std::int64_t cur = img.coeff(site.target_gen);
    img.add_term(site.target_gen, checked_mul(cur, -2));  // cur -> -cur
    out.set_mu(site.args, img);
    return out;
}

}  // namespace ainf
