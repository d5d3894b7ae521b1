#pragma once
// Presented cubical sets: finite cube generators with explicit face data,
// the normalized chain complex with the alternating-sign differential
// d = sum_{k,eps} (-1)^{k+eps} d_{k,eps} (degenerate faces contribute 0),
// and the cross product of cubical chains with block-coordinate faces.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "ainf/exactalg.hpp"

namespace ainf {

struct DegenerateMarker {
    std::string of;  // cube of dimension dim-2 the face factors through
    int dir = 0;     // collapsed coordinate
    friend bool operator==(const DegenerateMarker&, const DegenerateMarker&) = default;
};

struct FaceResult {
    // either a nondegenerate cube label (dimension-1) or a degenerate marker
    std::optional<std::string> cube;
    std::optional<DegenerateMarker> degenerate;

    static FaceResult nondegenerate(std::string label) { return {std::move(label), std::nullopt}; }
    static FaceResult degenerate_on(std::string of, int dir) {
        return {std::nullopt, DegenerateMarker{std::move(of), dir}};
    }
    bool is_degenerate() const { return degenerate.has_value(); }
    friend bool operator==(const FaceResult&, const FaceResult&) = default;
};

class PresentedCubicalSet {
  public:
    struct Cube {
        std::string label;
        int dim = 0;
    };

    explicit PresentedCubicalSet(std::string name = "") : name_(std::move(name)) {}

    std::size_t add_cube(const std::string& label, int dim) {
        if (index_.count(label)) throw FixtureError("duplicate cube label '" + label + "'");
        if (dim < 0) throw FixtureError("negative cube dimension");
        index_[label] = cubes_.size();
        cubes_.push_back({label, dim});
        faces_.emplace_back();
        return cubes_.size() - 1;
    }

    // k in 1..dim, eps in {0,1}
    void set_face(const std::string& cube, int k, int eps, FaceResult r) {
        std::size_t c = require(cube);
        if (k < 1 || k > cubes_[c].dim || (eps != 0 && eps != 1))
            throw FixtureError("face index out of range on '" + cube + "'");
        faces_[c][{k, eps}] = std::move(r);
    }

    const Cube& cube(std::size_t i) const { return cubes_.at(i); }
    std::size_t size() const { return cubes_.size(); }
    const std::string& name() const { return name_; }

    std::optional<std::size_t> index_of(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    const FaceResult& face(std::size_t c, int k, int eps) const {
        auto it = faces_.at(c).find({k, eps});
        if (it == faces_[c].end())
            throw FixtureError("missing face (" + std::to_string(k) + "," + std::to_string(eps) +
                               ") of '" + cubes_[c].label + "'");
        return it->second;
    }

    // Structural validation: faces total, dimensions consistent, markers sane,
    // and the cubical face identities d_{k,e} d_{l,e'} = d_{l-1,e'} d_{k,e}
    // for k < l wherever both routes stay nondegenerate.
    struct ValidationReport {
        bool ok = true;
        std::string witness;
    };

    ValidationReport validate() const {
        for (std::size_t c = 0; c < cubes_.size(); ++c) {
            int dim = cubes_[c].dim;
            for (int k = 1; k <= dim; ++k)
                for (int eps = 0; eps <= 1; ++eps) {
                    auto it = faces_[c].find({k, eps});
                    if (it == faces_[c].end())
                        return {false, "missing face (" + std::to_string(k) + "," + std::to_string(eps) +
                                           ") of '" + cubes_[c].label + "'"};
                    const FaceResult& f = it->second;
                    if (f.is_degenerate()) {
                        if (dim < 2)
                            return {false, "degenerate face on a cube of dimension < 2: '" + cubes_[c].label + "'"};
                        auto of = index_of(f.degenerate->of);
                        if (!of || cubes_[*of].dim != dim - 2)
                            return {false, "degenerate marker of '" + cubes_[c].label +
                                               "' does not reference a (dim-2)-cube"};
                    } else {
                        auto t = index_of(*f.cube);
                        if (!t || cubes_[*t].dim != dim - 1)
                            return {false, "face of '" + cubes_[c].label + "' is not a (dim-1)-cube"};
                    }
                }
            // face identities
            for (int l = 2; l <= dim; ++l)
                for (int k = 1; k < l; ++k)
                    for (int e1 = 0; e1 <= 1; ++e1)
                        for (int e2 = 0; e2 <= 1; ++e2) {
                            const FaceResult& fl = face(c, l, e2);
                            const FaceResult& fk = face(c, k, e1);
                            if (fl.is_degenerate() || fk.is_degenerate()) continue;
                            std::size_t cl = *index_of(*fl.cube);
                            std::size_t ck = *index_of(*fk.cube);
                            const FaceResult& lhs = face(cl, k, e1);      // d_{k,e1} d_{l,e2}
                            const FaceResult& rhs = face(ck, l - 1, e2);  // d_{l-1,e2} d_{k,e1}
                            if (lhs.is_degenerate() != rhs.is_degenerate())
                                return {false, "face identity degeneracy mismatch at '" + cubes_[c].label +
                                                   "' (k=" + std::to_string(k) + ",l=" + std::to_string(l) + ")"};
                            if (!lhs.is_degenerate() && !(lhs == rhs))
                                return {false, "face identity violated at '" + cubes_[c].label +
                                                   "' (k=" + std::to_string(k) + ",l=" + std::to_string(l) +
                                                   ",e=" + std::to_string(e1) + std::to_string(e2) + ")"};
                        }
        }
        return {};
    }

  private:
    std::size_t require(const std::string& label) const {
        auto i = index_of(label);
        if (!i) throw FixtureError("unknown cube '" + label + "'");
        return *i;
    }

    std::string name_;
    std::vector<Cube> cubes_;
    std::vector<std::map<std::pair<int, int>, FaceResult>> faces_;
    std::unordered_map<std::string, std::size_t> index_;
};

// The normalized chain complex of a presented cubical set: one free module
// per degree, differential of shift -1.
class CubicalChainComplex {
  public:
    explicit CubicalChainComplex(const PresentedCubicalSet& x) : set_(&x) {
        int top = 0;
        for (std::size_t i = 0; i < x.size(); ++i) top = std::max(top, x.cube(i).dim);
        top_ = top;
        modules_.resize(top_ + 1);
        for (int d = 0; d <= top_; ++d) {
            std::vector<Generator> gens;
            for (std::size_t i = 0; i < x.size(); ++i)
                if (x.cube(i).dim == d) gens.push_back({x.cube(i).label, d});
            modules_[d] = make_module(std::move(gens), x.name() + "/C" + std::to_string(d));
        }
        diffs_.resize(top_ + 1);
        for (int d = 1; d <= top_; ++d) {
            SparseMap dd(modules_[d], modules_[d - 1], -1);
            for (std::size_t g = 0; g < modules_[d]->rank(); ++g)
                dd.set_entry(g, boundary_of(modules_[d]->gen(g).label));
            diffs_[d] = std::move(dd);
        }
    }

    int top_degree() const { return top_; }
    const ModulePtr& module(int d) const { return modules_.at(d); }

    // differential C_d -> C_{d-1}; degree 0 gets the zero map to an empty module
    SparseMap differential(int d) const {
        if (d >= 1 && d <= top_) return diffs_[d];
        ModulePtr src = (d >= 0 && d <= top_) ? modules_[d] : empty_module();
        ModulePtr dst = (d - 1 >= 0 && d - 1 <= top_) ? modules_[d - 1] : empty_module();
        return SparseMap(src, dst, -1);
    }

    Chain boundary_of(const std::string& label) const {
        auto ci = set_->index_of(label);
        if (!ci) throw FixtureError("unknown cube '" + label + "'");
        int dim = set_->cube(*ci).dim;
        Chain out(dim >= 1 ? modules_[dim - 1] : empty_module());
        for (int k = 1; k <= dim; ++k)
            for (int eps = 0; eps <= 1; ++eps) {
                const FaceResult& f = set_->face(*ci, k, eps);
                if (f.is_degenerate()) continue;
                auto gi = modules_[dim - 1]->index_of(*f.cube);
                if (!gi) throw FixtureError("face label '" + *f.cube + "' missing from chain module");
                out.add_term(*gi, ((k + eps) % 2 == 0) ? 1 : -1);
            }
        return out;
    }

    Chain boundary(const Chain& c) const {
        auto deg = c.homogeneous_degree();
        if (!deg) {
            if (c.is_zero()) return Chain(empty_module());
            throw FixtureError("boundary of inhomogeneous chain");
        }
        return differential(*deg).apply(c);
    }

    HomologySummary homology_in_degree(int d) const {
        return ainf::homology(differential(d + 1), differential(d));
    }

    struct CheckReport {
        bool ok = true;
        std::string witness;
    };

    // d.d = 0 over every generator, exact integers.
    CheckReport check_square_zero() const {
        for (int d = 2; d <= top_; ++d) {
            SparseMap dd = compose(differential(d - 1), differential(d));
            for (std::size_t g = 0; g < modules_[d]->rank(); ++g)
                if (!dd.apply_gen(g).is_zero())
                    return {false, "d*d != 0 on '" + modules_[d]->gen(g).label +
                                       "': " + dd.apply_gen(g).str()};
        }
        return {};
    }

    static ModulePtr empty_module() {
        static ModulePtr m = make_module({}, "0");
        return m;
    }

  private:
    const PresentedCubicalSet* set_;
    int top_ = 0;
    std::vector<ModulePtr> modules_;
    std::vector<SparseMap> diffs_;
};

struct ComplexCheckReport {
    bool ok = true;
    std::string witness;
};

// Validates face identities and d.d = 0; failures are report content.
inline ComplexCheckReport check_complex(const PresentedCubicalSet& x) {
    auto v = x.validate();
    if (!v.ok) return {false, v.witness};
    CubicalChainComplex c(x);
    auto s = c.check_square_zero();
    if (!s.ok) return {false, s.witness};
    return {};
}

// ---------------------------------------------------------------------------
// Products. Cube labels in a product presentation are flattened tuples, so
// iterated products are literally associative at the level of labels.

inline std::string joined_label(const std::vector<std::string>& parts) {
    std::ostringstream os;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) os << ",";
        os << parts[i];
    }
    return os.str();
}

// Product presentation of several factors: cubes are tuples, faces act on the
// corresponding coordinate block (first factor owns coordinates 1..dim_1).
inline PresentedCubicalSet product_set(const std::vector<const PresentedCubicalSet*>& factors) {
    std::vector<std::string> names;
    for (auto* f : factors) names.push_back(f->name());
    PresentedCubicalSet out(joined_label(names));

    // enumerate tuples
    std::vector<std::size_t> idx(factors.size(), 0);
    std::vector<std::vector<std::size_t>> tuples;
    std::function<void(std::size_t)> rec = [&](std::size_t pos) {
        if (pos == factors.size()) {
            tuples.push_back(idx);
            return;
        }
        for (std::size_t i = 0; i < factors[pos]->size(); ++i) {
            idx[pos] = i;
            rec(pos + 1);
        }
    };
    if (!factors.empty()) rec(0);

    auto tuple_label = [&](const std::vector<std::size_t>& t) {
        std::vector<std::string> parts;
        for (std::size_t p = 0; p < t.size(); ++p) parts.push_back(factors[p]->cube(t[p]).label);
        return joined_label(parts);
    };

    for (const auto& t : tuples) {
        int dim = 0;
        for (std::size_t p = 0; p < t.size(); ++p) dim += factors[p]->cube(t[p]).dim;
        out.add_cube(tuple_label(t), dim);
    }
    for (const auto& t : tuples) {
        std::string label = tuple_label(t);
        int offset = 0;
        for (std::size_t p = 0; p < t.size(); ++p) {
            int dp = factors[p]->cube(t[p]).dim;
            for (int k = 1; k <= dp; ++k)
                for (int eps = 0; eps <= 1; ++eps) {
                    const FaceResult& f = factors[p]->face(t[p], k, eps);
                    std::vector<std::string> parts;
                    for (std::size_t q = 0; q < t.size(); ++q) parts.push_back(factors[q]->cube(t[q]).label);
                    if (f.is_degenerate()) {
                        parts[p] = f.degenerate->of;
                        out.set_face(label, offset + k, eps,
                                     FaceResult::degenerate_on(joined_label(parts), offset + f.degenerate->dir));
                    } else {
                        parts[p] = *f.cube;
                        out.set_face(label, offset + k, eps, FaceResult::nondegenerate(joined_label(parts)));
                    }
                }
            offset += dp;
        }
    }
    return out;
}

// Bilinear cross product C_p(X) x C_q(Y) -> C_{p+q}(X x Y). The product
// complex must come from product_set({X, Y}) (same generator labels).
inline Chain cross(const Chain& a, const Chain& b, const CubicalChainComplex& product_complex,
                   const PresentedCubicalSet& /*xy*/) {
    auto da = a.homogeneous_degree();
    auto db = b.homogeneous_degree();
    if ((!da && !a.is_zero()) || (!db && !b.is_zero()))
        throw FixtureError("cross of inhomogeneous chains");
    if (a.is_zero() || b.is_zero()) return Chain(CubicalChainComplex::empty_module());
    int dim = *da + *db;
    Chain out(product_complex.module(dim));
    for (const auto& [ga, ca] : a.terms())
        for (const auto& [gb, cb] : b.terms()) {
            std::string label =
                joined_label({a.module()->gen(ga).label, b.module()->gen(gb).label});
            auto gi = product_complex.module(dim)->index_of(label);
            if (!gi) throw FixtureError("product cube '" + label + "' not present");
            out.add_term(*gi, checked_mul(ca, cb));
        }
    return out;
}

}  // namespace ainf
