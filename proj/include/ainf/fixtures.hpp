#pragma once
// Built-in fixtures: small categories and functors with hand-verified
// structure constants, plus seeded random generators used by the CLI and the
// acceptance suite.

#include <string>
#include <vector>

#include "ainf/ainfty.hpp"

namespace ainf::fixtures {

// One object, hom = Z in degree 0, mu_2 = multiplication: the integers as a ring.
inline AInftyCategory integers_ring() {
    AInftyCategory c;
    c.add_object("pt");
    c.set_hom("pt", "pt", make_module({{"1", 0}}, "Z"));
    ModulePtr h = c.hom("pt", "pt");
    c.set_mu({HomGen{"pt", "pt", 0}, HomGen{"pt", "pt", 0}}, Chain::unit(h, 0));
    return c;
}

// Transfer of a contraction computed by hand (homological perturbation):
// one object, generators a(1), b1(2), b2(2), c(3) with
//   mu_1(b1) = c, mu_2(a,a) = b2, mu_2(a,b2) = c, mu_3(a,a,a) = -b1.
// Chain-level mu_2 is not associative (mu_2(a, mu_2(a,a)) = c while
// mu_2(mu_2(a,a), a) = 0); the relations close through mu_1 mu_3. On
// cohomology [a]^2 = [b2] and [a][b2] = [c] = 0, an associative ring.
inline AInftyCategory transferred_mu3() {
    AInftyCategory c;
    c.add_object("pt");
    c.set_hom("pt", "pt", make_module({{"a", 1}, {"b1", 2}, {"b2", 2}, {"c", 3}}, "T"));
    ModulePtr h = c.hom("pt", "pt");
    auto g = [&](std::size_t i) { return HomGen{"pt", "pt", i}; };
    const std::size_t a = 0, b1 = 1, b2 = 2, cc = 3;
    c.set_mu({g(b1)}, Chain::unit(h, cc));                    // mu_1 b1 = c
    c.set_mu({g(a), g(a)}, Chain::unit(h, b2));               // mu_2(a,a) = b2
    c.set_mu({g(a), g(b2)}, Chain::unit(h, cc));              // mu_2(a,b2) = c
    c.set_mu({g(a), g(a), g(a)}, Chain::unit(h, b1, -1));     // mu_3(a,a,a) = -b1
    return c;
}

// The quotient dga B = Lambda(x,y,z) / (xz, yz, xyz) with dz = xy, written as
// an A-infinity category via mu_2(beta, alpha) = (-1)^{|alpha|} alpha.beta.
// Basis: 1(0), x(1), y(1), z(1), xy(2). Nonzero products of basis elements:
// unit products, x.y = xy, y.x = -xy.
inline AInftyCategory lambda_quotient_dga() {
    AInftyCategory c;
    c.add_object("pt");
    c.set_hom("pt", "pt", make_module({{"1", 0}, {"x", 1}, {"y", 1}, {"z", 1}, {"xy", 2}}, "B"));
    ModulePtr h = c.hom("pt", "pt");
    const std::size_t one = 0, x = 1, y = 2, z = 3, xy = 4;
    auto g = [&](std::size_t i) { return HomGen{"pt", "pt", i}; };
    c.set_mu({g(z)}, Chain::unit(h, xy));  // dz = xy

    auto set_prod = [&](std::size_t b, std::size_t a, std::size_t out, std::int64_t coeff) {
        // mu_2(b, a) = (-1)^{|a|} (a . b) = coeff * out, coeff already signed
        c.set_mu({g(b), g(a)}, Chain::unit(h, out, coeff));
    };
    // products with the unit: a.1 = 1.a = a
    for (std::size_t v : {one, x, y, z, xy}) {
        int deg = h->gen(v).degree;
        set_prod(v, one, v, 1);                              // mu_2(v, 1) = (+1) 1.v
        if (v != one) set_prod(one, v, v, deg % 2 ? -1 : 1);  // mu_2(1, v) = (-1)^{|v|} v.1
    }
    // x.y = xy and y.x = -xy; both arguments odd, so mu_2 carries (-1)^1
    set_prod(y, x, xy, -1);  // mu_2(y, x) = -(x.y) = -xy
    set_prod(x, y, xy, 1);   // mu_2(x, y) = -(y.x) = +xy
    return c;
}

// Cohomology of lambda_quotient_dga: 1(0), X(1), Y(1); only unit products.
inline AInftyCategory lambda_quotient_cohomology() {
    AInftyCategory c;
    c.add_object("pt");
    c.set_hom("pt", "pt", make_module({{"1", 0}, {"X", 1}, {"Y", 1}}, "H"));
    ModulePtr h = c.hom("pt", "pt");
    const std::size_t one = 0, X = 1, Y = 2;
    auto g = [&](std::size_t i) { return HomGen{"pt", "pt", i}; };
    for (std::size_t v : {one, X, Y}) {
        int deg = h->gen(v).degree;
        c.set_mu({g(v), g(one)}, Chain::unit(h, v, 1));
        if (v != one) c.set_mu({g(one), g(v)}, Chain::unit(h, v, deg % 2 ? -1 : 1));
    }
    return c;
}

// The transfer functor of the contraction of lambda_quotient_dga onto its
// cohomology (h(xy) = z): F^1 = inclusion, F^2(X,Y) = -z, F^2(Y,X) = z.
// Verified against the functor relations by hand before freezing.
struct FunctorFixture {
    AInftyCategory source, target;
    AInftyFunctorData functor;  // points at source/target above
};

inline FunctorFixture transfer_functor() {
    FunctorFixture f;
    f.source = lambda_quotient_cohomology();
    f.target = lambda_quotient_dga();
    f.functor.source = &f.source;
    f.functor.target = &f.target;
    f.functor.object_map = {{"pt", "pt"}};
    ModulePtr hs = f.source.hom("pt", "pt");
    ModulePtr ht = f.target.hom("pt", "pt");
    auto gs = [&](const char* l) { return HomGen{"pt", "pt", *hs->index_of(l)}; };
    auto unit_t = [&](const char* l, std::int64_t k) { return Chain::unit(ht, *ht->index_of(l), k); };
    f.functor.set_entry({gs("1")}, unit_t("1", 1));
    f.functor.set_entry({gs("X")}, unit_t("x", 1));
    f.functor.set_entry({gs("Y")}, unit_t("y", 1));
    f.functor.set_entry({gs("X"), gs("Y")}, unit_t("z", -1));
    f.functor.set_entry({gs("Y"), gs("X")}, unit_t("z", 1));
    return f;
}

// A chain map that is not multiplicative: source and target both the
// polynomial-free dga on one degree-0 idempotent-like generator; F^1 doubles.
inline FunctorFixture broken_multiplicative_functor() {
    FunctorFixture f;
    auto make = [&]() {
        AInftyCategory c;
        c.add_object("pt");
        c.set_hom("pt", "pt", make_module({{"e", 0}}, "E"));
        ModulePtr h = c.hom("pt", "pt");
        c.set_mu({HomGen{"pt", "pt", 0}, HomGen{"pt", "pt", 0}}, Chain::unit(h, 0));
        return c;
    };
    f.source = make();
    f.target = make();
    f.functor.source = &f.source;
    f.functor.target = &f.target;
    f.functor.object_map = {{"pt", "pt"}};
    ModulePtr ht = f.target.hom("pt", "pt");
    f.functor.set_entry({HomGen{"pt", "pt", 0}}, Chain::unit(ht, 0, 2));  // e -> 2e
    return f;
}

// Identity-like functor on any DG category: F^1 = id, F^{>=2} = 0.
inline AInftyFunctorData identity_functor(const AInftyCategory& c) {
    AInftyFunctorData f;
    f.source = &c;
    f.target = &c;
    for (const auto& o : c.objects()) f.object_map[o] = o;
    for (const auto& [pair, mod] : c.homs())
        for (std::size_t g = 0; g < mod->rank(); ++g)
            f.set_entry({HomGen{pair.first, pair.second, g}}, Chain::unit(mod, g));
    return f;
}

// Path category of the linear quiver o_0 -> o_1 -> ... -> o_{n-1}, all edges
// in degree 1, mu_2 = signed composition. Every mu_2 constant participates in
// a triple relation, which makes it the canonical flip-sensitivity fixture.
inline AInftyCategory linear_quiver_dg(int n_objects = 5, int max_path = 4);

// Random DG category: the path category of a random acyclic quiver (linear
// backbone plus random shortcuts) with mu_2 = signed path composition and a
// few two-term differential pairs that multiply to zero. Deterministic for a
// fixed seed.
inline AInftyCategory random_dg(std::uint64_t seed, int n_objects = 4, int n_edges = 6,
                                int max_path = 3) {
    Rng rng(seed);
    AInftyCategory c;
    std::vector<std::string> objs;
    for (int i = 0; i < n_objects; ++i) {
        objs.push_back("o" + std::to_string(i));
        c.add_object(objs.back());
    }
    struct Edge {
        int src, dst, deg;
        std::string label;
    };
    std::vector<Edge> edges;
    // linear backbone guarantees composable chains; extra edges are random
    for (int i = 0; i + 1 < n_objects; ++i)
        edges.push_back({i, i + 1, static_cast<int>(rng.range(0, 2)), "f" + std::to_string(i)});
    for (int e = 0; e < n_edges - (n_objects - 1); ++e) {
        int a = static_cast<int>(rng.below(n_objects - 1));
        int b = a + 1 + static_cast<int>(rng.below(n_objects - a - 1));
        edges.push_back({a, b, static_cast<int>(rng.range(0, 2)),
                         "g" + std::to_string(e)});
    }
    // paths up to max_path edges; label = composition, degree = sum
    struct Path {
        std::vector<int> es;
        int src, dst, deg;
        std::string label;
    };
    std::vector<Path> paths;
    std::function<void(Path)> grow = [&](Path p) {
        paths.push_back(p);
        if (static_cast<int>(p.es.size()) >= max_path) return;
        for (std::size_t e = 0; e < edges.size(); ++e)
            if (edges[e].src == p.dst) {
                Path q = p;
                q.es.push_back(static_cast<int>(e));
                q.dst = edges[e].dst;
                q.deg += edges[e].deg;
                q.label += (q.label.empty() ? "" : "*") + edges[e].label;
                grow(q);
            }
    };
    for (std::size_t e = 0; e < edges.size(); ++e)
        grow({{static_cast<int>(e)}, edges[e].src, edges[e].dst, edges[e].deg, edges[e].label});

    // hom modules; a couple of two-term differential pairs u -> v ride along,
    // multiplying to zero with everything (Leibniz holds trivially for them)
    std::map<std::pair<std::string, std::string>, std::vector<Generator>> gens;
    for (const auto& p : paths) gens[{objs[p.src], objs[p.dst]}].push_back({p.label, p.deg});
    int n_pairs = 2;
    std::vector<std::pair<std::pair<std::string, std::string>, std::string>> diff_pairs;
    for (int t = 0; t < n_pairs; ++t) {
        int a = static_cast<int>(rng.below(n_objects));
        int b = static_cast<int>(rng.below(n_objects));
        int deg = static_cast<int>(rng.range(0, 2));
        std::string u = "u" + std::to_string(t), v = "v" + std::to_string(t);
        auto key = std::make_pair(objs[a], objs[b]);
        gens[key].push_back({u, deg});
        gens[key].push_back({v, deg + 1});
        diff_pairs.push_back({key, u});
    }
    for (auto& [pair, gl] : gens) c.set_hom(pair.first, pair.second, make_module(gl, pair.first + ">" + pair.second));
    for (auto& [key, u] : diff_pairs) {
        ModulePtr h = c.hom(key.first, key.second);
        std::string v = "v" + u.substr(1);
        c.set_mu({HomGen{key.first, key.second, *h->index_of(u)}}, Chain::unit(h, *h->index_of(v)));
    }

    // mu_2(q, p) = (-1)^{|p|} (p then q) whenever the composite stays in range
    for (const auto& p : paths)
        for (const auto& q : paths) {
            if (p.dst != q.src) continue;
            if (static_cast<int>(p.es.size() + q.es.size()) > max_path) continue;
            std::string comp_label = p.label + "*" + q.label;
            ModulePtr ht = c.hom(objs[p.src], objs[q.dst]);
            auto gi = ht->index_of(comp_label);
            if (!gi) continue;
            ModulePtr h1 = c.hom(objs[p.src], objs[p.dst]);
            ModulePtr h2 = c.hom(objs[q.src], objs[q.dst]);
            std::vector<HomGen> args{HomGen{objs[q.src], objs[q.dst], *h2->index_of(q.label)},
                                     HomGen{objs[p.src], objs[p.dst], *h1->index_of(p.label)}};
            c.set_mu(args, Chain::unit(ht, *gi, p.deg % 2 == 0 ? 1 : -1));
        }
    return c;
}

// Flip sites of a Pontryagin-adapter category that must be detectable by the
// relation checker. A flipped constant is detectable when it enters some
// in-cap relation exactly once:
//   - mu_2 sites with a positive-dimensional factor fail Leibniz directly;
//   - 0-cube mu_2 sites need a nonempty composable third path within the cap
//     (empty-path partners hit the site twice and cancel);
//   - mu_1 sites need a nonempty composable partner within the cap.
inline std::vector<FlipSite> eligible_pontryagin_flips(const LoopModel& m, const AInftyCategory& c) {
    auto has_partner = [&](const std::string& src, const std::string& dst, int len) {
        for (const auto& e : m.digraph().edges)
            if ((e.dst == src || e.src == dst) && len + 1 <= m.cap()) return true;
        return false;
    };
    std::vector<FlipSite> out;
    for (const auto& s : flip_sites(c)) {
        if (s.args.size() == 1) {
            const auto& g = s.args[0];
            if (-c.degree(g) >= 2) {  // dd = 0 at the cube itself sees the flip
                out.push_back(s);
                continue;
            }
            int len = m.cube_by_label(g.src, g.dst, c.label(g)).path_length();
            if (has_partner(g.src, g.dst, len)) out.push_back(s);
        } else if (s.args.size() == 2) {
            const auto& g2 = s.args[0];
            const auto& g1 = s.args[1];
            int dim = -c.degree(g1) - c.degree(g2);  // adapter stores negated dims
            if (dim >= 1) {
                out.push_back(s);
                continue;
            }
            int len = m.cube_by_label(g1.src, g1.dst, c.label(g1)).path_length() +
                      m.cube_by_label(g2.src, g2.dst, c.label(g2)).path_length();
            if (has_partner(g1.src, g2.dst, len)) out.push_back(s);
        }
    }
    return out;
}

// Random digraph with declared squares: each square gets its own pair of
// middle vertices between two endpoints, so it is valid by construction; a
// few tail edges create longer composable paths.
inline Digraph random_digraph(std::uint64_t seed, int n_anchor = 3, int n_squares = 2,
                              int n_tails = 2) {
    Rng rng(seed);
    Digraph g;
    for (int i = 0; i < n_anchor; ++i) g.vertices.push_back("v" + std::to_string(i));
    int next_edge = 0;
    for (int s = 0; s < n_squares; ++s) {
        int a = static_cast<int>(rng.below(n_anchor));
        int b = static_cast<int>(rng.below(n_anchor));
        std::string m1 = "m" + std::to_string(2 * s), m2 = "m" + std::to_string(2 * s + 1);
        g.vertices.push_back(m1);
        g.vertices.push_back(m2);
        auto e = [&](const std::string& src, const std::string& dst) {
            std::string id = "e" + std::to_string(next_edge++);
            g.edges.push_back({id, src, dst});
            return id;
        };
        std::string t1 = e(g.vertices[a], m1), t2 = e(m1, g.vertices[b]);
        std::string b1 = e(g.vertices[a], m2), b2 = e(m2, g.vertices[b]);
        g.squares.push_back({"S" + std::to_string(s), {t1, t2}, {b1, b2}});
    }
    for (int t = 0; t < n_tails; ++t) {
        int a = static_cast<int>(rng.below(n_anchor));
        int b = static_cast<int>(rng.below(n_anchor));
        g.edges.push_back({"t" + std::to_string(t), g.vertices[a], g.vertices[b]});
    }
    return g;
}

// library pieces for random cubical sets
inline PresentedCubicalSet piece_interval() {
    PresentedCubicalSet x("I");
    x.add_cube("v0", 0);
    x.add_cube("v1", 0);
    x.add_cube("e", 1);
    x.set_face("e", 1, 0, FaceResult::nondegenerate("v0"));
    x.set_face("e", 1, 1, FaceResult::nondegenerate("v1"));
    return x;
}

inline PresentedCubicalSet piece_circle() {
    PresentedCubicalSet x("S1");
    x.add_cube("v", 0);
    x.add_cube("s", 1);
    x.set_face("s", 1, 0, FaceResult::nondegenerate("v"));
    x.set_face("s", 1, 1, FaceResult::nondegenerate("v"));
    return x;
}

inline PresentedCubicalSet piece_torus() {
    PresentedCubicalSet x("T2");
    x.add_cube("v", 0);
    x.add_cube("a", 1);
    x.add_cube("b", 1);
    x.add_cube("F", 2);
    for (const char* c : {"a", "b"}) {
        x.set_face(c, 1, 0, FaceResult::nondegenerate("v"));
        x.set_face(c, 1, 1, FaceResult::nondegenerate("v"));
    }
    x.set_face("F", 1, 0, FaceResult::nondegenerate("a"));
    x.set_face("F", 1, 1, FaceResult::nondegenerate("a"));
    x.set_face("F", 2, 0, FaceResult::nondegenerate("b"));
    x.set_face("F", 2, 1, FaceResult::nondegenerate("b"));
    return x;
}

// Random presented cubical set: a product of library pieces and a loop-model
// morphism complex, capped at 4-dimensional cubes and 200 generators.
inline PresentedCubicalSet random_cubical_set(std::uint64_t seed) {
    Rng rng(seed);
    std::vector<PresentedCubicalSet> owned;
    owned.reserve(4);

    // one loop-space complex from a random digraph
    Digraph g = random_digraph(seed ^ 0x5eedULL, 2, 1, 1);
    LoopModel m = from_digraph_with_squares(g, 4);
    const PresentedCubicalSet* omega = nullptr;
    std::size_t best = 0;
    for (const auto& [a, b] : m.hom_pairs()) {
        const auto* s = m.set(a, b);
        if (s->size() > best) {
            best = s->size();
            omega = s;
        }
    }

    int dim_budget = 4, size_budget = 200;
    std::vector<const PresentedCubicalSet*> factors;
    auto piece_dim = [](const PresentedCubicalSet& p) {
        int d = 0;
        for (std::size_t i = 0; i < p.size(); ++i) d = std::max(d, p.cube(i).dim);
        return d;
    };
    if (omega && static_cast<int>(best) <= 40) {
        factors.push_back(omega);
        dim_budget -= piece_dim(*omega);
        size_budget /= static_cast<int>(best);
    }
    while (dim_budget > 0 && size_budget > 4) {
        int which = static_cast<int>(rng.below(3));
        PresentedCubicalSet p = which == 0 ? piece_interval() : which == 1 ? piece_circle() : piece_torus();
        int pd = piece_dim(p);
        if (pd > dim_budget) continue;
        owned.push_back(std::move(p));
        dim_budget -= pd;
        size_budget /= static_cast<int>(owned.back().size());
        if (rng.below(4) == 0) break;
    }
    for (const auto& p : owned) factors.push_back(&p);
    if (factors.empty()) {
        owned.push_back(piece_torus());
        factors.push_back(&owned.back());
    }
    return product_set(factors);
}

inline AInftyCategory linear_quiver_dg(int n_objects, int max_path) {
    AInftyCategory c;
    std::vector<std::string> objs;
    for (int i = 0; i < n_objects; ++i) {
        objs.push_back("o" + std::to_string(i));
        c.add_object(objs.back());
    }
    // paths are intervals [i, j); label f_i*...*f_{j-1}, degree j - i
    auto label_of = [&](int i, int j) {
        std::string l;
        for (int e = i; e < j; ++e) l += (l.empty() ? "" : "*") + ("f" + std::to_string(e));
        return l;
    };
    for (int i = 0; i < n_objects; ++i)
        for (int j = i + 1; j < n_objects; ++j) {
            if (j - i > max_path) continue;
            c.set_hom(objs[i], objs[j], make_module({{label_of(i, j), j - i}}, objs[i] + ">" + objs[j]));
        }
    for (int i = 0; i < n_objects; ++i)
        for (int k = i + 1; k < n_objects; ++k)
            for (int j = k + 1; j < n_objects; ++j) {
                if (j - i > max_path || k - i > max_path || j - k > max_path) continue;
                ModulePtr h1 = c.hom(objs[i], objs[k]);
                ModulePtr h2 = c.hom(objs[k], objs[j]);
                ModulePtr ht = c.hom(objs[i], objs[j]);
                std::vector<HomGen> args{HomGen{objs[k], objs[j], 0}, HomGen{objs[i], objs[k], 0}};
                (void)h1;
                (void)h2;
                c.set_mu(args, Chain::unit(ht, 0, (k - i) % 2 == 0 ? 1 : -1));
            }
    return c;
}

}  // namespace ainf::fixtures
