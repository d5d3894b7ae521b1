// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <ainf/ainfty.hpp>
#include <ainf/branes.hpp>
#include <ainf/c0bound.hpp>
#include <ainf/cubical.hpp>
#include <ainf/fixtures.hpp>
#include <ainf/json_io.hpp>
#include <ainf/strata.hpp>

using namespace ainf;
using Clock = std::chrono::steady_clock;

namespace {

struct Harness {
    int failures = 0;

    void criterion(int number, const std::string& label, const std::function<bool(std::string&)>& fn) {
        std::string detail;
        bool ok = false;
        auto t0 = Clock::now();
        try {
            ok = fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        std::printf("criterion %d: %s — %s (%.2fs)%s%s\n", number, ok ? "PASS" : "FAIL", label.c_str(),
                    secs, detail.empty() ? "" : " | ", detail.c_str());
        if (!ok) ++failures;
    }
};

double elapsed(const Clock::time_point& t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main() {
    Harness h;

    // 1. chain-level exactness on generated cubical fixtures, < 5 s
    h.criterion(1, "dd = 0 on 20 generated cubical fixtures (<= 4-cubes, <= 200 generators)",
                [&](std::string& detail) {
                    auto t0 = Clock::now();
                    // fixture 0 guarantees a 4-cube: torus x torus
                    PresentedCubicalSet t1 = fixtures::piece_torus(), t2 = fixtures::piece_torus();
                    PresentedCubicalSet tt = product_set({&t1, &t2});
                    int four_cubes = 0;
                    std::vector<PresentedCubicalSet> sets;
                    sets.push_back(std::move(tt));
                    for (int i = 1; i < 20; ++i) sets.push_back(fixtures::random_cubical_set(1000 + i));
                    for (const auto& x : sets) {
                        if (x.size() > 200) {
                            detail = "fixture too large";
                            return false;
                        }
                        int top = 0;
                        for (std::size_t c = 0; c < x.size(); ++c) top = std::max(top, x.cube(c).dim);
                        if (top > 4) {
                            detail = "fixture above 4-cubes";
                            return false;
                        }
                        if (top == 4) ++four_cubes;
                        auto r = check_complex(x);
                        if (!r.ok) {
                            detail = r.witness;
                            return false;
                        }
                    }
                    double secs = elapsed(t0);
                    std::ostringstream os;
                    os << sets.size() << " fixtures, " << four_cubes << " with 4-cubes, " << secs << "s";
                    detail = os.str();
                    return four_cubes >= 1 && secs < 5.0;
                });

    // 2. pontryagin identities + 100% perturbation detection
    h.criterion(2, "three-term identity on >= 10 digraph seeds; all injected sign flips detected",
                [&](std::string& detail) {
                    long pairs = 0;
                    int injected = 0, detected = 0;
                    for (int i = 0; i < 10; ++i) {
                        LoopModel m = from_digraph_with_squares(fixtures::random_digraph(40 + i), 6);
                        auto r = check_dg_identity(m);
                        if (!r.ok) {
                            detail = r.witness;
                            return false;
                        }
                        pairs += r.pairs_checked;
                        ++injected;
                        if (!check_dg_identity(m, /*sign_flip=*/true).ok) ++detected;
                        AInftyCategory c = ainfty_from_pontryagin(m);
                        auto sites = fixtures::eligible_pontryagin_flips(m, c);
                        Rng pick(90 + i);
                        for (int t = 0; t < 2 && !sites.empty(); ++t) {
                            ++injected;
                            if (!check_ainfty(with_flip(c, sites[pick.below(sites.size())]), 3).ok)
                                ++detected;
                        }
                    }
                    std::ostringstream os;
                    os << pairs << " pairs, " << detected << "/" << injected << " flips detected";
                    detail = os.str();
                    return pairs > 0 && injected > 10 && injected == detected;
                });

    // 3. A-infinity checker soundness, d <= 4, < 10 s
    h.criterion(3, "relation checker accepts DG/transferred fixtures and rejects every single flip",
                [&](std::string& detail) {
                    auto t0 = Clock::now();
                    if (!check_ainfty(fixtures::integers_ring(), 4).ok) return false;
                    if (!check_ainfty(fixtures::lambda_quotient_dga(), 4).ok) return false;
                    if (!check_ainfty(fixtures::transferred_mu3(), 4).ok) return false;
                    for (int i = 0; i < 3; ++i)
                        if (!check_ainfty(fixtures::random_dg(60 + i), 4).ok) return false;
                    int injected = 0, detected = 0;
                    AInftyCategory t = fixtures::transferred_mu3();
                    for (const auto& s : flip_sites(t)) {
                        ++injected;
                        if (!check_ainfty(with_flip(t, s), 4).ok) ++detected;
                    }
                    AInftyCategory q = fixtures::linear_quiver_dg(5, 4);
                    if (!check_ainfty(q, 4).ok) return false;
                    for (const auto& s : flip_sites(q)) {
                        ++injected;
                        if (!check_ainfty(with_flip(q, s), 4).ok) ++detected;
                    }
                    double secs = elapsed(t0);
                    std::ostringstream os;
                    os << detected << "/" << injected << " flips rejected, " << secs << "s";
                    detail = os.str();
                    return injected > 0 && injected == detected && secs < 10.0;
                });

    // 4. homology-level associativity with a nonzero mu_3
    h.criterion(4, "mu_3 fixture: chain product non-associative, homology product associative",
                [&](std::string& detail) {
                    AInftyCategory t = fixtures::transferred_mu3();
                    ModulePtr hm = t.hom("pt", "pt");
                    auto g = [&](const char* l) { return HomGen{"pt", "pt", *hm->index_of(l)}; };
                    Chain left = t.mu_gen({g("b2"), g("a")});
                    Chain right = t.mu_gen({g("a"), g("b2")});
                    if (left == right) {
                        detail = "chain product unexpectedly associative";
                        return false;
                    }
                    bool has_mu3 = false;
                    for (const auto& [args, img] : t.mu_entries()) {
                        (void)img;
                        if (args.size() == 3) has_mu3 = true;
                    }
                    if (!has_mu3) return false;
                    HomologyProduct hp(t);
                    auto rep = hp.run();
                    std::ostringstream os;
                    os << rep.products_checked << " products, " << rep.triples_checked << " triples";
                    detail = os.str();
                    return rep.ok && rep.products_checked > 0;
                });

    // 5. strata counts
    h.criterion(5, "Z4 and R3 have 2 codim-1 strata; dim_Z = d-1 (d <= 10); facet counts match (d <= 7)",
                [&](std::string& detail) {
                    if (codim1_Z(2).size() != 2) return false;
                    if (codim1_R(3).size() != 2) return false;
                    for (int d = 1; d <= 10; ++d)
                        if (dim_Z(d) != d - 1) return false;
                    for (int d = 3; d <= 7; ++d) {
                        int two = 0;
                        for (const auto& t : all_trees(d))
                            if (t.internal_vertices() == 2) ++two;
                        if (two != static_cast<int>(codim1_R(d).size())) {
                            detail = "facet mismatch at d = " + std::to_string(d);
                            return false;
                        }
                    }
                    detail = "counts verified";
                    return true;
                });

    // 6. mod-2 dd on the strata, < 30 s, plus the signed diagnostic
    h.criterion(6, "mod-2 dd = 0 on Z strata (d <= 4); signed residue diagnostic produced (d <= 3)",
                [&](std::string& detail) {
                    auto t0 = Clock::now();
                    for (int d = 1; d <= 4; ++d) {
                        auto r = mod2_dd_check(d);
                        if (!r.ok) {
                            detail = r.witness;
                            return false;
                        }
                    }
                    // formal mapping-moduli version, random degrees
                    Rng rng(77);
                    std::vector<std::string> universe{"x1", "x2"};
                    for (int d = 1; d <= 4; ++d) {
                        DegreeAssignment deg;
                        std::vector<std::string> segs;
                        for (int i = 0; i < d; ++i) {
                            segs.push_back("s" + std::to_string(i));
                            deg.cube_dim[segs.back()] = static_cast<int>(rng.range(0, 2));
                        }
                        deg.chord_deg["out"] = static_cast<int>(rng.range(0, 2));
                        for (const auto& u : universe) deg.chord_deg[u] = static_cast<int>(rng.range(0, 2));
                        if (!dd_residues(segs, "out", deg, universe).mod2_zero) {
                            detail = "formal mod-2 dd failed at d = " + std::to_string(d);
                            return false;
                        }
                    }
                    // signed diagnostic for d <= 3: must be produced, never gates
                    int residue_rows = 0;
                    for (int d = 1; d <= 3; ++d) {
                        DegreeAssignment deg;
                        std::vector<std::string> segs;
                        for (int i = 0; i < d; ++i) {
                            segs.push_back("s" + std::to_string(i));
                            deg.cube_dim[segs.back()] = 1;
                        }
                        deg.chord_deg["out"] = 1;
                        for (const auto& u : universe) deg.chord_deg[u] = 0;
                        auto r = dd_residues(segs, "out", deg, universe);
                        residue_rows += r.codim2_terms;
                    }
                    double secs = elapsed(t0);
                    std::ostringstream os;
                    os << "diagnostic rows " << residue_rows << ", " << secs << "s";
                    detail = os.str();
                    return residue_rows > 0 && secs < 30.0;
                });

    // 7. branes
    h.criterion(7, "squared-phase invariance (1e-9, 1000 frames), winding 1, chord torsor shift",
                [&](std::string& detail) {
                    Rng rng(5);
                    double worst = 0;
                    for (int trial = 0; trial < 1000; ++trial) {
                        int n = 1 + static_cast<int>(rng.below(4));
                        std::vector<std::vector<complexd>> u(n, std::vector<complexd>(n));
                        for (int j = 0; j < n; ++j) {
                            for (int i = 0; i < n; ++i) u[j][i] = {rng.unit() * 2 - 1, rng.unit() * 2 - 1};
                            for (int k = 0; k < j; ++k) {
                                complexd prj{0, 0};
                                for (int i = 0; i < n; ++i) prj += std::conj(u[k][i]) * u[j][i];
                                for (int i = 0; i < n; ++i) u[j][i] -= prj * u[k][i];
                            }
                            double norm = 0;
                            for (int i = 0; i < n; ++i) norm += std::norm(u[j][i]);
                            norm = std::sqrt(norm);
                            for (int i = 0; i < n; ++i) u[j][i] /= norm;
                        }
                        LagrangianFrame f;
                        f.n = n;
                        f.basis = u;
                        LagrangianFrame g;
                        g.n = n;
                        g.basis.assign(n, std::vector<complexd>(n, {0, 0}));
                        for (int j = 0; j < n; ++j)
                            for (int k = 0; k < n; ++k) {
                                double a = rng.unit() * 4 - 2;
                                if (k == j && std::abs(a) < 0.3) a = 1.0;
                                for (int i = 0; i < n; ++i) g.basis[j][i] += u[k][i] * a;
                            }
                        try {
                            worst = std::max(worst, std::abs(squared_phase(f) - squared_phase(g)));
                        } catch (const DegenerateFrame&) {
                            continue;
                        }
                    }
                    if (worst >= 1e-9) {
                        detail = "invariance worst " + std::to_string(worst);
                        return false;
                    }
                    auto phases = phases_of_rows(rotating_line_rows(256));
                    if (maslov_winding(lift_phase_path(phases), true) != 1) return false;
                    Rng r2(6);
                    for (int i = 0; i < 500; ++i) {
                        double a0 = r2.unit() * 8 - 4, a1 = r2.unit() * 8 - 4;
                        if (chord_degree(a0, a1 + 1.0) != chord_degree(a0, a1) + 1) return false;
                    }
                    std::ostringstream os;
                    os << "worst deviation " << worst;
                    detail = os.str();
                    return true;
                });

    // 8. the C0 numerics, < 60 s total
    h.criterion(8, "psi endpoints (1e-8), h_mu partials vs FD (1e-5), boundary grid, bracket extrema",
                [&](std::string& detail) {
                    auto t0 = Clock::now();
                    c0::Psi psi;
                    if (std::abs(psi(0.0) - 1.0) >= 1e-8 || std::abs(psi(1.0)) >= 1e-8) {
                        detail = "psi endpoints off";
                        return false;
                    }
                    c0::HMu hm{2.0};
                    Rng rng(31);
                    double worst = 0;
                    auto d1 = [](const std::function<double(double)>& f, double x, double s) {
                        return (-f(x + 2 * s) + 8 * f(x + s) - 8 * f(x - s) + f(x - 2 * s)) / (12 * s);
                    };
                    auto d2c = [](const std::function<double(double)>& f, double x, double s) {
                        return (-f(x + 2 * s) + 16 * f(x + s) - 30 * f(x) + 16 * f(x - s) -
                                f(x - 2 * s)) /
                               (12 * s * s);
                    };
                    for (auto [lo, hi] :
                         {std::pair<double, double>{-0.95, -0.05}, {0.05, 0.95}, {1.05, 1.95}}) {
                        for (int i = 0; i < 1000; ++i) {
                            double s = lo + (hi - lo) * rng.unit();
                            double t = 0.05 + 0.9 * rng.unit();
                            auto in_s = [&](double x) { return hm.value(x, t); };
                            auto in_t = [&](double x) { return hm.value(s, x); };
                            worst = std::max(worst, std::abs(hm.ds(s, t) - d1(in_s, s, 1e-4)));
                            worst = std::max(worst, std::abs(hm.dt(s, t) - d1(in_t, t, 1e-4)));
                            worst = std::max(worst, std::abs(hm.laplacian(s, t) - d2c(in_s, s, 1e-4) -
                                                             d2c(in_t, t, 1e-4)));
                        }
                    }
                    if (worst >= 1e-5) {
                        detail = "h_mu FD worst " + std::to_string(worst);
                        return false;
                    }
                    double mu = 2.0, h0 = 0.49 * mu, min_v = 1e300;
                    for (int i = 0; i <= 100000; ++i) {
                        double s = static_cast<double>(i) / 100000;
                        min_v = std::min(min_v, c0::boundary_inequality(s, 0.0, h0, mu));
                    }
                    if (!(min_v > 0.0)) {
                        detail = "boundary inequality failed";
                        return false;
                    }
                    auto b = c0::bracket_bound(100000);
                    if (!(b.min >= -200.0 && b.max <= 200.0)) {
                        detail = "bracket out of the claimed interval";
                        return false;
                    }
                    double secs = elapsed(t0);
                    std::ostringstream os;
                    os << "bracket in [" << b.min << ", " << b.max << "], FD worst " << worst << ", "
                       << secs << "s";
                    detail = os.str();
                    return secs < 60.0;
                });

    // 9. determinism of verify all
    h.criterion(9, "verify all --seed 1 twice yields byte-identical reports", [&](std::string& detail) {
        std::string r1 = "/tmp/ainf_acc_rep1.json", r2 = "/tmp/ainf_acc_rep2.json";
        std::string cmd1 = std::string(AINF_CLI_PATH) + " verify all --seed 1 --report " + r1 +
                           " > /dev/null 2>&1";
        std::string cmd2 = std::string(AINF_CLI_PATH) + " verify all --seed 1 --report " + r2 +
                           " > /dev/null 2>&1";
        if (std::system(cmd1.c_str()) != 0) {
            detail = "first verify all run failed";
            return false;
        }
        if (std::system(cmd2.c_str()) != 0) {
            detail = "second verify all run failed";
            return false;
        }
        std::string a = slurp(r1), b = slurp(r2);
        if (a.empty() || a != b) {
            detail = "reports differ";
            return false;
        }
        detail = std::to_string(a.size()) + " bytes, identical";
        return true;
    });

    std::printf("%s\n", h.failures == 0 ? "ACCEPTANCE: ALL PASS" : "ACCEPTANCE: FAILURES");
    return h.failures == 0 ? 0 : 1;
}
