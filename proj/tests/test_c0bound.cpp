#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ainf/c0bound.hpp>

using namespace ainf;
using namespace ainf::c0;

namespace {
const Psi& shared_psi() {
    static Psi psi;  // table construction is the expensive part
    return psi;
}

// central finite differences of a scalar function
double fd1(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2 * h);
}
double fd2(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
}
double fd_order(const std::function<double(double)>& f, double x, double h, int order) {
    switch (order) {
        case 1: return fd1(f, x, h);
        case 2: return fd2(f, x, h);
        case 3: return (f(x + 2 * h) - 2 * f(x + h) + 2 * f(x - h) - f(x - 2 * h)) / (2 * h * h * h);
        default:
            return (f(x + 2 * h) - 4 * f(x + h) + 6 * f(x) - 4 * f(x - h) + f(x - 2 * h)) /
                   (h * h * h * h);
    }
}
}  // namespace

TEST_CASE("mollifier mass is 1 after normalization") {
    MollifierSpec m = MollifierSpec::compute();
    CHECK(std::abs(m.mass() - 1.0) < 1e-8);
    // the raw kernel integrates to about 0.222, nowhere near 1/(2e)
    double raw = adaptive_simpson(mollifier_kernel, -0.5, 0.5);
    CHECK(raw > 0.2);
    CHECK(raw < 0.25);
}

TEST_CASE("psi endpoint values and the flat extensions") {
    const Psi& psi = shared_psi();
    CHECK(std::abs(psi(0.0) - 1.0) < 1e-8);
    CHECK(std::abs(psi(1.0) - 0.0) < 1e-8);
    CHECK(psi(-5.0) == 1.0);
    CHECK(psi(2.0) == 0.0);
}

TEST_CASE("psi matches direct quadrature of the convolution") {
    const Psi& psi = shared_psi();
    const MollifierSpec& spec = psi.spec();
    for (double s : {0.1, 0.25, 0.4, 0.5, 0.62, 0.8, 0.93}) {
        double direct = adaptive_simpson([&](double t) { return spec.phi(t); }, s - 0.5, 0.5);
        CHECK(std::abs(psi(s) - direct) < 1e-8);
    }
}

TEST_CASE("psi is monotone nonincreasing and flat to order 4 at the ends") {
    const Psi& psi = shared_psi();
    double prev = psi(0.0);
    for (int i = 1; i <= 1000; ++i) {
        double v = psi(static_cast<double>(i) / 1000);
        CHECK(v <= prev + 1e-12);
        prev = v;
    }
    auto f = [&](double s) { return psi(s); };
    for (int order = 1; order <= 4; ++order) {
        CHECK(std::abs(fd_order(f, 1e-3, 1e-4, order)) < 1e-6);
        CHECK(std::abs(fd_order(f, 1.0 - 1e-3, 1e-4, order)) < 1e-6);
    }
}

TEST_CASE("sigma_eps: constant at eps = 0, full value left of the window") {
    const Psi& psi = shared_psi();
    // a smooth-ish sampled path in R^2
    std::vector<std::vector<double>> samples;
    for (int i = 0; i <= 32; ++i) {
        double u = static_cast<double>(i) / 32;
        samples.push_back({std::sin(2 * M_PI * u), u * u});
    }
    CubicSpline path(samples);
    SigmaEps sigma(path, &psi);

    auto at0 = sigma(0.0, 0.37);
    auto base = path(0.0);
    CHECK(std::abs(at0[0] - base[0]) < 1e-12);
    CHECK(std::abs(at0[1] - base[1]) < 1e-12);

    for (double eps : {0.3, 0.7, 1.0}) {
        auto left = sigma(eps, -0.2);  // psi = 1 there
        auto expect = path(eps);
        CHECK(std::abs(left[0] - expect[0]) < 1e-12);
        CHECK(std::abs(left[1] - expect[1]) < 1e-12);
    }
    CHECK_THROWS_AS(sigma(1.5, 0.0), FixtureError);
}

TEST_CASE("sigma_eps endpoint derivatives vanish to order >= 3") {
    const Psi& psi = shared_psi();
    std::vector<std::vector<double>> samples;
    for (int i = 0; i <= 32; ++i) {
        double u = static_cast<double>(i) / 32;
        samples.push_back({std::cos(M_PI * u)});
    }
    CubicSpline path(samples);
    SigmaEps sigma(path, &psi);
    auto comp = [&](double s) { return sigma(1.0, s)[0]; };
    for (int order = 1; order <= 3; ++order) {
        CHECK(std::abs(fd_order(comp, 0.0, 1e-3, order)) < 1e-4);
        CHECK(std::abs(fd_order(comp, 1.0, 1e-3, order)) < 1e-4);
    }
}

TEST_CASE("h_mu branch values and the flat-branch Laplacian") {
    HMu h{2.5};
    for (double s : {0.0, 0.3, 1.0})
        for (double t : {0.0, 0.4, 1.0}) {
            CHECK(h.value(s, t) == doctest::Approx((t * t / 2 - t) * 2.5).epsilon(1e-12));
            CHECK(h.dt(s, t) == doctest::Approx((t - 1) * 2.5).epsilon(1e-12));
            CHECK(h.laplacian(s, t) == doctest::Approx(2.5).epsilon(1e-12));
        }
    CHECK(h.value(3.0, 0.5) == 0.0);
    CHECK(h.branch(3.0) == 3);
    CHECK(h.branch(-0.5) == 0);

    // analytic d_s h against a central difference at (-0.5, 0.5)
    auto slice = [&](double s) { return h.value(s, 0.5); };
    CHECK(std::abs(h.ds(-0.5, 0.5) - fd1(slice, -0.5, 1e-5)) < 1e-6);
}

TEST_CASE("all partials of h_mu match finite differences on random interior points") {
    HMu h{2.0};
    Rng rng(21);
    struct Branch {
        double lo, hi;
    };
    for (Branch br : {Branch{-0.95, -0.05}, Branch{0.05, 0.95}, Branch{1.05, 1.95}}) {
        for (int i = 0; i < 1000; ++i) {
            double s = br.lo + (br.hi - br.lo) * rng.unit();
            double t = 0.05 + 0.9 * rng.unit();
            auto in_s = [&](double x) { return h.value(x, t); };
            auto in_t = [&](double x) { return h.value(s, x); };
            double step = 1e-4;
            // fourth-order central stencils keep the truncation error well
            // below the tolerance even near the bump shoulders
            auto d1 = [&](const std::function<double(double)>& f, double x) {
                return (-f(x + 2 * step) + 8 * f(x + step) - 8 * f(x - step) + f(x - 2 * step)) /
                       (12 * step);
            };
            auto d2c = [&](const std::function<double(double)>& f, double x) {
                return (-f(x + 2 * step) + 16 * f(x + step) - 30 * f(x) + 16 * f(x - step) -
                        f(x - 2 * step)) /
                       (12 * step * step);
            };
            CHECK(std::abs(h.ds(s, t) - d1(in_s, s)) < 1e-5);
            CHECK(std::abs(h.dt(s, t) - d1(in_t, t)) < 1e-5);
            double lap_fd = d2c(in_s, s) + d2c(in_t, t);
            CHECK(std::abs(h.laplacian(s, t) - lap_fd) < 1e-5);
        }
    }
}

TEST_CASE("boundary inequality values and grid positivity") {
    double mu = 2.0;
    CHECK(boundary_inequality(0.5, 0.0, mu / 2, mu) == doctest::Approx(mu / 2));
    CHECK(boundary_inequality(0.5, 1.0, 0.7, mu) == doctest::Approx(-0.7));
    for (double h0 : {0.01, 0.3, 0.49 * mu, 0.5 * mu}) {
        double min_v = 1e300;
        for (int i = 0; i <= 1000; ++i) {
            double s = static_cast<double>(i) / 1000;
            min_v = std::min(min_v, boundary_inequality(s, 0.0, h0, mu));
        }
        CHECK(min_v > 0.0);
    }
}

TEST_CASE("bracket expression: value at 0, decay at -1, extrema inside [-200, 200]") {
    CHECK(bump_bracket(0.0) * bump_g(0.0) == doctest::Approx(-2.0));
    // the exponential kills the pole
    CHECK(std::abs(bump_bracket(-1.0 + 1e-4) * bump_g(-1.0 + 1e-4)) < 1e-6);

    BracketBound b = bracket_bound(200000);
    CHECK(b.min >= -200.0);
    CHECK(b.max <= 200.0);
    CHECK(b.min <= -2.0);  // s = 0 witnesses at least -2
    // refined grid agrees to plotting accuracy
    BracketBound fine = bracket_bound(400000);
    CHECK(std::abs(b.min - fine.min) < 1e-4);
    CHECK(std::abs(b.max - fine.max) < 1e-4);
}

TEST_CASE("slope profile: values, analytic and FD derivative, rejection") {
    CProfile c(5.0, 2.0);
    CHECK(c.value(0.5) == doctest::Approx(4.0));
    CHECK(c.value(2.5) == 0.0);
    auto f = [&](double s) { return c.value(s); };
    for (double s = 0.05; s <= 0.95; s += 0.05) {
        CHECK(std::abs(c.derivative(s) - (-2.0)) < 1e-12);
        CHECK(std::abs(fd1(f, s, 1e-3) - (-2.0)) < 1e-8);
    }
    CHECK_THROWS_AS(CProfile(4.0, 2.0), FixtureError);
}

TEST_CASE("interior sign logic: steep slope forces the contradiction bound") {
    double mu = 2.0;
    CProfile c(210.0, 100.0);  // c' = -100 on the flat branch, C > 2A
    auto rep = interior_sign_check(c, mu);
    CHECK(rep.premise_met);
    CHECK(rep.conclusion_holds);
    CHECK(rep.min_value > 0.0);
}

TEST_CASE("parallel grid scans are deterministic and honor AINF_THREADS") {
    double mu = 2.0, h0 = 0.49 * mu;
    double base = boundary_inequality_min(h0, mu, 100000);
    setenv("AINF_THREADS", "1", 1);
    double single = boundary_inequality_min(h0, mu, 100000);
    setenv("AINF_THREADS", "3", 1);
    double three = boundary_inequality_min(h0, mu, 100000);
    unsetenv("AINF_THREADS");
    CHECK(base == single);
    CHECK(base == three);
    CHECK(base > 0.0);

    auto b1 = bracket_bound(50000);
    setenv("AINF_THREADS", "2", 1);
    auto b2 = bracket_bound(50000);
    unsetenv("AINF_THREADS");
    CHECK(b1.min == b2.min);
    CHECK(b1.max == b2.max);
}

TEST_CASE("cubic spline reproduces straight lines and endpoint samples") {
    std::vector<std::vector<double>> samples;
    for (int i = 0; i <= 10; ++i) samples.push_back({3.0 * i / 10.0 - 1.0});
    CubicSpline s(samples);
    for (double u : {0.0, 0.13, 0.5, 0.77, 1.0})
        CHECK(s(u)[0] == doctest::Approx(3.0 * u - 1.0).epsilon(1e-9));
}
