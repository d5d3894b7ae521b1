#pragma once
// Numerical implementation and grid verification of the maximum-principle
// auxiliary functions: the normalized mollifier, the transition function psi
// built by convolution, reparametrized boundary paths, the comparison
// function h_mu with its partials, the boundary inequality, the bracketed
// interior expression, and the Hamiltonian slope profile c(s).

#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ainf/common.hpp"

namespace ainf::c0 {

// adaptive Simpson quadrature, relative tolerance on the whole integral
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double rel_tol = 1e-10) {
    auto simpson = [&](double lo, double hi, double flo, double fmid, double fhi) {
        return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    };
    std::function<double(double, double, double, double, double, double, double, int)> rec =
        [&](double lo, double hi, double flo, double fmid, double fhi, double whole, double eps,
            int depth) -> double {
        double m = 0.5 * (lo + hi);
        double lm = 0.5 * (lo + m), rm = 0.5 * (m + hi);
        double flm = f(lm), frm = f(rm);
        double left = simpson(lo, m, flo, flm, fmid);
        double right = simpson(m, hi, fmid, frm, fhi);
        if (depth > 40 || std::abs(left + right - whole) < 15.0 * eps)
            return left + right + (left + right - whole) / 15.0;
        return rec(lo, m, flo, flm, fmid, left, eps * 0.5, depth + 1) +
               rec(m, hi, fmid, frm, fhi, right, eps * 0.5, depth + 1);
    };
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = simpson(a, b, fa, fm, fb);
    double eps = std::max(std::abs(whole), 1.0) * rel_tol;
    return rec(a, b, fa, fm, fb, whole, eps, 0);
}

// unnormalized mollifier kernel on (-1/2, 1/2)
inline double mollifier_kernel(double t) {
    double u = 2.0 * t;
    if (u <= -1.0 || u >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - u * u));
}

struct MollifierSpec {
    double normalizer = 0.0;      // c with integral(c * kernel) = 1
    double support_radius = 0.5;
    int quadrature_points = 10000;

    static MollifierSpec compute() {
        MollifierSpec m;
        double mass = adaptive_simpson(mollifier_kernel, -0.5, 0.5);
        m.normalizer = 1.0 / mass;
        return m;
    }

    double phi(double t) const { return normalizer * mollifier_kernel(t); }

    double mass() const {
        return adaptive_simpson([this](double t) { return phi(t); }, -0.5, 0.5);
    }
};

// The transition function: 1 for s <= 0, 0 for s >= 1, and on (0, 1) the
// convolution tail psi(s) = integral_{s - 1/2}^{1/2} phi. Smooth and flat to
// all orders at both endpoints. Evaluation uses a precomputed table with
// Hermite interpolation (psi' = -phi(s - 1/2) is known analytically).
class Psi {
  public:
    explicit Psi(MollifierSpec spec = MollifierSpec::compute()) : spec_(spec) {
        int n = spec_.quadrature_points;
        table_.resize(n + 1);
        table_[n] = 0.0;
        // accumulate from the right so the tail is exact at s = 1
        double acc = 0.0;
        for (int i = n; i > 0; --i) {
            double hi = static_cast<double>(i) / n;
            double lo = static_cast<double>(i - 1) / n;
            acc += adaptive_simpson([this](double s) { return spec_.phi(s - 0.5); }, lo, hi);
            table_[i - 1] = acc;
        }
    }

    const MollifierSpec& spec() const { return spec_; }

    double operator()(double s) const {
        if (s <= 0.0) return 1.0;
        if (s >= 1.0) return 0.0;
        int n = spec_.quadrature_points;
        double x = s * n;
        int i = std::min(static_cast<int>(x), n - 1);
        double h = 1.0 / n;
        double t = x - i;
        double y0 = table_[i], y1 = table_[i + 1];
        double d0 = -spec_.phi(static_cast<double>(i) / n - 0.5);
        double d1 = -spec_.phi(static_cast<double>(i + 1) / n - 0.5);
        double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * d0 +
               (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * h * d1;
    }

    double derivative(double s) const {
        if (s <= 0.0 || s >= 1.0) return 0.0;
        return -spec_.phi(s - 0.5);
    }

  private:
    MollifierSpec spec_;
    std::vector<double> table_;
};

// ---------------------------------------------------------------------------
// Natural cubic spline through samples on a uniform grid over [0, 1],
// vector-valued.

class CubicSpline {
  public:
    explicit CubicSpline(std::vector<std::vector<double>> samples) : y_(std::move(samples)) {
        if (y_.size() < 2) throw FixtureError("spline needs at least two samples");
        dims_ = y_[0].size();
        std::size_t n = y_.size();
        m_.assign(n, std::vector<double>(dims_, 0.0));
        if (n == 2) return;
        // solve the natural-spline tridiagonal system per dimension
        double h = 1.0 / static_cast<double>(n - 1);
        for (std::size_t d = 0; d < dims_; ++d) {
            std::vector<double> a(n, 0), b(n, 0), c(n, 0), r(n, 0);
            b[0] = b[n - 1] = 1.0;
            for (std::size_t i = 1; i + 1 < n; ++i) {
                a[i] = h / 6.0;
                b[i] = 2.0 * h / 3.0;
                c[i] = h / 6.0;
                r[i] = (y_[i + 1][d] - y_[i][d]) / h - (y_[i][d] - y_[i - 1][d]) / h;
            }
            for (std::size_t i = 1; i < n; ++i) {
                double w = a[i] / b[i - 1];
                b[i] -= w * c[i - 1];
                r[i] -= w * r[i - 1];
            }
            std::vector<double> m(n, 0);
            m[n - 1] = r[n - 1] / b[n - 1];
            for (std::size_t i = n - 1; i-- > 0;) m[i] = (r[i] - c[i] * m[i + 1]) / b[i];
            for (std::size_t i = 0; i < n; ++i) m_[i][d] = m[i];
        }
    }

    std::size_t dims() const { return dims_; }

    std::vector<double> operator()(double u) const {
        std::size_t n = y_.size();
        double h = 1.0 / static_cast<double>(n - 1);
        double x = std::min(std::max(u, 0.0), 1.0) / h;
        std::size_t i = std::min(static_cast<std::size_t>(x), n - 2);
        double t = x - static_cast<double>(i);
        std::vector<double> out(dims_);
        for (std::size_t d = 0; d < dims_; ++d) {
            double A = 1.0 - t, B = t;
            out[d] = A * y_[i][d] + B * y_[i + 1][d] +
                     ((A * A * A - A) * m_[i][d] + (B * B * B - B) * m_[i + 1][d]) * h * h / 6.0;
        }
        return out;
    }

  private:
    std::vector<std::vector<double>> y_, m_;
    std::size_t dims_ = 0;
};

// the reparametrized boundary path sigma_eps(s) = sigma_tilde(eps * psi(s))
class SigmaEps {
  public:
    SigmaEps(CubicSpline path, const Psi* psi) : path_(std::move(path)), psi_(psi) {}

    std::vector<double> operator()(double eps, double s) const {
        if (eps < 0.0 || eps > 1.0) throw FixtureError("eps out of [0, 1]");
        return path_(eps * (*psi_)(s));
    }

  private:
    CubicSpline path_;
    const Psi* psi_;
};

// ---------------------------------------------------------------------------
// The bump profile f and the comparison function h_mu.

// one-sided bump g(u) = exp(-u^2 / (1 - u^2)) on (-1, 1)
inline double bump_g(double u) {
    if (u <= -1.0 || u >= 1.0) return 0.0;
    return std::exp(-u * u / (1.0 - u * u));
}

inline double bump_g_prime(double u) {
    if (u <= -1.0 || u >= 1.0) return 0.0;
    double q = 1.0 - u * u;
    return bump_g(u) * (-2.0 * u / (q * q));
}

// g''(u) / g(u), the bracketed rational factor
inline double bump_bracket(double u) {
    double q = 1.0 - u * u;
    return (4.0 * u * u - 2.0 * q * q + 8.0 * u * u * (u * u - 1.0)) / (q * q * q * q);
}

inline double bump_g_second(double u) {
    if (u <= -1.0 || u >= 1.0) return 0.0;
    return bump_g(u) * bump_bracket(u);
}

// f is 1 on [0, 1], rises from 0 on (-1, 0), falls to 0 on (1, 2)
inline double profile_f(double s) {
    if (s <= -1.0 || s >= 2.0) return 0.0;
    if (s < 0.0) return bump_g(s);
    if (s <= 1.0) return 1.0;
    return bump_g(s - 1.0);
}

inline double profile_f_prime(double s) {
    if (s <= -1.0 || s >= 2.0) return 0.0;
    if (s < 0.0) return bump_g_prime(s);
    if (s <= 1.0) return 0.0;
    return bump_g_prime(s - 1.0);
}

inline double profile_f_second(double s) {
    if (s <= -1.0 || s >= 2.0) return 0.0;
    if (s < 0.0) return bump_g_second(s);
    if (s <= 1.0) return 0.0;
    return bump_g_second(s - 1.0);
}

// h_mu(s, t) = f(s) (t^2/2 - t) mu, with analytic partials and Laplacian
struct HMu {
    double mu;

    double value(double s, double t) const { return profile_f(s) * (t * t / 2.0 - t) * mu; }
    double dt(double s, double t) const { return profile_f(s) * (t - 1.0) * mu; }
    double ds(double s, double t) const { return profile_f_prime(s) * (t * t / 2.0 - t) * mu; }
    double dtt(double s, double /*t*/) const { return profile_f(s) * mu; }
    double dss(double s, double t) const { return profile_f_second(s) * (t * t / 2.0 - t) * mu; }
    double laplacian(double s, double t) const { return dss(s, t) + dtt(s, t); }

    // branch id for reporting: 0 left bump, 1 middle, 2 right bump, 3 zero
    int branch(double s) const {
        if (s > -1.0 && s < 0.0) return 0;
        if (s >= 0.0 && s <= 1.0) return 1;
        if (s > 1.0 && s < 2.0) return 2;
        return 3;
    }
};

// the boundary normal-derivative value -H0 + (1 - t) mu f(s); positivity is
// asserted only for s in [0, 1] at t = 0
inline double boundary_inequality(double s, double t, double h0, double mu) {
    return -h0 + (1.0 - t) * mu * profile_f(s);
}

// extrema of the bracketed interior expression g''(s)/1 = bracket * g over
// s in (-1 + guard, 0]
struct BracketBound {
    double min = 0, max = 0;
    double at_min = 0, at_max = 0;
};

inline BracketBound bracket_bound(int grid, double guard = 1e-6) {
    double lo = -1.0 + guard;
    // chunked scan; AINF_THREADS caps the workers, and the min/max merge is
    // order-independent so the result is deterministic
    std::size_t chunks = std::min<std::size_t>(thread_budget() * 4, static_cast<std::size_t>(grid) + 1);
    auto partial = parallel_map<BracketBound>(chunks, [&](std::size_t c) {
        BracketBound b;
        b.min = 1e300;
        b.max = -1e300;
        std::size_t begin = c * (static_cast<std::size_t>(grid) + 1) / chunks;
        std::size_t end = (c + 1) * (static_cast<std::size_t>(grid) + 1) / chunks;
        for (std::size_t i = begin; i < end; ++i) {
            double s = lo + (0.0 - lo) * static_cast<double>(i) / grid;
            double v = bump_bracket(s) * bump_g(s);
            if (v < b.min) {
                b.min = v;
                b.at_min = s;
            }
            if (v > b.max) {
                b.max = v;
                b.at_max = s;
            }
        }
        return b;
    });
    BracketBound b;
    b.min = 1e300;
    b.max = -1e300;
    for (const auto& p : partial) {
        if (p.min < b.min) {
            b.min = p.min;
            b.at_min = p.at_min;
        }
        if (p.max > b.max) {
            b.max = p.max;
            b.at_max = p.at_max;
        }
    }
    return b;
}

// minimum of the boundary inequality over a grid on [0, 1] at t = 0,
// parallelized the same way
inline double boundary_inequality_min(double h0, double mu, int grid) {
    std::size_t chunks = std::min<std::size_t>(thread_budget() * 4, static_cast<std::size_t>(grid) + 1);
    auto partial = parallel_map<double>(chunks, [&](std::size_t c) {
        double min_v = 1e300;
        std::size_t begin = c * (static_cast<std::size_t>(grid) + 1) / chunks;
        std::size_t end = (c + 1) * (static_cast<std::size_t>(grid) + 1) / chunks;
        for (std::size_t i = begin; i < end; ++i) {
            double s = static_cast<double>(i) / grid;
            min_v = std::min(min_v, boundary_inequality(s, 0.0, h0, mu));
        }
        return min_v;
    });
    double min_v = 1e300;
    for (double p : partial) min_v = std::min(min_v, p);
    return min_v;
}

// slope profile c(s) = (C - A s) f(s); requires C > 2A so c > 0 on [-1, 2]
struct CProfile {
    double C, A;

    CProfile(double c, double a) : C(c), A(a) {
        if (!(C > 2.0 * A)) throw FixtureError("slope profile needs C > 2A");
    }

    double value(double s) const { return (C - A * s) * profile_f(s); }
    double derivative(double s) const {
        return -A * profile_f(s) + (C - A * s) * profile_f_prime(s);
    }
};

// the verifiable fragment of the interior maximum argument: wherever
// 2 c'(s) + mu < 0 and rho >= 1 on the flat branch, -2 c'(s) rho - lap(h_mu)
// is strictly positive
struct InteriorSignReport {
    bool premise_met = false;  // 2c' + mu < 0 somewhere on [0, 1]
    bool conclusion_holds = true;
    double min_value = 1e300;
};

inline InteriorSignReport interior_sign_check(const CProfile& c, double mu, double rho_max = 10.0,
                                              int grid = 1000) {
    InteriorSignReport rep;
    HMu h{mu};
    for (int i = 0; i <= grid; ++i) {
        double s = 0.001 + (0.999 - 0.001) * static_cast<double>(i) / grid;
        double cp = c.derivative(s);
        if (2.0 * cp + mu >= 0) continue;
        rep.premise_met = true;
        for (int j = 0; j <= 10; ++j) {
            double rho = 1.0 + (rho_max - 1.0) * static_cast<double>(j) / 10.0;
            double v = -2.0 * cp * rho - h.laplacian(s, 0.5);
            rep.min_value = std::min(rep.min_value, v);
            if (v <= 0) rep.conclusion_holds = false;
        }
    }
    return rep;
}

}  // namespace ainf::c0
