#pragma once
// Squared phases of Lagrangian frames, gradings and Maslov winding along
// sampled phase paths, floor-function chord degrees, and the Pin-structure
// torsor action.

#include <cmath>
#include <complex>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ainf/common.hpp"

namespace ainf {

using complexd = std::complex<double>;

// A real basis of a Lagrangian subspace of C^n, columns of an n x n complex
// matrix. The squared volume form defaults to (dz_1 ^ ... ^ dz_n)^2; an
// optional unit factor models a different quadratic volume form at the point.
struct LagrangianFrame {
    int n = 0;
    std::vector<std::vector<complexd>> basis;  // basis[j] = j-th vector, length n
    complexd volume_factor{1.0, 0.0};          // multiplies the squared determinant

    static constexpr double kIsotropyTol = 1e-10;
};

// standard symplectic form on C^n: omega(u, v) = Im <u, v>
inline double symplectic_pairing(const std::vector<complexd>& u, const std::vector<complexd>& v) {
    complexd h{0.0, 0.0};
    for (std::size_t i = 0; i < u.size(); ++i) h += std::conj(u[i]) * v[i];
    return h.imag();
}

inline complexd det_complex(std::vector<std::vector<complexd>> m) {
    std::size_t n = m.size();
    complexd det{1.0, 0.0};
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        double best = 0;
        for (std::size_t r = c; r < n; ++r)
            if (std::abs(m[r][c]) > best) {
                best = std::abs(m[r][c]);
                piv = r;
            }
        if (best == 0) return {0.0, 0.0};
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            complexd f = m[r][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
        }
    }
    return det;
}

struct DegenerateFrame : std::runtime_error {
    DegenerateFrame() : std::runtime_error("degenerate Lagrangian frame") {}
};

struct NotIsotropic : std::runtime_error {
    explicit NotIsotropic(double v)
        : std::runtime_error("frame is not omega-isotropic (pairing " + std::to_string(v) + ")") {}
};

inline void validate_frame(const LagrangianFrame& f) {
    if (static_cast<int>(f.basis.size()) != f.n) throw FixtureError("frame needs n basis vectors");
    for (const auto& v : f.basis)
        if (static_cast<int>(v.size()) != f.n) throw FixtureError("frame vector has wrong length");
    for (int i = 0; i < f.n; ++i)
        for (int j = i + 1; j < f.n; ++j) {
            double w = symplectic_pairing(f.basis[i], f.basis[j]);
            if (std::abs(w) > LagrangianFrame::kIsotropyTol) throw NotIsotropic(w);
        }
}

// squared phase: det(v_1 .. v_n)^2 normalized to the unit circle; invariant
// under real basis changes because the determinant enters squared
inline complexd squared_phase(const LagrangianFrame& f) {
    validate_frame(f);
    std::vector<std::vector<complexd>> m(f.n, std::vector<complexd>(f.n));
    for (int i = 0; i < f.n; ++i)
        for (int j = 0; j < f.n; ++j) m[i][j] = f.basis[j][i];  // columns are basis vectors
    complexd det = det_complex(m);
    complexd sq = det * det * f.volume_factor;
    double a = std::abs(sq);
    if (a < 1e-14) throw DegenerateFrame();
    return sq / a;
}

// A sampled path of unit complex numbers with a continuous lift alpha
// (exp(2 pi i alpha_k) = sample_k). Consecutive lift jumps must stay below
// 1/2; violating the sampling-density contract is an error.
struct PhasePath {
    std::vector<complexd> samples;
    std::vector<double> lift;
};

struct SamplingTooCoarse : std::runtime_error {
    explicit SamplingTooCoarse(std::size_t at)
        : std::runtime_error("phase jump >= 1/2 between samples " + std::to_string(at - 1) + " and " +
                             std::to_string(at)) {}
};

inline PhasePath lift_phase_path(const std::vector<complexd>& samples) {
    if (samples.empty()) throw FixtureError("empty phase path");
    PhasePath p;
    p.samples = samples;
    p.lift.resize(samples.size());
    p.lift[0] = std::arg(samples[0]) / (2.0 * M_PI);
    for (std::size_t k = 1; k < samples.size(); ++k) {
        double delta = std::arg(samples[k] / samples[k - 1]) / (2.0 * M_PI);  // in (-1/2, 1/2]
        if (std::abs(delta) >= 0.5 - 1e-12) throw SamplingTooCoarse(k);
        p.lift[k] = p.lift[k - 1] + delta;
    }
    return p;
}

// winding = lift(end) - lift(start); an integer for closed paths
inline int maslov_winding(const PhasePath& p, bool closed) {
    double total = p.lift.back() - p.lift.front();
    if (!closed) return static_cast<int>(std::lround(total));
    if (std::abs(p.samples.front() - p.samples.back()) > 1e-9)
        throw FixtureError("closed path must end at its starting sample");
    long w = std::lround(total);
    if (std::abs(total - static_cast<double>(w)) > 1e-6)
        throw FixtureError("closed-path winding is not an integer: " + std::to_string(total));
    return static_cast<int>(w);
}

// chord degree mu(x) = floor(alpha_1 - alpha_0) + 1
inline int chord_degree(double alpha0, double alpha1) {
    return static_cast<int>(std::floor(alpha1 - alpha0)) + 1;
}

// ---------------------------------------------------------------------------
// Pin torsor: opaque structure labels acted on freely and transitively by an
// F_2 vector space (the involutions of the basis vectors commute).

class PinTorsor {
  public:
    PinTorsor(int dim_v, std::vector<std::string> points,
              std::vector<std::vector<std::size_t>> basis_action)
        : dim_(dim_v), points_(std::move(points)), action_(std::move(basis_action)) {
        if (static_cast<int>(action_.size()) != dim_) throw FixtureError("need one involution per basis vector");
        for (const auto& perm : action_) {
            if (perm.size() != points_.size()) throw FixtureError("involution size mismatch");
            for (std::size_t i = 0; i < perm.size(); ++i) {
                if (perm[i] >= points_.size()) throw FixtureError("involution out of range");
                if (perm[perm[i]] != i) throw FixtureError("basis action is not an involution");
            }
        }
        for (int a = 0; a < dim_; ++a)
            for (int b = a + 1; b < dim_; ++b)
                for (std::size_t i = 0; i < points_.size(); ++i)
                    if (action_[a][action_[b][i]] != action_[b][action_[a][i]])
                        throw FixtureError("basis involutions do not commute");
    }

    int dim() const { return dim_; }
    std::size_t size() const { return points_.size(); }
    const std::string& point(std::size_t i) const { return points_.at(i); }

    std::size_t index_of(const std::string& p) const {
        for (std::size_t i = 0; i < points_.size(); ++i)
            if (points_[i] == p) return i;
        throw FixtureError("unknown point '" + p + "'");
    }

    // beta is a bitmask over the basis of V
    std::size_t act(std::uint32_t beta, std::size_t point) const {
        if (point >= points_.size()) throw FixtureError("unknown point index");
        for (int b = 0; b < dim_; ++b)
            if (beta & (1u << b)) point = action_[b][point];
        return point;
    }

    struct AxiomReport {
        bool group_action = true, free = true, transitive = true;
        bool ok() const { return group_action && free && transitive; }
    };

    AxiomReport check_axioms() const {
        AxiomReport rep;
        std::uint32_t all = (dim_ >= 32) ? ~0u : ((1u << dim_) - 1);
        for (std::uint32_t b1 = 0; b1 <= all; ++b1) {
            for (std::uint32_t b2 = 0; b2 <= all; ++b2)
                for (std::size_t p = 0; p < points_.size(); ++p)
                    if (act(b1, act(b2, p)) != act(b1 ^ b2, p)) rep.group_action = false;
            for (std::size_t p = 0; p < points_.size(); ++p)
                if (b1 != 0 && act(b1, p) == p) rep.free = false;
            if (b1 == all) break;  // avoid wrap at 32 bits
        }
        for (std::size_t p = 0; p < points_.size(); ++p) {
            std::set<std::size_t> orbit;
            for (std::uint32_t b = 0; b <= all; ++b) {
                orbit.insert(act(b, p));
                if (b == all) break;
            }
            if (orbit.size() != points_.size()) rep.transitive = false;
        }
        return rep;
    }

  private:
    int dim_;
    std::vector<std::string> points_;
    std::vector<std::vector<std::size_t>> action_;  // per basis vector, a permutation
};

// the standard rank-k torsor on 2^k labels (bit flips)
inline PinTorsor standard_torsor(int dim_v) {
    std::size_t n = std::size_t{1} << dim_v;
    std::vector<std::string> pts;
    for (std::size_t i = 0; i < n; ++i) {
        std::string s;
        for (int b = 0; b < dim_v; ++b) s += ((i >> b) & 1) ? '1' : '0';
        pts.push_back("P" + s);
    }
    std::vector<std::vector<std::size_t>> action(dim_v, std::vector<std::size_t>(n));
    for (int b = 0; b < dim_v; ++b)
        for (std::size_t i = 0; i < n; ++i) action[b][i] = i ^ (std::size_t{1} << b);
    return PinTorsor(dim_v, std::move(pts), std::move(action));
}

// ---------------------------------------------------------------------------
// Frame paths: CSV rows of 2 n^2 reals (row-major real parts of the basis
// matrix, then row-major imaginary parts). Columns of the matrix are the
// basis vectors.

inline LagrangianFrame frame_from_row(const std::vector<double>& row) {
    std::size_t nn = row.size() / 2;
    int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(nn))));
    if (static_cast<std::size_t>(n) * n * 2 != row.size())
        throw FixtureError("frame row must hold 2*n^2 reals");
    LagrangianFrame f;
    f.n = n;
    f.basis.assign(n, std::vector<complexd>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            f.basis[j][i] = {row[i * n + j], row[nn + i * n + j]};
    return f;
}

inline std::vector<complexd> phases_of_rows(const std::vector<std::vector<double>>& rows) {
    std::vector<complexd> out;
    for (const auto& r : rows) out.push_back(squared_phase(frame_from_row(r)));
    return out;
}

// the rotating-line loop: e^{i pi t} R inside C, t in [0, 1]
inline std::vector<std::vector<double>> rotating_line_rows(int samples) {
    std::vector<std::vector<double>> rows;
    for (int k = 0; k <= samples; ++k) {
        double t = static_cast<double>(k) / samples;
        rows.push_back({std::cos(M_PI * t), std::sin(M_PI * t)});
    }
    return rows;
}

}  // namespace ainf
