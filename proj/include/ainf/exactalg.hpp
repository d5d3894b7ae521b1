#pragma once
// Exact graded linear algebra over the integers: free modules on labeled
// generators, sparse chains and maps, composition, Smith normal form and
// integer homology. Everything is immutable after construction and safe to
// share across threads.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "ainf/common.hpp"

namespace ainf {

struct Generator {
    std::string label;
    int degree = 0;
};

class GradedModule {
  public:
    explicit GradedModule(std::vector<Generator> gens, std::string name = "")
        : name_(std::move(name)), gens_(std::move(gens)) {
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            auto [it, fresh] = index_.emplace(gens_[i].label, i);
            (void)it;
            if (!fresh) throw FixtureError("duplicate generator label '" + gens_[i].label + "'");
        }
    }

    std::size_t rank() const { return gens_.size(); }
    const Generator& gen(std::size_t i) const { return gens_.at(i); }
    const std::string& name() const { return name_; }

    std::optional<std::size_t> index_of(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    std::vector<std::size_t> gens_in_degree(int d) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < gens_.size(); ++i)
            if (gens_[i].degree == d) out.push_back(i);
        return out;
    }

  private:
    std::string name_;
    std::vector<Generator> gens_;
    std::unordered_map<std::string, std::size_t> index_;
};

using ModulePtr = std::shared_ptr<const GradedModule>;

inline ModulePtr make_module(std::vector<Generator> gens, std::string name = "") {
    return std::make_shared<const GradedModule>(std::move(gens), std::move(name));
}

// Finite integer combination of generators of one module. No zero terms are
// stored; the term map is ordered so iteration (and printing) is canonical.
class Chain {
  public:
    Chain() = default;
    explicit Chain(ModulePtr mod) : mod_(std::move(mod)) {}

    static Chain unit(const ModulePtr& mod, std::size_t gen, std::int64_t coeff = 1) {
        Chain c(mod);
        c.add_term(gen, coeff);
        return c;
    }

    const ModulePtr& module() const { return mod_; }
    const std::map<std::size_t, std::int64_t>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(std::size_t gen, std::int64_t coeff) {
        if (!mod_ || gen >= mod_->rank()) throw ModuleMismatchError("generator index out of range");
        if (coeff == 0) return;
        auto it = terms_.find(gen);
        if (it == terms_.end()) {
            terms_.emplace(gen, coeff);
        } else {
            it->second = checked_add(it->second, coeff);
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::int64_t coeff(std::size_t gen) const {
        auto it = terms_.find(gen);
        return it == terms_.end() ? 0 : it->second;
    }

    // Homogeneity is a predicate, not a type invariant.
    std::optional<int> homogeneous_degree() const {
        std::optional<int> deg;
        for (const auto& [g, c] : terms_) {
            (void)c;
            int d = mod_->gen(g).degree;
            if (!deg) deg = d;
            else if (*deg != d) return std::nullopt;
        }
        return deg;  // empty chain: nullopt with is_zero() true
    }

    friend Chain operator+(const Chain& a, const Chain& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        require_same_module(a, b, "add");
        Chain out = a;
        for (const auto& [g, c] : b.terms_) out.add_term(g, c);
        return out;
    }

    friend Chain operator-(const Chain& a, const Chain& b) {
        if (b.is_zero()) return a;
        if (a.is_zero()) return b * -1;
        require_same_module(a, b, "sub");
        Chain out = a;
        for (const auto& [g, c] : b.terms_) out.add_term(g, checked_neg(c));
        return out;
    }

    friend Chain operator*(const Chain& a, std::int64_t k) {
        Chain out(a.mod_);
        if (k == 0) return out;
        for (const auto& [g, c] : a.terms_) out.add_term(g, checked_mul(c, k));
        return out;
    }
    friend Chain operator*(std::int64_t k, const Chain& a) { return a * k; }

    friend bool operator==(const Chain& a, const Chain& b) {
        if (a.mod_ && b.mod_ && a.mod_ != b.mod_) return false;
        return a.terms_ == b.terms_;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [g, c] : terms_) {
            if (!first) os << (c > 0 ? " + " : " - ");
            else if (c < 0) os << "-";
            std::int64_t a = c < 0 ? -c : c;
            if (a != 1) os << a << "*";
            os << mod_->gen(g).label;
            first = false;
        }
        return os.str();
    }

  private:
    static void require_same_module(const Chain& a, const Chain& b, const char* op) {
        if (a.mod_ && b.mod_ && a.mod_ != b.mod_)
            throw ModuleMismatchError(std::string(op) + " over different modules");
    }

    ModulePtr mod_;
    std::map<std::size_t, std::int64_t> terms_;
};

// Sparse module map given by images of source generators.
class SparseMap {
  public:
    SparseMap() = default;
    SparseMap(ModulePtr src, ModulePtr dst, int degree_shift)
        : src_(std::move(src)), dst_(std::move(dst)), shift_(degree_shift) {}

    static SparseMap identity(const ModulePtr& mod) {
        SparseMap f(mod, mod, 0);
        for (std::size_t i = 0; i < mod->rank(); ++i) f.set_entry(i, Chain::unit(mod, i));
        return f;
    }

    const ModulePtr& source() const { return src_; }
    const ModulePtr& target() const { return dst_; }
    int degree_shift() const { return shift_; }

    void set_entry(std::size_t src_gen, Chain image) {
        if (src_gen >= src_->rank()) throw ModuleMismatchError("source generator out of range");
        if (image.module() && image.module() != dst_)
            throw ModuleMismatchError("image chain lives in the wrong module");
        if (image.is_zero()) entries_.erase(src_gen);
        else entries_[src_gen] = std::move(image);
    }

    Chain apply_gen(std::size_t src_gen) const {
        auto it = entries_.find(src_gen);
        if (it == entries_.end()) return Chain(dst_);
        return it->second;
    }

    Chain apply(const Chain& c) const {
        if (c.module() && c.module() != src_) throw ModuleMismatchError("apply: chain not in source module");
        Chain out(dst_);
        for (const auto& [g, coeff] : c.terms()) out = out + apply_gen(g) * coeff;
        return out;
    }

    bool is_zero() const { return entries_.empty(); }

    friend SparseMap compose(const SparseMap& f, const SparseMap& g) {
        if (g.dst_ != f.src_) throw ModuleMismatchError("compose: target of g is not source of f");
        SparseMap out(g.src_, f.dst_, f.shift_ + g.shift_);
        for (const auto& [s, img] : g.entries_) out.set_entry(s, f.apply(img));
        return out;
    }

    // Dense matrix, rows indexed by target generators, columns by source.
    std::vector<std::vector<std::int64_t>> matrix() const {
        std::vector<std::vector<std::int64_t>> a(dst_->rank(), std::vector<std::int64_t>(src_->rank(), 0));
        for (const auto& [s, img] : entries_)
            for (const auto& [t, c] : img.terms()) a[t][s] = c;
        return a;
    }

  private:
    ModulePtr src_, dst_;
    int shift_ = 0;
    std::map<std::size_t, Chain> entries_;
};

// ---------------------------------------------------------------------------
// Smith normal form, D = U * A * V with U, V unimodular. Intermediate entries
// of the reduction can grow far past any fixed width, so the transform runs
// over GMP integers; chain coefficients elsewhere stay checked 64-bit.

using IntMatrix = std::vector<std::vector<std::int64_t>>;
using BigMatrix = std::vector<std::vector<mpz_class>>;

inline BigMatrix to_big(const IntMatrix& a) {
    BigMatrix out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i].reserve(a[i].size());
        for (auto x : a[i]) out[i].emplace_back(static_cast<long>(x));
    }
    return out;
}

inline BigMatrix big_identity(std::size_t n) {
    BigMatrix m(n, std::vector<mpz_class>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline BigMatrix mat_mul(const BigMatrix& a, const BigMatrix& b) {
    std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    BigMatrix out(n, std::vector<mpz_class>(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
        }
    return out;
}

inline std::int64_t narrow(const mpz_class& x) {
    if (!x.fits_slong_p()) throw OverflowError("Smith invariant factor exceeds 64 bits");
    return static_cast<std::int64_t>(x.get_si());
}

struct SmithResult {
    BigMatrix d, u, v;  // d = u * a * v
    std::vector<std::int64_t> invariant_factors() const {
        std::vector<std::int64_t> out;
        std::size_t n = std::min(d.size(), d.empty() ? 0 : d[0].size());
        for (std::size_t i = 0; i < n; ++i)
            if (d[i][i] != 0) out.push_back(narrow(d[i][i]));
        return out;
    }
    std::size_t rank() const {
        std::size_t n = std::min(d.size(), d.empty() ? 0 : d[0].size()), r = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (d[i][i] != 0) ++r;
        return r;
    }
};

inline SmithResult smith_normal_form(const IntMatrix& a_in) {
    BigMatrix a = to_big(a_in);
    std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    SmithResult res{a, big_identity(rows), big_identity(cols)};
    BigMatrix& d = res.d;
    BigMatrix& u = res.u;
    BigMatrix& v = res.v;

    auto swap_rows = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        std::swap(d[i], d[j]);
        std::swap(u[i], u[j]);
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (auto& r : d) std::swap(r[i], r[j]);
        for (auto& r : v) std::swap(r[i], r[j]);
    };
    auto addmul_row = [&](std::size_t dst, std::size_t src, const mpz_class& q) {
        if (q == 0) return;
        for (std::size_t j = 0; j < cols; ++j) d[dst][j] += q * d[src][j];
        for (std::size_t j = 0; j < rows; ++j) u[dst][j] += q * u[src][j];
    };
    // unimodular rotation of rows (s, i) making d[i][s] = 0, d[s][s] = gcd
    auto rotate_rows = [&](std::size_t s, std::size_t i) {
        mpz_class g, x, y;
        mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), d[s][s].get_mpz_t(), d[i][s].get_mpz_t());
        mpz_class pg = d[s][s] / g, qg = d[i][s] / g;
        for (std::size_t j = 0; j < cols; ++j) {
            mpz_class rs = d[s][j], ri = d[i][j];
            d[s][j] = x * rs + y * ri;
            d[i][j] = pg * ri - qg * rs;
        }
        for (std::size_t j = 0; j < rows; ++j) {
            mpz_class rs = u[s][j], ri = u[i][j];
            u[s][j] = x * rs + y * ri;
            u[i][j] = pg * ri - qg * rs;
        }
    };
    auto rotate_cols = [&](std::size_t s, std::size_t j) {
        mpz_class g, x, y;
        mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), d[s][s].get_mpz_t(), d[s][j].get_mpz_t());
        mpz_class pg = d[s][s] / g, qg = d[s][j] / g;
        for (std::size_t i = 0; i < rows; ++i) {
            mpz_class cs = d[i][s], cj = d[i][j];
            d[i][s] = x * cs + y * cj;
            d[i][j] = pg * cj - qg * cs;
        }
        for (std::size_t i = 0; i < cols; ++i) {
            mpz_class cs = v[i][s], cj = v[i][j];
            v[i][s] = x * cs + y * cj;
            v[i][j] = pg * cj - qg * cs;
        }
    };
    auto addmul_col = [&](std::size_t dst, std::size_t src, const mpz_class& q) {
        if (q == 0) return;
        for (std::size_t i = 0; i < rows; ++i) d[i][dst] += q * d[i][src];
        for (std::size_t i = 0; i < cols; ++i) v[i][dst] += q * v[i][src];
    };
    auto negate_row = [&](std::size_t i) {
        for (auto& x : d[i]) x = -x;
        for (auto& x : u[i]) x = -x;
    };

    std::size_t n = std::min(rows, cols);
    for (std::size_t s = 0; s < n; ++s) {
        std::size_t pi = s, pj = s;
        mpz_class best = 0;
        for (std::size_t i = s; i < rows; ++i)
            for (std::size_t j = s; j < cols; ++j) {
                mpz_class x = abs(d[i][j]);
                if (x != 0 && (best == 0 || x < best)) { best = x; pi = i; pj = j; }
            }
        if (best == 0) break;
        swap_rows(s, pi);
        swap_cols(s, pj);

        for (;;) {
            bool clean = true;
            for (std::size_t i = s + 1; i < rows; ++i) {
                if (d[i][s] == 0) continue;
                if (d[i][s] % d[s][s] == 0) addmul_row(i, s, mpz_class(-(d[i][s] / d[s][s])));
                else rotate_rows(s, i);
                clean = false;
            }
            for (std::size_t j = s + 1; j < cols; ++j) {
                if (d[s][j] == 0) continue;
                if (d[s][j] % d[s][s] == 0) addmul_col(j, s, mpz_class(-(d[s][j] / d[s][s])));
                else rotate_cols(s, j);
                clean = false;
            }
            if (clean) {
                bool fixed = true;
                for (std::size_t i = s + 1; i < rows && fixed; ++i)
                    for (std::size_t j = s + 1; j < cols && fixed; ++j)
                        if (d[i][j] % d[s][s] != 0) {
                            addmul_row(s, i, 1);  // pulls the bad entry into row s
                            fixed = false;
                        }
                if (fixed) break;
            }
        }
        if (d[s][s] < 0) negate_row(s);
    }
    return res;
}

// ---------------------------------------------------------------------------
// Exact solvers on top of the Smith form.

// columns form a basis of ker(A) as a sublattice of Z^cols; cols is passed
// explicitly so 0-row matrices keep their shape
inline std::vector<std::vector<std::int64_t>> kernel_basis(const IntMatrix& a, std::size_t cols) {
    std::size_t rows = a.size();
    if (rows == 0) {
        // everything is in the kernel
        std::vector<std::vector<std::int64_t>> basis;
        for (std::size_t j = 0; j < cols; ++j) {
            std::vector<std::int64_t> e(cols, 0);
            e[j] = 1;
            basis.push_back(e);
        }
        return basis;
    }
    SmithResult s = smith_normal_form(a);
    std::size_t n = std::min(rows, cols);
    std::vector<std::vector<std::int64_t>> basis;
    for (std::size_t j = 0; j < cols; ++j) {
        bool zero_col = j >= n || s.d[j][j] == 0;
        if (!zero_col) continue;
        std::vector<std::int64_t> v(cols);
        for (std::size_t i = 0; i < cols; ++i) v[i] = narrow(s.v[i][j]);
        basis.push_back(v);
    }
    return basis;
}

// integral solution of A x = b, if one exists
inline std::optional<std::vector<std::int64_t>> solve_exact(const IntMatrix& a,
                                                            const std::vector<std::int64_t>& b) {
    std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    if (rows == 0) return std::vector<std::int64_t>(cols, 0);
    SmithResult s = smith_normal_form(a);
    std::vector<mpz_class> ub(rows, 0);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < rows; ++j) ub[i] += s.u[i][j] * b[j];
    std::size_t n = std::min(rows, cols);
    std::vector<mpz_class> y(cols, 0);
    for (std::size_t i = 0; i < rows; ++i) {
        if (i < n && s.d[i][i] != 0) {
            if (ub[i] % s.d[i][i] != 0) return std::nullopt;
            y[i] = ub[i] / s.d[i][i];
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    std::vector<std::int64_t> x(cols, 0);
    for (std::size_t i = 0; i < cols; ++i) {
        mpz_class xi = 0;
        for (std::size_t j = 0; j < cols; ++j) xi += s.v[i][j] * y[j];
        x[i] = narrow(xi);
    }
    return x;
}

// is v in the lattice spanned by the columns of L?
inline bool lattice_contains(const IntMatrix& l, const std::vector<std::int64_t>& v) {
    if (l.empty() || l[0].empty()) {
        for (auto x : v)
            if (x != 0) return false;
        return true;
    }
    return solve_exact(l, v).has_value();
}

// ---------------------------------------------------------------------------
// Integer homology ker(d_out) / im(d_in).

struct HomologySummary {
    int rank = 0;
    std::vector<std::int64_t> torsion;
    friend bool operator==(const HomologySummary&, const HomologySummary&) = default;
};

struct ComplexViolation : std::runtime_error {
    std::string witness;
    explicit ComplexViolation(std::string gen)
        : std::runtime_error("d*d != 0 at generator '" + gen + "'"), witness(std::move(gen)) {}
};

// d_in : C_prev -> C, d_out : C -> C_next. Requires d_out . d_in = 0; the
// witness generator is reported otherwise. Torsion is read off the invariant
// factors of d_in (its image sits inside ker d_out, a direct summand, so the
// factors agree with those of the restricted map).
inline HomologySummary homology(const SparseMap& d_in, const SparseMap& d_out) {
    if (d_in.target() != d_out.source()) throw ModuleMismatchError("homology: d_in target != d_out source");
    SparseMap dd = compose(d_out, d_in);
    for (std::size_t g = 0; g < d_in.source()->rank(); ++g)
        if (!dd.apply_gen(g).is_zero()) throw ComplexViolation(d_in.source()->gen(g).label);

    std::size_t n = d_out.source()->rank();
    auto snf_out = smith_normal_form(d_out.matrix());
    auto snf_in = smith_normal_form(d_in.matrix());
    std::size_t rank_out = snf_out.rank(), rank_in = snf_in.rank();
    HomologySummary h;
    h.rank = static_cast<int>(n - rank_out - rank_in);
    for (auto f : snf_in.invariant_factors())
        if (f != 1 && f != -1) h.torsion.push_back(f < 0 ? -f : f);
    return h;
}

}  // namespace ainf
