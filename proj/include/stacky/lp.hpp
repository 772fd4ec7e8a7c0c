#pragma once

// Exact rational linear programming on systems {x : A x >= b} by
// Fourier-Motzkin elimination. Intended for desk-scale instances; systems
// with more than kMaxLpVariables variables are rejected outright.

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "stacky/int_matrix.hpp"

namespace stacky {

constexpr int kMaxLpVariables = 12;

enum class LpMode { Feasible, Bounded };

struct LpCertificate {
    bool feasible = false;
    RatVector witness;  // a point of the system when feasible
    RatVector farkas;   // lambda >= 0 with lambda^T A = 0, lambda^T b > 0 when infeasible
    bool bounded = false;
    RatVector recession;  // nonzero direction of the recession cone when unbounded
};

namespace detail {

struct FmRow {
    RatVector a;
    Rat b;
    RatVector mult;  // nonnegative combination of original rows producing this one
};

// Scale so the first nonzero coefficient (or b, for constant rows) has
// absolute value 1; keeps duplicate detection meaningful.
inline void fm_normalize(FmRow& r) {
    Rat scale = 0;
    for (const Rat& x : r.a)
        if (x != 0) {
            scale = abs(x);
            break;
        }
    if (scale == 0) {
        if (r.b != 0) scale = abs(r.b);
    }
    if (scale == 0 || scale == 1) return;
    for (Rat& x : r.a) x /= scale;
    r.b /= scale;
    for (Rat& x : r.mult) x /= scale;
}

class FourierMotzkin {
public:
    FourierMotzkin(const RatMatrix& a, const RatVector& b) {
        n_ = a.cols();
        if (static_cast<int>(b.size()) != a.rows()) throw DimensionMismatch("lp system shape mismatch");
        if (n_ > kMaxLpVariables) throw TooManyVariables("lp system exceeds the variable limit");
        const int m = a.rows();
        std::vector<FmRow> rows;
        rows.reserve(m);
        for (int i = 0; i < m; ++i) {
            FmRow r{a.row(i), b[i], RatVector(m, Rat(0))};
            r.mult[i] = 1;
            rows.push_back(std::move(r));
        }
        levels_.resize(n_ + 1);
        levels_[n_] = std::move(rows);
        for (int k = n_; k > 0; --k) levels_[k - 1] = eliminate(levels_[k], k - 1);
    }

    // Infeasibility shows up as a constant row 0 >= b with b > 0 at some level.
    std::optional<RatVector> farkas() const {
        for (const auto& level : levels_)
            for (const FmRow& r : level) {
                bool zero = true;
                for (const Rat& x : r.a)
                    if (x != 0) {
                        zero = false;
                        break;
                    }
                if (zero && r.b > 0) return r.mult;
            }
        return std::nullopt;
    }

    bool feasible() const { return !farkas().has_value(); }

    // Back-substitution; defined only when feasible.
    RatVector witness() const {
        RatVector x(n_);
        for (int k = 0; k < n_; ++k) {
            std::optional<Rat> lo, hi;
            for (const FmRow& r : levels_[k + 1]) {
                const Rat& c = r.a[k];
                if (c == 0) continue;
                Rat rest = r.b;
                for (int j = 0; j < k; ++j) rest -= r.a[j] * x[j];
                Rat bound = rest / c;
                if (c > 0) {
                    if (!lo || bound > *lo) lo = bound;
                } else {
                    if (!hi || bound < *hi) hi = bound;
                }
            }
            x[k] = lo ? *lo : (hi ? *hi : Rat(0));
        }
        return x;
    }

    // Exact feasible interval of x_0 after projecting the rest away; defined
    // only when feasible. nullopt means unbounded on that side.
    std::pair<std::optional<Rat>, std::optional<Rat>> first_variable_interval() const {
        std::optional<Rat> lo, hi;
        for (const FmRow& r : levels_[1]) {
            const Rat& c = r.a[0];
            if (c == 0) continue;
            Rat bound = r.b / c;
            if (c > 0) {
                if (!lo || bound > *lo) lo = bound;
            } else {
                if (!hi || bound < *hi) hi = bound;
            }
        }
        return {lo, hi};
    }

private:
    static std::vector<FmRow> eliminate(const std::vector<FmRow>& rows, int var) {
        std::vector<const FmRow*> lower, upper;
        std::vector<FmRow> out;
        for (const FmRow& r : rows) {
            if (r.a[var] > 0)
                lower.push_back(&r);
            else if (r.a[var] < 0)
                upper.push_back(&r);
            else
                out.push_back(r);
        }
        for (const FmRow* l : lower)
            for (const FmRow* u : upper) {
                // (-u_c) * l + (l_c) * u cancels the variable; both factors > 0
                Rat lc = l->a[var], uc = -u->a[var];
                FmRow r;
                r.a.resize(l->a.size());
                for (size_t j = 0; j < r.a.size(); ++j) r.a[j] = uc * l->a[j] + lc * u->a[j];
                r.b = uc * l->b + lc * u->b;
                r.mult.resize(l->mult.size());
                for (size_t j = 0; j < r.mult.size(); ++j) r.mult[j] = uc * l->mult[j] + lc * u->mult[j];
                out.push_back(std::move(r));
            }
        // prune exact duplicates and trivially true constant rows
        std::vector<FmRow> pruned;
        std::map<std::pair<RatVector, Rat>, bool> seen;
        for (FmRow& r : out) {
            fm_normalize(r);
            bool zero = true;
            for (const Rat& x : r.a)
                if (x != 0) {
                    zero = false;
                    break;
                }
            if (zero && r.b <= 0) continue;
            auto key = std::make_pair(r.a, r.b);
            if (seen.emplace(key, true).second) pruned.push_back(std::move(r));
        }
        return pruned;
    }

    int n_ = 0;
    std::vector<std::vector<FmRow>> levels_;  // levels_[k]: system over x_0..x_{k-1}
};

}  // namespace detail

struct LpInterval {
    bool feasible = false;
    std::optional<Rat> lower;  // nullopt = unbounded below
    std::optional<Rat> upper;  // nullopt = unbounded above
};

// Exact range of c.x over {A x >= b}: the objective becomes variable 0 of an
// extended system and everything else is projected away.
inline LpInterval lp_objective_range(const RatMatrix& a, const RatVector& b, const RatVector& c) {
    if (static_cast<int>(c.size()) != a.cols()) throw DimensionMismatch("objective length mismatch");
    RatMatrix sys(a.rows() + 2, a.cols() + 1);
    RatVector rhs(a.rows() + 2, Rat(0));
    sys.at(0, 0) = 1;   //  t - c.x >= 0
    sys.at(1, 0) = -1;  //  c.x - t >= 0
    for (int j = 0; j < a.cols(); ++j) {
        sys.at(0, j + 1) = -c[j];
        sys.at(1, j + 1) = c[j];
    }
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) sys.at(i + 2, j + 1) = a.at(i, j);
        rhs[i + 2] = b[i];
    }
    detail::FourierMotzkin fm(sys, rhs);
    LpInterval out;
    out.feasible = fm.feasible();
    if (!out.feasible) return out;
    auto [lo, hi] = fm.first_variable_interval();
    out.lower = lo;
    out.upper = hi;
    return out;
}

// First nonzero vector found in {x : A x >= 0}, scanning coordinate
// directions in order; primitive integer scaling. Empty result = cone is {0}.
inline RatVector recession_direction(const RatMatrix& a) {
    const int n = a.cols();
    for (int i = 0; i < n; ++i)
        for (int sign : {1, -1}) {
            RatMatrix sys(a.rows() + 1, n);
            RatVector rhs(a.rows() + 1, Rat(0));
            for (int r = 0; r < a.rows(); ++r)
                for (int j = 0; j < n; ++j) sys.at(r, j) = a.at(r, j);
            sys.at(a.rows(), i) = sign;
            rhs[a.rows()] = 1;
            detail::FourierMotzkin fm(sys, rhs);
            if (fm.feasible()) {
                RatVector w = fm.witness();
                std::vector<Int> prim = primitive_direction(w);
                return rat_vector(prim);
            }
        }
    return {};
}

// Feasibility or boundedness certificate for {x : A x >= b}.
inline LpCertificate lp_check(const RatMatrix& a, const RatVector& b, LpMode mode) {
    LpCertificate cert;
    detail::FourierMotzkin fm(a, b);
    auto bad = fm.farkas();
    cert.feasible = !bad.has_value();
    if (cert.feasible)
        cert.witness = fm.witness();
    else
        cert.farkas = *bad;
    if (mode == LpMode::Bounded) {
        RatVector dir = recession_direction(a);
        cert.bounded = dir.empty();
        cert.recession = dir;
    }
    return cert;
}

}  // namespace stacky
