#include "asptk/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace asp {

namespace {

constexpr double kReducedCostTol = 1e-9;
constexpr double kPivotTol = 1e-10;
constexpr int kRefreshInterval = 50;

// Variable layout: [0, nc) structural, [nc, nc+nr) surplus, [nc+nr, nc+2nr)
// phase-1 artificials.
class CoveringSimplex {
public:
    CoveringSimplex(std::uint32_t n_rows, const std::vector<std::vector<std::uint32_t>>& cols)
        : nr_(n_rows), nc_(cols.size()), cols_(cols) {
        basis_.resize(nr_);
        in_basis_.assign(nc_ + 2 * static_cast<std::size_t>(nr_), 0);
        for (std::uint32_t i = 0; i < nr_; ++i) {
            basis_[i] = artificial(i);
            in_basis_[artificial(i)] = 1;
        }
        binv_.assign(static_cast<std::size_t>(nr_) * nr_, 0.0);
        for (std::uint32_t i = 0; i < nr_; ++i) binv_[idx(i, i)] = 1.0;
        x_.assign(nr_, 1.0);
    }

    LpSolution solve() {
        phase1_ = true;
        run();
        double infeas = 0.0;
        for (std::uint32_t i = 0; i < nr_; ++i) {
            if (is_artificial(basis_[i])) infeas += x_[i];
        }
        if (infeas > 1e-7) throw BadInput("covering LP infeasible: some row has no covering column");
        drive_out_artificials();
        phase1_ = false;
        run();

        LpSolution out;
        out.primal.assign(nc_, 0.0);
        out.objective = 0.0;
        for (std::uint32_t i = 0; i < nr_; ++i) {
            const std::size_t v = basis_[i];
            const double xv = x_[i];
            if (v < nc_) {
                out.primal[v] = xv;
                out.objective += xv;
            }
        }
        out.duals = dual_vector();
        out.pivots = pivots_;
        return out;
    }

private:
    std::uint32_t nr_;
    std::size_t nc_;
    const std::vector<std::vector<std::uint32_t>>& cols_;
    std::vector<std::size_t> basis_;
    std::vector<std::uint8_t> in_basis_;
    std::vector<double> binv_; // row-major nr x nr
    std::vector<double> x_;
    bool phase1_ = true;
    int pivots_ = 0;

    std::size_t idx(std::uint32_t r, std::uint32_t c) const {
        return static_cast<std::size_t>(r) * nr_ + c;
    }
    std::size_t surplus(std::uint32_t row) const { return nc_ + row; }
    std::size_t artificial(std::uint32_t row) const { return nc_ + nr_ + row; }
    bool is_artificial(std::size_t v) const { return v >= nc_ + nr_; }
    std::size_t var_count() const { return nc_ + 2 * static_cast<std::size_t>(nr_); }

    double cost(std::size_t v) const {
        if (phase1_) return is_artificial(v) ? 1.0 : 0.0;
        return v < nc_ ? 1.0 : 0.0;
    }

    // column of variable v applied to vector y: returns y' A_v.
    double dot_col(const std::vector<double>& y, std::size_t v) const {
        if (v < nc_) {
            double s = 0.0;
            for (std::uint32_t r : cols_[v]) s += y[r];
            return s;
        }
        if (is_artificial(v)) return y[v - nc_ - nr_];
        return -y[v - nc_];
    }

    // d = Binv * A_v.
    std::vector<double> direction(std::size_t v) const {
        std::vector<double> d(nr_, 0.0);
        if (v < nc_) {
            for (std::uint32_t r : cols_[v]) {
                for (std::uint32_t i = 0; i < nr_; ++i) d[i] += binv_[idx(i, r)];
            }
        } else if (is_artificial(v)) {
            const std::uint32_t r = static_cast<std::uint32_t>(v - nc_ - nr_);
            for (std::uint32_t i = 0; i < nr_; ++i) d[i] = binv_[idx(i, r)];
        } else {
            const std::uint32_t r = static_cast<std::uint32_t>(v - nc_);
            for (std::uint32_t i = 0; i < nr_; ++i) d[i] = -binv_[idx(i, r)];
        }
        return d;
    }

    std::vector<double> dual_vector() const {
        std::vector<double> y(nr_, 0.0);
        for (std::uint32_t i = 0; i < nr_; ++i) {
            const double cb = cost(basis_[i]);
            if (cb == 0.0) continue;
            for (std::uint32_t r = 0; r < nr_; ++r) y[r] += cb * binv_[idx(i, r)];
        }
        return y;
    }

    void run() {
        while (true) {
            const auto y = dual_vector();
            // Bland: lowest-index variable with a negative reduced cost.
            std::size_t entering = var_count();
            for (std::size_t v = 0; v < var_count(); ++v) {
                if (in_basis_[v]) continue;
                if (!phase1_ && is_artificial(v)) continue;
                if (cost(v) - dot_col(y, v) < -kReducedCostTol) {
                    entering = v;
                    break;
                }
            }
            if (entering == var_count()) return; // optimal
            const auto d = direction(entering);
            std::uint32_t leave = nr_;
            double theta = 0.0;
            for (std::uint32_t i = 0; i < nr_; ++i) {
                if (d[i] <= kPivotTol) continue;
                const double ratio = x_[i] / d[i];
                if (leave == nr_ || ratio < theta - 1e-12 ||
                    (std::abs(ratio - theta) <= 1e-12 && basis_[i] < basis_[leave])) {
                    leave = i;
                    theta = ratio;
                }
            }
            if (leave == nr_)
                throw NumericalFailure("covering LP claims unboundedness; pivot " +
                                       std::to_string(pivots_));
            pivot(entering, leave, d, theta);
        }
    }

    void pivot(std::size_t entering, std::uint32_t leave, const std::vector<double>& d,
               double theta) {
        for (std::uint32_t i = 0; i < nr_; ++i) {
            x_[i] -= theta * d[i];
            if (x_[i] < 0.0) {
                if (x_[i] < -1e-9)
                    throw NumericalFailure("basic variable went negative at pivot " +
                                           std::to_string(pivots_));
                x_[i] = 0.0;
            }
        }
        x_[leave] = std::max(0.0, theta);
        in_basis_[basis_[leave]] = 0;
        in_basis_[entering] = 1;
        basis_[leave] = entering;
        update_binv(leave, d);
        ++pivots_;
        if (pivots_ > 200000)
            throw NumericalFailure("simplex exceeded the pivot cap");
        if (pivots_ % kRefreshInterval == 0) refresh_binv();
    }

    void update_binv(std::uint32_t leave, const std::vector<double>& d) {
        const double piv = d[leave];
        if (std::abs(piv) < kPivotTol)
            throw NumericalFailure("degenerate pivot element below 1e-10 at pivot " +
                                   std::to_string(pivots_));
        const double inv = 1.0 / piv;
        for (std::uint32_t c = 0; c < nr_; ++c) binv_[idx(leave, c)] *= inv;
        for (std::uint32_t i = 0; i < nr_; ++i) {
            if (i == leave) continue;
            const double f = d[i];
            if (f == 0.0) continue;
            for (std::uint32_t c = 0; c < nr_; ++c) binv_[idx(i, c)] -= f * binv_[idx(leave, c)];
        }
    }

    // Recompute Binv from the basis columns by Gauss-Jordan with partial
    // pivoting, then re-derive x = Binv * b.
    void refresh_binv() {
        std::vector<double> mat(static_cast<std::size_t>(nr_) * nr_, 0.0);
        for (std::uint32_t i = 0; i < nr_; ++i) {
            const std::size_t v = basis_[i];
            if (v < nc_) {
                for (std::uint32_t r : cols_[v]) mat[idx(r, i)] = 1.0;
            } else if (is_artificial(v)) {
                mat[idx(static_cast<std::uint32_t>(v - nc_ - nr_), i)] = 1.0;
            } else {
                mat[idx(static_cast<std::uint32_t>(v - nc_), i)] = -1.0;
            }
        }
        std::vector<double> inv(static_cast<std::size_t>(nr_) * nr_, 0.0);
        for (std::uint32_t i = 0; i < nr_; ++i) inv[idx(i, i)] = 1.0;
        for (std::uint32_t c = 0; c < nr_; ++c) {
            std::uint32_t p = c;
            for (std::uint32_t r = c + 1; r < nr_; ++r) {
                if (std::abs(mat[idx(r, c)]) > std::abs(mat[idx(p, c)])) p = r;
            }
            if (std::abs(mat[idx(p, c)]) < kPivotTol)
                throw NumericalFailure("singular basis during inverse refresh at pivot " +
                                       std::to_string(pivots_));
            if (p != c) {
                for (std::uint32_t k = 0; k < nr_; ++k) {
                    std::swap(mat[idx(p, k)], mat[idx(c, k)]);
                    std::swap(inv[idx(p, k)], inv[idx(c, k)]);
                }
            }
            const double scale = 1.0 / mat[idx(c, c)];
            for (std::uint32_t k = 0; k < nr_; ++k) {
                mat[idx(c, k)] *= scale;
                inv[idx(c, k)] *= scale;
            }
            for (std::uint32_t r = 0; r < nr_; ++r) {
                if (r == c) continue;
                const double f = mat[idx(r, c)];
                if (f == 0.0) continue;
                for (std::uint32_t k = 0; k < nr_; ++k) {
                    mat[idx(r, k)] -= f * mat[idx(c, k)];
                    inv[idx(r, k)] -= f * inv[idx(c, k)];
                }
            }
        }
        binv_ = std::move(inv);
        for (std::uint32_t i = 0; i < nr_; ++i) {
            double s = 0.0;
            for (std::uint32_t c = 0; c < nr_; ++c) s += binv_[idx(i, c)];
            x_[i] = std::max(0.0, s); // b is all ones
        }
    }

    // After phase 1 every artificial sits at value 0; swap each for a
    // non-artificial column with a usable pivot element. A surplus column
    // always qualifies because Binv is nonsingular.
    void drive_out_artificials() {
        for (std::uint32_t i = 0; i < nr_; ++i) {
            if (!is_artificial(basis_[i])) continue;
            std::size_t pick = var_count();
            double pick_mag = 0.0;
            for (std::size_t v = 0; v < nc_ + nr_; ++v) {
                if (in_basis_[v]) continue;
                const auto d = direction(v);
                const double mag = std::abs(d[i]);
                if (mag > pick_mag) {
                    pick_mag = mag;
                    pick = v;
                }
            }
            if (pick == var_count() || pick_mag < kPivotTol)
                throw NumericalFailure("cannot drive artificial out of the basis");
            const auto d = direction(pick);
            pivot(pick, i, d, x_[i] / d[i]); // x_[i] is (numerically) zero here
        }
    }
};

} // namespace

LpSolution solve_covering_lp(std::uint32_t n_rows,
                             const std::vector<std::vector<std::uint32_t>>& cols) {
    if (n_rows == 0) throw BadInput("covering LP needs at least one row");
    if (cols.empty()) throw BadInput("covering LP needs at least one column");
    for (const auto& c : cols) {
        for (std::uint32_t r : c) {
            if (r >= n_rows) throw BadInput("column covers a row out of range");
        }
    }
    return CoveringSimplex(n_rows, cols).solve();
}

} // namespace asp
