#include "liftsched/lp.hpp"

#include "liftsched/errors.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace liftsched {

Rat LinRow::lhs_value(const std::vector<Rat>& point) const {
    Rat v = 0;
    for (const auto& [j, c] : terms) v += c * point[static_cast<std::size_t>(j)];
    return v;
}

bool LinRow::satisfied_by(const std::vector<Rat>& point) const {
    Rat v = lhs_value(point);
    switch (rel) {
        case Rel::EQ: return v == rhs;
        case Rel::LE: return v <= rhs;
        case Rel::GE: return v >= rhs;
    }
    return false;
}

int RationalLP::add_var(const std::string& name, const Rat& lo, std::optional<Rat> up) {
    if (up && *up < lo) throw Error("add_var: upper bound below lower bound");
    var_names.push_back(name);
    lower.push_back(lo);
    upper.push_back(std::move(up));
    return static_cast<int>(var_names.size()) - 1;
}

void RationalLP::add_row(LinRow row) {
    for (const auto& [j, c] : row.terms)
        if (j < 0 || static_cast<std::size_t>(j) >= var_names.size())
            throw Error("add_row: row references undeclared variable");
    rows.push_back(std::move(row));
}

int RationalLP::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < var_names.size(); ++i)
        if (var_names[i] == name) return static_cast<int>(i);
    throw Error("var_index: unknown variable '" + name + "'");
}

bool RationalLP::point_feasible(const std::vector<Rat>& point) const {
    if (point.size() != var_names.size()) return false;
    for (std::size_t j = 0; j < var_names.size(); ++j) {
        if (point[j] < lower[j]) return false;
        if (upper[j] && point[j] > *upper[j]) return false;
    }
    for (const LinRow& row : rows)
        if (!row.satisfied_by(point)) return false;
    return true;
}

void RationalLP::dump(std::ostream& os) const {
    os << "vars " << var_names.size() << " rows " << rows.size() << "\n";
    for (std::size_t j = 0; j < var_names.size(); ++j) {
        os << "var " << var_names[j] << " in [" << rat_str(lower[j]) << ", "
           << (upper[j] ? rat_str(*upper[j]) : std::string("inf")) << "]\n";
    }
    for (const LinRow& row : rows) {
        os << row.name << ": ";
        bool first = true;
        for (const auto& [j, c] : row.terms) {
            if (!first) os << " + ";
            os << rat_str(c) << "*" << var_names[static_cast<std::size_t>(j)];
            first = false;
        }
        if (first) os << "0";
        switch (row.rel) {
            case Rel::EQ: os << " = "; break;
            case Rel::LE: os << " <= "; break;
            case Rel::GE: os << " >= "; break;
        }
        os << rat_str(row.rhs) << "\n";
    }
}

std::string RationalLP::dump_str() const {
    std::ostringstream os;
    dump(os);
    return os.str();
}

namespace {

// Standard-form data: A xhat = b, xhat >= 0, after shifting out lower bounds
// and adding slacks. Column layout: structural vars, then slacks.
struct StandardForm {
    std::size_t n_struct = 0;
    std::size_t n_slack = 0;
    std::vector<std::vector<std::pair<std::size_t, Rat>>> cols; // sparse by column
    std::vector<Rat> b;
    std::size_t width() const { return n_struct + n_slack; }
};

class SimplexTableau {
public:
    SimplexTableau(const StandardForm& sf)
        : m_(sf.b.size()), n_(sf.width()), width_(sf.width() + sf.b.size() + 1) {
        cells_.assign((m_ + 1) * width_, Rat(0));
        basis_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            at(i, rhs_col()) = sf.b[i];
            at(i, art_col(i)) = 1;
            basis_[i] = art_col(i);
        }
        for (std::size_t j = 0; j < sf.width(); ++j)
            for (const auto& [i, v] : sf.cols[j]) at(i, j) = v;
        // phase-1 reduced costs: r_j = c_j - sum_i A_ij with c = 1 on artificials
        for (std::size_t j = 0; j < width_; ++j) {
            Rat z = 0;
            for (std::size_t i = 0; i < m_; ++i) z += at(i, j);
            Rat c = (j >= n_ && j < n_ + m_) ? Rat(1) : Rat(0);
            at(m_, j) = c - z; // rhs cell holds -objective
        }
    }

    std::size_t rows() const { return m_; }
    std::size_t art_col(std::size_t i) const { return n_ + i; }
    std::size_t rhs_col() const { return width_ - 1; }
    bool is_artificial(std::size_t j) const { return j >= n_ && j < n_ + m_; }

    Rat& at(std::size_t i, std::size_t j) { return cells_[i * width_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return cells_[i * width_ + j]; }

    Rat objective() const { return -at(m_, rhs_col()); }

    // Runs the simplex loop on the current cost row; returns false on
    // unboundedness. Dantzig pricing with smallest-index ties; switches to
    // Bland's rule permanently once a degenerate streak is detected, which
    // guarantees termination.
    bool iterate(bool allow_artificial_entering) {
        bool bland = false;
        int stall = 0;
        Rat last_obj = objective();
        for (;;) {
            std::size_t enter = width_; // sentinel
            if (bland) {
                for (std::size_t j = 0; j < n_ + m_; ++j) {
                    if (!allow_artificial_entering && is_artificial(j)) continue;
                    if (at(m_, j) < 0) {
                        enter = j;
                        break;
                    }
                }
            } else {
                const Rat* best = nullptr;
                for (std::size_t j = 0; j < n_ + m_; ++j) {
                    if (!allow_artificial_entering && is_artificial(j)) continue;
                    const Rat& r = at(m_, j);
                    if (r < 0 && (!best || r < *best)) {
                        best = &r;
                        enter = j;
                    }
                }
            }
            if (enter == width_) return true; // optimal

            std::size_t leave = m_;
            Rat best_ratio;
            for (std::size_t i = 0; i < m_; ++i) {
                const Rat& a = at(i, enter);
                if (a <= 0) continue;
                Rat ratio = at(i, rhs_col()) / a;
                if (leave == m_ || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leave])) {
                    best_ratio = ratio;
                    leave = i;
                }
            }
            if (leave == m_) return false; // unbounded direction

            pivot(leave, enter);
            if (!bland) {
                Rat obj = objective();
                if (obj == last_obj) {
                    if (++stall >= 64) bland = true;
                } else {
                    stall = 0;
                    last_obj = obj;
                }
            }
        }
    }

    void pivot(std::size_t leave, std::size_t enter) {
        Rat p = at(leave, enter);
        if (p == 0) throw InternalError("simplex: zero pivot");
        if (p != 1)
            for (std::size_t j = 0; j < width_; ++j)
                if (at(leave, j) != 0) at(leave, j) /= p;
        for (std::size_t i = 0; i <= m_; ++i) {
            if (i == leave) continue;
            const Rat f = at(i, enter);
            if (f == 0) continue;
            for (std::size_t j = 0; j < width_; ++j) {
                const Rat& pv = at(leave, j);
                if (pv != 0) at(i, j) -= f * pv;
            }
        }
        basis_[leave] = enter;
    }

    // install a fresh cost vector (phase 2); costs over structural+slack cols
    void set_costs(const std::vector<Rat>& costs) {
        for (std::size_t j = 0; j < width_; ++j) at(m_, j) = 0;
        for (std::size_t j = 0; j < costs.size(); ++j) at(m_, j) = costs[j];
        // price out the basic columns
        for (std::size_t i = 0; i < m_; ++i) {
            std::size_t bj = basis_[i];
            Rat cb = bj < costs.size() ? costs[bj] : Rat(0);
            if (cb == 0) continue;
            for (std::size_t j = 0; j < width_; ++j) {
                const Rat& v = at(i, j);
                if (v != 0) at(m_, j) -= cb * v;
            }
        }
    }

    // Pivot artificial variables out of the basis where possible after a
    // successful phase 1; rows where every real coefficient vanished are
    // redundant and stay parked on a zero-valued artificial.
    void expel_artificials() {
        for (std::size_t i = 0; i < m_; ++i) {
            if (!is_artificial(basis_[i])) continue;
            for (std::size_t j = 0; j < n_; ++j) {
                if (at(i, j) != 0) {
                    pivot(i, j);
                    break;
                }
            }
        }
    }

    std::vector<Rat> extract(std::size_t count) const {
        std::vector<Rat> x(count, Rat(0));
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] < count) x[basis_[i]] = at(i, rhs_col());
        return x;
    }

    // phase-1 dual multipliers y_i = 1 - r_{artificial i}
    std::vector<Rat> phase1_duals() const {
        std::vector<Rat> y(m_);
        for (std::size_t i = 0; i < m_; ++i) y[i] = Rat(1) - at(m_, art_col(i));
        return y;
    }

private:
    std::size_t m_, n_, width_;
    std::vector<Rat> cells_;
    std::vector<std::size_t> basis_;
};

struct Standardizer {
    const RationalLP& lp;
    std::vector<int> extra_upper; // variables whose upper bound became a row

    StandardForm build() const {
        StandardForm sf;
        sf.n_struct = lp.num_vars();
        std::size_t n_rows = lp.rows.size() + extra_upper.size();
        sf.b.assign(n_rows, Rat(0));

        std::vector<Rat> row_sign(n_rows, Rat(1));
        std::vector<int> slack_of(n_rows, -1);

        // working rows: original then upper-bound rows x_j <= up_j - lo_j
        auto row_rel = [&](std::size_t r) {
            return r < lp.rows.size() ? lp.rows[r].rel : Rel::LE;
        };
        // rhs shifted by lower bounds
        for (std::size_t r = 0; r < n_rows; ++r) {
            Rat rhs;
            if (r < lp.rows.size()) {
                rhs = lp.rows[r].rhs;
                for (const auto& [j, c] : lp.rows[r].terms)
                    rhs -= c * lp.lower[static_cast<std::size_t>(j)];
            } else {
                int j = extra_upper[r - lp.rows.size()];
                rhs = *lp.upper[static_cast<std::size_t>(j)] -
                      lp.lower[static_cast<std::size_t>(j)];
            }
            sf.b[r] = rhs;
        }
        // slack columns
        sf.n_slack = 0;
        for (std::size_t r = 0; r < n_rows; ++r)
            if (row_rel(r) != Rel::EQ) sf.n_slack++;
        sf.cols.assign(sf.width(), {});

        // sign normalization: rows with negative rhs are multiplied by -1
        for (std::size_t r = 0; r < n_rows; ++r)
            if (sf.b[r] < 0) {
                row_sign[r] = -1;
                sf.b[r] = -sf.b[r];
            }

        std::size_t next_slack = sf.n_struct;
        for (std::size_t r = 0; r < n_rows; ++r) {
            if (r < lp.rows.size()) {
                for (const auto& [j, c] : lp.rows[r].terms) {
                    if (c == 0) continue;
                    sf.cols[static_cast<std::size_t>(j)].push_back({r, c * row_sign[r]});
                }
            } else {
                int j = extra_upper[r - lp.rows.size()];
                sf.cols[static_cast<std::size_t>(j)].push_back({r, row_sign[r]});
            }
            Rel rel = row_rel(r);
            if (rel != Rel::EQ) {
                Rat s = (rel == Rel::LE) ? Rat(1) : Rat(-1);
                sf.cols[next_slack].push_back({r, s * row_sign[r]});
                slack_of[r] = static_cast<int>(next_slack);
                ++next_slack;
            }
        }
        // coalesce duplicate entries per column (a variable can repeat in a row)
        for (auto& col : sf.cols) {
            std::sort(col.begin(), col.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            std::vector<std::pair<std::size_t, Rat>> merged;
            for (const auto& [i, v] : col) {
                if (!merged.empty() && merged.back().first == i)
                    merged.back().second += v;
                else
                    merged.push_back({i, v});
            }
            std::erase_if(merged, [](const auto& e) { return e.second == 0; });
            col = std::move(merged);
        }
        return sf;
    }

    std::vector<Rat> to_original(const std::vector<Rat>& xhat) const {
        std::vector<Rat> x(lp.num_vars());
        for (std::size_t j = 0; j < lp.num_vars(); ++j) x[j] = lp.lower[j] + xhat[j];
        return x;
    }
};

void verify_farkas(const StandardForm& sf, const std::vector<Rat>& y) {
    Rat yb = 0;
    for (std::size_t i = 0; i < sf.b.size(); ++i) yb += y[i] * sf.b[i];
    if (yb <= 0) throw InternalError("farkas certificate: y^T b not positive");
    for (std::size_t j = 0; j < sf.width(); ++j) {
        Rat ya = 0;
        for (const auto& [i, v] : sf.cols[j]) ya += y[i] * v;
        if (ya > 0) throw InternalError("farkas certificate: y^T A has a positive entry");
    }
}

// Runs phase 1 on the standardized problem. Returns the tableau positioned
// after phase 1 plus the outcome.
struct Phase1Result {
    bool feasible;
    std::vector<Rat> duals; // only when infeasible
};

Phase1Result run_phase1(SimplexTableau& tab) {
    if (!tab.iterate(true)) throw InternalError("phase 1 cannot be unbounded");
    if (tab.objective() > 0) return {false, tab.phase1_duals()};
    tab.expel_artificials();
    return {true, {}};
}

} // namespace

LpOutcome lp_feasible(const RationalLP& lp) {
    Standardizer std_form{lp, {}};
    for (int round = 0;; ++round) {
        StandardForm sf = std_form.build();
        SimplexTableau tab(sf);
        Phase1Result p1 = run_phase1(tab);
        if (!p1.feasible) {
            verify_farkas(sf, p1.duals);
            LpOutcome out;
            out.status = LpOutcome::Status::INFEASIBLE;
            FarkasCertificate cert;
            cert.row_mults = p1.duals;
            cert.description = "nonnegative combination of standardized rows with "
                               "y^T A <= 0 and y^T b > 0";
            out.farkas = std::move(cert);
            return out;
        }
        std::vector<Rat> xhat = tab.extract(sf.n_struct);
        std::vector<Rat> x = std_form.to_original(xhat);
        // lazy upper bounds: most of this artifact's upper bounds are implied
        // by equality rows, so they are only materialized when violated
        bool added = false;
        for (std::size_t j = 0; j < lp.num_vars(); ++j) {
            if (lp.upper[j] && x[j] > *lp.upper[j]) {
                std_form.extra_upper.push_back(static_cast<int>(j));
                added = true;
            }
        }
        if (added) {
            if (round > static_cast<int>(lp.num_vars()))
                throw InternalError("lazy bound loop failed to terminate");
            continue;
        }
        if (!lp.point_feasible(x))
            throw InternalError("simplex returned a point that fails substitution");
        LpOutcome out;
        out.status = LpOutcome::Status::FEASIBLE;
        out.point = std::move(x);
        return out;
    }
}

OptimizeResult lp_optimize(const RationalLP& lp, const std::map<int, Rat>& objective,
                           Sense sense) {
    Standardizer std_form{lp, {}};
    // materialize upper bounds of objective variables up front; others lazily
    for (const auto& [j, c] : objective)
        if (lp.upper[static_cast<std::size_t>(j)])
            std_form.extra_upper.push_back(j);

    for (int round = 0;; ++round) {
        StandardForm sf = std_form.build();
        SimplexTableau tab(sf);
        Phase1Result p1 = run_phase1(tab);
        if (!p1.feasible) {
            verify_farkas(sf, p1.duals);
            throw Infeasible();
        }
        std::vector<Rat> costs(sf.width(), Rat(0));
        for (const auto& [j, c] : objective)
            costs[static_cast<std::size_t>(j)] = (sense == Sense::MIN) ? c : -c;
        tab.set_costs(costs);
        if (!tab.iterate(false)) throw Unbounded();

        std::vector<Rat> xhat = tab.extract(sf.n_struct);
        std::vector<Rat> x = std_form.to_original(xhat);
        bool added = false;
        for (std::size_t j = 0; j < lp.num_vars(); ++j) {
            if (lp.upper[j] && x[j] > *lp.upper[j]) {
                std_form.extra_upper.push_back(static_cast<int>(j));
                added = true;
            }
        }
        if (added) {
            if (round > static_cast<int>(lp.num_vars()))
                throw InternalError("lazy bound loop failed to terminate");
            continue;
        }
        if (!lp.point_feasible(x))
            throw InternalError("simplex returned a point that fails substitution");
        OptimizeResult res;
        res.point = std::move(x);
        Rat val = 0;
        for (const auto& [j, c] : objective)
            val += c * res.point[static_cast<std::size_t>(j)];
        res.value = val;
        return res;
    }
}

} // namespace liftsched
