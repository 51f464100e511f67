#include "liftsched/lift.hpp"

#include "liftsched/errors.hpp"

#include <algorithm>
#include <sstream>

namespace liftsched {

namespace {

// subsets of {0..n-1} with size <= l, graded lexicographic
void enumerate_subsets(std::size_t n, int ell, std::vector<Mono>& out, std::size_t cap) {
    out.push_back({});
    std::vector<int> cur;
    for (int size = 1; size <= ell && size <= static_cast<int>(n); ++size) {
        cur.assign(static_cast<std::size_t>(size), 0);
        for (int i = 0; i < size; ++i) cur[static_cast<std::size_t>(i)] = i;
        for (;;) {
            out.push_back(Mono(cur.begin(), cur.end()));
            if (out.size() > cap) throw LiftExplosion("lift variable budget exceeded");
            int pos = size - 1;
            while (pos >= 0 &&
                   cur[static_cast<std::size_t>(pos)] == static_cast<int>(n) - size + pos)
                --pos;
            if (pos < 0) break;
            ++cur[static_cast<std::size_t>(pos)];
            for (int i = pos + 1; i < size; ++i)
                cur[static_cast<std::size_t>(i)] = cur[static_cast<std::size_t>(i - 1)] + 1;
        }
    }
}

// phi_{S,R} = prod_{S} x * prod_{R} (1-x), expanded square-free:
// sum over U subseteq R of (-1)^|U| x_{S u U}
SquareFreePoly phi_multiplier(const Mono& S, const Mono& R) {
    SquareFreePoly out = SquareFreePoly::monomial(S);
    for (int r : R) {
        SquareFreePoly factor(Rat(1));
        factor.add_term({r}, Rat(-1));
        out = out * factor;
    }
    return out;
}

// affine row as polynomial g(x) = sum a x - rhs for GE rows (rhs - sum a x
// for LE); equalities keep h(x) = sum a x - rhs
SquareFreePoly row_poly(const LinRow& row) {
    SquareFreePoly g;
    Rat sign = (row.rel == Rel::LE) ? Rat(-1) : Rat(1);
    for (const auto& [j, c] : row.terms) g.add_term({j}, sign * c);
    g.add_term({}, -sign * row.rhs);
    return g;
}

void check_binary_intended(const RationalLP& base) {
    for (std::size_t j = 0; j < base.num_vars(); ++j) {
        if (base.lower[j] < 0 || (base.upper[j] && *base.upper[j] > 1))
            throw Error("build_sa_lift: variable '" + base.var_names[j] +
                        "' is not binary-intended");
    }
}

} // namespace

int LiftedLP::var_of(const Mono& m) const {
    auto it = subset_index.find(m);
    if (it == subset_index.end()) throw Error("LiftedLP: unknown subset " + mono_str(m));
    return it->second;
}

LiftedLP build_sa_lift(const RationalLP& base, int ell, const LiftBudget& budget) {
    if (ell < 1) throw Error("build_sa_lift: degree must be >= 1");
    check_binary_intended(base);

    LiftedLP lift;
    lift.degree = ell;
    lift.ground_size = base.num_vars();
    enumerate_subsets(base.num_vars(), ell, lift.subsets, budget.max_vars);
    for (std::size_t i = 0; i < lift.subsets.size(); ++i) {
        lift.subset_index[lift.subsets[i]] = static_cast<int>(i);
        lift.lp.add_var("w" + mono_str(lift.subsets[i]).substr(1), 0, std::nullopt);
    }

    auto emit = [&](const SquareFreePoly& poly, Rel rel, const std::string& name) {
        LinRow row;
        row.name = name;
        for (const auto& [m, c] : poly.terms()) {
            if (static_cast<int>(m.size()) > ell) return false; // degree too high
            row.terms.push_back({lift.var_of(m), c});
        }
        row.rel = rel;
        row.rhs = 0;
        lift.lp.add_row(std::move(row));
        if (lift.lp.rows.size() > budget.max_rows)
            throw LiftExplosion("lift row budget exceeded at " +
                                std::to_string(lift.lp.rows.size()) + " rows");
        return true;
    };

    { // SA.1
        LinRow norm;
        norm.name = "normalization";
        norm.terms.push_back({lift.var_of({}), Rat(1)});
        norm.rel = Rel::EQ;
        norm.rhs = 1;
        lift.lp.add_row(std::move(norm));
    }

    std::vector<SquareFreePoly> base_polys;
    base_polys.reserve(base.rows.size());
    for (const LinRow& r : base.rows) base_polys.push_back(row_poly(r));

    // every disjoint (S,R) with |S u R| <= l, S the lexicographically chosen
    // subset of the union
    for (const Mono& u : lift.subsets) {
        std::size_t splits = 1u << u.size();
        for (std::size_t mask = 0; mask < splits; ++mask) {
            Mono S, R;
            for (std::size_t t = 0; t < u.size(); ++t)
                ((mask >> t) & 1 ? R : S).push_back(u[t]);
            SquareFreePoly phi = phi_multiplier(S, R);
            std::string suffix = " phi(" + mono_str(S) + ";" + mono_str(R) + ")";
            emit(phi, Rel::GE, "box" + suffix); // SA.2, always within degree
            for (std::size_t r = 0; r < base.rows.size(); ++r) {
                const SquareFreePoly product = phi * base_polys[r];
                Rel rel = base.rows[r].rel == Rel::EQ ? Rel::EQ : Rel::GE;
                emit(product, rel, base.rows[r].name + suffix); // SA.3 / SA.4
            }
        }
    }
    return lift;
}

Pseudoexpectation::Pseudoexpectation(std::size_t ground_size, int degree,
                                     std::map<Mono, Rat> values)
    : ground_(ground_size), degree_(degree), values_(std::move(values)) {
    std::erase_if(values_, [](const auto& kv) { return kv.second == 0; });
    auto it = values_.find({});
    if (it == values_.end() || it->second != 1)
        throw Error("pseudoexpectation: E(1) must equal 1");
    for (const auto& [m, v] : values_)
        if (static_cast<int>(m.size()) > degree_)
            throw Error("pseudoexpectation: entry beyond the degree budget");
}

Rat Pseudoexpectation::value(const Mono& m) const {
    if (static_cast<int>(m.size()) > degree_) throw DegreeExceeded();
    auto it = values_.find(m);
    return it == values_.end() ? Rat(0) : it->second;
}

Rat Pseudoexpectation::eval(const SquareFreePoly& poly) const {
    Rat total = 0;
    for (const auto& [m, c] : poly.terms()) total += c * value(m);
    return total;
}

Pseudoexpectation Pseudoexpectation::condition(const Mono& A) const {
    if (A.empty()) return *this;
    if (static_cast<int>(A.size()) > degree_) throw DegreeExhausted();
    Rat mass = value(A);
    if (mass == 0) throw ZeroMass();

    // at full degree every conditioned moment stays available since
    // |I u A| <= |E|; below it the budget drops per conditioning step
    bool full = degree_ >= static_cast<int>(ground_);
    int new_degree = full ? degree_ : degree_ - static_cast<int>(A.size());

    std::map<Mono, Rat> vals;
    for (const auto& [K, v] : values_) {
        if (!mono_contains(K, A)) continue;
        Mono core;
        std::set_difference(K.begin(), K.end(), A.begin(), A.end(),
                            std::back_inserter(core));
        // every I with core subseteq I subseteq K maps to x_{I u A} = x_K
        std::size_t extras = A.size();
        for (std::size_t mask = 0; mask < (1u << extras); ++mask) {
            Mono I = core;
            for (std::size_t t = 0; t < extras; ++t)
                if ((mask >> t) & 1) I.push_back(A[t]);
            std::sort(I.begin(), I.end());
            if (static_cast<int>(I.size()) <= new_degree) vals[I] = v / mass;
        }
    }
    return Pseudoexpectation(ground_, new_degree, std::move(vals));
}

std::string Pseudoexpectation::dump() const {
    std::ostringstream os;
    os << "pseudoexpectation ground " << ground_ << " degree " << degree_ << "\n";
    std::vector<const Mono*> keys;
    for (const auto& [m, v] : values_) keys.push_back(&m);
    std::sort(keys.begin(), keys.end(), [](const Mono* a, const Mono* b) {
        if (a->size() != b->size()) return a->size() < b->size();
        return *a < *b;
    });
    for (const Mono* m : keys) {
        os << "(";
        for (std::size_t i = 0; i < m->size(); ++i) {
            if (i) os << ",";
            os << (*m)[i];
        }
        os << ") " << rat_str(values_.at(*m)) << "\n";
    }
    return os.str();
}

Pseudoexpectation pe_parse(const std::string& text) {
    std::istringstream is(text);
    std::string word;
    is >> word;
    if (word != "pseudoexpectation") throw Error("pe_parse: bad header");
    std::size_t ground;
    int degree;
    is >> word >> ground >> word >> degree;
    std::map<Mono, Rat> vals;
    std::string subset, value;
    while (is >> subset >> value) {
        Mono m;
        std::string inner = subset.substr(1, subset.size() - 2);
        std::istringstream ms(inner);
        std::string tok;
        while (std::getline(ms, tok, ','))
            if (!tok.empty()) m.push_back(std::stoi(tok));
        vals[mono_make(m)] = rat_parse(value);
    }
    return Pseudoexpectation(ground, degree, std::move(vals));
}

Pseudoexpectation pe_from_solution(const LiftedLP& lift, const std::vector<Rat>& point) {
    if (!lift.lp.point_feasible(point)) throw InfeasiblePoint();
    std::map<Mono, Rat> vals;
    for (std::size_t i = 0; i < lift.subsets.size(); ++i)
        if (point[i] != 0) vals[lift.subsets[i]] = point[i];
    return Pseudoexpectation(lift.ground_size, lift.degree, std::move(vals));
}

namespace {

// shared enumeration of the SA conditions; calls sink(row-name, S, R, value,
// is_equality) for every generated condition
template <typename Sink>
void for_each_sa_condition(const Pseudoexpectation& pe, const RationalLP& base, int ell,
                           Sink&& sink) {
    std::vector<Mono> subsets;
    enumerate_subsets(pe.ground_size(), ell, subsets, SIZE_MAX);
    std::vector<SquareFreePoly> base_polys;
    for (const LinRow& r : base.rows) base_polys.push_back(row_poly(r));

    for (const Mono& u : subsets) {
        std::size_t splits = 1u << u.size();
        for (std::size_t mask = 0; mask < splits; ++mask) {
            Mono S, R;
            for (std::size_t t = 0; t < u.size(); ++t)
                ((mask >> t) & 1 ? R : S).push_back(u[t]);
            SquareFreePoly phi = phi_multiplier(S, R);
            sink("box", S, R, pe.eval(phi), false);
            for (std::size_t r = 0; r < base.rows.size(); ++r) {
                SquareFreePoly product = phi * base_polys[r];
                if (static_cast<int>(product.degree()) > ell) continue;
                sink(base.rows[r].name, S, R, pe.eval(product),
                     base.rows[r].rel == Rel::EQ);
            }
        }
    }
}

} // namespace

std::string VerifyReport::str() const {
    if (violations.empty()) return "ok: no violations\n";
    std::ostringstream os;
    for (const Violation& v : violations)
        os << "violated " << v.row << " S=" << mono_str(v.S) << " R=" << mono_str(v.R)
           << " value " << rat_str(v.value) << "\n";
    return os.str();
}

VerifyReport verify_sa_pe(const Pseudoexpectation& pe, const RationalLP& base, int ell) {
    VerifyReport report;
    if (pe.value({}) != 1)
        report.violations.push_back({"normalization", {}, {}, pe.value({})});
    for_each_sa_condition(pe, base, ell,
                          [&](const std::string& name, const Mono& S, const Mono& R,
                              const Rat& val, bool equality) {
                              if (equality ? (val != 0) : (val < 0))
                                  report.violations.push_back({name, S, R, val});
                          });
    return report;
}

VerifyReport verify_sos_pe(const Pseudoexpectation& pe, const RationalLP& base, int ell,
                           std::size_t max_monomials) {
    VerifyReport report;
    if (pe.value({}) != 1)
        report.violations.push_back({"normalization", {}, {}, pe.value({})});

    auto build_index = [&](int max_deg) {
        std::vector<Mono> idx;
        enumerate_subsets(pe.ground_size(), max_deg, idx, SIZE_MAX);
        if (idx.size() > max_monomials) throw MatrixTooLarge();
        return idx;
    };

    { // SoS.2: moment matrix over monomials of degree <= l/2
        std::vector<Mono> idx = build_index(ell / 2);
        RatMatrix M(idx.size(), RatVec(idx.size()));
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = a; b < idx.size(); ++b) {
                M[a][b] = pe.value(mono_union(idx[a], idx[b]));
                M[b][a] = M[a][b];
            }
        PsdReport psd = psd_check(std::move(M));
        if (!psd.psd)
            report.violations.push_back({"moment-matrix pivot " +
                                             std::to_string(psd.failed_pivot),
                                         {}, {}, Rat(-1)});
    }

    for (const LinRow& row : base.rows) {
        SquareFreePoly g = row_poly(row);
        if (row.rel == Rel::EQ) {
            // SoS.4 with monomial multipliers
            std::vector<Mono> idx = build_index(ell - 1);
            for (const Mono& m : idx) {
                SquareFreePoly prod = SquareFreePoly::monomial(m) * g;
                if (static_cast<int>(prod.degree()) > ell) continue;
                Rat val = pe.eval(prod);
                if (val != 0) report.violations.push_back({row.name, m, {}, val});
            }
        } else {
            // SoS.3: localizing matrix
            std::vector<Mono> idx = build_index((ell - 1) / 2);
            RatMatrix M(idx.size(), RatVec(idx.size()));
            for (std::size_t a = 0; a < idx.size(); ++a)
                for (std::size_t b = a; b < idx.size(); ++b) {
                    SquareFreePoly prod =
                        SquareFreePoly::monomial(mono_union(idx[a], idx[b])) * g;
                    M[a][b] = pe.eval(prod);
                    M[b][a] = M[a][b];
                }
            PsdReport psd = psd_check(std::move(M));
            if (!psd.psd)
                report.violations.push_back({"localizer(" + row.name + ") pivot " +
                                                 std::to_string(psd.failed_pivot),
                                             {}, {}, Rat(-1)});
        }
    }
    return report;
}

std::vector<std::vector<Rat>> enumerate_integral_points(const RationalLP& base,
                                                        unsigned long budget) {
    std::size_t n = base.num_vars();
    if (n >= 8 * sizeof(unsigned long) || (1ul << n) > budget)
        throw BudgetExceeded("integral enumeration over 2^" + std::to_string(n) +
                             " points exceeds the budget");
    std::vector<std::vector<Rat>> points;
    std::vector<Rat> x(n);
    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
        for (std::size_t j = 0; j < n; ++j) x[j] = (mask >> j) & 1 ? 1 : 0;
        if (base.point_feasible(x)) points.push_back(x);
    }
    return points;
}

Pseudoexpectation pe_of_point(const std::vector<Rat>& point, int degree) {
    Mono support;
    for (std::size_t j = 0; j < point.size(); ++j) {
        if (point[j] == 1)
            support.push_back(static_cast<int>(j));
        else if (point[j] != 0)
            throw NonIntegralPoint();
    }
    std::map<Mono, Rat> vals;
    std::size_t k = support.size();
    if (k >= 8 * sizeof(unsigned long)) throw BudgetExceeded();
    for (unsigned long mask = 0; mask < (1ul << k); ++mask) {
        Mono S;
        for (std::size_t t = 0; t < k; ++t)
            if ((mask >> t) & 1) S.push_back(support[t]);
        std::sort(S.begin(), S.end());
        if (static_cast<int>(S.size()) <= degree) vals[S] = 1;
    }
    return Pseudoexpectation(point.size(), degree, std::move(vals));
}

std::optional<Pseudoexpectation> exact_hull_pe(const RationalLP& base,
                                               unsigned long budget) {
    std::vector<std::vector<Rat>> points = enumerate_integral_points(base, budget);
    if (points.empty()) return std::nullopt;
    std::map<Mono, Rat> vals;
    Rat share = Rat(1) / Rat(static_cast<long>(points.size()));
    for (const auto& pt : points) {
        Pseudoexpectation single = pe_of_point(pt, static_cast<int>(base.num_vars()));
        for (const auto& [m, v] : single.values()) vals[m] += v * share;
    }
    return Pseudoexpectation(base.num_vars(), static_cast<int>(base.num_vars()),
                             std::move(vals));
}

} // namespace liftsched
