#include "liftsched/lab.hpp"

#include "liftsched/errors.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <random>
#include <sstream>
#include <unordered_map>

namespace liftsched {

// ---- partial schedules and profiles ----------------------------------------

std::optional<PartialSchedule> PartialSchedule::try_make(
    std::vector<std::pair<int, int>> edges) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (edges[i].first == edges[i - 1].first) return std::nullopt;
    PartialSchedule ps;
    ps.edges = std::move(edges);
    return ps;
}

PartialSchedule PartialSchedule::make(std::vector<std::pair<int, int>> edges) {
    auto ps = try_make(std::move(edges));
    if (!ps) throw Error("not a partial schedule: a machine carries two configurations");
    return *ps;
}

int PartialSchedule::delta(int config) const {
    int d = 0;
    for (const auto& [i, c] : edges)
        if (c == config) ++d;
    return d;
}

std::vector<int> PartialSchedule::machines() const {
    std::vector<int> out;
    out.reserve(edges.size());
    for (const auto& [i, c] : edges) out.push_back(i);
    return out;
}

bool PartialSchedule::touches_machine_of(const PartialSchedule& other) const {
    std::size_t a = 0, b = 0;
    while (a < edges.size() && b < other.edges.size()) {
        if (edges[a].first == other.edges[b].first) return true;
        if (edges[a].first < other.edges[b].first)
            ++a;
        else
            ++b;
    }
    return false;
}

std::optional<PartialSchedule> PartialSchedule::merged_with(
    const PartialSchedule& other) const {
    std::vector<std::pair<int, int>> merged;
    merged.reserve(edges.size() + other.edges.size());
    std::size_t a = 0, b = 0;
    while (a < edges.size() || b < other.edges.size()) {
        if (b == other.edges.size() ||
            (a < edges.size() && edges[a].first < other.edges[b].first)) {
            merged.push_back(edges[a++]);
        } else if (a == edges.size() || other.edges[b].first < edges[a].first) {
            merged.push_back(other.edges[b++]);
        } else {
            if (edges[a].second != other.edges[b].second) return std::nullopt;
            merged.push_back(edges[a++]);
            ++b;
        }
    }
    PartialSchedule ps;
    ps.edges = std::move(merged);
    return ps;
}

Mono PartialSchedule::mono(const ConfigVarSpace& space) const {
    Mono m;
    m.reserve(edges.size());
    for (const auto& [i, c] : edges) m.push_back(space.var(i, c));
    return m; // machines ascending, so already sorted
}

long Profile::norm() const {
    long n = 0;
    for (long c : counts) n += c;
    return n;
}

std::vector<int> Profile::support() const {
    std::vector<int> out;
    for (std::size_t c = 0; c < counts.size(); ++c)
        if (counts[c] > 0) out.push_back(static_cast<int>(c));
    return out;
}

namespace {

void extensions_rec(const std::vector<int>& free, std::size_t pos, long remaining,
                    std::vector<long>& left, std::vector<std::pair<int, int>>& acc,
                    std::vector<PartialSchedule>& out) {
    if (remaining == 0) {
        PartialSchedule ps;
        ps.edges = acc;
        out.push_back(std::move(ps));
        return;
    }
    if (pos >= free.size() ||
        static_cast<long>(free.size() - pos) < remaining)
        return;
    // skip this machine
    extensions_rec(free, pos + 1, remaining, left, acc, out);
    // or give it one of the remaining configurations
    for (std::size_t c = 0; c < left.size(); ++c) {
        if (left[c] == 0) continue;
        left[c]--;
        acc.push_back({free[pos], static_cast<int>(c)});
        extensions_rec(free, pos + 1, remaining - 1, left, acc, out);
        acc.pop_back();
        left[c]++;
    }
}

} // namespace

std::vector<PartialSchedule> extensions(const PartialSchedule& T, const Profile& gamma,
                                        int m) {
    std::vector<char> taken(static_cast<std::size_t>(m), 0);
    for (const auto& [i, c] : T.edges) taken[static_cast<std::size_t>(i)] = 1;
    std::vector<int> free;
    for (int i = 0; i < m; ++i)
        if (!taken[static_cast<std::size_t>(i)]) free.push_back(i);

    std::vector<PartialSchedule> out;
    if (gamma.norm() > static_cast<long>(free.size())) return out;
    std::vector<long> left = gamma.counts;
    std::vector<std::pair<int, int>> acc;
    extensions_rec(free, 0, gamma.norm(), left, acc, out);
    return out;
}

SquareFreePoly b_poly(const PartialSchedule& T, const Profile& gamma,
                      const ConfigVarSpace& space) {
    if (gamma.is_zero()) return SquareFreePoly(Rat(1));
    SquareFreePoly out;
    for (const PartialSchedule& A : extensions(T, gamma, space.machines))
        out.add_term(A.mono(space), 1);
    return out;
}

// ---- Petersen machinery -----------------------------------------------------

std::vector<std::pair<int, int>> petersen_edges() {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < 5; ++i) e.push_back({i, (i + 1) % 5});      // outer cycle
    for (int i = 0; i < 5; ++i) e.push_back({i, i + 5});            // spokes
    for (int i = 0; i < 5; ++i) e.push_back({5 + i, 5 + (i + 2) % 5}); // inner star
    for (auto& [a, b] : e)
        if (a > b) std::swap(a, b);
    return e;
}

namespace {

void matchings_rec(const std::vector<std::pair<int, int>>& edges, int covered,
                   std::size_t next, std::vector<int>& acc,
                   std::vector<std::vector<int>>& out) {
    if (covered == (1 << 10) - 1) {
        out.push_back(acc);
        return;
    }
    if (next >= edges.size()) return;
    // first uncovered vertex must be matched by some remaining edge
    int first = 0;
    while (covered & (1 << first)) ++first;
    for (std::size_t e = next; e < edges.size(); ++e) {
        auto [a, b] = edges[e];
        if (a != first && b != first) continue;
        if (covered & (1 << a) || covered & (1 << b)) continue;
        acc.push_back(static_cast<int>(e));
        matchings_rec(edges, covered | (1 << a) | (1 << b), 0, acc, out);
        acc.pop_back();
    }
}

} // namespace

std::vector<std::vector<int>> petersen_perfect_matchings() {
    std::vector<std::vector<int>> out;
    std::vector<int> acc;
    matchings_rec(petersen_edges(), 0, 0, acc, out);
    for (auto& m : out) std::sort(m.begin(), m.end());
    std::sort(out.begin(), out.end());
    return out;
}

// ---- hard instance family ----------------------------------------------------

bool HardInstance::size_in_matching(int edge, int matching) const {
    const auto& m = matchings[static_cast<std::size_t>(matching)];
    return std::find(m.begin(), m.end(), edge) != m.end();
}

HardInstance gen_hard_instance(int k, std::uint64_t seed) {
    if (k < 3 || k % 2 == 0) throw Error("gen_hard_instance: k must be odd and >= 3");

    HardInstance hard;
    hard.k = k;
    hard.matchings = petersen_perfect_matchings();
    if (hard.matchings.size() != 6)
        throw InternalError("Petersen graph must have exactly 6 perfect matchings");

    // size search: 15 distinct positive integers with every matching summing
    // to 1023; a narrow band keeps the T=1023 configuration count tractable
    RatMatrix A(6, RatVec(15, Rat(0)));
    for (std::size_t j = 0; j < 6; ++j)
        for (int e : hard.matchings[j]) A[j][static_cast<std::size_t>(e)] = 1;

    // pivot / free split of the 6x15 system
    std::vector<int> pivot_cols;
    {
        RatMatrix R = A;
        std::size_t r = 0;
        for (std::size_t c = 0; c < 15 && r < 6; ++c) {
            std::size_t sel = 6;
            for (std::size_t i = r; i < 6; ++i)
                if (R[i][c] != 0) {
                    sel = i;
                    break;
                }
            if (sel == 6) continue;
            std::swap(R[r], R[sel]);
            Rat inv = 1 / R[r][c];
            for (auto& v : R[r]) v *= inv;
            for (std::size_t i = 0; i < 6; ++i) {
                if (i == r || R[i][c] == 0) continue;
                Rat f = R[i][c];
                for (std::size_t jj = 0; jj < 15; ++jj) R[i][jj] -= f * R[r][jj];
            }
            pivot_cols.push_back(static_cast<int>(c));
            ++r;
        }
        if (r != 6) throw InternalError("matching incidence must have rank 6");
    }
    std::vector<int> free_cols;
    for (int c = 0; c < 15; ++c)
        if (std::find(pivot_cols.begin(), pivot_cols.end(), c) == pivot_cols.end())
            free_cols.push_back(c);

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> draw(193, 216);
    std::vector<long> sizes(15, 0);
    bool found = false;
    for (int attempt = 0; attempt < 200000 && !found; ++attempt) {
        for (int c : free_cols) sizes[static_cast<std::size_t>(c)] = draw(rng);
        // solve the 6x6 pivot system for the remaining sizes
        RatMatrix P(6, RatVec(6));
        RatVec rhs(6);
        for (std::size_t j = 0; j < 6; ++j) {
            rhs[j] = 1023;
            for (int c : free_cols)
                rhs[j] -= A[j][static_cast<std::size_t>(c)] * sizes[static_cast<std::size_t>(c)];
            for (std::size_t t = 0; t < 6; ++t)
                P[j][t] = A[j][static_cast<std::size_t>(pivot_cols[t])];
        }
        auto sol = solve_linear(P, rhs);
        if (!sol) continue;
        bool good = true;
        for (std::size_t t = 0; t < 6 && good; ++t) {
            if (!rat_is_integer((*sol)[t])) good = false;
            else {
                long v = (*sol)[t].get_num().get_si();
                if (v < 178 || v > 231) good = false;
                sizes[static_cast<std::size_t>(pivot_cols[t])] = v;
            }
        }
        if (!good) continue;
        std::vector<long> uniq = sizes;
        std::sort(uniq.begin(), uniq.end());
        if (std::adjacent_find(uniq.begin(), uniq.end()) != uniq.end()) continue;
        found = true;
    }
    if (!found) throw SearchFailed("no admissible size vector found");

    hard.edge_sizes = sizes;
    hard.instance.machines = 3 * k;
    for (int e = 0; e < 15; ++e)
        for (int r = 0; r < k; ++r)
            hard.instance.jobs.push_back(
                {"p" + std::to_string(sizes[static_cast<std::size_t>(e)]) + "x" +
                     std::to_string(r + 1),
                 sizes[static_cast<std::size_t>(e)]});
    hard.instance.validate();

    for (const auto& matching : hard.matchings) {
        std::vector<long> mem;
        for (int e : matching) mem.push_back(sizes[static_cast<std::size_t>(e)]);
        hard.matching_configs.emplace_back(mem);
        if (hard.matching_configs.back().load() != hard.T)
            throw InternalError("matching configuration load must be 1023");
    }
    // every size sits in exactly two of the six matchings
    for (int e = 0; e < 15; ++e) {
        int hits = 0;
        for (int j = 0; j < 6; ++j)
            if (hard.size_in_matching(e, j)) ++hits;
        if (hits != 2) throw InternalError("each edge must lie in exactly 2 matchings");
    }
    return hard;
}

bool restricted_integrally_infeasible(const HardInstance& hard) {
    const int m = 3 * hard.k;
    std::vector<int> counts(15, 0); // per size
    // choice per machine: one of the 6 matchings
    std::vector<int> choice(static_cast<std::size_t>(m), 0);

    // DFS with per-size pruning
    struct Dfs {
        const HardInstance& hard;
        int m;
        std::vector<int>& counts;
        bool found = false;

        void run(int machine) {
            if (found) return;
            if (machine == m) {
                for (int e = 0; e < 15; ++e)
                    if (counts[static_cast<std::size_t>(e)] != hard.k) return;
                found = true;
                return;
            }
            int remaining = m - machine;
            for (int e = 0; e < 15; ++e) {
                int c = counts[static_cast<std::size_t>(e)];
                if (c > hard.k) return;
                if (hard.k - c > remaining) return; // cannot be completed
            }
            for (int j = 0; j < 6 && !found; ++j) {
                for (int e : hard.matchings[static_cast<std::size_t>(j)])
                    counts[static_cast<std::size_t>(e)]++;
                run(machine + 1);
                for (int e : hard.matchings[static_cast<std::size_t>(j)])
                    counts[static_cast<std::size_t>(e)]--;
            }
        }
    } dfs{hard, m, counts};
    dfs.run(0);
    return !dfs.found;
}

ClpLp build_restricted_clp(const HardInstance& hard) {
    ClpLp out;
    out.m = 3 * hard.k;
    out.configs = hard.matching_configs;
    const int nc = 6;
    for (int i = 0; i < out.m; ++i)
        for (int c = 0; c < nc; ++c)
            out.lp.add_var("y[" + std::to_string(i + 1) + ",M" + std::to_string(c + 1) + "]",
                           0, Rat(1));
    for (int i = 0; i < out.m; ++i) {
        LinRow row;
        row.name = "machine[" + std::to_string(i + 1) + "]";
        for (int c = 0; c < nc; ++c) row.terms.push_back({out.var(i, c), Rat(1)});
        row.rel = Rel::EQ;
        row.rhs = 1;
        out.lp.add_row(std::move(row));
    }
    for (int e = 0; e < 15; ++e) {
        LinRow row;
        long p = hard.edge_sizes[static_cast<std::size_t>(e)];
        row.name = "count[" + std::to_string(p) + "]";
        for (int i = 0; i < out.m; ++i)
            for (int c = 0; c < nc; ++c)
                if (hard.size_in_matching(e, c))
                    row.terms.push_back({out.var(i, c), Rat(1)});
        row.rel = Rel::EQ;
        row.rhs = hard.k;
        out.lp.add_row(std::move(row));
    }
    return out;
}

// ---- explicit pseudoexpectation ------------------------------------------------

Rat pe_hard(const PartialSchedule& S, int k) {
    if (2 * static_cast<long>(S.size()) > k) return 0;
    Rat value = 1 / lower_factorial(Rat(3 * k), S.size());
    Rat half_k(k, 2);
    for (int j = 0; j < 6; ++j)
        value *= lower_factorial(half_k, static_cast<unsigned long>(S.delta(j)));
    return value;
}

Rat pe_hard_cond(const PartialSchedule& T, const PartialSchedule& S, int k) {
    if (S.touches_machine_of(T)) return 0;
    Rat value = 1 / lower_factorial(Rat(3 * k - static_cast<long>(T.size())), S.size());
    Rat half_k(k, 2);
    for (int j = 0; j < 6; ++j)
        value *= lower_factorial(half_k - T.delta(j),
                                 static_cast<unsigned long>(S.delta(j)));
    return value;
}

Rat pe_b(const PartialSchedule& T, const Profile& gamma, int k) {
    Rat value = 1;
    Rat half_k(k, 2);
    for (std::size_t j = 0; j < gamma.counts.size(); ++j) {
        unsigned long g = static_cast<unsigned long>(gamma.counts[j]);
        if (g == 0) continue;
        value *= lower_factorial(half_k - T.delta(static_cast<int>(j)), g) /
                 Rat(factorial(g));
    }
    return value;
}

namespace {

void partial_schedules_rec(int m, int nconfigs, int max_size, int next_machine,
                           std::vector<std::pair<int, int>>& acc,
                           const std::function<void(const PartialSchedule&)>& sink) {
    PartialSchedule ps;
    ps.edges = acc;
    sink(ps);
    if (static_cast<int>(acc.size()) >= max_size) return;
    for (int i = next_machine; i < m; ++i)
        for (int c = 0; c < nconfigs; ++c) {
            acc.push_back({i, c});
            partial_schedules_rec(m, nconfigs, max_size, i + 1, acc, sink);
            acc.pop_back();
        }
}

void for_each_partial_schedule(int m, int nconfigs, int max_size,
                               const std::function<void(const PartialSchedule&)>& sink) {
    std::vector<std::pair<int, int>> acc;
    partial_schedules_rec(m, nconfigs, max_size, 0, acc, sink);
}

} // namespace

Pseudoexpectation hard_pe(int k, int ell) {
    ConfigVarSpace space{3 * k, 6};
    std::map<Mono, Rat> vals;
    for_each_partial_schedule(3 * k, 6, ell, [&](const PartialSchedule& s) {
        Rat v = pe_hard(s, k);
        if (v != 0) vals[s.mono(space)] = v;
    });
    return Pseudoexpectation(static_cast<std::size_t>(space.size()), ell, std::move(vals));
}

// ---- lemma sweeps ---------------------------------------------------------------

namespace {

std::string ps_str(const PartialSchedule& s) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < s.edges.size(); ++i) {
        if (i) os << ",";
        os << "(" << s.edges[i].first << ",C" << (s.edges[i].second + 1) << ")";
    }
    os << "}";
    return os.str();
}

std::string profile_str(const Profile& g) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < g.counts.size(); ++i) {
        if (i) os << ",";
        os << g.counts[i];
    }
    os << ")";
    return os.str();
}

bool edges_disjoint(const PartialSchedule& a, const PartialSchedule& b) {
    for (const auto& e : a.edges)
        if (std::find(b.edges.begin(), b.edges.end(), e) != b.edges.end()) return false;
    return true;
}

// checks (a),(b),(c) of the conditioning calculus on one triple
void check_conditioning_triple(int k, const PartialSchedule& T, const PartialSchedule& R,
                               const PartialSchedule& S, SweepReport& report) {
    // (a) E(y_T y_S) = E_T(y_S) E(y_T), within the pseudoexpectation support
    if (edges_disjoint(T, S) &&
        2 * static_cast<long>(T.size() + S.size()) <= k) {
        report.cases++;
        auto u = T.merged_with(S);
        Rat lhs = u ? pe_hard(*u, k) : Rat(0);
        Rat rhs = pe_hard_cond(T, S, k) * pe_hard(T, k);
        if (lhs != rhs)
            report.violations.push_back("(a) failed at T=" + ps_str(T) +
                                        " S=" + ps_str(S));
    }
    // (b) E_T(y_R y_S) = E_T(y_R) E_{T u R}(y_S)
    if (edges_disjoint(R, S) && edges_disjoint(T, R) && edges_disjoint(T, S)) {
        report.cases++;
        auto rs = R.merged_with(S);
        Rat lhs = 0;
        if (rs && !rs->touches_machine_of(T)) lhs = pe_hard_cond(T, *rs, k);
        Rat rhs = 0;
        auto tr = T.merged_with(R);
        if (tr && !R.touches_machine_of(T))
            rhs = pe_hard_cond(T, R, k) * pe_hard_cond(*tr, S, k);
        if (lhs != rhs)
            report.violations.push_back("(b) failed at T=" + ps_str(T) + " R=" +
                                        ps_str(R) + " S=" + ps_str(S));
    }
}

// (c) sum over F(T, gamma) of E_T(y_A) = closed form
void check_conditioning_profile(int k, const PartialSchedule& T, const Profile& gamma,
                                SweepReport& report) {
    if (2 * (static_cast<long>(T.size()) + gamma.norm()) > k) return;
    report.cases++;
    Rat total = 0;
    for (const PartialSchedule& A : extensions(T, gamma, 3 * k))
        total += pe_hard_cond(T, A, k);
    if (total != pe_b(T, gamma, k))
        report.violations.push_back("(c) failed at T=" + ps_str(T) +
                                    " gamma=" + profile_str(gamma));
}

std::vector<Profile> profiles_of_norm(std::size_t nconfigs, long norm) {
    std::vector<Profile> out;
    Profile cur(nconfigs);
    std::function<void(std::size_t, long)> rec = [&](std::size_t pos, long left) {
        if (pos + 1 == nconfigs) {
            cur.counts[pos] = left;
            out.push_back(cur);
            return;
        }
        for (long take = 0; take <= left; ++take) {
            cur.counts[pos] = take;
            rec(pos + 1, left - take);
        }
    };
    if (nconfigs == 0) return out;
    rec(0, norm);
    return out;
}

} // namespace

SweepReport check_conditioning(int k, int t_max, int r_max, int s_max) {
    SweepReport report;
    const int m = 3 * k;
    std::vector<PartialSchedule> ts, rs, ss;
    for_each_partial_schedule(m, 6, t_max, [&](const PartialSchedule& p) { ts.push_back(p); });
    for_each_partial_schedule(m, 6, r_max, [&](const PartialSchedule& p) { rs.push_back(p); });
    for_each_partial_schedule(m, 6, s_max, [&](const PartialSchedule& p) { ss.push_back(p); });
    for (const auto& T : ts) {
        for (const auto& R : rs)
            for (const auto& S : ss) check_conditioning_triple(k, T, R, S, report);
        for (long g = 0; g <= r_max; ++g)
            for (const Profile& gamma : profiles_of_norm(6, g))
                check_conditioning_profile(k, T, gamma, report);
    }
    return report;
}

SweepReport check_conditioning_sampled(int k, int samples, std::uint64_t seed) {
    SweepReport report;
    const int m = 3 * k;
    std::mt19937_64 rng(seed);
    auto random_ps = [&](int max_size) {
        int size = static_cast<int>(rng() % static_cast<unsigned>(max_size + 1));
        std::vector<std::pair<int, int>> edges;
        std::vector<int> machines(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) machines[static_cast<std::size_t>(i)] = i;
        std::shuffle(machines.begin(), machines.end(), rng);
        for (int t = 0; t < size; ++t)
            edges.push_back({machines[static_cast<std::size_t>(t)],
                             static_cast<int>(rng() % 6)});
        return PartialSchedule::make(std::move(edges));
    };
    for (int t = 0; t < samples; ++t) {
        PartialSchedule T = random_ps(1), R = random_ps(1), S = random_ps(1);
        check_conditioning_triple(k, T, R, S, report);
        Profile gamma(6);
        gamma.counts[rng() % 6] += 1;
        gamma.counts[rng() % 6] += 1;
        check_conditioning_profile(k, T, gamma, report);
    }
    return report;
}

namespace {

// memoized conditional value: depends only on |T|, delta_T and delta_U
struct CondMemo {
    int k;
    std::unordered_map<std::uint64_t, Rat> table;

    Rat value(int t_size, const std::array<int, 6>& dT, const std::array<int, 6>& dU,
              int u_size) {
        std::uint64_t key = static_cast<std::uint64_t>(t_size);
        for (int j = 0; j < 6; ++j)
            key = key * 64 + static_cast<std::uint64_t>(dT[static_cast<std::size_t>(j)]) * 8 +
                  static_cast<std::uint64_t>(dU[static_cast<std::size_t>(j)]);
        auto it = table.find(key);
        if (it != table.end()) return it->second;
        Rat v = 1 / lower_factorial(Rat(3 * k - t_size), static_cast<unsigned long>(u_size));
        Rat half_k(k, 2);
        for (int j = 0; j < 6; ++j)
            v *= lower_factorial(half_k - dT[static_cast<std::size_t>(j)],
                                 static_cast<unsigned long>(dU[static_cast<std::size_t>(j)]));
        table[key] = v;
        return v;
    }
};

// brute-force E_T(B_{T,gamma} B_{T,mu}) over the extension pair sum
Rat brute_product_value(const PartialSchedule& T, const std::vector<PartialSchedule>& FA,
                        const std::vector<PartialSchedule>& FB, CondMemo& memo) {
    std::array<int, 6> dT{};
    for (const auto& [i, c] : T.edges) dT[static_cast<std::size_t>(c)]++;
    Rat total = 0;
    for (const PartialSchedule& A : FA)
        for (const PartialSchedule& B : FB) {
            // merge the sorted edge lists; a clash kills the monomial
            std::array<int, 6> dU{};
            int u_size = 0;
            std::size_t a = 0, b = 0;
            bool ok = true;
            while (a < A.edges.size() || b < B.edges.size()) {
                int cfg;
                if (b == B.edges.size() ||
                    (a < A.edges.size() && A.edges[a].first < B.edges[b].first)) {
                    cfg = A.edges[a++].second;
                } else if (a == A.edges.size() || B.edges[b].first < A.edges[a].first) {
                    cfg = B.edges[b++].second;
                } else {
                    if (A.edges[a].second != B.edges[b].second) {
                        ok = false;
                        break;
                    }
                    cfg = A.edges[a++].second;
                    ++b;
                }
                dU[static_cast<std::size_t>(cfg)]++;
                ++u_size;
            }
            if (!ok) continue;
            total += memo.value(static_cast<int>(T.size()), dT, dU, u_size);
        }
    return total;
}

} // namespace

bool check_pseudoindependence(const PartialSchedule& T, const Profile& gamma,
                              const Profile& mu, int k) {
    CondMemo memo{k, {}};
    auto FA = extensions(T, gamma, 3 * k);
    auto FB = extensions(T, mu, 3 * k);
    Rat lhs = brute_product_value(T, FA, FB, memo);
    Rat rhs = pe_b(T, gamma, k) * pe_b(T, mu, k);
    return lhs == rhs;
}

SweepReport sweep_pseudoindependence(int k, int bound) {
    SweepReport report;
    CondMemo memo{k, {}};
    const int m = 3 * k;
    std::vector<std::vector<Profile>> by_norm;
    for (long n = 0; n <= bound; ++n) by_norm.push_back(profiles_of_norm(6, n));

    for_each_partial_schedule(m, 6, bound, [&](const PartialSchedule& T) {
        long rem = bound - static_cast<long>(T.size());
        for (long gn = 0; gn <= rem; ++gn) {
            for (const Profile& gamma : by_norm[static_cast<std::size_t>(gn)]) {
                auto FA = extensions(T, gamma, m);
                for (long mn = 0; mn + gn <= rem; ++mn) {
                    for (const Profile& mu : by_norm[static_cast<std::size_t>(mn)]) {
                        auto FB = extensions(T, mu, m);
                        report.cases++;
                        Rat lhs = brute_product_value(T, FA, FB, memo);
                        Rat rhs = pe_b(T, gamma, k) * pe_b(T, mu, k);
                        if (lhs != rhs)
                            report.violations.push_back(
                                "pseudoindependence failed at T=" + ps_str(T) +
                                " gamma=" + profile_str(gamma) + " mu=" + profile_str(mu));
                    }
                }
            }
        }
    });
    return report;
}

bool chu_vandermonde_check(unsigned a, unsigned b, const Rat& x) {
    if (a > b) throw Error("chu_vandermonde_check: requires a <= b");
    Rat lhs = 0;
    for (unsigned w = 0; w <= a; ++w)
        lhs += lower_factorial(x - b, w) * Rat(binomial(b, a - w)) / Rat(factorial(w));
    Rat rhs = lower_factorial(x, a) / Rat(factorial(a));
    return lhs == rhs;
}

// ---- symmetry-reduced moment blocks ------------------------------------------

std::vector<int> lambda1_values(int ell, int k) {
    // partitions of m = 3k that are lexicographically >= (m-ell, 1, ..., 1)
    // are exactly those with first part >= m-ell; the canonical hook only
    // depends on that first part
    std::vector<int> out;
    for (int l1 = 3 * k; l1 >= 3 * k - ell; --l1) out.push_back(l1);
    return out;
}

std::vector<SpanDescriptor> spanning_set(int lambda1, int ell, int k) {
    const int m = 3 * k;
    const int tail = m - lambda1;
    if (tail < 0 || tail > ell)
        throw Error("spanning_set: lambda must be lexicographically >= (m-ell,1,...,1)");

    std::vector<PartialSchedule> tails;
    std::vector<std::pair<int, int>> acc(static_cast<std::size_t>(tail));
    std::function<void(int)> rec = [&](int pos) {
        if (pos == tail) {
            PartialSchedule ps;
            ps.edges = acc;
            tails.push_back(ps);
            return;
        }
        for (int c = 0; c < 6; ++c) {
            acc[static_cast<std::size_t>(pos)] = {pos, c};
            rec(pos + 1);
        }
    };
    rec(0);

    std::vector<Profile> gammas;
    for (long n = 0; n <= ell; ++n)
        for (const Profile& g : profiles_of_norm(6, n)) gammas.push_back(g);

    std::vector<SpanDescriptor> out;
    for (const auto& T : tails)
        for (const auto& g : gammas) out.push_back({T, g});
    return out;
}

MomentBlock moment_block(int lambda1, int ell, int k, int verify_samples,
                         std::uint64_t seed, std::size_t max_entries) {
    const int m = 3 * k;
    const int tail = m - lambda1;
    // the closed form needs |T| + ||gamma|| + ||mu|| within the support
    if (2 * (tail + 2 * ell) > k)
        throw Error("moment_block: (tail, ell) outside the k/2 support regime");

    MomentBlock block;
    block.k = k;
    block.ell = ell;
    block.lambda1 = lambda1;
    block.descriptors = spanning_set(lambda1, ell, k);
    const std::size_t n = block.descriptors.size();
    if (n * n > max_entries) throw MatrixTooLarge();

    block.matrix.assign(n, RatVec(n, Rat(0)));
    for (std::size_t a = 0; a < n; ++a) {
        const auto& [Ta, ga] = block.descriptors[a];
        for (std::size_t b = a; b < n; ++b) {
            const auto& [Tb, gb] = block.descriptors[b];
            Rat entry = 0;
            if (Ta == Tb)
                entry = pe_hard(Ta, k) * pe_b(Ta, ga, k) * pe_b(Tb, gb, k);
            block.matrix[a][b] = entry;
            block.matrix[b][a] = entry;
        }
    }

    // sampled cross-check of the shortcut against the monomial expansion
    std::mt19937_64 rng(seed);
    for (int t = 0; t < verify_samples; ++t) {
        std::size_t a = rng() % n, b = rng() % n;
        const auto& [Ta, ga] = block.descriptors[a];
        const auto& [Tb, gb] = block.descriptors[b];
        Rat expanded = 0;
        auto u0 = Ta.merged_with(Tb);
        if (u0) {
            for (const PartialSchedule& A : extensions(Ta, ga, m)) {
                auto u1 = u0->merged_with(A);
                if (!u1) continue;
                for (const PartialSchedule& B : extensions(Tb, gb, m)) {
                    auto u2 = u1->merged_with(B);
                    if (!u2) continue;
                    expanded += pe_hard(*u2, k);
                }
            }
        }
        if (expanded != block.matrix[a][b])
            throw InternalError("moment block shortcut disagrees with expansion at (" +
                                std::to_string(a) + "," + std::to_string(b) + ")");
    }
    return block;
}

bool check_block_psd(const MomentBlock& block, int theta_trials, std::uint64_t seed) {
    PsdReport psd = psd_check(block.matrix);
    if (!psd.psd) return false;

    // rank-1 identity over random rational vectors
    std::mt19937_64 rng(seed);
    const std::size_t n = block.descriptors.size();
    for (int t = 0; t < theta_trials; ++t) {
        RatVec theta(n);
        for (auto& v : theta) {
            long num = static_cast<long>(rng() % 19) - 9;
            long den = static_cast<long>(rng() % 9) + 1;
            v = Rat(num, den);
            v.canonicalize();
        }
        Rat quad = 0;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                quad += block.matrix[a][b] * theta[a] * theta[b];
        // group by tail schedule T
        std::map<PartialSchedule, Rat> sums;
        for (std::size_t a = 0; a < n; ++a) {
            const auto& [T, g] = block.descriptors[a];
            sums[T] += pe_b(T, g, block.k) * theta[a];
        }
        Rat rank1 = 0;
        for (const auto& [T, s] : sums) rank1 += pe_hard(T, block.k) * s * s;
        if (quad != rank1) return false;
    }
    return true;
}

VerifyReport verify_hard_sa(const HardInstance& hard, int ell) {
    if (2 * ell > hard.k)
        throw Error("verify_hard_sa: ell beyond floor(k/2)");
    ClpLp clp = build_restricted_clp(hard);
    Pseudoexpectation pe = hard_pe(hard.k, ell);
    return verify_sa_pe(pe, clp.lp, ell);
}

} // namespace liftsched
