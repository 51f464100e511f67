#ifndef LIFTSCHED_LAB_HPP
#define LIFTSCHED_LAB_HPP

#include "liftsched/configuration.hpp"
#include "liftsched/formulations.hpp"
#include "liftsched/instance.hpp"
#include "liftsched/lift.hpp"
#include "liftsched/linalg.hpp"
#include "liftsched/poly.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace liftsched {

// Set of (machine, config) pairs with per-machine degree at most one; the
// monomial support of the lower-bound pseudoexpectation.
struct PartialSchedule {
    std::vector<std::pair<int, int>> edges; // sorted by machine, machines distinct

    static std::optional<PartialSchedule> try_make(std::vector<std::pair<int, int>> edges);
    static PartialSchedule make(std::vector<std::pair<int, int>> edges);

    std::size_t size() const { return edges.size(); }
    bool empty() const { return edges.empty(); }
    int delta(int config) const; // number of machines carrying `config`
    std::vector<int> machines() const;
    bool touches_machine_of(const PartialSchedule& other) const;
    // union of the edge sets; nullopt when a machine would carry two configs
    std::optional<PartialSchedule> merged_with(const PartialSchedule& other) const;
    Mono mono(const ConfigVarSpace& space) const;
    bool operator==(const PartialSchedule&) const = default;
    bool operator<(const PartialSchedule& o) const { return edges < o.edges; }
};

// multiplicity vector over config indices; ||gamma|| is the total count
struct Profile {
    std::vector<long> counts;

    explicit Profile(std::size_t nconfigs = 0) : counts(nconfigs, 0) {}
    long norm() const;
    bool is_zero() const { return norm() == 0; }
    std::vector<int> support() const;
    bool operator==(const Profile&) const = default;
    bool operator<(const Profile& o) const { return counts < o.counts; }
};

// all gamma-profile partial schedules over the machines avoiding M(T)
std::vector<PartialSchedule> extensions(const PartialSchedule& T, const Profile& gamma,
                                        int m);

// B_{T,gamma} = sum over the (T,gamma)-extensions of y_A; the constant 1 when
// gamma = 0
SquareFreePoly b_poly(const PartialSchedule& T, const Profile& gamma,
                      const ConfigVarSpace& space);

// ---- Petersen machinery -------------------------------------------------

// the 15 edges of the Petersen graph as vertex pairs, fixed order
std::vector<std::pair<int, int>> petersen_edges();

// all perfect matchings (exactly 6), as sorted edge-index lists
std::vector<std::vector<int>> petersen_perfect_matchings();

// ---- hard instance family ------------------------------------------------

struct HardInstance {
    int k = 0;                   // odd, >= 3
    long T = 1023;               // target makespan of the family
    Instance instance;           // 3k machines, 15 sizes with multiplicity k
    std::vector<long> edge_sizes;             // size of every Petersen edge
    std::vector<std::vector<int>> matchings;  // 6 perfect matchings (edge ids)
    std::vector<Configuration> matching_configs; // their size multisets

    ConfigVarSpace space() const { return {3 * k, 6}; }
    // 15 x 6 incidence: size index -> matchings containing it
    bool size_in_matching(int edge, int matching) const;
};

// Derives a size vector on the Petersen edges by deterministic integer
// search: all 15 sizes distinct, each perfect matching summing to exactly
// 1023. Any vector meeting the invariants yields the same pseudoexpectation.
HardInstance gen_hard_instance(int k, std::uint64_t seed = 1);

// exhaustive 6^{3k} search with pruning: true when no machine-to-matching
// assignment meets all 15 per-size counting equalities
bool restricted_integrally_infeasible(const HardInstance& hard);

// clp restricted to the six matching configurations
ClpLp build_restricted_clp(const HardInstance& hard);

// ---- explicit pseudoexpectation -------------------------------------------

// E(y_S) = (1/(3k)_{|S|}) prod_j (k/2)_{delta_S(C_j)} for partial schedules
// with |S| <= k/2, zero elsewhere
Rat pe_hard(const PartialSchedule& S, int k);

// E_T(y_S) = (1/(3k-|T|)_{|S|}) prod_j (k/2 - delta_T(C_j))_{delta_S(C_j)}
// for S over the machines avoiding M(T), zero otherwise
Rat pe_hard_cond(const PartialSchedule& T, const PartialSchedule& S, int k);

// closed form of E_T(B_{T,gamma}): prod_j (1/gamma_j!) (k/2 - delta_T)_{gamma_j}
Rat pe_b(const PartialSchedule& T, const Profile& gamma, int k);

// the explicit pseudoexpectation materialized on monomials of degree <= ell
Pseudoexpectation hard_pe(int k, int ell);

// ---- lemma sweeps ----------------------------------------------------------

struct SweepReport {
    std::vector<std::string> violations;
    long cases = 0;
    bool ok() const { return violations.empty(); }
};

// conditioning calculus: product rules and the closed form of E_T(B_{T,gamma}),
// exhaustively for |T|,|R|,|S| up to the given bounds
SweepReport check_conditioning(int k, int t_max, int r_max, int s_max);

// randomized variant for larger k
SweepReport check_conditioning_sampled(int k, int samples, std::uint64_t seed);

// E_T(B_{T,gamma} B_{T,mu}) = E_T(B_{T,gamma}) E_T(B_{T,mu}), both sides
// expanded by brute force over the extension sets
bool check_pseudoindependence(const PartialSchedule& T, const Profile& gamma,
                              const Profile& mu, int k);

// exhaustive sweep over all (T, gamma, mu) with |T|+||gamma||+||mu|| <= bound
SweepReport sweep_pseudoindependence(int k, int bound);

// sum_{w=0}^{a} (1/w!) C(b, a-w) (x-b)_w == (1/a!) (x)_a for naturals a <= b
bool chu_vandermonde_check(unsigned a, unsigned b, const Rat& x);

// ---- symmetry-reduced moment blocks ---------------------------------------

struct SpanDescriptor {
    PartialSchedule T; // domain = the tail machines [0 .. 3k - lambda1)
    Profile gamma;     // ||gamma|| <= ell over the matching configurations
};

// descriptor list of the spanning set {y_T B_{T,gamma}} of the canonical hook
// tableau with tail = the lowest-index machines
std::vector<SpanDescriptor> spanning_set(int lambda1, int ell, int k);

struct MomentBlock {
    int k = 0;
    int ell = 0;
    int lambda1 = 0;
    std::vector<SpanDescriptor> descriptors;
    RatMatrix matrix;
};

// matrix indexed by the spanning descriptors; zero off the T-diagonal, and
// pe_hard(y_T) pe_b(T,gamma) pe_b(T,mu) on it. Sampled entries are
// re-verified against the brute-force monomial expansion.
MomentBlock moment_block(int lambda1, int ell, int k, int verify_samples = 24,
                         std::uint64_t seed = 1, std::size_t max_entries = 4000000);

// exact PSD plus the rank-1 identity
//   <M, Theta Theta^T> = sum_T pe_hard(y_T) (sum_gamma pe_b(T,gamma) Theta_{T,gamma})^2
// for `theta_trials` random rational Theta
bool check_block_psd(const MomentBlock& block, int theta_trials = 20,
                     std::uint64_t seed = 1);

// partitions lambda of 3k with lambda lexicographically >= (3k-ell,1,...,1)
// collapse to their first parts; these determine the canonical hooks
std::vector<int> lambda1_values(int ell, int k);

// ---- headline SA verification ---------------------------------------------

// verify_sa_pe of the explicit pseudoexpectation against the restricted clp
VerifyReport verify_hard_sa(const HardInstance& hard, int ell);

} // namespace liftsched

#endif
