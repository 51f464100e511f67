#include "liftsched/poly.hpp"

#include "liftsched/errors.hpp"

#include <algorithm>
#include <sstream>

namespace liftsched {

Mono mono_make(std::vector<int> vars) {
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

Mono mono_union(const Mono& a, const Mono& b) {
    Mono out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool mono_contains(const Mono& outer, const Mono& inner) {
    return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

std::string mono_str(const Mono& m) {
    if (m.empty()) return "1";
    std::ostringstream os;
    os << "x{";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) os << ',';
        os << m[i];
    }
    os << '}';
    return os.str();
}

SquareFreePoly::SquareFreePoly(const Rat& constant) {
    if (constant != 0) terms_[{}] = constant;
}

SquareFreePoly SquareFreePoly::monomial(Mono m, const Rat& coeff) {
    SquareFreePoly p;
    p.add_term(m, coeff);
    return p;
}

void SquareFreePoly::add_term(const Mono& m, const Rat& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

std::size_t SquareFreePoly::degree() const {
    std::size_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.size());
    return d;
}

SquareFreePoly& SquareFreePoly::operator+=(const SquareFreePoly& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

SquareFreePoly& SquareFreePoly::operator-=(const SquareFreePoly& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
}

SquareFreePoly SquareFreePoly::operator+(const SquareFreePoly& other) const {
    SquareFreePoly out = *this;
    out += other;
    return out;
}

SquareFreePoly SquareFreePoly::operator-(const SquareFreePoly& other) const {
    SquareFreePoly out = *this;
    out -= other;
    return out;
}

SquareFreePoly SquareFreePoly::operator*(const SquareFreePoly& other) const {
    SquareFreePoly out;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : other.terms_)
            out.add_term(mono_union(ma, mb), ca * cb);
    return out;
}

SquareFreePoly SquareFreePoly::scaled(const Rat& c) const {
    SquareFreePoly out;
    if (c == 0) return out;
    for (const auto& [m, coeff] : terms_) out.terms_[m] = coeff * c;
    return out;
}

Rat SquareFreePoly::eval(const std::vector<char>& point) const {
    Rat total = 0;
    for (const auto& [m, c] : terms_) {
        bool on = true;
        for (int v : m) {
            if (!point[static_cast<std::size_t>(v)]) {
                on = false;
                break;
            }
        }
        if (on) total += c;
    }
    return total;
}

std::string SquareFreePoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        os << rat_str(c) << "*" << mono_str(m);
        first = false;
    }
    return os.str();
}

SquareFreePoly reduce_square_free(const std::vector<PowerTerm>& terms) {
    SquareFreePoly out;
    for (const PowerTerm& t : terms) out.add_term(mono_make(t.vars), t.coeff);
    return out;
}

SquareFreePoly kill_non_partial(const SquareFreePoly& poly, const ConfigVarSpace& space) {
    SquareFreePoly out;
    for (const auto& [m, c] : poly.terms()) {
        bool ok = true;
        for (std::size_t i = 1; i < m.size() && ok; ++i)
            if (space.machine_of(m[i]) == space.machine_of(m[i - 1])) ok = false;
        if (ok) out.add_term(m, c);
    }
    return out;
}

Mono schedule_mono(const std::vector<std::pair<int, int>>& edges, const ConfigVarSpace& space) {
    std::vector<int> vars;
    vars.reserve(edges.size());
    for (const auto& [i, c] : edges) vars.push_back(space.var(i, c));
    return mono_make(std::move(vars));
}

SquareFreePoly expand_to_degree(const std::vector<std::pair<int, int>>& schedule,
                                std::size_t ell, const ConfigVarSpace& space) {
    if (ell > static_cast<std::size_t>(space.machines)) throw DegreeTooLarge();
    if (schedule.size() > ell)
        throw Error("expand_to_degree: |S| exceeds the target degree");

    std::vector<char> incident(static_cast<std::size_t>(space.machines), 0);
    for (const auto& [i, c] : schedule) {
        if (incident[static_cast<std::size_t>(i)])
            throw Error("expand_to_degree: input is not a partial schedule");
        incident[static_cast<std::size_t>(i)] = 1;
    }
    std::vector<int> extra; // smallest-index machines not incident to S
    for (int i = 0; i < space.machines && extra.size() < ell - schedule.size(); ++i)
        if (!incident[static_cast<std::size_t>(i)]) extra.push_back(i);
    if (extra.size() < ell - schedule.size())
        throw DegreeTooLarge("expand_to_degree: not enough free machines");

    SquareFreePoly result = SquareFreePoly::monomial(schedule_mono(schedule, space));
    for (int h : extra) {
        SquareFreePoly machine_sum;
        for (int c = 0; c < space.configs; ++c)
            machine_sum.add_term({space.var(h, c)}, 1);
        result = result * machine_sum;
    }
    return result;
}

bool equal_mod_sched(const SquareFreePoly& f, const SquareFreePoly& g,
                     const ConfigVarSpace& space, unsigned long budget) {
    // |C|^m evaluation points
    unsigned long points = 1;
    for (int i = 0; i < space.machines; ++i) {
        if (points > budget / static_cast<unsigned long>(space.configs) + 1)
            throw BudgetExceeded();
        points *= static_cast<unsigned long>(space.configs);
    }
    if (points > budget) throw BudgetExceeded();

    std::vector<int> assignment(static_cast<std::size_t>(space.machines), 0);
    std::vector<char> point(static_cast<std::size_t>(space.size()), 0);
    for (unsigned long it = 0; it < points; ++it) {
        unsigned long code = it;
        std::fill(point.begin(), point.end(), 0);
        for (int i = 0; i < space.machines; ++i) {
            int c = static_cast<int>(code % static_cast<unsigned long>(space.configs));
            code /= static_cast<unsigned long>(space.configs);
            point[static_cast<std::size_t>(space.var(i, c))] = 1;
        }
        if (f.eval(point) != g.eval(point)) return false;
    }
    return true;
}

SquareFreePoly apply_machine_permutation(const SquareFreePoly& f,
                                         const MachinePermutation& sigma,
                                         const ConfigVarSpace& space) {
    SquareFreePoly out;
    for (const auto& [m, c] : f.terms()) {
        std::vector<int> mapped;
        mapped.reserve(m.size());
        for (int v : m)
            mapped.push_back(space.var(sigma[static_cast<std::size_t>(space.machine_of(v))],
                                       space.config_of(v)));
        out.add_term(mono_make(std::move(mapped)), c);
    }
    return out;
}

SquareFreePoly symmetrize(const SquareFreePoly& f,
                          const std::vector<MachinePermutation>& perms,
                          const ConfigVarSpace& space) {
    if (perms.empty()) throw Error("symmetrize: empty permutation list");
    SquareFreePoly sum;
    for (const MachinePermutation& sigma : perms)
        sum += apply_machine_permutation(f, sigma, space);
    return sum.scaled(Rat(1) / Rat(static_cast<long>(perms.size())));
}

std::vector<MachinePermutation> all_permutations_of(const std::vector<int>& machines, int m) {
    std::vector<int> subset = machines;
    std::sort(subset.begin(), subset.end());
    std::vector<MachinePermutation> out;
    std::vector<int> arrangement = subset;
    do {
        MachinePermutation sigma(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) sigma[static_cast<std::size_t>(i)] = i;
        for (std::size_t idx = 0; idx < subset.size(); ++idx)
            sigma[static_cast<std::size_t>(subset[idx])] = arrangement[idx];
        out.push_back(std::move(sigma));
    } while (std::next_permutation(arrangement.begin(), arrangement.end()));
    return out;
}

} // namespace liftsched
