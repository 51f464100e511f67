#include "liftsched/formulations.hpp"

#include "liftsched/errors.hpp"

#include <algorithm>
#include <numeric>

namespace liftsched {

AssignLp build_assign(const Instance& inst, long T) {
    inst.validate();
    if (T < 1) throw Error("build_assign: T must be >= 1");
    AssignLp out;
    out.m = inst.machines;
    out.n = static_cast<int>(inst.jobs.size());
    for (int i = 0; i < out.m; ++i)
        for (int j = 0; j < out.n; ++j)
            out.lp.add_var("x[" + std::to_string(i + 1) + "," + inst.jobs[static_cast<std::size_t>(j)].id + "]",
                           0, Rat(1));
    for (int j = 0; j < out.n; ++j) {
        LinRow row;
        row.name = "job[" + inst.jobs[static_cast<std::size_t>(j)].id + "]";
        for (int i = 0; i < out.m; ++i) row.terms.push_back({out.var(i, j), Rat(1)});
        row.rel = Rel::EQ;
        row.rhs = 1;
        out.lp.add_row(std::move(row));
    }
    for (int i = 0; i < out.m; ++i) {
        LinRow row;
        row.name = "load[" + std::to_string(i + 1) + "]";
        for (int j = 0; j < out.n; ++j)
            row.terms.push_back({out.var(i, j), Rat(inst.jobs[static_cast<std::size_t>(j)].size)});
        row.rel = Rel::LE;
        row.rhs = T;
        out.lp.add_row(std::move(row));
    }
    return out;
}

ClpLp build_clp(const Instance& inst, long T, std::size_t cap) {
    inst.validate();
    if (T < 1) throw Error("build_clp: T must be >= 1");
    ClpLp out;
    out.m = inst.machines;
    out.configs = enumerate_configurations(inst.distinct_sizes(), T, cap);
    const int nc = static_cast<int>(out.configs.size());
    for (int i = 0; i < out.m; ++i)
        for (int c = 0; c < nc; ++c)
            out.lp.add_var("y[" + std::to_string(i + 1) + "," + out.configs[static_cast<std::size_t>(c)].str() + "]",
                           0, Rat(1));
    for (int i = 0; i < out.m; ++i) {
        LinRow row;
        row.name = "machine[" + std::to_string(i + 1) + "]";
        for (int c = 0; c < nc; ++c) row.terms.push_back({out.var(i, c), Rat(1)});
        row.rel = Rel::EQ;
        row.rhs = 1;
        out.lp.add_row(std::move(row));
    }
    for (const auto& [p, np] : inst.size_counts()) {
        LinRow row;
        row.name = "count[" + std::to_string(p) + "]";
        for (int i = 0; i < out.m; ++i)
            for (int c = 0; c < nc; ++c) {
                int mult = out.configs[static_cast<std::size_t>(c)].multiplicity(p);
                if (mult > 0) row.terms.push_back({out.var(i, c), Rat(mult)});
            }
        row.rel = Rel::EQ;
        row.rhs = np;
        out.lp.add_row(std::move(row));
    }
    return out;
}

LexOrder lex_compare(const ClassConfig& a, const ClassConfig& b) {
    if (a.size() != b.size()) throw Error("lex_compare: class count mismatch");
    for (std::size_t q = 0; q < a.size(); ++q) {
        if (a[q] != b[q]) return a[q] > b[q] ? LexOrder::GREATER : LexOrder::LESS;
    }
    return LexOrder::EQUAL;
}

Int LexWeights::weight(int q) const {
    if (q < 1 || q > s) throw Error("LexWeights: class out of range");
    return int_pow(B, static_cast<unsigned long>(s - q));
}

LexWeights lex_weights(const JobClassification& cls) {
    LexWeights w;
    w.s = cls.s;
    w.B = Int(1) + Int(2) * cls.s * static_cast<long>(cls.max_class_size());
    return w;
}

Int lex_value(const ClassConfig& c, const LexWeights& w) {
    if (static_cast<int>(c.size()) != w.s) throw Error("lex_value: class count mismatch");
    Int v = 0;
    for (int q = 1; q <= w.s; ++q)
        v += w.weight(q) * c[static_cast<std::size_t>(q - 1)];
    return v;
}

AssignSymLp build_assign_sym(const Instance& inst, long T, const Rat& epsilon) {
    AssignSymLp out;
    out.base = build_assign(inst, T);
    out.classification = classify_jobs(inst, T, epsilon);
    out.weights = lex_weights(out.classification);
    const JobClassification& cls = out.classification;
    for (int i = 0; i + 1 < out.base.m; ++i) {
        LinRow row;
        row.name = "lex[" + std::to_string(i + 1) + "]";
        for (int q = 1; q <= cls.s; ++q) {
            Rat coeff(out.weights.weight(q));
            for (const std::string& id : cls.long_classes[static_cast<std::size_t>(q - 1)]) {
                int j = inst.job_index(id);
                row.terms.push_back({out.base.var(i, j), coeff});
                row.terms.push_back({out.base.var(i + 1, j), -coeff});
            }
        }
        row.rel = Rel::GE;
        row.rhs = 0;
        if (!row.terms.empty()) out.base.lp.add_row(std::move(row));
    }
    return out;
}

AssignSymLp build_order(const Instance& inst, long T, const Rat& epsilon) {
    AssignSymLp out = build_assign_sym(inst, T, epsilon);
    const JobClassification& cls = out.classification;
    for (int q = 1; q <= cls.s; ++q) {
        const auto& ids = cls.long_classes[static_cast<std::size_t>(q - 1)];
        for (std::size_t l = 0; l + 1 < ids.size(); ++l) {
            int ja = inst.job_index(ids[l]);
            int jb = inst.job_index(ids[l + 1]);
            for (int h = 1; h <= out.base.m; ++h) {
                LinRow row;
                row.name = "order[q" + std::to_string(q) + "," + ids[l] + ">=" + ids[l + 1] +
                           ",h" + std::to_string(h) + "]";
                for (int i = 0; i < h; ++i) {
                    row.terms.push_back({out.base.var(i, ja), Rat(1)});
                    row.terms.push_back({out.base.var(i, jb), Rat(-1)});
                }
                row.rel = Rel::GE;
                row.rhs = 0;
                out.base.lp.add_row(std::move(row));
            }
        }
    }
    return out;
}

namespace {

void require_integral(const std::vector<Rat>& point) {
    for (const Rat& v : point)
        if (v != 0 && v != 1) throw NonIntegralPoint();
}

} // namespace

ClassConfig conf_of_machine(const std::vector<Rat>& point, int machine,
                            const AssignLp& layout, const Instance& inst,
                            const JobClassification& cls) {
    require_integral(point);
    ClassConfig conf(static_cast<std::size_t>(cls.s), 0);
    for (int q = 1; q <= cls.s; ++q)
        for (const std::string& id : cls.long_classes[static_cast<std::size_t>(q - 1)]) {
            int j = inst.job_index(id);
            if (point[static_cast<std::size_t>(layout.var(machine, j))] == 1)
                conf[static_cast<std::size_t>(q - 1)]++;
        }
    return conf;
}

bool check_lex_sorted(const std::vector<Rat>& point, const AssignLp& layout,
                      const Instance& inst, const JobClassification& cls) {
    for (int i = 0; i + 1 < layout.m; ++i) {
        ClassConfig a = conf_of_machine(point, i, layout, inst, cls);
        ClassConfig b = conf_of_machine(point, i + 1, layout, inst, cls);
        if (lex_compare(a, b) == LexOrder::LESS) return false;
    }
    return true;
}

std::vector<Rat> lex_sort_solution(const std::vector<Rat>& point, const AssignLp& layout,
                                   const Instance& inst, const JobClassification& cls) {
    require_integral(point);
    std::vector<std::pair<ClassConfig, int>> keyed;
    for (int i = 0; i < layout.m; ++i)
        keyed.push_back({conf_of_machine(point, i, layout, inst, cls), i});
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        return lex_compare(a.first, b.first) == LexOrder::GREATER;
    });
    std::vector<Rat> out(point.size());
    for (int pos = 0; pos < layout.m; ++pos) {
        int src = keyed[static_cast<std::size_t>(pos)].second;
        for (int j = 0; j < layout.n; ++j)
            out[static_cast<std::size_t>(layout.var(pos, j))] =
                point[static_cast<std::size_t>(layout.var(src, j))];
    }
    return out;
}

std::vector<Rat> project_clp_to_assign(const std::vector<Rat>& y, const ClpLp& clp,
                                       const Instance& inst, const AssignLp& assign) {
    if (!clp.lp.point_feasible(y)) throw InfeasibleInput();
    std::map<long, int> counts = inst.size_counts();
    std::vector<Rat> x(static_cast<std::size_t>(assign.m * assign.n), Rat(0));
    for (int i = 0; i < assign.m; ++i)
        for (int j = 0; j < assign.n; ++j) {
            long p = inst.jobs[static_cast<std::size_t>(j)].size;
            Rat total = 0;
            for (int c = 0; c < static_cast<int>(clp.configs.size()); ++c) {
                int mult = clp.configs[static_cast<std::size_t>(c)].multiplicity(p);
                if (mult > 0) total += Rat(mult) * y[static_cast<std::size_t>(clp.var(i, c))];
            }
            x[static_cast<std::size_t>(assign.var(i, j))] = total / counts.at(p);
        }
    return x;
}

} // namespace liftsched
