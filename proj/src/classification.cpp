#include "liftsched/classification.hpp"

#include "liftsched/errors.hpp"

#include <algorithm>

namespace liftsched {

int JobClassification::num_long_jobs() const {
    int n = 0;
    for (const auto& cls : long_classes) n += static_cast<int>(cls.size());
    return n;
}

std::size_t JobClassification::max_class_size() const {
    std::size_t n = 0;
    for (const auto& cls : long_classes) n = std::max(n, cls.size());
    return n;
}

int JobClassification::class_of(const std::string& id) const {
    for (std::size_t q = 0; q < long_classes.size(); ++q)
        for (const auto& jid : long_classes[q])
            if (jid == id) return static_cast<int>(q) + 1;
    return 0;
}

Rat JobClassification::class_lower(int q) const {
    Rat inv = 1 / epsilon;
    return (inv + q - 1) * epsilon * epsilon * T;
}

Rat JobClassification::class_upper(int q) const {
    Rat inv = 1 / epsilon;
    return (inv + q) * epsilon * epsilon * T;
}

long JobClassification::inv_epsilon() const {
    Rat inv = 1 / epsilon;
    return inv.get_num().get_si();
}

JobClassification classify_jobs(const Instance& inst, long T, const Rat& epsilon) {
    if (T < 1) throw Error("classify_jobs: T must be >= 1");
    if (epsilon <= 0 || epsilon >= 1) throw NonIntegralEpsilonInverse("epsilon must lie in (0,1)");
    Rat inv = 1 / epsilon;
    if (!rat_is_integer(inv)) throw NonIntegralEpsilonInverse();

    JobClassification cls;
    cls.epsilon = epsilon;
    cls.T = T;
    Rat s_rat = (1 - epsilon) / (epsilon * epsilon);
    if (!rat_is_integer(s_rat))
        throw InternalError("classify_jobs: (1-eps)/eps^2 not integral");
    cls.s = static_cast<int>(s_rat.get_num().get_si());
    cls.long_classes.assign(static_cast<std::size_t>(cls.s), {});

    std::vector<const Job*> ordered;
    for (const Job& j : inst.jobs) ordered.push_back(&j);
    std::sort(ordered.begin(), ordered.end(),
              [](const Job* a, const Job* b) { return a->id < b->id; });

    Rat threshold = epsilon * T;
    for (const Job* j : ordered) {
        Rat p(j->size);
        if (p < threshold) {
            cls.short_jobs.push_back(j->id);
            continue;
        }
        bool placed = false;
        for (int q = 1; q <= cls.s; ++q) {
            // the top class is closed at T so a job of size exactly T counts long
            bool below_upper = (q == cls.s) ? (p <= Rat(T)) : (p < cls.class_upper(q));
            if (p >= cls.class_lower(q) && below_upper) {
                cls.long_classes[static_cast<std::size_t>(q - 1)].push_back(j->id);
                placed = true;
                break;
            }
        }
        if (!placed)
            throw Error("classify_jobs: job '" + j->id + "' exceeds T; no class holds it");
    }
    return cls;
}

} // namespace liftsched
