#ifndef LIFTSCHED_CLASSIFICATION_HPP
#define LIFTSCHED_CLASSIFICATION_HPP

#include "liftsched/instance.hpp"
#include "liftsched/rational.hpp"

#include <string>
#include <vector>

namespace liftsched {

// Partition of the jobs for a target makespan T and precision epsilon with
// 1/epsilon integral: job j is long iff p_j >= epsilon*T, and the long jobs
// split into s = (1-eps)/eps^2 classes
//   J_q = { j : (1/eps + q - 1) eps^2 T <= p_j < (1/eps + q) eps^2 T }.
struct JobClassification {
    Rat epsilon;
    long T = 0;
    int s = 0;
    std::vector<std::vector<std::string>> long_classes; // ids, ascending, index q-1
    std::vector<std::string> short_jobs;                // ids, ascending

    int num_long_jobs() const;
    std::size_t max_class_size() const;
    // 1-based class of a job id; 0 means short
    int class_of(const std::string& id) const;
    // inclusive lower / exclusive upper size bound of class q (1-based)
    Rat class_lower(int q) const;
    Rat class_upper(int q) const;
    long inv_epsilon() const;
};

JobClassification classify_jobs(const Instance& inst, long T, const Rat& epsilon);

} // namespace liftsched

#endif
