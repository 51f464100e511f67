#ifndef LIFTSCHED_INSTANCE_HPP
#define LIFTSCHED_INSTANCE_HPP

#include <map>
#include <string>
#include <vector>

namespace liftsched {

struct Job {
    std::string id;
    long size = 0; // integral processing time, >= 1
};

// A makespan scheduling instance: m identical machines and a job list.
struct Instance {
    int machines = 1;
    std::vector<Job> jobs;

    void validate() const; // throws Error on broken invariants

    long total_size() const;
    long max_size() const;
    // multiplicity n_p of each distinct size p
    std::map<long, int> size_counts() const;
    std::vector<long> distinct_sizes() const;

    const Job& job(std::size_t idx) const { return jobs.at(idx); }
    int job_index(const std::string& id) const;
};

Instance instance_from_json(const std::string& text);
std::string instance_to_json(const Instance& inst);
Instance load_instance_file(const std::string& path);
void save_instance_file(const Instance& inst, const std::string& path);

} // namespace liftsched

#endif
