#include "liftsched/instance.hpp"

#include "liftsched/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace liftsched {

void Instance::validate() const {
    if (machines < 1) throw Error("instance: machine count must be >= 1");
    std::set<std::string> seen;
    for (const Job& j : jobs) {
        if (j.size < 1) throw Error("instance: job '" + j.id + "' has size < 1");
        if (!seen.insert(j.id).second)
            throw Error("instance: duplicate job id '" + j.id + "'");
    }
}

long Instance::total_size() const {
    long t = 0;
    for (const Job& j : jobs) t += j.size;
    return t;
}

long Instance::max_size() const {
    long t = 0;
    for (const Job& j : jobs) t = std::max(t, j.size);
    return t;
}

std::map<long, int> Instance::size_counts() const {
    std::map<long, int> counts;
    for (const Job& j : jobs) counts[j.size]++;
    return counts;
}

std::vector<long> Instance::distinct_sizes() const {
    std::vector<long> sizes;
    for (const auto& [p, n] : size_counts()) sizes.push_back(p);
    return sizes;
}

int Instance::job_index(const std::string& id) const {
    for (std::size_t i = 0; i < jobs.size(); ++i)
        if (jobs[i].id == id) return static_cast<int>(i);
    throw Error("instance: unknown job id '" + id + "'");
}

Instance instance_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw Error(std::string("instance parse error: ") + e.what());
    }
    Instance inst;
    inst.machines = doc.at("machines").get<int>();
    for (const auto& item : doc.at("jobs")) {
        Job j;
        j.id = item.at("id").get<std::string>();
        j.size = item.at("size").get<long>();
        inst.jobs.push_back(std::move(j));
    }
    inst.validate();
    return inst;
}

std::string instance_to_json(const Instance& inst) {
    nlohmann::ordered_json doc;
    doc["machines"] = inst.machines;
    doc["jobs"] = nlohmann::ordered_json::array();
    for (const Job& j : inst.jobs)
        doc["jobs"].push_back({{"id", j.id}, {"size", j.size}});
    return doc.dump(2) + "\n";
}

Instance load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open instance file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return instance_from_json(buf.str());
}

void save_instance_file(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write instance file '" + path + "'");
    out << instance_to_json(inst);
}

} // namespace liftsched
