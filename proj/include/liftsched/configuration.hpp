#ifndef LIFTSCHED_CONFIGURATION_HPP
#define LIFTSCHED_CONFIGURATION_HPP

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace liftsched {

// A configuration is a multiset of job sizes; identity is the multiplicity
// map in canonical form (sizes descending). Value type with a total order
// so configuration sets iterate deterministically.
class Configuration {
public:
    Configuration() = default;
    explicit Configuration(std::vector<long> sizes_with_repeats);

    int multiplicity(long size) const;
    long load() const { return load_; }
    std::size_t item_count() const;
    bool empty() const { return entries_.empty(); }

    // (size, multiplicity) pairs, sizes strictly descending
    const std::vector<std::pair<long, int>>& entries() const { return entries_; }

    // removes one item of `size`; throws if absent
    Configuration without_one(long size) const;
    Configuration with_one(long size) const;

    std::string str() const; // e.g. "{5,3,3}" with sizes descending

    friend bool operator==(const Configuration&, const Configuration&) = default;
    std::strong_ordering operator<=>(const Configuration& other) const;

private:
    std::vector<std::pair<long, int>> entries_; // sizes descending
    long load_ = 0;
};

// All multisets over `sizes` with load at most T, including the empty one.
// Throws ConfigurationExplosion when more than `cap` would be produced.
std::vector<Configuration> enumerate_configurations(const std::vector<long>& sizes,
                                                    long T,
                                                    std::size_t cap = 200000);

} // namespace liftsched

#endif
