#include "liftsched/configuration.hpp"

#include "liftsched/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace liftsched {

Configuration::Configuration(std::vector<long> sizes_with_repeats) {
    std::map<long, int, std::greater<long>> mult;
    for (long s : sizes_with_repeats) {
        mult[s]++;
        load_ += s;
    }
    entries_.assign(mult.begin(), mult.end());
}

int Configuration::multiplicity(long size) const {
    for (const auto& [s, c] : entries_)
        if (s == size) return c;
    return 0;
}

std::size_t Configuration::item_count() const {
    std::size_t n = 0;
    for (const auto& [s, c] : entries_) n += static_cast<std::size_t>(c);
    return n;
}

Configuration Configuration::without_one(long size) const {
    Configuration out = *this;
    for (auto it = out.entries_.begin(); it != out.entries_.end(); ++it) {
        if (it->first == size) {
            out.load_ -= size;
            if (--it->second == 0) out.entries_.erase(it);
            return out;
        }
    }
    throw Error("configuration: size not present");
}

Configuration Configuration::with_one(long size) const {
    Configuration out = *this;
    out.load_ += size;
    for (auto& [s, c] : out.entries_) {
        if (s == size) {
            ++c;
            return out;
        }
    }
    out.entries_.push_back({size, 1});
    std::sort(out.entries_.begin(), out.entries_.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    return out;
}

std::string Configuration::str() const {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& [s, c] : entries_) {
        for (int i = 0; i < c; ++i) {
            if (!first) os << ',';
            os << s;
            first = false;
        }
    }
    os << '}';
    return os.str();
}

std::strong_ordering Configuration::operator<=>(const Configuration& other) const {
    // lexicographic by descending size, then multiplicity
    std::size_t i = 0, j = 0;
    while (i < entries_.size() && j < other.entries_.size()) {
        if (entries_[i].first != other.entries_[j].first) {
            // the one holding the larger size sorts first
            return entries_[i].first > other.entries_[j].first
                       ? std::strong_ordering::less
                       : std::strong_ordering::greater;
        }
        if (entries_[i].second != other.entries_[j].second)
            return entries_[i].second > other.entries_[j].second
                       ? std::strong_ordering::less
                       : std::strong_ordering::greater;
        ++i, ++j;
    }
    if (i < entries_.size()) return std::strong_ordering::less;
    if (j < other.entries_.size()) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

namespace {

void enumerate_rec(const std::vector<long>& sizes, std::size_t next, long remaining,
                   std::vector<long>& chosen, std::size_t cap,
                   std::vector<Configuration>& out) {
    if (out.size() > cap) throw ConfigurationExplosion();
    out.emplace_back(chosen);
    for (std::size_t i = next; i < sizes.size(); ++i) {
        if (sizes[i] > remaining) continue;
        chosen.push_back(sizes[i]);
        enumerate_rec(sizes, i, remaining - sizes[i], chosen, cap, out);
        chosen.pop_back();
    }
}

} // namespace

std::vector<Configuration> enumerate_configurations(const std::vector<long>& sizes,
                                                    long T, std::size_t cap) {
    if (sizes.empty()) throw Error("enumerate_configurations: empty size set");
    if (T < 1) throw Error("enumerate_configurations: T must be >= 1");
    std::vector<long> sorted = sizes;
    std::sort(sorted.begin(), sorted.end(), std::greater<long>());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    std::vector<Configuration> out;
    std::vector<long> chosen;
    enumerate_rec(sorted, 0, T, chosen, cap, out);
    if (out.size() > cap) throw ConfigurationExplosion();
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace liftsched
