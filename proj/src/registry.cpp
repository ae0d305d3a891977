#include "qil/registry.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <unordered_set>

namespace qil {

namespace {

std::atomic<std::size_t>& max_dim_slot() {
    static std::atomic<std::size_t> slot = [] {
        if (const char* env = std::getenv("QIL_MAX_DIM")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v >= 1) return static_cast<std::size_t>(v);
        }
        return std::size_t{4096};
    }();
    return slot;
}

}  // namespace

std::size_t max_total_dim() { return max_dim_slot().load(); }
void set_max_total_dim(std::size_t dim) {
    if (dim < 1) throw std::invalid_argument("max_total_dim must be >= 1");
    max_dim_slot().store(dim);
}

SystemRegistry::SystemRegistry(std::vector<SystemEntry> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw std::invalid_argument("registry: entries must be nonempty");
    std::unordered_set<std::string> seen;
    const std::size_t cap = max_total_dim();
    for (const auto& e : entries_) {
        if (e.dim < 1) throw std::invalid_argument("registry: dim of '" + e.label + "' must be >= 1");
        if (!seen.insert(e.label).second)
            throw std::invalid_argument("registry: duplicate label '" + e.label + "'");
        if (total_dim_ > cap / e.dim)
            throw std::invalid_argument("registry: total dimension exceeds max_total_dim");
        total_dim_ *= e.dim;
    }
}

bool SystemRegistry::contains(const std::string& label) const {
    for (const auto& e : entries_)
        if (e.label == label) return true;
    return false;
}

std::size_t SystemRegistry::position(const std::string& label) const {
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i].label == label) return i;
    throw std::invalid_argument("registry: unknown label '" + label + "'");
}

std::size_t SystemRegistry::dim_of(const std::string& label) const {
    return entries_[position(label)].dim;
}

std::vector<std::size_t> SystemRegistry::positions(std::span<const std::string> labels) const {
    std::vector<std::size_t> out;
    out.reserve(labels.size());
    for (const auto& l : labels) out.push_back(position(l));
    return out;
}

SystemRegistry SystemRegistry::subset(std::span<const std::string> keep) const {
    if (keep.empty()) throw std::invalid_argument("registry: subset must be nonempty");
    std::unordered_set<std::string> want;
    for (const auto& l : keep) {
        position(l);  // validates
        want.insert(l);
    }
    std::vector<SystemEntry> out;
    for (const auto& e : entries_)
        if (want.count(e.label)) out.push_back(e);
    return SystemRegistry(std::move(out));
}

std::vector<std::string> SystemRegistry::complement(std::span<const std::string> labels) const {
    std::unordered_set<std::string> drop;
    for (const auto& l : labels) {
        position(l);
        drop.insert(l);
    }
    std::vector<std::string> out;
    for (const auto& e : entries_)
        if (!drop.count(e.label)) out.push_back(e.label);
    return out;
}

SystemRegistry SystemRegistry::concat(const SystemRegistry& other) const {
    std::vector<SystemEntry> out = entries_;
    for (const auto& e : other.entries_) out.push_back(e);
    return SystemRegistry(std::move(out));
}

SystemRegistry SystemRegistry::extended(const SystemEntry& entry) const {
    std::vector<SystemEntry> out = entries_;
    out.push_back(entry);
    return SystemRegistry(std::move(out));
}

std::vector<std::size_t> SystemRegistry::strides() const {
    std::vector<std::size_t> s(entries_.size(), 1);
    for (std::size_t i = entries_.size(); i-- > 1;)
        s[i - 1] = s[i] * entries_[i].dim;
    return s;
}

bool SystemRegistry::same_labels(const SystemRegistry& other) const {
    if (entries_.size() != other.entries_.size()) return false;
    for (const auto& e : entries_)
        if (!other.contains(e.label)) return false;
    return true;
}

}  // namespace qil
