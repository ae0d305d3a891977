#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace qil {

/// Global cap on dense state dimension. Overridable via QIL_MAX_DIM or
/// set_max_total_dim(); guards against accidentally allocating huge matrices.
std::size_t max_total_dim();
void set_max_total_dim(std::size_t dim);

enum class Kind { physical, knowledge };

struct SystemEntry {
    std::string label;
    std::size_t dim = 0;
    Kind kind = Kind::physical;
    std::string owner;  // meaningful only for knowledge systems

    static SystemEntry physical(std::string label, std::size_t dim) {
        return {std::move(label), dim, Kind::physical, {}};
    }
    static SystemEntry knowledge(std::string label, std::size_t dim, std::string owner) {
        return {std::move(label), dim, Kind::knowledge, std::move(owner)};
    }
};

/// Ordered list of labeled subsystems. Index layout of all states is
/// row-major over entry order: the first entry is the most significant digit.
class SystemRegistry {
public:
    SystemRegistry() = default;
    explicit SystemRegistry(std::vector<SystemEntry> entries);

    std::size_t size() const { return entries_.size(); }
    std::size_t total_dim() const { return total_dim_; }
    const SystemEntry& entry(std::size_t i) const { return entries_.at(i); }
    const std::vector<SystemEntry>& entries() const { return entries_; }

    bool contains(const std::string& label) const;
    /// Position of a label in entry order; throws std::invalid_argument if unknown.
    std::size_t position(const std::string& label) const;
    std::size_t dim_of(const std::string& label) const;

    std::vector<std::size_t> positions(std::span<const std::string> labels) const;

    /// Sub-registry containing exactly the given labels, in *original* entry
    /// order regardless of the order they are listed in.
    SystemRegistry subset(std::span<const std::string> keep) const;
    /// Labels not in the given set, in original order.
    std::vector<std::string> complement(std::span<const std::string> labels) const;

    SystemRegistry concat(const SystemRegistry& other) const;
    SystemRegistry extended(const SystemEntry& entry) const;

    /// stride[i] = product of dims of entries after i.
    std::vector<std::size_t> strides() const;

    bool same_labels(const SystemRegistry& other) const;

private:
    std::vector<SystemEntry> entries_;
    std::size_t total_dim_ = 1;
};

}  // namespace qil
