#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ontoea {

/// Bijective string <-> handle table. Handles are dense 0-based integers
/// assigned in first-seen order, so identical inputs produce identical
/// handle assignments run after run.
class Interner {
public:
    std::uint32_t intern(std::string_view uri) {
        auto it = index_.find(uri);
        if (it != index_.end()) return it->second;
        std::uint32_t handle = static_cast<std::uint32_t>(names_.size());
        names_.emplace_back(uri);
        index_.emplace(names_.back(), handle);
        return handle;
    }

    std::optional<std::uint32_t> find(std::string_view uri) const {
        auto it = index_.find(uri);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    bool contains(std::string_view uri) const { return find(uri).has_value(); }

    const std::string& name(std::uint32_t handle) const { return names_.at(handle); }

    std::size_t size() const { return names_.size(); }

private:
    struct Hash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const noexcept {
            return std::hash<std::string_view>{}(s);
        }
    };

    std::unordered_map<std::string, std::uint32_t, Hash, std::equal_to<>> index_;
    std::vector<std::string> names_;
};

} // namespace ontoea
