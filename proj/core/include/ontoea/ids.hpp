#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace ontoea {

/// Dense 0-based handle into an interner table. The tag keeps entity,
/// relation and class handles from mixing at compile time; handles of the
/// two KGs live in separate namespaces and may carry the same integer.
template <class Tag>
struct Handle {
    std::uint32_t value = 0;

    friend constexpr auto operator<=>(Handle, Handle) = default;
};

using EntityId = Handle<struct EntityTag>;
using RelationId = Handle<struct RelationTag>;
using ClassId = Handle<struct ClassTag>;

/// Which side of the alignment task an entity handle belongs to.
enum class KgSide : int { kg1 = 0, kg2 = 1 };

constexpr int side_index(KgSide s) { return static_cast<int>(s); }

template <class Tag>
struct HandleHash {
    std::size_t operator()(Handle<Tag> h) const noexcept {
        return std::hash<std::uint32_t>{}(h.value);
    }
};

} // namespace ontoea
