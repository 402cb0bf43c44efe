#pragma once

#include <compare>
#include <cstdint>
#include <functional>

namespace ifol {

/// Opaque index into the PRP domain table. Particulars and concepts share
/// one handle space; the arity stored in the table tells them apart.
struct Handle {
    std::uint32_t value = 0;

    friend constexpr auto operator<=>(Handle, Handle) = default;
};

}  // namespace ifol

template <>
struct std::hash<ifol::Handle> {
    std::size_t operator()(ifol::Handle h) const noexcept { return std::hash<std::uint32_t>{}(h.value); }
};
