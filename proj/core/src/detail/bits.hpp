#pragma once

#include <bit>
#include <cstdint>

namespace csr::detail {

inline constexpr std::uint64_t bit(int i) { return std::uint64_t{1} << i; }

inline int popcount(std::uint64_t m) { return std::popcount(m); }

template <typename F>
void for_each_bit(std::uint64_t m, F&& f) {
    while (m != 0) {
        f(std::countr_zero(m));
        m &= m - 1;
    }
}

inline bool subset(std::uint64_t a, std::uint64_t b) { return (a & ~b) == 0; }

}  // namespace csr::detail
