#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "szego/types.hpp"

namespace szego::fft {

enum class Direction {
  forward,   // X_k = sum_j x_j e^{-2 pi i jk/n}
  backward,  // X_k = sum_j x_j e^{+2 pi i jk/n}
};

bool is_power_of_two(std::size_t n) noexcept;
std::size_t next_power_of_two(std::size_t n) noexcept;

/// Unnormalized in-place DFT. Plans are cached per (size, direction) and
/// shared between threads; execution itself is reentrant.
void transform(std::span<cplx> data, Direction dir);

std::vector<cplx> transformed(std::vector<cplx> data, Direction dir);

}  // namespace szego::fft
