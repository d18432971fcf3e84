#pragma once

#include "homlab/upscale2d.hpp"

#include <filesystem>
#include <string>

namespace homlab {

/// Binary cell-solution store, all values little-endian IEEE 64-bit:
///   header  N, k, N_cs, epsbar
///   blocks  for cell c = i1 + N i2 (c ascending): the w_1 block then the
///           w_2 block, each block_side^2 values with q1 fastest.
void write_cell_store(const std::filesystem::path& path, const EffectiveField2D& field);

/// Reads a store into a field whose cell grid equals N_cs; tensors are left
/// zero (load them with read_tensor_csv).
EffectiveField2D read_cell_store(const std::filesystem::path& path);

/// Tensor field as CSV with header `i1,i2,A11,A12,A22`.
std::string tensors_to_csv(const EffectiveField2D& field);
void read_tensor_csv(const std::filesystem::path& path, EffectiveField2D& field);

} // namespace homlab
