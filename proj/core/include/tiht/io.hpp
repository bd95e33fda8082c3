// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>

#include "tiht/formats.hpp"
#include "tiht/tensor.hpp"

namespace tiht {

// Container layout: the line "TIHT1\n", an 8-byte little-endian header
// length, a JSON header, then every block's entries as little-endian doubles
// in colexicographic order (complex entries interleaved re, im).

template <Scalar T>
void save_tensor(const std::filesystem::path& path, const Tensor<T>& x);

// Throws ArgumentError when the stored field differs from T.
template <Scalar T>
Tensor<T> load_tensor(const std::filesystem::path& path);

// Field recorded in a container header.
Field stored_field(const std::filesystem::path& path);

template <Scalar T>
void save_decomposition(const std::filesystem::path& path, const Decomposition<T>& d);

template <Scalar T>
Decomposition<T> load_decomposition(const std::filesystem::path& path);

}  // namespace tiht
