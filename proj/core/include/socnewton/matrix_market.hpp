#pragma once

#include <filesystem>

#include "socnewton/matrix.hpp"

namespace socnewton {

// Matrix Market I/O. Reading understands the `coordinate` and `array`
// formats with `real` or `integer` fields and `general` or `symmetric`
// qualifiers (symmetric input is expanded to full storage). Writing emits
// `general` symmetry always: sparse matrices as coordinate (1-based, row
// ascending), dense matrices as array (column-major, per the format).
Matrix read_matrix_market(const std::filesystem::path& path);
void write_matrix_market(const std::filesystem::path& path, const Matrix& A);

}  // namespace socnewton
