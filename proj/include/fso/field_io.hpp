#pragma once

#include <string>

#include "fso/grid.hpp"

namespace fso {

// Self-describing binary layout for grid fields:
//   magic "FOGF", version u32, d u32, N u32, L f64,
// followed by N^d little-endian f64 samples in row-major order.
// Vector fields store d consecutive scalar sample blocks after one header.
void write_field(const std::string& path, const GridField& u);
void write_field(const std::string& path, const VectorGridField& V);
GridField read_scalar_field(const std::string& path);
VectorGridField read_vector_field(const std::string& path);

} // namespace fso
