#ifndef ESR3D_SURFACE_IO_HPP
#define ESR3D_SURFACE_IO_HPP

#include <filesystem>
#include <iosfwd>

#include "esr3d/grid.hpp"

namespace esr3d {

// Whitespace-delimited text format: a one-line "M N" header followed by M*N
// lines of three decimal coordinates in lattice order (i fastest). Partitions
// are implied uniform. Coordinates are written with 17 significant digits, so
// write/read round-trips are exact.
SurfaceGrid read_surface(std::istream& in, const std::string& source_name = "<stream>");
SurfaceGrid read_surface_file(const std::filesystem::path& path);

void write_surface(std::ostream& out, const SurfaceGrid& g);
void write_surface_file(const std::filesystem::path& path, const SurfaceGrid& g);

// Two-column tables (r_i, h_j(r_i)) for every row of a warp, blocks separated
// by blank lines, one "# j <t_j>" comment line per block.
void write_warp_table(const std::filesystem::path& path, const Warp2D& warp,
                      const Partition& r, const Partition& t);

}  // namespace esr3d

#endif
