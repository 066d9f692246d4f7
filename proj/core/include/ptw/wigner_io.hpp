#pragma once

#include <filesystem>
#include <iosfwd>

#include "ptw/wigner.hpp"

namespace ptw {

/// Binary layout, little-endian:
///   uint64 nx, uint64 np, float64 x_min, x_max, p_min, p_max,
///   then nx·np float64 values, row-major with x outer.
void write_wigner_binary(const WignerField& field, std::ostream& out);
void write_wigner_binary(const WignerField& field, const std::filesystem::path& path);

/// MeasurementError on truncated or inconsistent input.
WignerField read_wigner_binary(std::istream& in);
WignerField read_wigner_binary(const std::filesystem::path& path);

/// `x,p,w` with a header line, one row per node, 17 significant digits.
void write_wigner_csv(const WignerField& field, std::ostream& out);
void write_wigner_csv(const WignerField& field, const std::filesystem::path& path);

}  // namespace ptw
