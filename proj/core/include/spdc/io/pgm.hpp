#pragma once

#include <filesystem>

#include "spdc/biphoton.hpp"

namespace spdc::io {

/// Binary 16-bit portable graymap of a square map, peak scaled to 65535.
void write_pgm16(const std::filesystem::path& path, const Image2D& img,
                 const std::string& comment = {});

} // namespace spdc::io
