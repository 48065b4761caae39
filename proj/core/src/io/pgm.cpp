#include "spdc/io/pgm.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>

namespace spdc::io {

void write_pgm16(const std::filesystem::path& path, const Image2D& img,
                 const std::string& comment) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw ValidationError("cannot open for writing: " + path.string());

  double peak = 0.0;
  for (double v : img.v) peak = std::max(peak, v);
  if (peak <= 0.0) peak = 1.0;

  out << "P5\n";
  if (!comment.empty()) out << "# " << comment << "\n";
  out << img.n << " " << img.n << "\n65535\n";
  // rows top to bottom = decreasing y; columns left to right = increasing x
  for (int iy = img.n - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < img.n; ++ix) {
      const double val = std::clamp(img.at(ix, iy) / peak, 0.0, 1.0);
      const auto g = static_cast<std::uint16_t>(val * 65535.0 + 0.5);
      const unsigned char bytes[2] = {static_cast<unsigned char>(g >> 8),
                                      static_cast<unsigned char>(g & 0xff)};
      out.write(reinterpret_cast<const char*>(bytes), 2);
    }
  }
}

} // namespace spdc::io
