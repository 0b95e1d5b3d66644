#include "esr3d/surface_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace esr3d {

namespace {

std::string location(const std::string& source, std::size_t line) {
  return source + ":" + std::to_string(line);
}

const char* skip_ws(const char* p, const char* end) {
  while (p != end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
  return p;
}

bool parse_double(const char*& p, const char* end, double& out) {
  p = skip_ws(p, end);
  const std::from_chars_result res = std::from_chars(p, end, out);
  if (res.ec != std::errc{}) return false;
  p = res.ptr;
  return true;
}

bool parse_size(const char*& p, const char* end, std::size_t& out) {
  p = skip_ws(p, end);
  const std::from_chars_result res = std::from_chars(p, end, out);
  if (res.ec != std::errc{}) return false;
  p = res.ptr;
  return true;
}

}  // namespace

SurfaceGrid read_surface(std::istream& in, const std::string& source_name) {
  std::string line;
  std::size_t line_no = 0;

  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      const char* p = skip_ws(line.data(), line.data() + line.size());
      if (p != line.data() + line.size() && *p != '\n') return true;  // skip blank lines
    }
    return false;
  };

  if (!next_line()) throw ParseError(location(source_name, 1) + ": missing 'M N' header");
  std::size_t m = 0, n = 0;
  {
    const char* p = line.data();
    const char* end = line.data() + line.size();
    if (!parse_size(p, end, m) || !parse_size(p, end, n))
      throw ParseError(location(source_name, line_no) + ": header must be two integers 'M N'");
    p = skip_ws(p, end);
    if (p != end)
      throw ParseError(location(source_name, line_no) + ": trailing text after header");
  }
  if (m < 2 || n < 2)
    throw ParseError(location(source_name, line_no) + ": M and N must be at least 2");

  const std::size_t count = m * n;
  std::vector<double> x(count), y(count), z(count);
  for (std::size_t k = 0; k < count; ++k) {
    if (!next_line())
      throw ParseError(location(source_name, line_no + 1) + ": expected " +
                       std::to_string(count) + " coordinate lines, got " + std::to_string(k));
    const char* p = line.data();
    const char* end = line.data() + line.size();
    if (!parse_double(p, end, x[k]) || !parse_double(p, end, y[k]) || !parse_double(p, end, z[k]))
      throw ParseError(location(source_name, line_no) + ": expected three decimal coordinates");
    p = skip_ws(p, end);
    if (p != end)
      throw ParseError(location(source_name, line_no) + ": trailing text after coordinates");
  }
  if (next_line())
    throw ParseError(location(source_name, line_no) + ": unexpected extra line after " +
                     std::to_string(count) + " points");

  try {
    return SurfaceGrid(Partition::uniform(m), Partition::uniform(n), std::move(x), std::move(y),
                       std::move(z));
  } catch (const NonFiniteValue&) {
    throw ParseError(source_name + ": non-finite coordinate value");
  }
}

SurfaceGrid read_surface_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  return read_surface(in, path.string());
}

void write_surface(std::ostream& out, const SurfaceGrid& g) {
  out << g.rows() << ' ' << g.cols() << '\n';
  char buf[96];
  const std::size_t count = g.rows() * g.cols();
  for (std::size_t k = 0; k < count; ++k) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", g.x()[k], g.y()[k], g.z()[k]);
    out << buf;
  }
}

void write_surface_file(const std::filesystem::path& path, const SurfaceGrid& g) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_surface(out, g);
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

void write_warp_table(const std::filesystem::path& path, const Warp2D& warp, const Partition& r,
                      const Partition& t) {
  if (warp.rows() != t.size() || warp.samples_per_row() != r.size())
    throw DimensionMismatch("warp dimensions do not match the partitions");
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  char buf[96];
  for (std::size_t j = 0; j < warp.rows(); ++j) {
    std::snprintf(buf, sizeof buf, "# %zu %.17g\n", j, t[j]);
    out << buf;
    const Diffeo1D& h = warp.row(j);
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g %.17g\n", r[i], h.samples()[i]);
      out << buf;
    }
    out << '\n';
  }
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace esr3d
