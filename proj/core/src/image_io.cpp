#include "wmark/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include <system_error>
#include <vector>

#include "wmark/errors.hpp"

namespace wmark {

namespace {

constexpr unsigned char kPngSignature[8] = {0x89, 'P', 'N', 'G',
                                            '\r', '\n', 0x1A, '\n'};

std::vector<unsigned char> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open file: " + path.string());
  }
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw IoError("read failure: " + path.string());
  }
  return bytes;
}

unsigned char clamp_to_byte(double v) {
  if (v <= 0.0) return 0;
  if (v >= 255.0) return 255;
  return static_cast<unsigned char>(std::floor(v + 0.5));
}

// ---- PGM (P5, maxval 255) ----

// Header grammar: "P5", then width, height, maxval as ASCII decimal tokens
// separated by whitespace, '#' comments allowed, then exactly one whitespace
// byte before the raw payload.
class PgmHeaderParser {
 public:
  explicit PgmHeaderParser(const std::vector<unsigned char>& bytes)
      : bytes_(bytes) {}

  std::size_t offset() const { return pos_; }

  void expect_magic() {
    if (bytes_.size() < 2 || bytes_[0] != 'P' || bytes_[1] != '5') {
      throw FormatError("not a PGM P5 file (bad magic)", 0);
    }
    pos_ = 2;
  }

  unsigned long next_number() {
    skip_separators();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw FormatError("malformed PGM header: expected a decimal number",
                        static_cast<std::ptrdiff_t>(pos_));
    }
    unsigned long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1000000000ul) {
        throw FormatError("PGM header number out of range",
                          static_cast<std::ptrdiff_t>(pos_));
      }
      ++pos_;
    }
    return value;
  }

  void expect_single_separator() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw FormatError("malformed PGM header: expected whitespace before payload",
                        static_cast<std::ptrdiff_t>(pos_));
    }
    ++pos_;
  }

 private:
  void skip_separators() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<unsigned char>& bytes_;
  std::size_t pos_ = 0;
};

RealMatrix load_pgm(const std::vector<unsigned char>& bytes,
                    const std::filesystem::path& path) {
  PgmHeaderParser parser(bytes);
  parser.expect_magic();
  const unsigned long width = parser.next_number();
  const unsigned long height = parser.next_number();
  const std::size_t maxval_offset = parser.offset();
  const unsigned long maxval = parser.next_number();
  if (width == 0 || height == 0) {
    throw FormatError("PGM dimensions must be positive: " + path.string(), 2);
  }
  if (maxval != 255) {
    throw FormatError("unsupported PGM maxval " + std::to_string(maxval) +
                          " (only 8-bit, maxval 255): " + path.string(),
                      static_cast<std::ptrdiff_t>(maxval_offset));
  }
  parser.expect_single_separator();

  const std::size_t payload_offset = parser.offset();
  const std::size_t expected = static_cast<std::size_t>(width) * height;
  const std::size_t actual = bytes.size() - payload_offset;
  if (actual != expected) {
    throw FormatError("PGM payload length mismatch: expected " +
                          std::to_string(expected) + " bytes, found " +
                          std::to_string(actual) + ": " + path.string(),
                      static_cast<std::ptrdiff_t>(payload_offset));
  }

  RealMatrix out(height, width);
  for (std::size_t i = 0; i < expected; ++i) {
    out.data()[i] = static_cast<double>(bytes[payload_offset + i]);
  }
  return out;
}

void write_pgm(const RealMatrix& m, std::ofstream& out) {
  out << "P5\n" << m.cols() << ' ' << m.rows() << "\n255\n";
  std::vector<unsigned char> row(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      row[j] = clamp_to_byte(m(i, j));
    }
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size()));
  }
}

// ---- PNG (8-bit grayscale, via libpng) ----

struct PngReadCursor {
  const unsigned char* data;
  std::size_t size;
  std::size_t pos;
};

extern "C" void png_mem_read(png_structp png, png_bytep out, png_size_t len) {
  auto* cur = static_cast<PngReadCursor*>(png_get_io_ptr(png));
  if (cur->pos + len > cur->size) {
    png_error(png, "unexpected end of PNG stream");
  }
  std::memcpy(out, cur->data + cur->pos, len);
  cur->pos += len;
}

RealMatrix load_png(const std::vector<unsigned char>& bytes,
                    const std::filesystem::path& path) {
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("libpng: cannot allocate read struct");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw IoError("libpng: cannot allocate info struct");
  }

  std::vector<png_bytep> row_ptrs;
  std::vector<unsigned char> pixels;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw FormatError("malformed PNG: " + path.string());
  }

  PngReadCursor cursor{bytes.data(), bytes.size(), 0};
  png_set_read_fn(png, &cursor, png_mem_read);
  png_read_info(png, info);

  const png_uint_32 width = png_get_image_width(png, info);
  const png_uint_32 height = png_get_image_height(png, info);
  const int bit_depth = png_get_bit_depth(png, info);
  const int color_type = png_get_color_type(png, info);

  if (color_type != PNG_COLOR_TYPE_GRAY) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw FormatError("unsupported PNG colorspace (expected 8-bit grayscale, "
                      "color inputs are rejected): " +
                      path.string());
  }
  if (bit_depth != 8) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw FormatError("unsupported PNG bit depth " + std::to_string(bit_depth) +
                      " (expected 8): " + path.string());
  }

  pixels.resize(static_cast<std::size_t>(width) * height);
  row_ptrs.resize(height);
  for (png_uint_32 i = 0; i < height; ++i) {
    row_ptrs[i] = pixels.data() + static_cast<std::size_t>(i) * width;
  }
  png_read_image(png, row_ptrs.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  RealMatrix out(height, width);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.data()[i] = static_cast<double>(pixels[i]);
  }
  return out;
}

void write_png(const RealMatrix& m, std::FILE* fp,
               const std::filesystem::path& path) {
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("libpng: cannot allocate write struct");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError("libpng: cannot allocate info struct");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("PNG write failure: " + path.string());
  }

  png_init_io(png, fp);
  png_set_IHDR(png, info, static_cast<png_uint_32>(m.cols()),
               static_cast<png_uint_32>(m.rows()), 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);

  std::vector<unsigned char> row(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      row[j] = clamp_to_byte(m(i, j));
    }
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace

std::optional<ImageFormat> detect_format(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  unsigned char head[8] = {0};
  in.read(reinterpret_cast<char*>(head), sizeof(head));
  const std::size_t got = static_cast<std::size_t>(in.gcount());
  if (got >= 8 && std::memcmp(head, kPngSignature, 8) == 0) {
    return ImageFormat::kPngGray8;
  }
  if (got >= 2 && head[0] == 'P' && head[1] == '5') {
    return ImageFormat::kPgmP5;
  }
  return std::nullopt;
}

RealMatrix load_gray(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) {
    throw IoError("no such file: " + path.string());
  }
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw IoError("not a regular file: " + path.string());
  }
  const std::vector<unsigned char> bytes = read_file_bytes(path);
  if (bytes.size() >= 8 && std::memcmp(bytes.data(), kPngSignature, 8) == 0) {
    return load_png(bytes, path);
  }
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5') {
    return load_pgm(bytes, path);
  }
  throw FormatError("unrecognized image format (expected PGM P5 or PNG): " +
                        path.string(),
                    0);
}

void save_gray(const RealMatrix& m, const std::filesystem::path& path,
               ImageFormat format) {
  if (m.empty()) throw InvalidInput("save_gray: empty matrix");

  std::filesystem::path tmp = path;
  tmp += ".tmp";

  try {
    if (format == ImageFormat::kPgmP5) {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw IoError("cannot create file: " + tmp.string());
      write_pgm(m, out);
      out.close();
      if (!out) throw IoError("write failure: " + tmp.string());
    } else {
      std::FILE* fp = std::fopen(tmp.string().c_str(), "wb");
      if (!fp) throw IoError("cannot create file: " + tmp.string());
      try {
        write_png(m, fp, tmp);
      } catch (...) {
        std::fclose(fp);
        throw;
      }
      if (std::fclose(fp) != 0) throw IoError("write failure: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(tmp, ec);
    throw;
  }
}

RealMatrix resize_bilinear(const RealMatrix& m, std::size_t new_rows,
                           std::size_t new_cols) {
  if (m.empty()) throw InvalidInput("resize_bilinear: empty matrix");
  if (new_rows == 0 || new_cols == 0) {
    throw InvalidInput("resize_bilinear: target dimensions must be positive");
  }
  const double scale_r =
      static_cast<double>(m.rows()) / static_cast<double>(new_rows);
  const double scale_c =
      static_cast<double>(m.cols()) / static_cast<double>(new_cols);
  RealMatrix out(new_rows, new_cols);
  for (std::size_t r = 0; r < new_rows; ++r) {
    double sy = (static_cast<double>(r) + 0.5) * scale_r - 0.5;
    sy = std::clamp(sy, 0.0, static_cast<double>(m.rows() - 1));
    const std::size_t y0 = static_cast<std::size_t>(sy);
    const std::size_t y1 = std::min(y0 + 1, m.rows() - 1);
    const double fy = sy - static_cast<double>(y0);
    for (std::size_t c = 0; c < new_cols; ++c) {
      double sx = (static_cast<double>(c) + 0.5) * scale_c - 0.5;
      sx = std::clamp(sx, 0.0, static_cast<double>(m.cols() - 1));
      const std::size_t x0 = static_cast<std::size_t>(sx);
      const std::size_t x1 = std::min(x0 + 1, m.cols() - 1);
      const double fx = sx - static_cast<double>(x0);
      const double top = m(y0, x0) * (1.0 - fx) + m(y0, x1) * fx;
      const double bot = m(y1, x0) * (1.0 - fx) + m(y1, x1) * fx;
      out(r, c) = top * (1.0 - fy) + bot * fy;
    }
  }
  return out;
}

std::pair<RealMatrix, PadRecord> pad_to_even(const RealMatrix& m) {
  if (m.empty()) throw InvalidInput("pad_to_even: empty matrix");
  PadRecord record;
  record.row_added = m.rows() % 2 != 0;
  record.col_added = m.cols() % 2 != 0;
  if (!record.row_added && !record.col_added) {
    return {m, record};
  }
  const std::size_t rows = m.rows() + (record.row_added ? 1 : 0);
  const std::size_t cols = m.cols() + (record.col_added ? 1 : 0);
  RealMatrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::size_t si = std::min(i, m.rows() - 1);
    for (std::size_t j = 0; j < cols; ++j) {
      out(i, j) = m(si, std::min(j, m.cols() - 1));
    }
  }
  return {out, record};
}

RealMatrix remove_pad(const RealMatrix& m, const PadRecord& record) {
  const std::size_t rows = m.rows() - (record.row_added ? 1 : 0);
  const std::size_t cols = m.cols() - (record.col_added ? 1 : 0);
  if (rows == 0 || cols == 0) {
    throw InvalidInput("remove_pad: nothing left after removing padding");
  }
  RealMatrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      out(i, j) = m(i, j);
    }
  }
  return out;
}

}  // namespace wmark
