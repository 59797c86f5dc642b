// Copyright 2026 The rescal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// File formats: activation dumps, image manifests, binary PGM/PPM, and the
// CSV writers shared by the command-line tools.
//
// Activation dump layout (all integers and floats little-endian):
//
//   offset  size  field
//   0       4     magic "ACTD"
//   4       4     version (u32) = 1
//   8       4     n_channels (u32) >= 1
//   12      4     n_samples (u32) >= 1
//   16      4     flags (u32); bit 0 = post-ReLU, values must be >= 0
//   20      4*N   float32 payload, row-major [sample][channel]

#ifndef RESCAL_IO_HPP_
#define RESCAL_IO_HPP_

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "rescal/activation.hpp"
#include "rescal/ecdf.hpp"
#include "rescal/error.hpp"
#include "rescal/frechet.hpp"
#include "rescal/image.hpp"

namespace rescal {

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::data_format, what) {}
};

namespace detail {

inline std::vector<unsigned char> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write to '" + path + "' failed");
}

inline std::uint32_t load_u32le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
         static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

inline void store_u32le(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFFu));
}

/// printf-style "%.9g" / "%.9f" without locale surprises.
inline std::string format_g9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline std::string format_f9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

inline std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  s = trim(s);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

/// Calls fn(line_number, line) for each line; line numbers start at 1.
template <typename Fn>
void for_each_line(const std::string& text, Fn&& fn) {
  std::size_t start = 0, number = 1;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    fn(number++, trim(std::string_view(text).substr(start, end - start)));
    start = end + 1;
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Activation dumps
// ---------------------------------------------------------------------------

inline constexpr std::uint32_t kDumpVersion = 1;
inline constexpr std::uint32_t kDumpFlagPostRelu = 1u;
inline constexpr std::size_t kDumpHeaderBytes = 20;

inline std::string encode_activation_dump(const ActivationSamples& samples) {
  detail::require(samples.n_samples() >= 1 && samples.n_channels() >= 1,
                  "write_activation_dump: sample set is empty");
  detail::require(samples.n_samples() <= UINT32_MAX && samples.n_channels() <= UINT32_MAX,
                  "write_activation_dump: counts exceed 32 bits");
  std::string out = "ACTD";
  out.reserve(kDumpHeaderBytes + 4 * samples.values().size());
  detail::store_u32le(out, kDumpVersion);
  detail::store_u32le(out, static_cast<std::uint32_t>(samples.n_channels()));
  detail::store_u32le(out, static_cast<std::uint32_t>(samples.n_samples()));
  detail::store_u32le(out, samples.post_relu() ? kDumpFlagPostRelu : 0u);
  for (float v : samples.values()) detail::store_u32le(out, std::bit_cast<std::uint32_t>(v));
  return out;
}

inline ActivationSamples decode_activation_dump(const std::vector<unsigned char>& bytes,
                                                const std::string& source = "<memory>") {
  auto fail = [&](const std::string& what) { throw FormatError(source + ": " + what); };
  if (bytes.size() < kDumpHeaderBytes)
    fail("truncated header: expected " + std::to_string(kDumpHeaderBytes) + " bytes, got " +
         std::to_string(bytes.size()));
  if (std::string_view(reinterpret_cast<const char*>(bytes.data()), 4) != "ACTD") fail("bad magic (expected 'ACTD')");
  const std::uint32_t version = detail::load_u32le(&bytes[4]);
  if (version != kDumpVersion) fail("unsupported version " + std::to_string(version));
  const std::uint32_t n_channels = detail::load_u32le(&bytes[8]);
  const std::uint32_t n_samples = detail::load_u32le(&bytes[12]);
  const std::uint32_t flags = detail::load_u32le(&bytes[16]);
  if (n_channels == 0 || n_samples == 0) fail("header counts must be >= 1");
  if (flags & ~kDumpFlagPostRelu) fail("reserved flag bits set (flags = " + std::to_string(flags) + ")");
  const std::uint64_t expected = std::uint64_t{4} * n_channels * n_samples;
  const std::uint64_t actual = bytes.size() - kDumpHeaderBytes;
  if (actual < expected)
    fail("truncated payload: expected " + std::to_string(expected) + " bytes, got " + std::to_string(actual));
  if (actual > expected)
    fail("trailing data: expected " + std::to_string(expected) + " payload bytes, got " + std::to_string(actual));

  const bool post_relu = flags & kDumpFlagPostRelu;
  std::vector<float> values(static_cast<std::size_t>(n_channels) * n_samples);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::size_t offset = kDumpHeaderBytes + 4 * i;
    const float v = std::bit_cast<float>(detail::load_u32le(&bytes[offset]));
    auto where = [&] {
      return "at byte offset " + std::to_string(offset) + " (sample " + std::to_string(i / n_channels) +
             ", channel " + std::to_string(i % n_channels) + ")";
    };
    if (!std::isfinite(v)) fail("non-finite value " + where());
    if (post_relu && v < 0.0f) fail("negative value in post-ReLU dump " + where());
    values[i] = v;
  }
  return ActivationSamples(n_samples, n_channels, std::move(values), post_relu);
}

inline ActivationSamples read_activation_dump(const std::string& path) {
  return decode_activation_dump(detail::read_file(path), path);
}

inline void write_activation_dump(const ActivationSamples& samples, const std::string& path) {
  detail::write_file(path, encode_activation_dump(samples));
}

// ---------------------------------------------------------------------------
// Manifests
// ---------------------------------------------------------------------------

struct ManifestRow {
  std::string id;
  ImageDims dims;
};

struct Manifest {
  std::vector<ManifestRow> rows;

  std::vector<ImageDims> dims() const {
    std::vector<ImageDims> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.dims);
    return out;
  }
};

/// CSV `id,height,width`; the header line is optional, blank lines skipped.
inline Manifest parse_manifest(const std::string& text, const std::string& source = "<memory>") {
  Manifest m;
  std::set<std::string, std::less<>> seen;
  bool first = true;
  detail::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (line.empty()) return;
    const bool is_first = std::exchange(first, false);
    if (is_first && line == "id,height,width") return;
    auto fail = [&](const std::string& what) {
      throw FormatError(source + ":" + std::to_string(line_no) + ": " + what);
    };
    const auto fields = detail::split_csv(line);
    if (fields.size() != 3) fail("expected 3 fields (id,height,width), got " + std::to_string(fields.size()));
    const std::string id(detail::trim(fields[0]));
    if (id.empty()) fail("empty id");
    ImageDims d;
    if (!detail::parse_number(fields[1], d.height) || !detail::parse_number(fields[2], d.width))
      fail("height and width must be integers");
    if (!d.valid()) fail("dims must be at least 1x1");
    if (!seen.insert(id).second) fail("duplicate id '" + id + "'");
    m.rows.push_back({id, d});
  });
  return m;
}

inline Manifest read_manifest(const std::string& path) {
  const auto bytes = detail::read_file(path);
  return parse_manifest(std::string(bytes.begin(), bytes.end()), path);
}

// ---------------------------------------------------------------------------
// Binary PGM (P5) / PPM (P6), 8-bit
// ---------------------------------------------------------------------------

inline ImageBuffer decode_pnm(const std::vector<unsigned char>& bytes, const std::string& source = "<memory>") {
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) {
    throw FormatError(source + ": " + what + " (byte offset " + std::to_string(pos) + ")");
  };
  auto is_space = [](unsigned char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; };
  auto next_token = [&]() {
    while (pos < bytes.size()) {
      if (is_space(bytes[pos])) {
        ++pos;
      } else if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
    std::string tok;
    while (pos < bytes.size() && !is_space(bytes[pos]) && bytes[pos] != '#') tok.push_back(static_cast<char>(bytes[pos++]));
    if (tok.empty()) fail("truncated header");
    return tok;
  };
  auto next_int = [&](const char* what) {
    const std::string tok = next_token();
    int v = 0;
    if (!detail::parse_number(tok, v) || v < 1) fail(std::string("invalid ") + what + " '" + tok + "'");
    return v;
  };

  const std::string magic = next_token();
  int channels = 0;
  if (magic == "P5") channels = 1;
  else if (magic == "P6") channels = 3;
  else fail("unsupported magic '" + magic + "' (expected P5 or P6)");
  const int width = next_int("width");
  const int height = next_int("height");
  const int maxval = next_int("maxval");
  if (maxval != 255) fail("maxval " + std::to_string(maxval) + " not supported (only 255)");
  if (pos >= bytes.size() || !is_space(bytes[pos])) fail("missing whitespace after maxval");
  ++pos;

  const std::size_t expected = static_cast<std::size_t>(width) * height * channels;
  if (bytes.size() - pos < expected)
    fail("truncated pixel data: expected " + std::to_string(expected) + " bytes, got " + std::to_string(bytes.size() - pos));
  std::vector<float> px(expected);
  for (std::size_t i = 0; i < expected; ++i) px[i] = static_cast<float>(bytes[pos + i]) / 255.0f;
  return ImageBuffer({height, width}, channels, std::move(px));
}

inline ImageBuffer read_pnm(const std::string& path) { return decode_pnm(detail::read_file(path), path); }
inline ImageBuffer read_ppm(const std::string& path) { return read_pnm(path); }

/// P5 for single-channel images, P6 for RGB; intensities rounded to 8 bits.
inline std::string encode_pnm(const ImageBuffer& image) {
  std::string out = (image.channels() == 1 ? "P5\n" : "P6\n") + std::to_string(image.width()) + " " +
                    std::to_string(image.height()) + "\n255\n";
  out.reserve(out.size() + image.pixels().size());
  for (float v : image.pixels())
    out.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(std::clamp(v, 0.0f, 1.0f) * 255.0f))));
  return out;
}

inline void write_pnm(const ImageBuffer& image, const std::string& path) { detail::write_file(path, encode_pnm(image)); }

// ---------------------------------------------------------------------------
// CSV emitters
// ---------------------------------------------------------------------------

/// `value,cdf`, one row per distinct value in ascending order.
inline std::string format_cdf_csv(const EmpiricalCdf& cdf) {
  std::string out = "value,cdf\n";
  for (const auto& s : cdf.steps()) out += detail::format_g9(s.value) + "," + detail::format_f9(s.cdf) + "\n";
  return out;
}

inline void write_cdf_csv(const EmpiricalCdf& cdf, const std::string& path) {
  detail::write_file(path, format_cdf_csv(cdf));
}

inline std::vector<CdfStep> parse_cdf_csv(const std::string& text, const std::string& source = "<memory>") {
  std::vector<CdfStep> out;
  detail::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (line.empty() || (line_no == 1 && line == "value,cdf")) return;
    const auto f = detail::split_csv(line);
    CdfStep s{};
    if (f.size() != 2 || !detail::parse_number(f[0], s.value) || !detail::parse_number(f[1], s.cdf))
      throw FormatError(source + ":" + std::to_string(line_no) + ": expected 'value,cdf' numbers");
    if (s.cdf < 0.0 || s.cdf > 1.0 || (!out.empty() && (s.value <= out.back().value || s.cdf < out.back().cdf)))
      throw FormatError(source + ":" + std::to_string(line_no) + ": cdf rows must be increasing and within [0,1]");
    out.push_back(s);
  });
  return out;
}

inline std::string format_histogram_csv(const std::vector<HistogramBin>& bins) {
  std::string out = "bin_lo,bin_hi,count\n";
  for (const auto& b : bins)
    out += detail::format_g9(b.lo) + "," + detail::format_g9(b.hi) + "," + std::to_string(b.count) + "\n";
  return out;
}

inline void write_histogram_csv(const std::vector<HistogramBin>& bins, const std::string& path) {
  detail::write_file(path, format_histogram_csv(bins));
}

/// `a,b`, one row per channel (a single row for a scalar map).
inline std::string format_affine_csv(const std::vector<ChannelAffine>& maps) {
  std::string out = "a,b\n";
  for (const auto& m : maps) out += detail::format_g9(m.a) + "," + detail::format_g9(m.b) + "\n";
  return out;
}

inline std::string format_affine_csv(const EqualizationMap& map) { return format_affine_csv({{map.a, map.b}}); }

inline std::vector<ChannelAffine> parse_affine_csv(const std::string& text, const std::string& source = "<memory>") {
  std::vector<ChannelAffine> out;
  detail::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (line.empty() || (line_no == 1 && line == "a,b")) return;
    const auto f = detail::split_csv(line);
    ChannelAffine m;
    if (f.size() != 2 || !detail::parse_number(f[0], m.a) || !detail::parse_number(f[1], m.b))
      throw FormatError(source + ":" + std::to_string(line_no) + ": expected 'a,b' numbers");
    out.push_back(m);
  });
  return out;
}

inline void write_text(const std::string& text, const std::string& path) { detail::write_file(path, text); }

inline std::string read_text(const std::string& path) {
  const auto bytes = detail::read_file(path);
  return {bytes.begin(), bytes.end()};
}

}  // namespace rescal

#endif  // RESCAL_IO_HPP_
