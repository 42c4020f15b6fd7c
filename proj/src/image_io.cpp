#include "hwarp/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>

#include "hwarp/error.hpp"

namespace hwarp {

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t pos() const { return pos_; }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string token() {
    skip_space_and_comments();
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_]) && bytes_[pos_] != '#') ++pos_;
    if (start == pos_) throw ParseError("netpbm: unexpected end of header", pos_);
    return std::string(bytes_.begin() + start, bytes_.begin() + pos_);
  }

  long number() {
    skip_space_and_comments();
    const std::size_t start = pos_;
    const std::string t = token();
    if (!std::all_of(t.begin(), t.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }) ||
        t.size() > 9) {
      throw ParseError("netpbm: expected a decimal number, got '" + t + "'", start);
    }
    return std::stol(t);
  }

  // Exactly one whitespace byte separates the header from the raster.
  void single_whitespace() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw ParseError("netpbm: missing whitespace before raster data", pos_);
    }
    ++pos_;
  }

  std::string line() {
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
    std::string out(bytes_.begin() + start, bytes_.begin() + pos_);
    if (pos_ < bytes_.size()) ++pos_;
    return out;
  }

  bool at_end() const { return pos_ >= bytes_.size(); }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

struct Header {
  long width = 0;
  long height = 0;
  long depth = 0;
  long maxval = 0;
  std::size_t data_offset = 0;
};

Header parse_pam_header(HeaderReader& reader) {
  Header hdr;
  std::map<std::string, long> fields;
  reader.single_whitespace();
  while (true) {
    if (reader.at_end()) throw ParseError("pam: header not terminated by ENDHDR", reader.pos());
    const std::size_t line_start = reader.pos();
    std::string ln = reader.line();
    if (!ln.empty() && ln.back() == '\r') ln.pop_back();
    if (ln.empty() || ln[0] == '#') continue;
    if (ln == "ENDHDR") break;
    const auto sp = ln.find_first_of(" \t");
    const std::string key = ln.substr(0, sp);
    const std::string value = sp == std::string::npos ? "" : ln.substr(ln.find_first_not_of(" \t", sp));
    if (key == "TUPLTYPE") continue;
    if (key != "WIDTH" && key != "HEIGHT" && key != "DEPTH" && key != "MAXVAL") {
      throw ParseError("pam: unknown header key '" + key + "'", line_start);
    }
    try {
      std::size_t used = 0;
      fields[key] = std::stol(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw ParseError("pam: bad value for " + key, line_start);
    }
  }
  for (const char* k : {"WIDTH", "HEIGHT", "DEPTH", "MAXVAL"}) {
    if (!fields.count(k)) throw ParseError(std::string("pam: missing ") + k, reader.pos());
  }
  hdr.width = fields["WIDTH"];
  hdr.height = fields["HEIGHT"];
  hdr.depth = fields["DEPTH"];
  hdr.maxval = fields["MAXVAL"];
  hdr.data_offset = reader.pos();
  return hdr;
}

}  // namespace

ImageGrid decode_netpbm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') throw ParseError("netpbm: missing magic number", 0);
  const char kind = static_cast<char>(bytes[1]);
  HeaderReader reader(bytes.subspan(0));
  reader.token();  // magic

  Header hdr;
  switch (kind) {
    case '5':
    case '6':
      hdr.width = reader.number();
      hdr.height = reader.number();
      hdr.maxval = reader.number();
      hdr.depth = kind == '5' ? 1 : 3;
      reader.single_whitespace();
      hdr.data_offset = reader.pos();
      break;
    case '7':
      hdr = parse_pam_header(reader);
      break;
    case '1':
    case '2':
    case '3':
    case '4':
      throw UnsupportedFormatError(std::string("netpbm: variant P") + kind + " is not supported");
    default:
      throw ParseError("netpbm: unknown magic number", 0);
  }

  if (hdr.width < 1 || hdr.height < 1 || hdr.depth < 1) {
    throw ParseError("netpbm: non-positive dimensions", hdr.data_offset);
  }
  if (hdr.maxval < 1 || hdr.maxval > 65535) {
    throw UnsupportedFormatError("netpbm: unsupported maxval " + std::to_string(hdr.maxval));
  }

  const int bytes_per_sample = hdr.maxval > 255 ? 2 : 1;
  const std::size_t count = static_cast<std::size_t>(hdr.width) * hdr.height * hdr.depth;
  const std::size_t needed = count * bytes_per_sample;
  if (bytes.size() - hdr.data_offset < needed) {
    throw ParseError("netpbm: truncated raster data, expected " + std::to_string(needed) + " bytes",
                     bytes.size());
  }

  std::vector<double> data(count);
  const double scale = 1.0 / static_cast<double>(hdr.maxval);
  const std::uint8_t* p = bytes.data() + hdr.data_offset;
  for (std::size_t i = 0; i < count; ++i) {
    unsigned v = bytes_per_sample == 2 ? (unsigned(p[2 * i]) << 8) | p[2 * i + 1] : p[i];
    if (v > static_cast<unsigned>(hdr.maxval)) {
      throw ParseError("netpbm: sample exceeds maxval", hdr.data_offset + i * bytes_per_sample);
    }
    data[i] = v * scale;
  }
  return ImageGrid(static_cast<int>(hdr.width), static_cast<int>(hdr.height),
                   static_cast<int>(hdr.depth), std::move(data));
}

std::vector<std::uint8_t> encode_netpbm(const ImageGrid& image, int bit_depth) {
  if (image.empty()) throw InvalidArgument("encode_netpbm: empty image");
  if (bit_depth != 8 && bit_depth != 16) {
    throw UnsupportedFormatError("encode_netpbm: bit depth must be 8 or 16");
  }
  const unsigned maxval = bit_depth == 8 ? 255u : 65535u;

  std::string header;
  const std::string dims = std::to_string(image.width()) + " " + std::to_string(image.height());
  if (image.channels() == 1) {
    header = "P5\n" + dims + "\n" + std::to_string(maxval) + "\n";
  } else if (image.channels() == 3) {
    header = "P6\n" + dims + "\n" + std::to_string(maxval) + "\n";
  } else {
    header = "P7\nWIDTH " + std::to_string(image.width()) + "\nHEIGHT " +
             std::to_string(image.height()) + "\nDEPTH " + std::to_string(image.channels()) +
             "\nMAXVAL " + std::to_string(maxval) + "\nENDHDR\n";
  }

  std::vector<std::uint8_t> out(header.begin(), header.end());
  const auto samples = image.data();
  out.reserve(out.size() + samples.size() * (bit_depth / 8));
  for (double v : samples) {
    if (!std::isfinite(v)) throw InvalidArgument("encode_netpbm: non-finite sample");
    const auto q = static_cast<unsigned>(std::lround(std::clamp(v, 0.0, 1.0) * maxval));
    if (bit_depth == 16) out.push_back(static_cast<std::uint8_t>(q >> 8));
    out.push_back(static_cast<std::uint8_t>(q & 0xff));
  }
  return out;
}

ImageGrid load_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  return decode_netpbm(bytes);
}

void save_image(const ImageGrid& image, const std::filesystem::path& path, int bit_depth) {
  const auto bytes = encode_netpbm(image, bit_depth);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace hwarp
