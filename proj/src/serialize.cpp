#include "cosea/serialize.hpp"

#include <cstring>
#include <fstream>
#include <sstream>
#include <utility>

#include "cosea/errors.hpp"

namespace cosea::io {

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  put_u64(out, bits);
}

void put_string(std::string& out, const std::string& s) {
  put_u32(out, static_cast<std::uint32_t>(s.size()));
  out.append(s);
}

Reader::Reader(const std::string& bytes, std::string source)
    : bytes_(bytes), source_(std::move(source)) {}

void Reader::need(std::size_t n, const char* what) {
  if (offset_ + n > bytes_.size()) {
    throw CorruptionError(source_ + ": truncated while reading " + what + " at offset " +
                          std::to_string(offset_));
  }
}

std::uint32_t Reader::u32(const char* what) {
  need(4, what);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes_[offset_ + i])) << (8 * i);
  }
  offset_ += 4;
  return v;
}

std::uint64_t Reader::u64(const char* what) {
  need(8, what);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) {
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[offset_ + i])) << (8 * i);
  }
  offset_ += 8;
  return v;
}

double Reader::f64(const char* what) {
  const std::uint64_t bits = u64(what);
  double v;
  std::memcpy(&v, &bits, sizeof v);
  return v;
}

std::string Reader::string(const char* what) {
  const std::uint32_t n = u32(what);
  return raw(n, what);
}

std::string Reader::raw(std::size_t n, const char* what) {
  need(n, what);
  std::string s = bytes_.substr(offset_, n);
  offset_ += n;
  return s;
}

bool Reader::at_end() const { return offset_ == bytes_.size(); }

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed for " + path);
}

}  // namespace cosea::io
