#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cosea::io {

// Little-endian primitives. Writers append to a byte buffer; the reader
// tracks its offset so truncation errors can name the failing byte.

void put_u32(std::string& out, std::uint32_t v);
void put_u64(std::string& out, std::uint64_t v);
void put_f64(std::string& out, double v);
void put_string(std::string& out, const std::string& s);  // u32 length prefix

class Reader {
 public:
  Reader(const std::string& bytes, std::string source);

  std::uint32_t u32(const char* what);
  std::uint64_t u64(const char* what);
  double f64(const char* what);
  std::string string(const char* what);
  std::string raw(std::size_t n, const char* what);

  std::uint64_t offset() const { return offset_; }
  bool at_end() const;

 private:
  const std::string& bytes_;
  std::string source_;
  std::uint64_t offset_ = 0;

  void need(std::size_t n, const char* what);
};

std::uint64_t fnv1a64(const std::string& bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

}  // namespace cosea::io
